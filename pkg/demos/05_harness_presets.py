"""
Running the shipped presets
===========================

The harness reads scenario sections from an INI file and returns flat
result rows.  The same runs are available from the command line as
``corrlab run --preset fig6``.
"""

from corrlab.harness import default_config_path, format_rows, load_presets, run_experiment

presets = load_presets(default_config_path())
print("presets:", ", ".join(presets))

# A reduced fig6 run: fewer trials keep this demo quick.
cfg = presets["fig6"].replace(n_trials=100)
rows = run_experiment(cfg)
for r in rows:
    if r.statistic == "mean":
        print(f"{r.topology:<12} M={r.M:4d} K={r.K:3d}  dominance {r.value:.4f}")

# Rows serialise to CSV (or JSON) with full-precision floats.
print()
print(format_rows(rows[:3]), end="")
