"""Scenario configuration, experiment sweeps and result persistence.

Configs are INI files.  The ``[DEFAULT]`` section carries the cluster and
system parameters; every other section is a preset that inherits them and
defines a sweep.  Angles are given as log10 of degrees and converted to
radians once, at load time.
"""

from __future__ import annotations

import configparser
import csv
import io
import json
import math
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .angular import ClusterAngles
from .channel import ChannelDims, iid_channel, trial_seed
from .correlation import (
    ENGINES,
    azimuth_corr_quadrature,
    transmit_correlation,
    ura_azimuth_corr_closed,
    zenith_corr_closed,
    zenith_corr_quadrature,
)
from .errors import ConfigError, CorrlabError, NotPSDError
from .geometry import CylGeometry, UraGeometry, most_square_factorization
from .metrics import GramStats
from .numkit import empirical_cdf, psd_sqrt
from .precoding import db_to_linear, mf_sinr_per_user

__all__ = [
    "ScenarioConfig",
    "ResultRow",
    "CSV_COLUMNS",
    "default_config_path",
    "log10deg_to_rad",
    "load_config",
    "load_presets",
    "run_experiment",
    "oracle_gap",
    "emit_results",
    "format_rows",
]

CSV_COLUMNS = ("scenario", "topology", "engine", "M", "K", "metric", "statistic", "value", "seed")
TOPOLOGIES = ("ura", "cylindrical", "iid")
METRICS = ("lambda_range", "mad", "diag_dominance", "sinr")
STATISTICS = ("mean", "median", "cdf")


def default_config_path() -> Path:
    """Path of the shipped preset file (fig4 .. fig7)."""
    return Path(str(resources.files("corrlab") / "presets" / "presets.ini"))


def log10deg_to_rad(x: float) -> float:
    return 10.0**x * math.pi / 180.0


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    topologies: Tuple[str, ...]
    engines: Tuple[str, ...]
    dims: Tuple[Tuple[int, int], ...]
    metrics: Tuple[str, ...]
    statistics: Tuple[str, ...]
    cluster: ClusterAngles
    d1: float = 0.5
    d2: float = 0.5
    radius: Optional[float] = None
    factorization: Dict[int, Tuple[int, int]] = field(default_factory=dict)
    delta_xpol: float = 0.01
    rho_d_db: float = 10.0
    n_trials: int = 500
    seed: int = 1
    carrier_ghz: float = 2.6
    n_draws: int = 10**6
    quad_tol: float = 1e-9
    out: Optional[str] = None

    def split(self, m: int) -> Tuple[int, int]:
        return self.factorization.get(m) or most_square_factorization(m)

    def geometry(self, topology: str, m: int):
        a, b = self.split(m)
        if topology == "ura":
            return UraGeometry(a, b, self.d1, self.d2)
        if topology == "cylindrical":
            return CylGeometry(a, b, self.d1, self.radius)
        raise ConfigError(f"no geometry for topology {topology!r}", field="topologies")

    def replace(self, **changes) -> "ScenarioConfig":
        data = {k: getattr(self, k) for k in self.__dataclass_fields__}
        data.update(changes)
        return ScenarioConfig(**data)


@dataclass(frozen=True)
class ResultRow:
    scenario: str
    topology: str
    engine: str
    M: int
    K: int
    metric: str
    statistic: str
    value: float
    seed: int

    def as_dict(self):
        return {c: getattr(self, c) for c in CSV_COLUMNS}


# ---------------------------------------------------------------- config


class _Section:
    """Typed accessors over one configparser section that report line numbers."""

    def __init__(self, parser, name, lines):
        self.parser = parser
        self.name = name
        self.sec = parser[name]
        self.lines = lines

    def line_of(self, key):
        section_re = re.compile(r"^\s*\[(.+?)\]")
        key_re = re.compile(rf"^\s*{re.escape(key)}\s*[=:]", re.IGNORECASE)
        current = None
        found = {}
        for no, text in enumerate(self.lines, start=1):
            m = section_re.match(text)
            if m:
                current = m.group(1).strip()
                continue
            if key_re.match(text):
                found.setdefault(current, no)
        return found.get(self.name, found.get(self.parser.default_section))

    def fail(self, key, message):
        raise ConfigError(f"[{self.name}] {message}", field=key, line=self.line_of(key))

    def raw(self, key, default=None):
        value = self.sec.get(key)
        if value is None or value.strip() == "":
            if default is None:
                self.fail(key, "missing required value")
            return default
        return value.strip()

    def number(self, key, default=None, kind=float):
        text = self.raw(key, None if default is None else str(default))
        try:
            value = kind(text)
        except ValueError:
            self.fail(key, f"malformed number {text!r}")
        if kind is float and not math.isfinite(value):
            self.fail(key, f"value must be finite, got {text!r}")
        return value

    def words(self, key, allowed, default=None):
        items = tuple(w.strip() for w in self.raw(key, default).split(",") if w.strip())
        bad = [w for w in items if w not in allowed]
        if bad or not items:
            self.fail(key, f"expected a comma list from {allowed}, got {items}")
        return items

    def dims(self, key):
        out = []
        for token in self.raw(key).split(","):
            m = re.fullmatch(r"\s*(\d+)\s*[xX]\s*(\d+)\s*", token)
            if not m:
                self.fail(key, f"malformed MxK entry {token.strip()!r}")
            mm, kk = int(m.group(1)), int(m.group(2))
            if not mm >= kk >= 1:
                self.fail(key, f"need M >= K >= 1, got {mm}x{kk}")
            out.append((mm, kk))
        return tuple(out)

    def factorization(self, key):
        text = self.raw(key, "auto")
        if text == "auto":
            return {}
        out = {}
        for token in text.split(","):
            m = re.fullmatch(r"\s*(\d+)\s*=\s*(\d+)\s*[xX]\s*(\d+)\s*", token)
            if not m:
                self.fail(key, f"malformed M=AxB entry {token.strip()!r}")
            mm, a, b = (int(g) for g in m.groups())
            if a * b != mm:
                self.fail(key, f"{a}x{b} does not multiply to {mm}")
            out[mm] = (a, b)
        return out


def _parse_section(parser, name, lines) -> ScenarioConfig:
    s = _Section(parser, name, lines)
    phi = log10deg_to_rad(s.number("phi_mean_log10deg", 0.7))
    theta = log10deg_to_rad(s.number("theta_mean_log10deg", 0.7))
    sd_phi = log10deg_to_rad(s.number("sigma_dphi_log10deg", -0.3))
    sd_theta = log10deg_to_rad(s.number("sigma_dtheta_log10deg", -0.3))
    try:
        cluster = ClusterAngles.from_sigmas(phi, theta, sd_phi, sd_theta)
    except CorrlabError as exc:
        s.fail("phi_mean_log10deg", str(exc))

    if "sqrt_delta_xpol" in s.sec and "delta_xpol" in s.sec:
        s.fail("delta_xpol", "give either delta_xpol or sqrt_delta_xpol, not both")
    if "sqrt_delta_xpol" in s.sec:
        delta = s.number("sqrt_delta_xpol") ** 2
    else:
        delta = s.number("delta_xpol", 0.01)
    if not 0.0 <= delta <= 1.0:
        s.fail("delta_xpol", f"must lie in [0, 1], got {delta}")

    radius_text = s.raw("radius", "auto")
    radius = None if radius_text == "auto" else s.number("radius")
    cfg = ScenarioConfig(
        name=name,
        topologies=s.words("topologies", TOPOLOGIES, "ura"),
        engines=s.words("engines", ENGINES, "closed_form"),
        dims=s.dims("dims"),
        metrics=s.words("metrics", METRICS),
        statistics=s.words("statistics", STATISTICS, "mean"),
        cluster=cluster,
        d1=s.number("d1", 0.5),
        d2=s.number("d2", 0.5),
        radius=radius,
        factorization=s.factorization("factorization"),
        delta_xpol=delta,
        rho_d_db=s.number("rho_d_db", 10.0),
        n_trials=s.number("n_trials", 500, int),
        seed=s.number("seed", 1, int),
        carrier_ghz=s.number("carrier_ghz", 2.6),
        n_draws=s.number("n_draws", 10**6, int),
        quad_tol=s.number("quad_tol", 1e-9),
        out=s.sec.get("out"),
    )
    for key, value in (("d1", cfg.d1), ("d2", cfg.d2), ("quad_tol", cfg.quad_tol)):
        if not value > 0:
            s.fail(key, f"must be positive, got {value}")
    if cfg.radius is not None and not cfg.radius > 0:
        s.fail("radius", f"must be positive, got {cfg.radius}")
    if cfg.n_trials < 1:
        s.fail("n_trials", "must be >= 1")
    if cfg.n_draws < 10**4:
        s.fail("n_draws", "must be >= 10000")
    for m, _ in cfg.dims:
        if m % 2 and set(cfg.topologies) - {"iid"}:
            s.fail("dims", f"M={m} is odd; the x-pol overlay needs even M")
    return cfg


def _read(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#",))
    try:
        parser.read_string(text, source=str(path))
    except configparser.ParsingError as exc:
        lineno = exc.errors[0][0] if exc.errors else None
        raise ConfigError(f"cannot parse {path}", line=lineno) from exc
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse {path}: {exc}", line=getattr(exc, "lineno", None)) from exc
    return parser, text.splitlines()


def load_presets(path) -> Dict[str, ScenarioConfig]:
    """Parse and validate every preset section of ``path``."""
    parser, lines = _read(path)
    if not parser.sections():
        raise ConfigError(f"{path} defines no preset sections")
    return {name: _parse_section(parser, name, lines) for name in parser.sections()}


def load_config(path, preset: Optional[str] = None) -> ScenarioConfig:
    """Load one preset.  ``preset`` may be omitted when the file defines exactly one."""
    parser, lines = _read(path)
    names = parser.sections()
    if preset is None:
        if len(names) != 1:
            raise ConfigError(f"{path} defines presets {names}; choose one", field="preset")
        preset = names[0]
    if preset not in names:
        raise ConfigError(f"preset {preset!r} not found in {path}", field="preset")
    return _parse_section(parser, preset, lines)


# ---------------------------------------------------------------- experiments


def _point_rows(cfg, topology, engine, m, k, samples):
    rows = []

    def add(metric, statistic, value):
        rows.append(ResultRow(cfg.name, topology, engine, m, k, metric, statistic, float(value), cfg.seed))

    for metric in cfg.metrics:
        x = samples[metric]
        finite = x[np.isfinite(x)]
        for stat in cfg.statistics:
            if stat == "mean":
                add(metric, "mean", x.mean())
                if metric == "sinr":
                    add(metric, "mean_db", 10.0 * math.log10(x.mean()))
                    add(metric, "stderr", x.std(ddof=1) / math.sqrt(len(x)) if len(x) > 1 else 0.0)
            elif stat == "median":
                add(metric, "median", np.median(x))
            elif stat == "cdf" and finite.size:
                for value, prob in empirical_cdf(finite):
                    add(metric, f"cdf:{prob!r}", value)
    return rows


def _run_point(cfg, m, k, root):
    dims = ChannelDims(m, k)
    rho = db_to_linear(cfg.rho_d_db)
    samples = {name: np.empty(cfg.n_trials) for name in METRICS}
    for t in range(cfg.n_trials):
        h = iid_channel(dims, trial_seed(cfg.seed, m, k, t))
        if root is not None:
            h = root @ h
        stats = GramStats.from_channel(h)
        samples["lambda_range"][t] = stats.lambda_range
        samples["mad"][t] = stats.mad
        samples["diag_dominance"][t] = stats.diag_dominance
        if "sinr" in cfg.metrics:
            samples["sinr"][t] = mf_sinr_per_user(h, rho).mean()
    return samples


def run_experiment(cfg: ScenarioConfig) -> List[ResultRow]:
    """Run every (topology, engine, M x K) point of ``cfg``.

    Channels for trial ``t`` at ``M x K`` are drawn from
    ``trial_seed(seed, M, K, t)``, so topologies are compared on common
    random numbers and the output is independent of execution order.  A
    correlation matrix that fails the PSD check yields a single diagnostic
    row (metric ``error``) for that point instead of aborting the run.
    """
    rows: List[ResultRow] = []
    for topology in cfg.topologies:
        engines = ("none",) if topology == "iid" else cfg.engines
        for engine in engines:
            roots = {}
            for m, k in cfg.dims:
                if topology == "iid":
                    root = None
                else:
                    if m not in roots:
                        try:
                            corr = transmit_correlation(
                                cfg.geometry(topology, m),
                                cfg.cluster,
                                engine=engine,
                                delta=cfg.delta_xpol,
                                tol=cfg.quad_tol,
                                n_draws=cfg.n_draws,
                                seed=trial_seed(cfg.seed, m, 0, 0),
                            )
                            roots[m] = psd_sqrt(corr.r_t)
                        except NotPSDError as exc:
                            roots[m] = exc
                    root = roots[m]
                    if isinstance(root, NotPSDError):
                        ratio = root.min_eigenvalue / root.max_eigenvalue
                        rows.append(
                            ResultRow(cfg.name, topology, engine, m, k, "error", "not_psd", ratio, cfg.seed)
                        )
                        continue
                rows.extend(_point_rows(cfg, topology, engine, m, k, _run_point(cfg, m, k, root)))
    return rows


def oracle_gap(cfg: ScenarioConfig, max_sep: int = 8) -> List[ResultRow]:
    """Closed form vs quadrature, absolute entrywise gap per URA separation.

    One row per separation ``0..max_sep`` for the zenith factor (spacing
    ``d1``) and the azimuth factor (spacing ``d2``); the separation is
    recorded in the statistic column and ``M``/``K`` are set to 0.
    """
    rows = []
    engine = "closed_form_vs_quadrature"
    for sep in range(max_sep + 1):
        zc = zenith_corr_closed((sep, 0), cfg.d1, cfg.cluster)
        zq = zenith_corr_quadrature((sep, 0), cfg.d1, cfg.cluster, cfg.quad_tol)
        ac = ura_azimuth_corr_closed((sep, 0), cfg.d2, cfg.cluster)
        aq = azimuth_corr_quadrature((sep, 0), cfg.d2, 0.0, cfg.cluster, cfg.quad_tol)
        for metric, gap in (("zenith_abs_gap", abs(zc - zq)), ("azimuth_abs_gap", abs(ac - aq))):
            rows.append(ResultRow(cfg.name, "ura", engine, 0, 0, metric, f"sep={sep}", gap, cfg.seed))
    return rows


# ---------------------------------------------------------------- output


def _fmt(value):
    if isinstance(value, float):
        return repr(value)
    return str(value)


def format_rows(rows: Sequence[ResultRow], fmt: str = "csv") -> str:
    """Serialise rows as CSV (header + one line per row, LF endings) or a JSON array."""
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow([_fmt(getattr(row, c)) for c in CSV_COLUMNS])
        return buf.getvalue()
    if fmt == "json":
        return json.dumps([row.as_dict() for row in rows], indent=1) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def emit_results(rows: Sequence[ResultRow], fmt: str, path) -> None:
    """Write ``rows`` to ``path`` as ``csv`` or ``json`` (UTF-8)."""
    if not rows:
        raise ValueError("no rows to emit")
    text = format_rows(rows, fmt)
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write results to {path}: {exc}") from exc


def parse_rows(text: str, fmt: str = "csv") -> List[ResultRow]:
    """Inverse of :func:`format_rows`."""
    if fmt == "json":
        records = json.loads(text)
    else:
        records = list(csv.DictReader(io.StringIO(text)))
    out = []
    for r in records:
        out.append(
            ResultRow(
                str(r["scenario"]),
                str(r["topology"]),
                str(r["engine"]),
                int(r["M"]),
                int(r["K"]),
                str(r["metric"]),
                str(r["statistic"]),
                float(r["value"]),
                int(r["seed"]),
            )
        )
    return out
