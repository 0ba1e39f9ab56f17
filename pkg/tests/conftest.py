import math

import numpy as np
import pytest

from corrlab import ClusterAngles

DEG = math.pi / 180


def reference_cluster(n_wrap=10):
    """Mean AOD 10**0.7 deg, offset SD 10**-0.3 deg on both axes."""
    return ClusterAngles.from_sigmas(
        10**0.7 * DEG, 10**0.7 * DEG, 10**-0.3 * DEG, 10**-0.3 * DEG, n_wrap
    )


@pytest.fixture
def ref_cluster():
    return reference_cluster()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_hermitian(rng, n):
    a = random_complex(rng, n, n)
    return a + a.conj().T


def random_psd(rng, n):
    a = random_complex(rng, n, n)
    return a @ a.conj().T


# -------------------------------------------------------------- acceptance report

_ACCEPTANCE = {}


class _Recorder:
    """Collects clause outcomes per acceptance criterion."""

    def __call__(self, number, clause, ok, detail=""):
        _ACCEPTANCE.setdefault(number, []).append((clause, bool(ok), detail))
        line = f"criterion {number} [{clause}]: {'PASS' if ok else 'FAIL'} {detail}"
        print(line)
        return ok


@pytest.fixture
def record():
    return _Recorder()


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        clauses = _ACCEPTANCE[number]
        ok = all(c[1] for c in clauses)
        parts = "; ".join(f"{name}={'ok' if good else 'FAIL'} {detail}".strip() for name, good, detail in clauses)
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}: {parts}")
