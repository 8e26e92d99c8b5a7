import numpy as np
import pytest
from hypothesis import strategies as st

from gaussep.symplectic import congruence, direct_sum, one_mode_symplectic


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


angles = st.floats(0.0, 2 * np.pi, allow_nan=False)
squeezes = st.floats(-1.5, 1.5, allow_nan=False)
euler = st.tuples(angles, squeezes, angles)


def two_mode_invariants_spectrum(cm):
    """Two-mode symplectic eigenvalues from Serafini's invariants, no eigensolver."""
    a = np.asarray(cm)
    da = np.linalg.det(a[:2, :2])
    db = np.linalg.det(a[2:, 2:])
    dc = np.linalg.det(a[:2, 2:])
    ds = np.linalg.det(a)
    delta = da + db + 2 * dc
    disc = np.sqrt(max(delta**2 - 4 * ds, 0.0))
    return np.sqrt([(delta - disc) / 2, (delta + disc) / 2])


def local_op(ops):
    return direct_sum(*(one_mode_symplectic(*op).data for op in ops))


def random_physical_two_mode(rng, nu_max=2.0):
    """Symplectic image of a thermal product; always physical."""
    from gaussep.symplectic import layered_symplectic, sample_layered_params

    nus = rng.uniform(0.5, nu_max, size=2)
    s = layered_symplectic(2, sample_layered_params(2, rng)).data
    return congruence(s, np.diag(np.repeat(nus, 2)))


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
