"""Gaussian state families and two-mode block access."""
from dataclasses import dataclass, field

import numpy as np

from gaussep.symplectic import (
    CovarianceMatrix,
    congruence,
    direct_sum,
    layered_symplectic,
    one_mode_symplectic,
    sample_layered_params,
    sample_one_mode_params,
    symplectic_eigenvalues,
)

PURITY_TOL = 1e-8
SIGMA_Z = np.diag([1.0, -1.0])


@dataclass(frozen=True, eq=False)
class TwoModeBlocks:
    """``sigma = [[alpha, gamma], [gamma^T, beta]]``."""

    alpha: np.ndarray
    beta: np.ndarray
    gamma: np.ndarray

    def assemble(self):
        return CovarianceMatrix(np.block([[self.alpha, self.gamma], [self.gamma.T, self.beta]]))


@dataclass(frozen=True)
class PureStateSpec:
    """Parameters of a pure state built from a TMSS by local symplectics.

    ``local_ops`` holds Euler triples ``(theta, s, phi)``: ``[S_A, S_B]`` for
    two modes, ``[S_B]`` for more. ``global_mixer`` parametrises the
    ``(N-1)``-mode symplectic on the A side (see
    :func:`gaussep.symplectic.layered_symplectic`) and is empty for N = 2.
    """

    squeeze_r: float
    local_ops: tuple
    n_modes: int = 2
    global_mixer: tuple = field(default=())

    def __post_init__(self):
        if not self.squeeze_r >= 0:
            raise ValueError("squeeze_r must be non-negative")
        if self.n_modes < 2:
            raise ValueError("a pure entangled-input spec needs at least two modes")

    def as_dict(self):
        return {
            "squeeze_r": self.squeeze_r,
            "local_ops": [list(op) for op in self.local_ops],
            "n_modes": self.n_modes,
            "global_mixer": list(self.global_mixer),
        }


def tmss(r):
    """Two-mode squeezed vacuum: ``(1/2)[[cosh r I, sinh r Z], [sinh r Z, cosh r I]]``."""
    if not (np.isfinite(r) and r >= 0):
        raise ValueError("r must be finite and non-negative")
    c = 0.5 * np.cosh(r) * np.eye(2)
    s = 0.5 * np.sinh(r) * SIGMA_Z
    return CovarianceMatrix(np.block([[c, s], [s, c]]))


def vacuum(n_modes):
    if n_modes < 1:
        raise ValueError("n_modes must be >= 1")
    return CovarianceMatrix(0.5 * np.eye(2 * n_modes))


def thermal(nu, n_modes=1):
    """Product of thermal states with symplectic eigenvalue ``nu`` (>= 1/2)."""
    return CovarianceMatrix(nu * np.eye(2 * n_modes))


def blocks(cm):
    s = np.asarray(cm, dtype=float)
    if s.shape != (4, 4):
        raise ValueError(f"blocks() needs a two-mode CM, got shape {s.shape}")
    return TwoModeBlocks(s[:2, :2].copy(), s[2:, 2:].copy(), s[:2, 2:].copy())


def is_pure(cm, tol=PURITY_TOL):
    return bool(np.all(np.abs(symplectic_eigenvalues(cm) - 0.5) <= tol))


def random_pure_two_mode(spec):
    """``(S_A + S_B)[tmss(r)]``."""
    if spec.n_modes != 2 or len(spec.local_ops) != 2:
        raise ValueError("two-mode spec needs n_modes=2 and two local-op triples")
    sa = one_mode_symplectic(*spec.local_ops[0]).data
    sb = one_mode_symplectic(*spec.local_ops[1]).data
    return CovarianceMatrix(congruence(direct_sum(sa, sb), tmss(spec.squeeze_r).data))


def random_pure_n_mode(spec):
    """``(S_{A,N-1} + S_B)[vac_{A1..A(N-2)} + tmss(r)_{A(N-1),B}]``, mode B last."""
    n = spec.n_modes
    if n < 3 or len(spec.local_ops) != 1:
        raise ValueError("N-mode spec needs n_modes >= 3 and one local-op triple for B")
    core = direct_sum(vacuum(n - 2).data, tmss(spec.squeeze_r).data)
    sa = layered_symplectic(n - 1, spec.global_mixer).data
    sb = one_mode_symplectic(*spec.local_ops[0]).data
    return CovarianceMatrix(congruence(direct_sum(sa, sb), core))


def random_pure_state(spec):
    return random_pure_two_mode(spec) if spec.n_modes == 2 else random_pure_n_mode(spec)


def sample_pure_spec(rng, n_modes=2, r_range=(0.1, 2.0)):
    """Random :class:`PureStateSpec` with ``r`` uniform on ``r_range``."""
    r = float(rng.uniform(*r_range))
    if n_modes == 2:
        return PureStateSpec(r, (sample_one_mode_params(rng), sample_one_mode_params(rng)))
    mixer = sample_layered_params(n_modes - 1, rng)
    return PureStateSpec(r, (sample_one_mode_params(rng),), n_modes, mixer)
