"""Phase-space linear algebra.

Conventions: hbar = 1, vacuum variance 1/2, interleaved quadrature ordering
``(q1, p1, q2, p2, ...)``.
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

SYMMETRY_TOL = 1e-12
SYMPLECTIC_TOL = 1e-10
PAIRING_RTOL = 1e-8


class SymplecticSpectrumError(np.linalg.LinAlgError):
    """Eigenvalues of ``i Omega sigma`` could not be paired by modulus."""


def _symmetrize(a):
    return 0.5 * (a + a.T)


@dataclass(frozen=True, eq=False)
class CovarianceMatrix:
    """Real symmetric 2N x 2N covariance matrix (immutable)."""

    data: np.ndarray

    def __post_init__(self):
        a = np.array(self.data, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] % 2:
            raise ValueError(f"covariance matrix must be 2N x 2N, got shape {a.shape}")
        scale = max(1.0, float(np.max(np.abs(a)))) if a.size else 1.0
        if np.max(np.abs(a - a.T)) > 1e-6 * scale:
            raise ValueError("covariance matrix is not symmetric")
        a = _symmetrize(a)
        a.setflags(write=False)
        object.__setattr__(self, "data", a)

    @property
    def n_modes(self):
        return self.data.shape[0] // 2

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.data
        return self.data.astype(dtype)

    def __eq__(self, other):
        if not isinstance(other, CovarianceMatrix):
            return NotImplemented
        return np.array_equal(self.data, other.data)

    __hash__ = None

    def __repr__(self):
        return f"CovarianceMatrix(n_modes={self.n_modes}, data={self.data.tolist()!r})"


@dataclass(frozen=True, eq=False)
class SymplecticMatrix:
    """Real 2N x 2N matrix with ``S Omega S^T = Omega`` (immutable)."""

    data: np.ndarray

    def __post_init__(self):
        a = np.array(self.data, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] % 2:
            raise ValueError(f"symplectic matrix must be 2N x 2N, got shape {a.shape}")
        if symplectic_residual(a) > SYMPLECTIC_TOL * max(1.0, np.linalg.norm(a) ** 2):
            raise ValueError("matrix does not preserve the symplectic form")
        a.setflags(write=False)
        object.__setattr__(self, "data", a)

    @property
    def n_modes(self):
        return self.data.shape[0] // 2

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.data
        return self.data.astype(dtype)

    def __matmul__(self, other):
        if isinstance(other, SymplecticMatrix):
            return SymplecticMatrix(self.data @ other.data)
        return self.data @ np.asarray(other)

    def direct_sum(self, other):
        return SymplecticMatrix(direct_sum(self.data, np.asarray(other)))


def symplectic_form(n_modes):
    """Block-diagonal ``Omega`` with one ``[[0, 1], [-1, 0]]`` block per mode."""
    if n_modes < 1:
        raise ValueError("n_modes must be >= 1")
    return _omega(int(n_modes)).copy()


@lru_cache(maxsize=None)
def _omega(n_modes):
    om = np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))
    om.setflags(write=False)
    return om


def direct_sum(*mats):
    dims = [np.asarray(m).shape[0] for m in mats]
    out = np.zeros((sum(dims), sum(dims)))
    i = 0
    for m, d in zip(mats, dims):
        out[i : i + d, i : i + d] = m
        i += d
    return out


def symplectic_residual(s):
    """Max-abs entry of ``S Omega S^T - Omega``."""
    s = np.asarray(s, dtype=float)
    om = _omega(s.shape[0] // 2)
    return float(np.max(np.abs(s @ om @ s.T - om)))


def congruence(a, b):
    """Return ``a b a^T``, symmetrised."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0] or b.shape[0] != b.shape[1]:
        raise ValueError(f"incompatible shapes {a.shape} and {b.shape}")
    return _symmetrize(a @ b @ a.T)


def symplectic_eigenvalues(cm):
    """Ascending symplectic eigenvalues of a covariance matrix.

    Computed as the moduli of the eigenvalues of ``i Omega sigma``, which come
    in +/- pairs; each pair is reported once.
    """
    s = np.asarray(cm, dtype=float)
    return symplectic_eigenvalues_batch(s[None])[0]


def symplectic_eigenvalues_batch(cms):
    """Row-wise :func:`symplectic_eigenvalues` for a stack of CMs."""
    cms = np.asarray(cms, dtype=float)
    n = cms.shape[-1] // 2
    om = _omega(n)
    lam = np.linalg.eigvals(1j * (om @ cms))
    mod = np.sort(np.abs(lam), axis=-1)
    lo, hi = mod[..., 0::2], mod[..., 1::2]
    scale = np.maximum(mod[..., -1:], 1.0)
    if np.any(np.abs(hi - lo) > PAIRING_RTOL * scale):
        raise SymplecticSpectrumError("symplectic spectrum does not pair up; input is ill-conditioned")
    return 0.5 * (lo + hi)


def is_physical(cm, tol=1e-9):
    """Uncertainty principle: ``sigma + (i/2) Omega`` is positive semidefinite."""
    return physicality_margin(cm) >= -tol


def physicality_margin(cm):
    """Smallest eigenvalue of the Hermitian matrix ``sigma + (i/2) Omega``."""
    s = np.asarray(cm, dtype=float)
    om = _omega(s.shape[0] // 2)
    return float(np.linalg.eigvalsh(s + 0.5j * om)[0])


def partial_transpose(cm, mode):
    """Flip the sign of ``p`` on ``mode``: returns ``L sigma L``."""
    s = np.asarray(cm, dtype=float)
    n = s.shape[0] // 2
    if not 0 <= mode < n:
        raise IndexError(f"mode {mode} out of range for {n} modes")
    out = s.copy()
    k = 2 * mode + 1
    out[k, :] *= -1.0
    out[:, k] *= -1.0
    return CovarianceMatrix(out)


def rotation(theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def one_mode_symplectic(theta, s, phi):
    """Euler form ``R(theta) diag(e^s, e^-s) R(phi)``."""
    if not np.all(np.isfinite([theta, s, phi])):
        raise ValueError("symplectic parameters must be finite")
    return SymplecticMatrix(rotation(theta) @ np.diag([np.exp(s), np.exp(-s)]) @ rotation(phi))


# The spec-level name: callers pass explicit (random) parameters.
random_one_mode_symplectic = one_mode_symplectic


def beam_splitter(n_modes, i, j, angle):
    """Passive two-mode mixer between modes ``i`` and ``j``."""
    c, s = np.cos(angle), np.sin(angle)
    out = np.eye(2 * n_modes)
    for k in range(2):
        a, b = 2 * i + k, 2 * j + k
        out[a, a], out[a, b] = c, s
        out[b, a], out[b, b] = -s, c
    return out


def sample_one_mode_params(rng, squeeze=1.5):
    """Angles uniform on [0, 2pi), squeeze uniform on [-squeeze, squeeze]."""
    return (
        float(rng.uniform(0.0, 2 * np.pi)),
        float(rng.uniform(-squeeze, squeeze)),
        float(rng.uniform(0.0, 2 * np.pi)),
    )


def sample_layered_params(n_modes, rng):
    """Flat parameter tuple for :func:`layered_symplectic`."""
    params = []
    depth = n_modes
    for _ in range(depth):
        for _ in range(n_modes):
            params.extend(sample_one_mode_params(rng))
        params.extend(float(rng.uniform(0.0, 2 * np.pi)) for _ in range(n_modes - 1))
    return tuple(params)


def layered_symplectic(n_modes, params):
    """Depth-``n_modes`` circuit of Euler symplectics and nearest-neighbour mixers.

    Each layer applies one Euler symplectic per mode (3 parameters each),
    then beam splitters on bonds ``(0,1), (1,2), ...`` (one angle each).
    An empty ``params`` gives the identity.
    """
    if not params:
        return SymplecticMatrix(np.eye(2 * n_modes))
    per_layer = 3 * n_modes + (n_modes - 1)
    if len(params) != n_modes * per_layer:
        raise ValueError(f"expected {n_modes * per_layer} parameters, got {len(params)}")
    s = np.eye(2 * n_modes)
    it = iter(params)
    for _ in range(n_modes):
        local = direct_sum(*(one_mode_symplectic(next(it), next(it), next(it)).data for _ in range(n_modes)))
        s = local @ s
        for i in range(n_modes - 1):
            s = beam_splitter(n_modes, i, i + 1, next(it)) @ s
    return SymplecticMatrix(s)


def random_n_mode_symplectic(n_modes, seed):
    """Random symplectic from the layered circuit; one mode reduces to an Euler draw."""
    if n_modes < 1:
        raise ValueError("n_modes must be >= 1")
    rng = np.random.default_rng(seed)
    if n_modes == 1:
        return one_mode_symplectic(*sample_one_mode_params(rng))
    return layered_symplectic(n_modes, sample_layered_params(n_modes, rng))
