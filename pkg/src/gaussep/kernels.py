"""Batched inner loops shared by the single-state API and the verifier.

Each kernel has a numba version (explicit loops over the batch, closed-form
2x2/3x3/4x4 determinants) and a numpy version built from ``np.linalg`` and
``matmul`` broadcasting. ``_accel.USE_NUMBA`` picks the one exported under
the public name; both stay importable so they can be compared.
"""
import numpy as np

from gaussep._accel import USE_NUMBA, njit

__all__ = ["two_mode_dets", "apply_one_sided_batch", "USE_NUMBA"]

# columns of the array returned by two_mode_dets
DET_ALPHA, DET_BETA, DET_GAMMA, DET_SIGMA, MINOR_1, MINOR_3 = range(6)


@njit
def _det2(a, b, c, d):
    return a * d - b * c


@njit
def _det3(m, i0, i1, i2):
    return (
        m[i0, i0] * (m[i1, i1] * m[i2, i2] - m[i1, i2] * m[i2, i1])
        - m[i0, i1] * (m[i1, i0] * m[i2, i2] - m[i1, i2] * m[i2, i0])
        + m[i0, i2] * (m[i1, i0] * m[i2, i1] - m[i1, i1] * m[i2, i0])
    )


@njit
def _det4(m):
    # Laplace expansion along the first two rows via complementary 2x2 minors.
    s0 = m[0, 0] * m[1, 1] - m[1, 0] * m[0, 1]
    s1 = m[0, 0] * m[1, 2] - m[1, 0] * m[0, 2]
    s2 = m[0, 0] * m[1, 3] - m[1, 0] * m[0, 3]
    s3 = m[0, 1] * m[1, 2] - m[1, 1] * m[0, 2]
    s4 = m[0, 1] * m[1, 3] - m[1, 1] * m[0, 3]
    s5 = m[0, 2] * m[1, 3] - m[1, 2] * m[0, 3]
    c5 = m[2, 2] * m[3, 3] - m[3, 2] * m[2, 3]
    c4 = m[2, 1] * m[3, 3] - m[3, 1] * m[2, 3]
    c3 = m[2, 1] * m[3, 2] - m[3, 1] * m[2, 2]
    c2 = m[2, 0] * m[3, 3] - m[3, 0] * m[2, 3]
    c1 = m[2, 0] * m[3, 2] - m[3, 0] * m[2, 2]
    c0 = m[2, 0] * m[3, 1] - m[3, 0] * m[2, 1]
    return s0 * c5 - s1 * c4 + s2 * c3 + s3 * c2 - s4 * c1 + s5 * c0


@njit
def _two_mode_dets_numba(cms):
    n = cms.shape[0]
    out = np.empty((n, 6))
    for k in range(n):
        m = cms[k]
        out[k, 0] = _det2(m[0, 0], m[0, 1], m[1, 0], m[1, 1])
        out[k, 1] = _det2(m[2, 2], m[2, 3], m[3, 2], m[3, 3])
        out[k, 2] = _det2(m[0, 2], m[0, 3], m[1, 2], m[1, 3])
        out[k, 3] = _det4(m)
        out[k, 4] = m[0, 0]
        out[k, 5] = _det3(m, 0, 1, 2)
    return out


def _two_mode_dets_numpy(cms):
    cms = np.asarray(cms, dtype=float)
    out = np.empty((cms.shape[0], 6))
    out[:, 0] = np.linalg.det(cms[:, 0:2, 0:2])
    out[:, 1] = np.linalg.det(cms[:, 2:4, 2:4])
    out[:, 2] = np.linalg.det(cms[:, 0:2, 2:4])
    out[:, 3] = np.linalg.det(cms)
    out[:, 4] = cms[:, 0, 0]
    out[:, 5] = np.linalg.det(cms[:, 0:3, 0:3])
    return out


@njit
def _apply_one_sided_numba(cms, f, g, mode):
    n, dim, _ = cms.shape
    out = cms.copy()
    j = 2 * mode
    for k in range(n):
        fk = f[k]
        s = cms[k]
        o = out[k]
        # rows of the channel block
        for c in range(dim):
            a0 = s[j, c]
            a1 = s[j + 1, c]
            o[j, c] = fk[0, 0] * a0 + fk[0, 1] * a1
            o[j + 1, c] = fk[1, 0] * a0 + fk[1, 1] * a1
        # columns of the channel block (uses the row-updated matrix)
        for r in range(dim):
            b0 = o[r, j]
            b1 = o[r, j + 1]
            o[r, j] = b0 * fk[0, 0] + b1 * fk[0, 1]
            o[r, j + 1] = b0 * fk[1, 0] + b1 * fk[1, 1]
        for a in range(2):
            for b in range(2):
                o[j + a, j + b] += g[k, a, b]
        # exact symmetry on the touched rows/columns
        for r in range(dim):
            for c in range(2):
                v = 0.5 * (o[r, j + c] + o[j + c, r])
                o[r, j + c] = v
                o[j + c, r] = v
    return out


def _apply_one_sided_numpy(cms, f, g, mode):
    cms = np.asarray(cms, dtype=float)
    j = slice(2 * mode, 2 * mode + 2)
    out = cms.copy()
    out[:, j, :] = f @ cms[:, j, :]
    out[:, :, j] = out[:, :, j] @ np.swapaxes(f, -1, -2)
    out[:, j, j] += g
    return 0.5 * (out + np.swapaxes(out, -1, -2))


if USE_NUMBA:
    _two_mode_dets = _two_mode_dets_numba
    _apply = _apply_one_sided_numba
else:
    _two_mode_dets = _two_mode_dets_numpy
    _apply = _apply_one_sided_numpy


def two_mode_dets(cms):
    """Determinants of the two-mode block structure for a stack of 4x4 CMs.

    Returns an ``(n, 6)`` array with columns ``det alpha``, ``det beta``,
    ``det gamma``, ``det sigma``, ``sigma[0, 0]`` and the leading 3x3 minor.
    """
    cms = np.ascontiguousarray(cms, dtype=float)
    if cms.ndim != 3 or cms.shape[1:] != (4, 4):
        raise ValueError(f"expected a stack of 4x4 matrices, got shape {cms.shape}")
    return _two_mode_dets(cms)


def apply_one_sided_batch(cms, f, g, mode):
    """Apply per-item channels ``(f[k], g[k])`` to ``mode`` of each ``cms[k]``."""
    cms = np.ascontiguousarray(cms, dtype=float)
    f = np.ascontiguousarray(f, dtype=float)
    g = np.ascontiguousarray(g, dtype=float)
    n, dim, _ = cms.shape
    if f.shape != (n, 2, 2) or g.shape != (n, 2, 2):
        raise ValueError("f and g must have shape (n, 2, 2) matching the CM stack")
    if not 0 <= mode < dim // 2:
        raise IndexError(f"mode {mode} out of range for {dim // 2} modes")
    return _apply(cms, f, g, int(mode))
