"""Separability tests for two-mode and 1 x (N-1) Gaussian bipartitions.

Margins follow one sign convention throughout: positive means entangled.
Verdicts compare against a tolerance scaled by the size of the terms that
enter the margin, so large-squeezing inputs are judged at the same relative
precision as small ones.
"""
import enum
from dataclasses import dataclass

import numpy as np

from gaussep import kernels
from gaussep.symplectic import partial_transpose, symplectic_eigenvalues, symplectic_eigenvalues_batch

SEP_TOL = 1e-9


class WrongModeCount(ValueError):
    pass


class Method(str, enum.Enum):
    DETERMINANT = "DeterminantForm"
    PPT = "PPTForm"


@dataclass(frozen=True)
class SeparabilityVerdict:
    separable: bool
    margin: float
    method: Method
    scale: float = 1.0

    def is_boundary(self, band=SEP_TOL):
        return abs(self.margin) <= band * self.scale


def determinant_margins(cms):
    """Vectorised two-mode separability and physicality margins.

    Returns ``(sep_margin, phys_margin, scale)`` arrays where

    * ``sep_margin  = det a + det b - 2 det c - (4 det s + 1/4)``
    * ``phys_margin = det a + det b + 2 det c - (4 det s + 1/4)``
    """
    d = kernels.two_mode_dets(cms)
    da, db, dc, ds = d[:, 0], d[:, 1], d[:, 2], d[:, 3]
    rhs = 4 * ds + 0.25
    scale = np.maximum(1.0, np.abs(da) + np.abs(db) + 2 * np.abs(dc) + np.abs(rhs))
    return da + db - 2 * dc - rhs, da + db + 2 * dc - rhs, scale


def two_mode_separable(cm, tol=SEP_TOL):
    """Determinant criterion: ``det a + det b - 2 det c <= 4 det s + 1/4``."""
    s = np.asarray(cm, dtype=float)
    if s.shape != (4, 4):
        raise WrongModeCount(f"two_mode_separable needs 2 modes, got shape {s.shape}")
    sep, _, scale = determinant_margins(s[None])
    margin, scale = float(sep[0]), float(scale[0])
    return SeparabilityVerdict(margin <= tol * scale, margin, Method.DETERMINANT, scale)


def physical_determinant_form(cm, tol=SEP_TOL):
    """Physicality of a two-mode CM from determinants alone.

    Requires ``sigma > 0`` (leading principal minors), both reduced blocks
    to be one-mode physical, ``det sigma >= 1/16`` and
    ``det a + det b + 2 det c <= 4 det s + 1/4``. The last inequality alone
    also admits matrices whose two symplectic eigenvalues are both below 1/2,
    which the ``det sigma`` bound excludes.

    Returns ``(physical, margin)`` where ``margin`` is the smallest of the
    individual scaled slacks (negative when a condition fails).
    """
    s = np.asarray(cm, dtype=float)
    if s.shape != (4, 4):
        raise WrongModeCount(f"physical_determinant_form needs 2 modes, got shape {s.shape}")
    ok, slack = _physical_det_batch(s[None], tol)
    return bool(ok[0]), float(slack[0])


def _physical_det_batch(cms, tol=SEP_TOL):
    d = kernels.two_mode_dets(cms)
    da, db, dc, ds, m1, m3 = (d[:, k] for k in range(6))
    _, phys, scale = determinant_margins(cms)
    slacks = np.stack(
        [
            m1 / np.maximum(1.0, np.abs(m1)),
            (da - 0.25) / np.maximum(1.0, np.abs(da)),
            (db - 0.25) / np.maximum(1.0, np.abs(db)),
            m3 / np.maximum(1.0, np.abs(m3)),
            (ds - 1 / 16) / np.maximum(1.0, np.abs(ds)),
            -phys / scale,
        ],
        axis=1,
    )
    slack = slacks.min(axis=1)
    return slack >= -tol, slack


def ppt_margins(cms, mode):
    """``1/2 - min PT symplectic eigenvalue`` and its scale, for a stack of CMs."""
    cms = np.array(cms, dtype=float)
    k = 2 * mode + 1
    cms[:, k, :] *= -1.0
    cms[:, :, k] *= -1.0
    nu = symplectic_eigenvalues_batch(cms)[:, 0]
    scale = np.maximum(1.0, np.max(np.abs(cms), axis=(1, 2)))
    return 0.5 - nu, scale


def ppt_separable(cm, mode, tol=SEP_TOL):
    """PPT across ``{mode} | rest``; decisive for 1 x (N-1) Gaussian splits."""
    s = np.asarray(cm, dtype=float)
    n = s.shape[0] // 2
    if not 0 <= mode < n:
        raise IndexError(f"mode {mode} out of range for {n} modes")
    margin, scale = ppt_margins(s[None], mode)
    margin, scale = float(margin[0]), float(scale[0])
    return SeparabilityVerdict(margin <= tol * scale, margin, Method.PPT, scale)


def log_negativity(cm, mode):
    """``max(0, -ln(2 nu_min))`` of the partial transpose across ``{mode} | rest``."""
    nu = symplectic_eigenvalues(partial_transpose(cm, mode))[0]
    return max(0.0, -float(np.log(2 * nu)))
