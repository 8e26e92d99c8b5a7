"""One-mode Gaussian channels acting on covariance matrices as
``sigma -> (1 + f)[sigma] + (0 + g)``.
"""
import enum
from dataclasses import dataclass

import numpy as np

from gaussep.kernels import apply_one_sided_batch
from gaussep.symplectic import CovarianceMatrix, rotation, symplectic_form

BOUNDARY_TOL = 1e-9
_OMEGA1 = symplectic_form(1)


class ChannelError(ValueError):
    pass


class NotAChannel(ChannelError):
    """``(f, g)`` violates complete positivity."""


class AsymmetricNoise(ChannelError):
    """The noise matrix ``g`` is not symmetric."""


class ChannelKind(str, enum.Enum):
    DISENTANGLING = "Disentangling"
    PRESERVING = "Preserving"
    BOUNDARY = "Boundary"


@dataclass(frozen=True, eq=False)
class GaussianChannel:
    f: np.ndarray
    g: np.ndarray

    def __post_init__(self):
        for name in ("f", "g"):
            a = np.array(getattr(self, name), dtype=float)
            if a.shape != (2, 2):
                raise ValueError(f"{name} must be 2x2, got shape {a.shape}")
            a.setflags(write=False)
            object.__setattr__(self, name, a)

    @property
    def det_f(self):
        return float(np.linalg.det(self.f))

    @property
    def det_g(self):
        return float(np.linalg.det(self.g))

    def physicality_margin(self):
        """``4 det g - (det f - 1)^2``; non-negative for every valid channel."""
        return 4 * self.det_g - (self.det_f - 1) ** 2

    def separability_margin(self):
        """``4 det g - (det f + 1)^2``; non-negative iff the channel disentangles."""
        return 4 * self.det_g - (self.det_f + 1) ** 2

    def complete_positivity_margin(self):
        """Smallest eigenvalue of ``g + (i/2)(Omega - f Omega f^T)``."""
        om = _OMEGA1
        return float(np.linalg.eigvalsh(self.g + 0.5j * (om - self.f @ om @ self.f.T))[0])

    def __repr__(self):
        return f"GaussianChannel(f={self.f.tolist()!r}, g={self.g.tolist()!r})"


@dataclass(frozen=True)
class ChannelVerdict:
    kind: ChannelKind
    margin: float

    @property
    def separable_output(self):
        """Binary form of the criterion; equality counts as separable."""
        return self.kind is not ChannelKind.PRESERVING


def make_channel(f, g, tol=BOUNDARY_TOL):
    """Validated :class:`GaussianChannel`.

    Both the determinant inequality ``4 det g >= (det f - 1)^2`` and the
    positive-semidefinite form are checked; they agree for 2x2 matrices once
    ``g`` is PSD, the determinant form alone admits negative-definite ``g``.
    """
    g = np.asarray(g, dtype=float)
    if g.shape == (2, 2) and abs(g[0, 1] - g[1, 0]) > 1e-12 * max(1.0, np.max(np.abs(g))):
        raise AsymmetricNoise(f"g is not symmetric: {g.tolist()}")
    ch = GaussianChannel(f, 0.5 * (g + g.T))
    scale = max(1.0, abs(4 * ch.det_g) + (ch.det_f - 1) ** 2)
    if ch.physicality_margin() < -tol * scale:
        raise NotAChannel(f"4 det g < (det f - 1)^2 (margin {ch.physicality_margin():.3e})")
    if ch.complete_positivity_margin() < -tol * max(1.0, float(np.max(np.abs(ch.g)))):
        raise NotAChannel("g + (i/2)(Omega - f Omega f^T) is not positive semidefinite")
    return ch


def channel_margin_scale(det_f, det_g):
    return np.maximum(1.0, np.abs(4 * det_g) + (det_f + 1) ** 2)


def classify(ch, tol=BOUNDARY_TOL):
    """Disentangling iff ``4 det g >= (det f + 1)^2``; margins within ``tol``
    (relative to the size of the terms) are reported as Boundary."""
    margin = ch.separability_margin()
    band = tol * float(channel_margin_scale(ch.det_f, ch.det_g))
    if margin > band:
        kind = ChannelKind.DISENTANGLING
    elif margin < -band:
        kind = ChannelKind.PRESERVING
    else:
        kind = ChannelKind.BOUNDARY
    return ChannelVerdict(kind, margin)


def apply_one_sided(cm, ch, mode):
    """Act with ``ch`` on ``mode`` and leave the other modes untouched."""
    s = np.asarray(cm, dtype=float)
    n = s.shape[0] // 2
    if not 0 <= mode < n:
        raise IndexError(f"mode {mode} out of range for {n} modes")
    out = apply_one_sided_batch(s[None], ch.f[None], ch.g[None], mode)[0]
    return CovarianceMatrix(out)


def pure_loss(eta):
    if not 0 <= eta <= 1:
        raise ValueError("eta must lie in [0, 1]")
    return make_channel(np.sqrt(eta) * np.eye(2), 0.5 * (1 - eta) * np.eye(2))


def amplifier(gain):
    if not gain >= 1:
        raise ValueError("gain must be >= 1")
    return make_channel(np.sqrt(gain) * np.eye(2), 0.5 * (gain - 1) * np.eye(2))


def classical_noise(n):
    if not n >= 0:
        raise ValueError("n must be >= 0")
    return make_channel(np.eye(2), n * np.eye(2))


def phase_conjugate(gain):
    if not gain >= 1:
        raise ValueError("gain must be >= 1")
    return make_channel(np.sqrt(gain) * np.diag([1.0, -1.0]), 0.5 * (gain + 1) * np.eye(2))


def erase_to_vacuum():
    return make_channel(np.zeros((2, 2)), 0.5 * np.eye(2))


def identity_channel():
    return make_channel(np.eye(2), np.zeros((2, 2)))


CATALOG = {
    "pure_loss": pure_loss,
    "amplifier": amplifier,
    "classical_noise": classical_noise,
    "phase_conjugate": phase_conjugate,
    "erase_to_vacuum": erase_to_vacuum,
    "identity": identity_channel,
}


def _random_noise(rng):
    q = rotation(rng.uniform(0.0, 2 * np.pi))
    return q @ np.diag(rng.uniform(0.0, 3.0, size=2)) @ q.T


def random_channel(rng, tol=BOUNDARY_TOL, max_tries=10_000):
    """Rejection-sample a valid channel.

    ``f = a R(theta) diag(1, +-1) R(phi)`` with ``a`` uniform on [0, 2] and
    the sign branch fair, ``g = Q diag(g1, g2) Q^T`` with ``g_i`` uniform on
    [0, 3].
    """
    for _ in range(max_tries):
        a = rng.uniform(0.0, 2.0)
        sign = 1.0 if rng.random() < 0.5 else -1.0
        f = a * rotation(rng.uniform(0.0, 2 * np.pi)) @ np.diag([1.0, sign]) @ rotation(rng.uniform(0.0, 2 * np.pi))
        g = _random_noise(rng)
        try:
            return make_channel(f, g, tol)
        except NotAChannel:
            continue
    raise RuntimeError("random_channel: rejection sampling did not terminate")


def random_rank_deficient_channel(rng, tol=BOUNDARY_TOL, max_tries=10_000):
    """Valid channel with ``det f = 0`` (rank one, or zero with prob. 1/10)."""
    if rng.random() < 0.1:
        f = np.zeros((2, 2))
    else:
        a = rng.uniform(0.0, 2.0)
        f = a * rotation(rng.uniform(0.0, 2 * np.pi)) @ np.diag([1.0, 0.0]) @ rotation(rng.uniform(0.0, 2 * np.pi))
    for _ in range(max_tries):
        try:
            return make_channel(f, _random_noise(rng), tol)
        except NotAChannel:
            continue
    raise RuntimeError("random_rank_deficient_channel: rejection sampling did not terminate")
