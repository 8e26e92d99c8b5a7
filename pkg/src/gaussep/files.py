"""JSON state and channel files.

State files carry the convention explicitly (``ordering`` and
``vacuum_variance``) and are rejected if either differs from the one used
here. Matrices are stored row-major; floats are written with ``repr`` so a
save/load round trip is exact.
"""
import json

import numpy as np

from gaussep.channels import GaussianChannel, make_channel
from gaussep.symplectic import CovarianceMatrix

SCHEMA_VERSION = "1"
ORDERING = "q1p1q2p2"
VACUUM_VARIANCE = 0.5


class MalformedFile(ValueError):
    pass


def _read(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedFile(f"{path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise MalformedFile(f"{path}: top level must be an object")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise MalformedFile(f"{path}: unsupported schema_version {doc.get('schema_version')!r}")
    return doc


def _floats(values, n, what):
    if not isinstance(values, list) or len(values) != n:
        raise MalformedFile(f"{what} must be a list of {n} numbers")
    try:
        arr = np.array(values, dtype=float)
    except (TypeError, ValueError) as exc:
        raise MalformedFile(f"{what}: {exc}") from exc
    if not np.all(np.isfinite(arr)):
        raise MalformedFile(f"{what} contains non-finite entries")
    return arr


def state_to_dict(cm):
    a = np.asarray(cm, dtype=float)
    return {
        "schema_version": SCHEMA_VERSION,
        "n_modes": a.shape[0] // 2,
        "ordering": ORDERING,
        "vacuum_variance": VACUUM_VARIANCE,
        "matrix": a.ravel().tolist(),
    }


def save_state(cm, path):
    with open(path, "w", newline="\n") as fh:
        json.dump(state_to_dict(cm), fh, indent=2)
        fh.write("\n")


def load_state(path):
    doc = _read(path)
    n = doc.get("n_modes")
    if not isinstance(n, int) or n < 1:
        raise MalformedFile(f"{path}: n_modes must be a positive integer")
    if doc.get("ordering") != ORDERING:
        raise MalformedFile(f"{path}: ordering must be {ORDERING!r}, got {doc.get('ordering')!r}")
    if doc.get("vacuum_variance") != VACUUM_VARIANCE:
        raise MalformedFile(f"{path}: vacuum_variance must be {VACUUM_VARIANCE}")
    a = _floats(doc.get("matrix"), (2 * n) ** 2, "matrix").reshape(2 * n, 2 * n)
    if np.max(np.abs(a - a.T)) > 1e-9:
        raise MalformedFile(f"{path}: matrix is not symmetric")
    return CovarianceMatrix(a)


def channel_to_dict(ch):
    return {"schema_version": SCHEMA_VERSION, "f": ch.f.ravel().tolist(), "g": ch.g.ravel().tolist()}


def save_channel(ch, path):
    with open(path, "w", newline="\n") as fh:
        json.dump(channel_to_dict(ch), fh, indent=2)
        fh.write("\n")


def load_channel(path, validate=True):
    """Load a channel file; with ``validate=False`` the pair is returned
    unchecked (for inspection only)."""
    doc = _read(path)
    f = _floats(doc.get("f"), 4, "f").reshape(2, 2)
    g = _floats(doc.get("g"), 4, "g").reshape(2, 2)
    if validate:
        return make_channel(f, g)
    return GaussianChannel(f, g)
