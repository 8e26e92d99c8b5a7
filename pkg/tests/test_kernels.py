import os
import subprocess
import sys

import numpy as np
import pytest

from gaussep import kernels
from gaussep.states import random_pure_state, sample_pure_spec


@pytest.fixture
def stack(rng):
    cms = np.array([np.asarray(random_pure_state(sample_pure_spec(rng))) for _ in range(300)])
    f = rng.normal(size=(300, 2, 2))
    g = rng.uniform(0, 1, size=(300, 2, 2))
    g = g + np.swapaxes(g, 1, 2)
    return cms, f, g


def test_dets_backends_agree(stack):
    cms, _, _ = stack
    a = kernels._two_mode_dets_numba(cms)
    b = kernels._two_mode_dets_numpy(cms)
    np.testing.assert_allclose(a, b, rtol=1e-10, atol=1e-10)


def test_dets_against_definition(rng):
    m = rng.normal(size=(50, 4, 4))
    d = kernels.two_mode_dets(m)
    np.testing.assert_allclose(d[:, kernels.DET_SIGMA], np.linalg.det(m), rtol=1e-10, atol=1e-12)
    np.testing.assert_allclose(d[:, kernels.DET_GAMMA], np.linalg.det(m[:, :2, 2:]), atol=1e-12)
    np.testing.assert_allclose(d[:, kernels.MINOR_3], np.linalg.det(m[:, :3, :3]), rtol=1e-10, atol=1e-12)


@pytest.mark.parametrize("mode", [0, 1])
def test_apply_backends_agree(stack, mode):
    cms, f, g = stack
    a = kernels._apply_one_sided_numba(cms, f, g, mode)
    b = kernels._apply_one_sided_numpy(cms, f, g, mode)
    np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-12)
    np.testing.assert_array_equal(a, np.swapaxes(a, 1, 2))


def test_apply_shape_errors(stack):
    cms, f, g = stack
    with pytest.raises(ValueError):
        kernels.apply_one_sided_batch(cms, f[:3], g, 0)
    with pytest.raises(IndexError):
        kernels.apply_one_sided_batch(cms, f, g, 2)
    with pytest.raises(ValueError):
        kernels.two_mode_dets(np.zeros((3, 6, 6)))


def test_env_flag_selects_numpy():
    code = "from gaussep import kernels; print(kernels.USE_NUMBA, kernels._two_mode_dets.__name__)"
    env = dict(os.environ, GAUSSEP_PURE_NUMPY="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["False", "_two_mode_dets_numpy"]


def test_both_backends_give_same_verdicts():
    code = ("from gaussep.verify import TrialConfig, verify_proposition;"
            "r = verify_proposition(TrialConfig(500, 3));"
            "print(r.outcomes['separable'], r.outcomes['entangled'], len(r.mismatches))")
    outs = []
    for flag in ("0", "1"):
        env = dict(os.environ, GAUSSEP_PURE_NUMPY=flag)
        outs.append(subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True,
                                   check=True).stdout)
    assert outs[0] == outs[1]
