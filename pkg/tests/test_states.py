import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import euler
from gaussep.separability import ppt_separable, two_mode_separable
from gaussep.states import (
    PureStateSpec,
    blocks,
    is_pure,
    random_pure_n_mode,
    random_pure_two_mode,
    sample_pure_spec,
    tmss,
    vacuum,
)
from gaussep.symplectic import congruence, random_n_mode_symplectic, symplectic_eigenvalues


def test_tmss_vacuum_limit():
    np.testing.assert_array_equal(np.asarray(tmss(0.0)), 0.5 * np.eye(4))


def test_tmss_entries_r1():
    cm = np.asarray(tmss(1.0))
    c, s = 0.5 * math.cosh(1.0), 0.5 * math.sinh(1.0)
    assert c == pytest.approx(0.7715403, abs=1e-7)
    assert s == pytest.approx(0.5876006, abs=1e-7)
    np.testing.assert_allclose(np.diag(cm), [c] * 4)
    np.testing.assert_allclose([cm[0, 2], cm[1, 3], cm[2, 0], cm[3, 1]], [s, -s, s, -s])
    assert cm[0, 1] == cm[0, 3] == cm[1, 2] == 0.0


@pytest.mark.parametrize("r", [0.0, 0.4, 1.0, 3.0])
def test_tmss_pure_with_unit_determinant(r):
    cm = tmss(r)
    assert is_pure(cm)
    assert np.linalg.det(np.asarray(cm)) == pytest.approx(1 / 16, rel=1e-9)


def test_tmss_rejects_negative():
    with pytest.raises(ValueError):
        tmss(-0.1)


def test_vacuum():
    np.testing.assert_array_equal(np.asarray(vacuum(1)), 0.5 * np.eye(2))
    np.testing.assert_array_equal(np.asarray(vacuum(3)), 0.5 * np.eye(6))
    for n in range(1, 6):
        assert is_pure(vacuum(n))


def test_blocks_tmss():
    r = 0.7
    b = blocks(tmss(r))
    np.testing.assert_allclose(b.alpha, 0.5 * np.cosh(r) * np.eye(2))
    np.testing.assert_allclose(b.beta, 0.5 * np.cosh(r) * np.eye(2))
    np.testing.assert_allclose(b.gamma, 0.5 * np.sinh(r) * np.diag([1, -1]))


def test_blocks_round_trip(rng):
    b = blocks(vacuum(2))
    np.testing.assert_array_equal(b.gamma, np.zeros((2, 2)))
    for _ in range(20):
        cm = random_pure_two_mode(sample_pure_spec(rng))
        np.testing.assert_array_equal(np.asarray(blocks(cm).assemble()), np.asarray(cm))


def test_blocks_wrong_modes():
    with pytest.raises(ValueError):
        blocks(vacuum(3))


def test_is_pure_examples():
    assert is_pure(tmss(2.0))
    assert not is_pure(np.diag([1.0, 1.0]))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0.0, 2.0))
def test_symplectic_image_of_pure_is_pure(seed, r):
    s = random_n_mode_symplectic(2, seed).data
    assert is_pure(congruence(s, np.asarray(tmss(r))))


def test_random_two_mode_separable_control():
    spec = PureStateSpec(0.0, ((0.3, 0.9, 1.1), (2.0, -0.4, 0.5)))
    assert two_mode_separable(random_pure_two_mode(spec)).separable


def test_random_two_mode_identity_locals():
    spec = PureStateSpec(1.0, ((0.0, 0.0, 0.0), (0.0, 0.0, 0.0)))
    np.testing.assert_allclose(np.asarray(random_pure_two_mode(spec)), np.asarray(tmss(1.0)), atol=1e-15)


@settings(max_examples=200, deadline=None)
@given(euler, euler)
def test_random_two_mode_r08_entangled(op_a, op_b):
    cm = random_pure_two_mode(PureStateSpec(0.8, (op_a, op_b)))
    assert is_pure(cm)
    assert not two_mode_separable(cm).separable


def test_random_two_mode_entangled_fraction(rng):
    for _ in range(2000):
        spec = sample_pure_spec(rng, 2, (0.05, 2.0))
        cm = random_pure_two_mode(spec)
        assert not two_mode_separable(cm).separable


def test_n_mode_unsqueezed_is_product(rng):
    spec = sample_pure_spec(rng, 3)
    spec = PureStateSpec(0.0, spec.local_ops, 3, spec.global_mixer)
    cm = random_pure_n_mode(spec)
    assert is_pure(cm)
    # B is in a product with the A side; the A-side mixer may still entangle A1 with A2
    v = ppt_separable(cm, 2)
    assert v.separable
    assert abs(v.margin) < 1e-9 * v.scale


def test_n_mode_identity_mixers():
    spec = PureStateSpec(1.0, ((0.0, 0.0, 0.0),), 3, ())
    expected = np.zeros((6, 6))
    expected[:2, :2] = 0.5 * np.eye(2)
    expected[2:, 2:] = np.asarray(tmss(1.0))
    np.testing.assert_allclose(np.asarray(random_pure_n_mode(spec)), expected, atol=1e-15)


def test_n_mode_entangled_across_last_mode(rng):
    for _ in range(50):
        spec = sample_pure_spec(rng, 4)
        spec = PureStateSpec(1.2, spec.local_ops, 4, spec.global_mixer)
        cm = random_pure_n_mode(spec)
        assert is_pure(cm)
        v = ppt_separable(cm, 3)
        assert not v.separable
        assert 0.5 - v.margin == pytest.approx(np.exp(-1.2) / 2, rel=1e-6)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sampled_specs_are_pure(rng, n):
    for _ in range(200):
        assert is_pure(random_pure_n_mode(sample_pure_spec(rng, n)) if n > 2 else random_pure_two_mode(sample_pure_spec(rng)))


def test_spec_validation():
    with pytest.raises(ValueError):
        PureStateSpec(-1.0, ())
    with pytest.raises(ValueError):
        random_pure_two_mode(PureStateSpec(1.0, ((0, 0, 0),)))
    with pytest.raises(ValueError):
        random_pure_n_mode(PureStateSpec(1.0, ((0, 0, 0), (0, 0, 0))))
