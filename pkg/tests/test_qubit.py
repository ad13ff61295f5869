import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contracta.errors import DomainError, InvalidInput, NotCompletelyPositive, SingularInput
from contracta.functions import KappaFunction, kappa
from contracta.qubit import (SEPARATION_THRESHOLD, SIGMA, AffineQubitMap, affine_from_channel,
                             bloch_convert, bloch_to_matrix, channel_from_affine, cq_closed_form,
                             cq_coeffs, cq_map, fa_cpt_check, matrix_to_bloch, pauli_inv,
                             pauli_mul, pauli_sqrt, separation_hypothesis, separation_ratio,
                             separation_small_alpha_limit, separation_terms, unital_coeffs)
from contracta.superop import depolarizing_channel, random_channel

vec3 = st.lists(st.floats(-2, 2, allow_nan=False), min_size=3, max_size=3).map(np.array)
scalar = st.floats(-2, 2, allow_nan=False)


def _dense(a, w):
    return a * np.eye(2) + sum(wk * s for wk, s in zip(w, SIGMA))


def test_bloch_roundtrip():
    w = np.array([0.1, -0.4, 0.3])
    M = bloch_to_matrix(w)
    a, v = matrix_to_bloch(M)
    assert a == pytest.approx(1.0) and np.allclose(v, w)
    assert np.allclose(bloch_convert(M)[1], w)
    assert np.allclose(bloch_convert((1.0, w)), M)
    with pytest.raises(InvalidInput):
        matrix_to_bloch(np.array([[0, 1], [0, 0]]))


def test_pauli_mul_examples():
    s, v = pauli_mul(0, [1, 0, 0], 0, [0, 1, 0])
    assert s == 0 and np.allclose(v, [0, 0, 1j])
    w = np.array([0.3, 0.4, 0.5])
    s, v = pauli_mul(0, w, 0, w)
    assert s == pytest.approx(0.5) and np.allclose(v, 0)


@given(scalar, vec3, scalar, vec3)
@settings(max_examples=100, deadline=None)
def test_pauli_mul_dense(a, w, b, y):
    s, v = pauli_mul(a, w, b, y)
    assert np.allclose(_dense(s, v), _dense(a, w) @ _dense(b, y), atol=1e-12)


def test_pauli_inv_examples():
    s, v = pauli_inv(2, [0, 0, 1])
    assert np.allclose(_dense(s, v), np.diag([1 / 3, 1]))
    s, v = pauli_inv(1, [0, 0, 0])
    assert s == 1 and np.allclose(v, 0)
    with pytest.raises(SingularInput):
        pauli_inv(1, [0, 0, 1])


@given(scalar, vec3)
@settings(max_examples=100, deadline=None)
def test_pauli_inv_dense(a, w):
    if abs(a * a - w @ w) < 1e-3:
        return
    s, v = pauli_inv(a, w)
    assert np.allclose(_dense(s, v) @ _dense(a, w), np.eye(2), atol=1e-8)


def test_pauli_sqrt():
    s, v = pauli_sqrt(1, [0, 0, 0])
    assert s == pytest.approx(1) and np.allclose(v, 0)
    s, v = pauli_sqrt(1, [0, 0, 0.6])
    R = _dense(s, v)
    assert np.allclose(R @ R, np.diag([1.6, 0.4]))
    with pytest.raises(DomainError):
        pauli_sqrt(1, [0, 0, 1])


def test_affine_roundtrip():
    phi = random_channel(2, seed=3)
    m = affine_from_channel(phi)
    back = channel_from_affine(m)
    X = bloch_to_matrix([0.2, 0.1, -0.5])
    assert np.allclose(back(X), phi(X))
    assert np.allclose(m.apply(X), phi(X))


def test_channel_from_affine_examples():
    ident = channel_from_affine(AffineQubitMap(np.zeros(3), np.eye(3)))
    X = bloch_to_matrix([0.3, 0.2, 0.1])
    assert np.allclose(ident(X), X)
    assert channel_from_affine(cq_map(0.6, 0.8)).is_trace_preserving()
    edge = AffineQubitMap([0, 0, 0.5], np.diag([0.5, 0.5, 0.5]))
    assert fa_cpt_check([0.5, 0.5, 0.5], 0.5)
    assert abs(np.linalg.eigvalsh(edge.choi())[0]) < 1e-12
    with pytest.raises(NotCompletelyPositive):
        channel_from_affine(cq_map(0.9, 0.6))


def test_fa_examples():
    assert fa_cpt_check([1, 1, 1], 0)
    assert not fa_cpt_check([0.9, 0.9, 0], 0.5)


def test_fa_agrees_with_choi():
    rng = np.random.default_rng(0)
    for _ in range(500):
        lam = rng.uniform(-1, 1, 3)
        t3 = rng.uniform(-1, 1)
        m = AffineQubitMap([0, 0, t3], np.diag(lam))
        min_eig = np.linalg.eigvalsh(m.choi())[0]
        if abs(min_eig) > 1e-8:
            assert fa_cpt_check(lam, t3) == (min_eig > 0)


def test_positivity():
    transpose = AffineQubitMap(np.zeros(3), np.diag([1, -1, 1]))
    assert transpose.is_positive() and not transpose.is_cp()
    assert not AffineQubitMap([0, 0, 0.5], np.diag([0.9, 0, 0])).is_positive()
    assert cq_map(0.8, 0.6).max_output_norm() == pytest.approx(1.0, abs=1e-9)


def test_unital_coeffs():
    rep = unital_coeffs(np.diag([0.5, 0.3, 0.2]))
    assert rep["tr"].value == pytest.approx(0.5)
    assert all(rep[k].value == pytest.approx(0.25) for k in ("riem", "geod", "relent"))
    assert all(v.value == 0 for v in unital_coeffs(np.zeros((3, 3))).values())
    assert all(v.value == pytest.approx(1) for v in unital_coeffs(np.eye(3)).values())
    with pytest.raises(InvalidInput):
        unital_coeffs(2 * np.eye(3))


def test_cq_coeffs_examples():
    r = 1 / np.sqrt(2)
    rep = cq_coeffs(r, r)
    assert rep["riem:max"].value == pytest.approx(1.0)
    assert rep["tr"].value == pytest.approx(0.70710678, abs=1e-8)
    rep = cq_coeffs(0.6, 0.8, s_list=[1 / 3])
    assert rep[f"riem:{KappaFunction('extreme', 1 / 3).name}"].value == pytest.approx(0.36 / 0.84)
    assert rep["riem:wy"].value == pytest.approx(0.45)
    assert rep["riem:min"].value == pytest.approx(0.36)
    assert rep["riem:bkm"].kind == "lower_bound"
    with pytest.raises(InvalidInput):
        cq_coeffs(0.9, 0.6)


def test_cq_closed_form_between_bounds():
    for a in (0.1, 0.5, 0.7):
        for tau in (0.0, 0.3, np.sqrt(1 - a * a)):
            lo, hi = a * a, a * a / (1 - tau * tau)
            for k in (kappa("min"), kappa("max"), kappa("wy"), KappaFunction("extreme", 0.4)):
                v = cq_closed_form(k, a, tau).value
                assert lo - 1e-12 <= v <= hi + 1e-12
    assert cq_closed_form(KappaFunction("wyd", 0.3), 0.5, 0.5) is None


def test_separation_example():
    r = separation_ratio(np.sqrt(0.5), np.sqrt(0.5), 1.0)
    assert r.H == pytest.approx(2 / 3, abs=1e-12)
    assert r.ratio == pytest.approx(2.25 / 4.25, abs=1e-12)
    assert r.ratio == pytest.approx(0.529412, abs=1e-6)
    assert r.riem_closed_form == pytest.approx(0.5)
    assert r.hypothesis and r.separates
    assert separation_hypothesis(np.sqrt(0.5), np.sqrt(0.5))
    with pytest.raises(DomainError):
        separation_ratio(0.5, 0.5, 0.0)


def test_separation_threshold():
    assert SEPARATION_THRESHOLD == pytest.approx(0.457, abs=1e-3)
    assert separation_small_alpha_limit(SEPARATION_THRESHOLD) == pytest.approx(1.0, abs=1e-12)
    assert separation_small_alpha_limit(0.3) < 1 < separation_small_alpha_limit(0.6)


def test_separation_limit_approach():
    a, tau, s = 0.6, 0.7, 0.8
    near = separation_terms(a, tau, s, 1 - 1e-6)
    at = separation_terms(a, tau, s, 1.0)
    assert np.allclose(near, at, rtol=1e-4)


def test_depolarizing_is_unital():
    m = affine_from_channel(depolarizing_channel(2, 0.5))
    assert np.allclose(m.t, 0) and np.allclose(m.T, 0.5 * np.eye(3))
