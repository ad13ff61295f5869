import numpy as np
import pytest

from contracta.contraction import (Budget, eta_geod, eta_relent, eta_riem, eta_tr, is_scrambling,
                                   lambda2, lambda2_bruteforce, riem_ratio)
from contracta.divergence import h_g
from contracta.errors import InvalidInput
from contracta.functions import KAPPA_CATALOG, GFunction, gfun, kappa, symmetrize_g
from contracta.linalg import random_density, random_traceless
from contracta.qubit import cq_closed_form, cq_map, unital_map
from contracta.superop import (SuperOperator, classical_channel, depolarizing_channel,
                               identity_channel, random_channel)

SMALL = Budget(3, 250)
UNITAL = unital_map(np.diag([0.5, 0.3, 0.2]))


@pytest.mark.parametrize("k", KAPPA_CATALOG, ids=lambda k: k.name)
def test_lambda2_depolarizing(k):
    res = lambda2(depolarizing_channel(2, 0.5), np.eye(2) / 2, k)
    assert res.lambda2 == pytest.approx(0.25, abs=1e-12)
    assert res.top_eig == pytest.approx(1.0, abs=1e-12)


def test_lambda2_identity():
    for k in (kappa("min"), kappa("bkm"), kappa("max")):
        rho = random_density(3, 0.1, 1)
        assert lambda2(identity_channel(3), rho, k).lambda2 == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("k", KAPPA_CATALOG, ids=lambda k: k.name)
def test_lambda2_matches_bruteforce(k):
    rng = np.random.default_rng(3)
    for d in (2, 2, 3):
        phi = random_channel(d, seed=rng)
        rho = random_density(d, 0.1, rng)
        res = lambda2(phi, rho, k)
        assert res.lambda2 == pytest.approx(lambda2_bruteforce(phi, rho, k), abs=1e-8)
        assert res.residual < 1e-8
        # witness attains lambda_2
        A = res.eigvec_matrix
        assert riem_ratio(phi, k, rho, A) == pytest.approx(res.lambda2, abs=1e-8)


def test_riem_ratio_bounded():
    rng = np.random.default_rng(4)
    phi = random_channel(3, seed=rng)
    rho = random_density(3, 0.1, rng)
    k = kappa("bkm")
    lam = lambda2(phi, rho, k).lambda2
    for _ in range(50):
        assert riem_ratio(phi, k, rho, random_traceless(3, rng)) <= lam + 1e-10


def test_eta_riem_unital():
    est = eta_riem(UNITAL, kappa("bkm"), SMALL, seed=0)
    assert est.value == pytest.approx(0.25, abs=0.02)
    assert "rho" in est.witness and "A" in est.witness


def test_eta_riem_cq():
    phi = cq_map(0.6, 0.8)
    assert eta_riem(phi, kappa("max"), SMALL, 0).value == pytest.approx(1.0, abs=0.02)
    assert eta_riem(phi, kappa("extreme", 1 / 3), SMALL, 0).value == pytest.approx(0.4286, abs=0.02)


def test_eta_relent_identity_exact():
    est = eta_relent(identity_channel(2), gfun("xlogx"), Budget(1, 5), seed=0)
    assert est.value == pytest.approx(1.0, abs=1e-12)


def test_eta_relent_unital():
    est = eta_relent(UNITAL, gfun("xlogx"), SMALL, 0)
    assert est.value == pytest.approx(0.25, abs=0.02)


def test_eta_relent_separation():
    r = np.sqrt(0.5)
    est = eta_relent(cq_map(r, r), symmetrize_g(GFunction("gs", 1.0)), Budget(4, 300), 0)
    assert est.value >= 0.5294 - 0.01


def test_eta_geod():
    assert eta_geod(identity_channel(2), "wy_arc", Budget(1, 50), 0).value == pytest.approx(1.0, abs=1e-6)
    assert eta_geod(unital_map(0.5 * np.eye(3)), "wy_arc", SMALL, 0).value == pytest.approx(0.25, abs=0.02)
    assert eta_geod(cq_map(0.6, 0.8), "bures_arc", SMALL, 0).value == pytest.approx(0.36, abs=0.02)
    with pytest.raises(InvalidInput):
        eta_geod(UNITAL, "nope", SMALL, 0)


def test_eta_tr_exact_cases():
    est = eta_tr(cq_map(0.8, 0.6))
    assert est.exact and est.value == pytest.approx(0.8, abs=1e-12)
    assert eta_tr(UNITAL).value == pytest.approx(0.5, abs=1e-12)
    assert eta_tr(identity_channel(3), SMALL, 0).value == pytest.approx(1.0, abs=1e-9)


def test_eta_tr_classical():
    P = np.array([[0.6, 0.1, 0.3], [0.3, 0.7, 0.2], [0.1, 0.2, 0.5]])
    dobrushin = 0.5 * max(np.abs(P[:, i] - P[:, j]).sum() for i in range(3) for j in range(3))
    est = eta_tr(classical_channel(P), Budget(4, 300), 0)
    assert est.value == pytest.approx(dobrushin, abs=1e-3)
    assert est.value <= dobrushin + 1e-9


def test_eta_tr_rejects_non_tp():
    S = SuperOperator(0.5 * np.eye(4), 2)
    with pytest.raises(InvalidInput):
        eta_tr(S)


def test_scrambling():
    assert is_scrambling(depolarizing_channel(2, 0.5)).scrambling
    assert not is_scrambling(identity_channel(2)).scrambling
    assert not is_scrambling(cq_map(1.0, 0.0)).scrambling


def test_determinism():
    phi = random_channel(2, seed=5)
    a = eta_riem(phi, kappa("wy"), SMALL, seed=11)
    b = eta_riem(phi, kappa("wy"), SMALL, seed=11)
    assert a.value == b.value
    c = eta_relent(phi, gfun("quadratic"), SMALL, seed=11)
    d = eta_relent(phi, gfun("quadratic"), SMALL, seed=11)
    assert c.value == d.value


def test_estimates_are_lower_bounds_of_closed_forms():
    phi = cq_map(0.5, 0.6)
    for k in (kappa("min"), kappa("max"), kappa("wy")):
        assert eta_riem(phi, k, Budget(2, 150), 0).value <= cq_closed_form(k, 0.5, 0.6).value + 1e-9


def test_budget_validation():
    with pytest.raises(InvalidInput):
        Budget(0, 10)


def test_pointwise_seeding_limit():
    # divergence ratio along gamma = rho + eps A approaches the metric ratio
    phi = random_channel(2, seed=8)
    rho = random_density(2, 0.2, 9)
    A = random_traceless(2, 10)
    A /= np.linalg.norm(A)
    eps = 1e-3
    g = symmetrize_g(gfun("xlogx"))
    gam = rho + eps * A
    div = float(h_g(g, phi(rho), phi(gam))) / float(h_g(g, rho, gam))
    met = riem_ratio(phi, kappa("bkm"), rho, A)
    assert abs(div - met) / met < 1e-2
