import numpy as np
import pytest

from conftest import density_pairs
from contracta.divergence import (h_g, h_g_dual, h_g_integral_check, h_g_integral_form,
                                  special_divergence)
from contracta.errors import InvalidInput, SingularInput
from contracta.functions import G_CATALOG, DiscreteMeasure, GFunction, g_mixture, gfun, symmetrize_g
from contracta.superop import random_channel


def test_diag_pair_values(diag_pair):
    rho, gam = diag_pair
    assert float(h_g(gfun("xlogx"), rho, gam)) == pytest.approx(0.6 * np.log(1.2) + 0.4 * np.log(0.8), abs=1e-12)
    assert float(h_g(gfun("xlogx"), rho, gam)) == pytest.approx(0.020135, abs=1e-6)
    assert float(h_g(gfun("quadratic"), rho, gam)) == pytest.approx(0.04, abs=1e-12)
    assert float(h_g_dual(gfun("xlogx"), rho, gam)) == pytest.approx(0.020411, abs=1e-6)
    assert float(special_divergence("relent", rho, gam)) == pytest.approx(0.020135, abs=1e-6)
    assert h_g_integral_check(0.0, rho, gam) == pytest.approx(0.0416667, abs=1e-7)


def test_value_metadata(diag_pair):
    rho, gam = diag_pair
    v = h_g(gfun("xlogx"), rho, gam)
    assert v.g_tag == "xlogx"
    assert len(v.inputs_hash) == 16
    assert v.inputs_hash == h_g(gfun("quadratic"), rho, gam).inputs_hash


@pytest.mark.parametrize("g", G_CATALOG, ids=lambda g: g.name)
def test_positive_and_faithful(g):
    for rho, gam in density_pairs(40, seed=1):
        assert float(h_g(g, rho, gam)) > 0
        assert abs(float(h_g(g, rho, rho))) < 1e-12


@pytest.mark.parametrize("name,g", [
    ("relent", gfun("xlogx")),
    ("quadratic", gfun("quadratic")),
    ("wy", GFunction("gt", 0.5)),
    ("min_sym", gfun("gmin")),
])
def test_special_matches_spectral(name, g):
    for rho, gam in density_pairs(30, seed=2):
        assert float(special_divergence(name, rho, gam)) == pytest.approx(float(h_g(g, rho, gam)), abs=1e-10)


@pytest.mark.parametrize("t", [0.3, 0.8, 1.5, 2.0])
def test_wyd_special(t):
    for rho, gam in density_pairs(20, seed=3):
        assert float(special_divergence("wyd", rho, gam, t)) == pytest.approx(
            float(h_g(GFunction("gt", t), rho, gam)), abs=1e-10)


def test_special_errors(diag_pair):
    rho, gam = diag_pair
    assert float(special_divergence("wy", rho, rho)) == pytest.approx(0, abs=1e-14)
    with pytest.raises(InvalidInput):
        special_divergence("wyd", rho, gam, 1.0)
    with pytest.raises(InvalidInput):
        special_divergence("nope", rho, gam)
    with pytest.raises(SingularInput):
        h_g(gfun("xlogx"), rho, np.diag([1.0, 0.0]))


@pytest.mark.parametrize("g", G_CATALOG, ids=lambda g: g.name)
def test_dual_swaps_arguments(g):
    for rho, gam in density_pairs(10, seed=4):
        assert float(h_g_dual(g, rho, gam)) == pytest.approx(float(h_g(g, gam, rho)), rel=1e-9, abs=1e-12)


@pytest.mark.parametrize("g", G_CATALOG, ids=lambda g: g.name)
def test_symmetrized_is_symmetric_in_arguments(g):
    sg = symmetrize_g(g)
    for rho, gam in density_pairs(10, seed=5):
        assert float(h_g(sg, rho, gam)) == pytest.approx(float(h_g(sg, gam, rho)), rel=1e-9)


@pytest.mark.parametrize("s", [0.0, 0.3, 1.0, 7.0, 1e3])
def test_integral_form_gs(s):
    for rho, gam in density_pairs(20, seed=6):
        assert h_g_integral_check(s, rho, gam) == pytest.approx(float(h_g(GFunction("gs", s), rho, gam)),
                                                                rel=1e-9, abs=1e-14)


def test_integral_form_mixture():
    g = g_mixture(DiscreteMeasure(((0.0, 0.4), (2.0, 0.6)), constant_c=0.25))
    for rho, gam in density_pairs(10, seed=7):
        assert h_g_integral_form(g, rho, gam) == pytest.approx(float(h_g(g, rho, gam)), rel=1e-9)


@pytest.mark.parametrize("g", [gfun("xlogx"), gfun("quadratic"), GFunction("gs", 0.5), gfun("gmax")],
                         ids=lambda g: g.name)
def test_data_processing(g):
    rng = np.random.default_rng(8)
    for rho, gam in density_pairs(30, seed=8):
        phi = random_channel(rho.shape[0], seed=rng)
        assert float(h_g(g, phi(rho), phi(gam))) <= float(h_g(g, rho, gam)) + 1e-12
