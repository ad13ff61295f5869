"""Acceptance criteria, one test per criterion.

Each test prints a ``criterion N: PASS|FAIL`` line (collected again in the terminal summary)
and then asserts. Tolerances are fixed constants below; estimator budgets are chosen for a
single desk CPU.
"""

import numpy as np
import pytest
from scipy.optimize import minimize
from scipy.spatial.transform import Rotation

from contracta.contraction import (Budget, eta_geod, eta_relent, eta_riem, eta_tr, lambda2,
                                   lambda2_bruteforce)
from contracta.functions import KAPPA_CATALOG, GFunction, KappaFunction, gfun, kappa, symmetrize_g
from contracta.linalg import random_density
from contracta.qubit import cq_closed_form, cq_map, separation_ratio, unital_map
from contracta.superop import classical_channel, random_channel
from contracta.verify import SUITES, run_suite

RESULTS = []

ESTIMATE_TOL = 2e-2
LOWER_BOUND_SLACK = 1e-3
EQUALITY_TOL = 5e-2
EXACT_TOL = 1e-10
ORACLE_TOL = 1e-8
RATIO_TOL = 1e-9

UNITAL_KAPPAS = ("min", "max", "bkm", "wy", "inv-sqrt")
RANDOM_CHANNEL_SEEDS = range(100, 105)


def _record(n, ok, detail, status=None):
    line = f"criterion {n}: {status or ('PASS' if ok else 'FAIL')}  {detail}"
    RESULTS.append(line)
    print(line)
    return ok


def _random_unital_T(rng):
    """``R1 diag(l) R2`` with ``l`` inside the complete-positivity tetrahedron."""
    while True:
        l1, l2, l3 = rng.uniform(-1, 1, 3)
        if (l1 + l2) ** 2 <= (1 + l3) ** 2 and (l1 - l2) ** 2 <= (1 - l3) ** 2:
            break
    R1 = Rotation.random(random_state=rng).as_matrix()
    R2 = Rotation.random(random_state=rng).as_matrix()
    return R1 @ np.diag([l1, l2, l3]) @ R2


def test_criterion_1_unital_closed_form():
    rng = np.random.default_rng(2024)
    budget = Budget(2, 150)
    worst_tr, worst = 0.0, {}
    for i in range(20):
        T = _random_unital_T(rng)
        phi = unital_map(T)
        n = np.linalg.norm(T, 2)
        worst_tr = max(worst_tr, abs(eta_tr(phi).value - n))
        vals = {f"riem:{k}": eta_riem(phi, kappa(k.replace("-", "_")), budget, i).value
                for k in UNITAL_KAPPAS}
        for g in ("xlogx", "quadratic"):
            vals[f"relent:{g}"] = eta_relent(phi, gfun(g), budget, i).value
        for kind in ("wy_arc", "bures_arc"):
            vals[f"geod:{kind}"] = eta_geod(phi, kind, budget, i).value
        for key, v in vals.items():
            worst[key] = max(worst.get(key, 0.0), abs(v - n * n))
    w = max(worst.values())
    ok = worst_tr <= EXACT_TOL and w <= ESTIMATE_TOL
    _record(1, ok, f"20 unital T: |eta_tr - ||T|||max {worst_tr:.1e} (tol {EXACT_TOL:.0e}); "
                   f"|eta - ||T||^2| max {w:.1e} over {len(worst)} coefficients (tol {ESTIMATE_TOL:.0e})")
    assert ok


def test_criterion_2_cq_closed_forms():
    budget = Budget(3, 250)
    exact_err, bound_short = 0.0, -np.inf
    kappas = [KappaFunction("extreme", s) for s in (0.0, 1 / 3, 2 / 3, 1.0)]
    kappas += [kappa("wy"), kappa("min"), kappa("max")]
    lower = [kappa("wy_hat"), kappa("inv_sqrt"), kappa("bkm")]
    for a in (0.2, 0.4, 0.6):
        for total in (0.5, 1.0):
            tau = np.sqrt(total - a * a)
            phi = cq_map(a, tau)
            for k in kappas:
                ref = cq_closed_form(k, a, tau)
                assert ref.kind == "exact"
                exact_err = max(exact_err, abs(eta_riem(phi, k, budget, 0).value - ref.value))
            for k in lower:
                ref = cq_closed_form(k, a, tau)
                assert ref.kind == "lower_bound"
                bound_short = max(bound_short, ref.value - eta_riem(phi, k, budget, 0).value)
    ok = exact_err <= ESTIMATE_TOL and bound_short <= LOWER_BOUND_SLACK
    _record(2, ok, f"6 CQ channels: closed-form gap max {exact_err:.1e} (tol {ESTIMATE_TOL:.0e}); "
                   f"lower-bound shortfall max {bound_short:.1e} (slack {LOWER_BOUND_SLACK:.0e})")
    assert ok


def test_criterion_3_max_beats_trace():
    r = 1 / np.sqrt(2)
    phi = cq_map(r, r)
    riem = eta_riem(phi, kappa("max"), Budget(3, 250), 0).value
    tr = eta_tr(phi).value
    flag = riem > tr
    ok = riem >= 0.98 and abs(tr - 0.70711) <= 5e-6 and abs(tr - r) <= EXACT_TOL and flag
    _record(3, ok, f"alpha = tau = 1/sqrt2: eta_max^Riem = {riem:.6f} (>= 0.98), eta_tr = {tr:.10f}; "
                   f"eta_max^Riem > eta_tr flagged: {flag}")
    assert ok


def test_criterion_4_separation():
    r = np.sqrt(0.5)
    res = separation_ratio(r, r, 1.0)
    est = eta_relent(cq_map(r, r), symmetrize_g(GFunction("gs", 1.0)), Budget(4, 300), 0).value
    ok = (abs(res.ratio - 9 / 17) <= RATIO_TOL and round(res.ratio, 6) == 0.529412
          and res.ratio > 0.5 and res.riem_closed_form == pytest.approx(0.5) and est >= 0.519)
    _record(4, ok, f"ratio(s=1) = {res.ratio:.9f} (9/17 within {RATIO_TOL:.0e}) > "
                   f"{res.riem_closed_form:.3f}; eta_relent(sym gs:1) = {est:.6f} (>= 0.519)")
    assert ok


def _random_qubit_channels():
    return [random_channel(2, seed=s) for s in RANDOM_CHANNEL_SEEDS]


def test_criterion_5_bkm_equality():
    budget = Budget(4, 300)
    g = symmetrize_g(gfun("xlogx"))
    diffs = [abs(eta_riem(phi, kappa("bkm"), budget, 0).value - eta_relent(phi, g, budget, 0).value)
             for phi in _random_qubit_channels()]
    ok = max(diffs) <= EQUALITY_TOL
    _record(5, ok, f"5 random qubit channels: |eta_bkm^Riem - eta_symBKM^RelEnt| max {max(diffs):.1e} "
                   f"(tol {EQUALITY_TOL:.0e})")
    assert ok


def test_criterion_6_max_equality():
    budget = Budget(4, 300)
    diffs = [abs(eta_riem(phi, kappa("max"), budget, 0).value
                 - eta_relent(phi, gfun("quadratic"), budget, 0).value)
             for phi in _random_qubit_channels()]
    ok = max(diffs) <= EQUALITY_TOL
    _record(6, ok, f"5 random qubit channels: |eta_max^Riem - eta_quadratic^RelEnt| max {max(diffs):.1e} "
                   f"(tol {EQUALITY_TOL:.0e})")
    assert ok


def _classical_chi2_oracle(P, rng, starts=40):
    """``sup_p s_2(D_{Pp}^{-1/2} P D_p^{1/2})^2`` over the probability simplex."""
    def neg(x):
        p = np.exp(x - x.max())
        p /= p.sum()
        M = (P * np.sqrt(p)[None, :]) / np.sqrt(P @ p)[:, None]
        return -np.linalg.svd(M, compute_uv=False)[1] ** 2

    best = 0.0
    for _ in range(starts):
        r = minimize(neg, 2 * rng.standard_normal(P.shape[1]), method="Nelder-Mead",
                     options={"xatol": 1e-10, "fatol": 1e-14, "maxiter": 3000})
        best = max(best, -r.fun)
    return best


def test_criterion_7_classical_chain():
    # maximizers sit on the simplex boundary, so the pair search needs a longer budget here
    budget = Budget(8, 1000)
    rng = np.random.default_rng(0)
    oracle_rng = np.random.default_rng(1)
    chain, tr_excess, oracle_gap = 0.0, -np.inf, 0.0
    for _ in range(5):
        P = rng.dirichlet(np.ones(3), size=3).T
        phi = classical_channel(P)
        relent = [eta_relent(phi, gfun(g), budget, 0).value for g in ("xlogx", "quadratic")]
        riem = [eta_riem(phi, kappa(k), budget, 0).value for k in ("min", "max")]
        chain = max(chain, max(abs(a - b) for a in relent for b in riem))
        t = eta_tr(phi, budget, 0).value
        tr_excess = max(tr_excess, t * t - min(riem))
        oracle = _classical_chi2_oracle(P, oracle_rng)
        oracle_gap = max(oracle_gap, max(abs(v - oracle) for v in riem))
    ok = chain <= ESTIMATE_TOL and tr_excess <= ESTIMATE_TOL and oracle_gap <= ESTIMATE_TOL
    _record(7, ok, f"5 classical 3x3: |eta^RelEnt - eta^Riem| max {chain:.1e}; eta_tr^2 - eta^Riem max "
                   f"{tr_excess:.1e}; Riem vs chi^2 oracle max {oracle_gap:.1e} (tol {ESTIMATE_TOL:.0e})")
    assert ok


def test_criterion_8_lambda2_oracle():
    rng = np.random.default_rng(8)
    worst = 0.0
    for i, d in enumerate([2] * 100 + [3] * 20):
        phi = random_channel(d, seed=rng)
        rho = random_density(d, 0.05, rng)
        k = KAPPA_CATALOG[i % len(KAPPA_CATALOG)]
        worst = max(worst, abs(lambda2(phi, rho, k).lambda2 - lambda2_bruteforce(phi, rho, k)))
    ok = worst <= ORACLE_TOL
    _record(8, ok, f"100 qubit + 20 qutrit triples: |lambda2 - brute force| max {worst:.1e} "
                   f"(tol {ORACLE_TOL:.0e})")
    assert ok


def test_criterion_9_property_suites():
    reports = [run_suite(name, seed=7) for name in SUITES]
    failed = [f"{r.suite}:{c.name}" for r in reports for c in r.checks if not c.passed]
    n = sum(len(r.checks) for r in reports)
    ok = not failed
    _record(9, ok, f"{len(SUITES)} suites, {n - len(failed)}/{n} checks passed"
                   + (f"; failed: {', '.join(failed)}" if failed else ""))
    assert ok


def test_criterion_10_excluded():
    _record(10, True, "excluded: true suprema without closed forms, conjectured equalities, and "
                      "QC/CQ orderings beyond the sweep report are not checked",
            status="EXCLUDED")
    pytest.skip("criterion 10 lists items excluded from acceptance")
