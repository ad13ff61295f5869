"""Seeded verification suites behind ``contracta verify``.

Each suite returns a :class:`SuiteReport` listing named checks with the worst observed error
and the tolerance it was held to.
"""

from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import quad_vec
from scipy.linalg import solve_sylvester
from scipy.optimize import minimize

from .contraction import Budget, eta_riem, eta_relent, eta_tr, lambda2, lambda2_bruteforce, riem_ratio
from .divergence import h_g, h_g_dual, h_g_integral_check, special_divergence
from .functions import (G_CATALOG, KAPPA_CATALOG, DiscreteMeasure, KappaFunction, dual_g, gfun,
                        kappa, kappa_g_correspond, kappa_mixture, parse_g,
                        symmetrize_g)
from .geometry import GEODESIC_KINDS, fidelity, geodesic_distance, metric_value
from .linalg import (apply_spectral_function, hermitian_eig, random_density, random_hermitian,
                     random_traceless, trace_norm)
from .qubit import (SIGMA, AffineQubitMap, bloch_to_matrix, channel_from_affine, cq_closed_form,
                    cq_coeffs, cq_map, fa_cpt_check, pauli_quadratic_min, bures_resolvent,
                    pauli_resolvent, pauli_resolvent_perp, matrix_to_bloch, pauli_inv, pauli_mul,
                    pauli_sqrt, separation_boundary_ratio, separation_ratio, separation_small_alpha_limit,
                    separation_terms, SEPARATION_THRESHOLD, unital_coeffs, unital_map)
from .superop import depolarizing_channel, identity_channel, left_right_op, omega, random_channel

GRID = 2.0 ** np.arange(-20, 21)
SUITES = ("functions", "divergence", "geometry", "lambda2", "qubit", "theorems")

__all__ = ["Check", "SuiteReport", "SUITES", "run_suite"]


@dataclass
class Check:
    name: str
    passed: bool
    worst: float
    tol: float
    detail: str = ""

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        extra = f"  ({self.detail})" if self.detail else ""
        return f"[{mark}] {self.name}: worst {self.worst:.3e} vs tol {self.tol:.1e}{extra}"


@dataclass
class SuiteReport:
    suite: str
    seed: int
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def n_failed(self) -> int:
        return sum(not c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"suite": self.suite, "seed": self.seed, "passed": self.passed,
                "n_checks": len(self.checks), "n_failed": self.n_failed,
                "checks": [asdict(c) for c in self.checks]}

    def lines(self) -> list[str]:
        head = (f"suite {self.suite} (seed {self.seed}): "
                f"{len(self.checks) - self.n_failed}/{len(self.checks)} checks passed")
        return [head] + ["  " + c.line() for c in self.checks]


class _Collector:
    def __init__(self, suite, seed):
        self.report = SuiteReport(suite, seed)

    def worst(self, name, errors, tol, detail=""):
        """Pass when the largest error is at most ``tol``."""
        w = float(np.max(np.asarray(list(errors), dtype=float)))
        self.report.checks.append(Check(name, bool(w <= tol), w, tol, detail))

    def flag(self, name, ok, value=0.0, detail=""):
        self.report.checks.append(Check(name, bool(ok), float(value), 0.0, detail))


def _rel(a, b, floor=1.0):
    return np.abs(a - b) / np.maximum(np.maximum(np.abs(a), np.abs(b)), floor)


def _random_kappa_mixture(rng) -> KappaFunction:
    n = int(rng.integers(1, 5))
    w = rng.random(n) + 0.05
    w /= w.sum()
    atoms = tuple(zip(rng.random(n), w))
    m = DiscreteMeasure(atoms)
    return kappa_mixture(m)


# ---------------------------------------------------------------- functions


def suite_functions(seed: int = 0) -> SuiteReport:
    rng = np.random.default_rng(seed)
    c = _Collector("functions", seed)
    kappas = list(KAPPA_CATALOG) + [_random_kappa_mixture(rng) for _ in range(100)]
    x = GRID
    c.worst("kappa symmetry x k(x) = k(1/x) (relative)",
            [np.max(_rel(x * k(x), k(1 / x), 0.0)) for k in kappas], 1e-11)
    c.worst("kappa(1) = 1", [abs(k(1.0) - 1.0) for k in kappas], 1e-12)
    lo, hi = 2 / (1 + x), (1 + x) / (2 * x)
    c.worst("2/(1+x) <= kappa <= (1+x)/(2x) (relative slack)",
            [max(np.max((lo - k(x)) / lo), np.max((k(x) - hi) / hi)) for k in kappas], 1e-12)
    b = kappa("bkm")(x)
    c.worst("WYD -> BKM as t -> 0 (t = 1e-9, absolute)",
            [np.max(np.abs(kappa("wyd", 1e-9)(x) - b))], 1e-6)
    c.worst("WYD -> BKM as t -> 1 (t = 1 - 1e-9, absolute)",
            [np.max(np.abs(kappa("wyd", 1 - 1e-9)(x) - b))], 1e-6)
    xs = x[x != 1.0]
    d1 = np.abs(kappa("wyd", 1e-4)(xs) - kappa("bkm")(xs))
    d2 = np.abs(kappa("wyd", 1e-5)(xs) - kappa("bkm")(xs))
    c.worst("WYD -> BKM gap is first order in t", [np.max(np.abs(d1 / d2 - 10.0) / 10.0)], 1e-3)
    c.worst("wy-hat(x) = 1/kappa_WY(1/x)",
            [np.max(_rel(kappa("wy_hat")(x), 1 / kappa("wy")(1 / x), 0.0))], 1e-12)

    gs = list(G_CATALOG) + [symmetrize_g(g) for g in G_CATALOG] + [dual_g(g) for g in G_CATALOG]
    c.worst("g(1) = 0", [abs(g(1.0)) for g in gs], 1e-12)
    h = 1e-4
    c.worst("g''(1) central difference vs stored (relative)",
            [abs((g(1 + h) - 2 * g(1.0) + g(1 - h)) / h**2 - g.second_derivative_at_one)
             / g.second_derivative_at_one for g in gs], 1e-5)
    sym = [g for g in gs if g.is_symmetric]
    c.worst("symmetric g: g(x) = x g(1/x)",
            [np.max(_rel(g(x), x * g(1 / x))) for g in sym], 1e-11)
    c.worst("symmetrized g has g''(1) = 2",
            [abs(symmetrize_g(g).second_derivative_at_one - 2) for g in G_CATALOG], 0.0)
    c.worst("dual g~(x) = x g(1/x)",
            [np.max(_rel(dual_g(g)(x), x * g(1 / x))) for g in G_CATALOG], 1e-12)
    errs = []
    for k in kappas:
        g = kappa_g_correspond(k)
        errs.append(np.max(_rel(g(x), (x - 1) ** 2 * k(x))))
        errs.append(np.max(_rel(kappa_g_correspond(g)(x), k(x))))
    for g in sym:
        if abs(g.second_derivative_at_one - 2) < 1e-12:
            k = kappa_g_correspond(g)
            errs.append(np.max(_rel(g(x), (x - 1) ** 2 * k(x))))
    c.worst("kappa <-> g correspondence and round trip", errs, 1e-11)
    return c.report


# ---------------------------------------------------------------- divergence


def _pairs(rng, n, dims=(2, 3)):
    for i in range(n):
        d = dims[i % len(dims)]
        yield (random_density(d, rng.uniform(0.05, 0.5), rng),
               random_density(d, rng.uniform(0.05, 0.5), rng))


def suite_divergence(seed: int = 0, n_pairs: int = 500, n_mono: int = 200) -> SuiteReport:
    rng = np.random.default_rng(seed)
    c = _Collector("divergence", seed)
    gs = list(G_CATALOG) + [symmetrize_g(g) for g in G_CATALOG]
    pairs = list(_pairs(rng, n_pairs))
    neg, self_div, min_pos = [], [], np.inf
    for g in gs:
        for rho, gam in pairs:
            v = float(h_g(g, rho, gam))
            neg.append(-v)
            min_pos = min(min_pos, v)
            self_div.append(abs(float(h_g(g, rho, rho))))
    c.worst("h_g >= 0", neg, 1e-10, f"{len(neg)} pairs")
    c.worst("h_g(rho, rho) = 0", self_div, 1e-10)
    c.flag("h_g(rho, gamma) > 0 for rho != gamma", min_pos > 0, min_pos)

    viol = []
    for i in range(n_mono):
        d = 2 + i % 2
        phi = random_channel(d, seed=rng)
        rho, gam = random_density(d, 0.2, rng), random_density(d, 0.2, rng)
        g = gs[i % len(gs)]
        viol.append(float(h_g(g, phi(rho), phi(gam))) - float(h_g(g, rho, gam)))
    c.worst("monotonicity under random channels", viol, 1e-9, f"{n_mono} triples")

    errs_sym, errs_dual, errs_spec, errs_int, errs_lr = [], [], [], [], []
    for rho, gam in pairs[:100]:
        for g in G_CATALOG:
            lhs = float(h_g(symmetrize_g(g), rho, gam))
            rhs = (float(h_g(g, rho, gam)) + float(h_g(g, gam, rho))) / g.second_derivative_at_one
            errs_sym.append(abs(lhs - rhs))
            errs_dual.append(abs(float(h_g_dual(g, rho, gam)) - float(h_g(g, gam, rho))))
        for name, t, g in (("relent", None, gfun("xlogx")), ("quadratic", None, gfun("quadratic")),
                           ("wy", None, gfun("gt", 0.5)), ("wyd", 0.3, gfun("gt", 0.3)),
                           ("wyd", 1.6, gfun("gt", 1.6)), ("min_sym", None, gfun("gmin"))):
            errs_spec.append(abs(float(special_divergence(name, rho, gam, t)) - float(h_g(g, rho, gam))))
        for s in (0.0, 0.5, 1.0, 7.0):
            errs_int.append(abs(h_g_integral_check(s, rho, gam) - float(h_g(gfun("gs", s), rho, gam))))
        g = G_CATALOG[int(rng.integers(len(G_CATALOG)))]
        root = apply_spectral_function(gam, np.sqrt)
        op = left_right_op(rho, gam, g, "one")
        errs_lr.append(abs(np.vdot(root, op(root)).real - float(h_g(g, rho, gam))))
    c.worst("symmetrization identity", errs_sym, 1e-9)
    c.worst("dual identity H_g~(A,B) = H_g(B,A)", errs_dual, 1e-10)
    c.worst("closed forms vs spectral sum", errs_spec, 1e-9)
    c.worst("resolvent form vs H_{g_s}", errs_int, 1e-9)
    c.worst("superoperator route <B^1/2, g(L_A R_B^-1) B^1/2>", errs_lr, 1e-9)

    errs = []
    for _ in range(50):
        p = rng.dirichlet(np.ones(3)) * 0.9 + 0.1 / 3
        q = rng.dirichlet(np.ones(3)) * 0.9 + 0.1 / 3
        for g in G_CATALOG:
            errs.append(abs(float(h_g(g, np.diag(p), np.diag(q))) - float(np.sum(g(p / q) * q))))
    c.worst("commuting inputs reduce to the classical sum", errs, 1e-12)
    return c.report


# ---------------------------------------------------------------- geometry


def suite_geometry(seed: int = 0, n_mono: int = 200, n_trace: int = 500) -> SuiteReport:
    rng = np.random.default_rng(seed)
    c = _Collector("geometry", seed)
    viol = []
    for i in range(n_mono):
        d = 2 + i % 2
        phi = random_channel(d, seed=rng)
        rho, gam = random_density(d, 0.1, rng), random_density(d, 0.1, rng)
        for kind in GEODESIC_KINDS:
            viol.append(geodesic_distance(kind, phi(rho), phi(gam)) - geodesic_distance(kind, rho, gam))
    c.worst("distance monotonicity (all four kinds)", viol, 1e-9, f"{n_mono} triples")

    eps = 1e-4
    errs = []
    for i in range(40):
        d = 2 + i % 3
        rho = random_density(d, 0.3, rng)
        A = random_traceless(d, rng)
        A /= np.linalg.norm(A)
        for k, kinds in ((kappa("wy"), ("wy_arc", "wy_chord")), (kappa("min"), ("bures_arc", "bures_chord"))):
            m = np.sqrt(metric_value(k, rho, A))
            for kind in kinds:
                D = geodesic_distance(kind, rho, rho + eps * A)
                errs.append(abs(2 * D / eps - m) / m)
    c.worst("2 D(rho, rho + eps A)/eps -> sqrt(metric) at eps = 1e-4", errs, 1e-3)

    t = np.linspace(0.0, 1.0, 1000, endpoint=False)
    c.worst("sqrt(2 - 2t) < arccos t on [0, 1)", [np.max(np.sqrt(2 - 2 * t) - np.arccos(t))], -1e-16)

    order, strict, fid_sym = [], [], []
    for rho, gam in _pairs(rng, 200):
        order.append(geodesic_distance("bures_arc", rho, gam) - geodesic_distance("wy_arc", rho, gam))
        strict.append(geodesic_distance("wy_chord", rho, gam) - geodesic_distance("wy_arc", rho, gam))
        fid_sym.append(abs(fidelity(rho, gam) - fidelity(gam, rho)))
    c.worst("bures_arc <= wy_arc", order, 1e-10)
    c.worst("wy_chord < wy_arc for rho != gamma", strict, -1e-12)
    c.worst("fidelity symmetric", fid_sym, 1e-10)

    kap = list(KAPPA_CATALOG)
    trace_gap, pos, symm, ordering = [], [], [], []
    for i in range(n_trace):
        d = 2 + i % 3
        k = kap[i % len(kap)]
        rho = random_density(d, rng.uniform(0.02, 0.5), rng)
        A = random_hermitian(d, rng)
        B = random_hermitian(d, rng)
        om = omega(rho, k)
        qa = om.quadratic_form(A)
        trace_gap.append(trace_norm(A) ** 2 - qa)
        pos.append(-qa)
        symm.append(abs(np.vdot(A, om(B)) - np.vdot(B, om(A))))
        lo = omega(rho, kappa("min")).quadratic_form(A)
        hi = omega(rho, kappa("max")).quadratic_form(A)
        ordering.append(max(lo - qa, qa - hi) / qa)
    c.worst("||A||_1^2 <= <A, Omega A>", trace_gap, 1e-9, f"{n_trace} triples")
    c.worst("<A, Omega A> > 0", pos, -1e-300)
    c.worst("<A, Omega B> = <B, Omega A>", symm, 1e-10)
    c.worst("Omega^min <= Omega^kappa <= Omega^max (relative)", ordering, 1e-12)

    comm = []
    for _ in range(50):
        p = rng.dirichlet(np.ones(3)) * 0.9 + 0.1 / 3
        a = rng.standard_normal(3)
        a -= a.mean()
        for k in (kappa("min"), kappa("max"), kappa("bkm")):
            comm.append(abs(metric_value(k, np.diag(p), np.diag(a)) - np.sum(a * a / p)))
    c.worst("commuting metric = Tr rho^-1 A^2", comm, 1e-12)
    return c.report


# ---------------------------------------------------------------- lambda2


def suite_lambda2(seed: int = 0, n_qubit: int = 100, n_qutrit: int = 20) -> SuiteReport:
    rng = np.random.default_rng(seed)
    c = _Collector("lambda2", seed)
    kap = list(KAPPA_CATALOG)
    oracle, top, resid, trace, bounds = [], [], [], [], []
    for i in range(n_qubit + n_qutrit):
        d = 2 if i < n_qubit else 3
        phi = random_channel(d, seed=rng)
        rho = random_density(d, rng.uniform(0.05, 0.5), rng)
        k = kap[i % len(kap)]
        r = lambda2(phi, rho, k)
        oracle.append(abs(r.lambda2 - lambda2_bruteforce(phi, rho, k)))
        top.append(abs(r.top_eig - 1))
        resid.append(r.residual)
        trace.append(abs(np.trace(r.eigvec_matrix)))
        bounds.append(max(-r.lambda2, r.lambda2 - r.top_eig - 1e-10))
    detail = f"{n_qubit} qubit + {n_qutrit} qutrit triples"
    c.worst("lambda2 vs generalized Rayleigh maximum", oracle, 1e-8, detail)
    c.worst("top eigenvalue = 1", top, 1e-8)
    c.worst("witness eigen-equation residual", resid, 1e-7)
    c.worst("witness traceless", trace, 1e-8)
    c.worst("0 <= lambda2 <= top", bounds, 0.0)

    ex = [abs(lambda2(depolarizing_channel(2, 0.5), np.eye(2) / 2, k).lambda2 - 0.25) for k in kap]
    ex += [abs(lambda2(identity_channel(2), random_density(2, 0.3, rng), k).lambda2 - 1) for k in kap]
    c.worst("depolarizing(0.5) at I/2 gives 1/4; identity gives 1", ex, 1e-12)

    ratio = []
    for i in range(200):
        d = 2 + i % 2
        phi = random_channel(d, seed=rng)
        rho = random_density(d, 0.1, rng)
        ratio.append(riem_ratio(phi, kap[i % len(kap)], rho, random_traceless(d, rng)) - 1)
    c.worst("metric monotonicity ratio <= 1", ratio, 1e-9, "200 triples")

    t43 = []
    for _ in range(50):
        phi = random_channel(2, seed=rng)
        T = _affine_T(phi)
        t43.append(lambda2(phi, random_density(2, 0.05, rng), kappa("inv_sqrt")).lambda2
                   - np.linalg.norm(T, 2))
    c.worst("lambda2 for x^-1/2 <= ||T|| (qubits)", t43, 1e-8)

    powers, superop_err, lr_err, bkm_int = [], [], [], []
    for i in range(20):
        d = 2 + i % 3
        rho = random_density(d, 0.2, rng)
        X = random_hermitian(d, rng) + 1j * random_hermitian(d, rng)
        k = kap[i % len(kap)]
        half = omega(rho, k, 0.5)
        powers.append(np.linalg.norm(half(half(X)) - omega(rho, k)(X)))
        powers.append(np.linalg.norm(omega(rho, k, -1)(omega(rho, k)(X)) - X))
        S = omega(rho, k).superoperator()
        superop_err.append(np.linalg.norm(S(X) - omega(rho, k)(X)))
        lr = left_right_op(rho, rho, k, "inv_right")
        lr_err.append(np.linalg.norm(lr.matrix - S.matrix))
    for _ in range(3):
        rho = random_density(2, 0.3, rng)
        X = random_hermitian(2, rng)
        lam, U = hermitian_eig(rho)
        # int_0^inf (rho + t)^-1 X (rho + t)^-1 dt with t = u/(1-u)
        def integrand(u):
            t = u / (1 - u)
            R = (U / (lam + t)) @ U.conj().T
            return (R @ X @ R) / (1 - u) ** 2
        val = quad_vec(integrand, 0, 1, epsabs=1e-12, epsrel=1e-10)[0]
        bkm_int.append(np.linalg.norm(val - omega(rho, kappa("bkm"))(X)))
    c.worst("Omega^{1/2} Omega^{1/2} = Omega and Omega^-1 Omega = id", powers, 1e-9)
    c.worst("Omega superoperator matrix vs Schur action", superop_err, 1e-10)
    c.worst("left_right_op(rho, rho, kappa, 1/mu) = Omega", lr_err, 1e-10)
    c.worst("BKM Omega vs resolvent integral", bkm_int, 1e-6)
    return c.report


def _affine_T(phi):
    return np.array([[np.trace(phi(sj / 2) @ sk).real for sj in SIGMA] for sk in SIGMA])


# ---------------------------------------------------------------- qubit


def _dense(a, w):
    return a * np.eye(2) + sum(wk * s for wk, s in zip(w, SIGMA))


def suite_qubit(seed: int = 0, n: int = 1000) -> SuiteReport:
    rng = np.random.default_rng(seed)
    c = _Collector("qubit", seed)
    mul, inv, sq, rt = [], [], [], []
    for _ in range(n):
        a, b = rng.standard_normal(2)
        w, y = rng.standard_normal((2, 3))
        s, v = pauli_mul(a, w, b, y)
        mul.append(np.max(np.abs(_dense(s, v) - _dense(a, w) @ _dense(b, y))))
        if abs(a * a - w @ w) > 1e-3:
            s, v = pauli_inv(a, w)
            inv.append(np.max(np.abs(_dense(s, v) @ _dense(a, w) - np.eye(2))))
        bb = np.linalg.norm(w) + rng.uniform(0.01, 2)
        s, v = pauli_sqrt(bb, w)
        R = _dense(s, v)
        sq.append(np.max(np.abs(R @ R - _dense(bb, w))) / bb)
        ww = rng.standard_normal(3)
        ww *= rng.uniform(0, 1) / np.linalg.norm(ww)
        a2, w2 = matrix_to_bloch(bloch_to_matrix(ww))
        rt.append(max(abs(a2 - 1), np.max(np.abs(w2 - ww))))
    c.worst("pauli_mul vs dense product", mul, 1e-12, f"{n} inputs")
    c.worst("pauli_inv vs dense inverse", inv, 1e-10)
    c.worst("pauli_sqrt squares back (relative)", sq, 1e-12)
    c.worst("Bloch round trip", rt, 1e-12)

    mismatch, near = 0, 0
    for _ in range(n):
        lam = rng.uniform(-1, 1, 3)
        t3 = rng.uniform(-1, 1)
        m = AffineQubitMap([0, 0, t3], np.diag(lam))
        e = float(np.linalg.eigvalsh(m.choi())[0])
        if abs(e) <= 1e-9:
            near += 1
            continue
        mismatch += fa_cpt_check(lam, t3) != (e >= 0)
    c.worst("FA condition agrees with the Choi test", [mismatch], 0, f"{near} boundary samples skipped")

    affine = []
    for _ in range(50):
        a = rng.uniform(0, 1)
        tau = rng.uniform(-1, 1) * np.sqrt(1 - a * a)
        for m in (cq_map(a, tau), unital_map(np.diag(rng.uniform(-1, 1, 3)) * 0.3)):
            ch = channel_from_affine(m)
            affine.append(max(np.max(np.abs(_affine_T(ch) - m.T)),
                              np.max(np.abs([np.trace(ch(np.eye(2) / 2) @ s).real for s in SIGMA] - m.t))))
    c.worst("channel_from_affine round trip", affine, 1e-10)

    b2 = []
    for _ in range(50):
        mu, nu = rng.uniform(0.1, 2, 2)
        w = rng.standard_normal(3)
        f = lambda y: mu * (1 + y @ y) + nu * (w[0] + w[1] * y[0] + w[2] * y[1]) ** 2
        res = minimize(f, np.zeros(2), method="BFGS", options={"gtol": 1e-12})
        b2.append(abs(res.fun - pauli_quadratic_min(mu, nu, w)) / pauli_quadratic_min(mu, nu, w))
    c.worst("quadratic minimum vs numeric minimization", b2, 1e-7)

    b3, b4, b5 = [], [], []
    for _ in range(200):
        w = rng.standard_normal(3)
        w *= rng.uniform(0, 0.95) / np.linalg.norm(w)
        y = rng.standard_normal(3)
        P = _dense(1, w)
        Z = solve_sylvester(P, P, 2 * _dense(0, y))
        a, z = bures_resolvent(w, y)
        b3.append(np.max(np.abs(Z - _dense(a, z))))
        s = rng.uniform(0, 1)
        x = rng.standard_normal(3)
        x *= rng.uniform(0, 0.95) / np.linalg.norm(x)
        y = rng.standard_normal(3)
        Q = _dense(1, x)
        dense = lambda yy: (1 + s) * np.trace(_dense(0, yy) @ solve_sylvester(P, s * Q, _dense(0, yy))).real
        val = dense(y)
        b4.append(abs(val - pauli_resolvent(s, w, x, y)) / abs(val))
        u, v = w - s * x, w + s * x
        n_uv = np.cross(u, v)
        yp = y - (y @ n_uv) / (n_uv @ n_uv) * n_uv
        val = dense(yp)
        b5.append(abs(val - pauli_resolvent_perp(s, w, x, yp)) / abs(val))
    c.worst("Bures resolvent vs dense solve", b3, 1e-10)
    c.worst("mixed resolvent vs dense solve (relative)", b4, 1e-9)
    c.worst("mixed resolvent (y perp u x v) vs dense solve (relative)", b5, 1e-9)

    b1 = []
    for _ in range(50):
        G1, G2 = rng.standard_normal((2, 3, 3))
        A, B = G1 @ G1.T + 0.1 * np.eye(3), G2 @ G2.T + 0.1 * np.eye(3)
        T = rng.standard_normal((3, 3))
        Bh = np.real(apply_spectral_function(B, np.sqrt))
        Ah = np.real(apply_spectral_function(A, lambda l: l ** -0.5))
        lhs = np.linalg.eigvalsh(Bh @ T.T @ np.linalg.inv(A) @ T @ Bh)[-1]
        rhs = np.linalg.eigvalsh(Ah @ T @ B @ T.T @ Ah)[-1]
        b1.append(abs(lhs - rhs) / rhs)
    c.worst("sup reversal sB^{1/2}T^tA^{-1}TB^{1/2} = sA^{-1/2}TBT^tA^{-1/2}", b1, 1e-10)

    r = separation_ratio(np.sqrt(0.5), np.sqrt(0.5), 1.0)
    c.worst("separation: H(1) = 2/3 and ratio 9/17 at alpha^2 = tau^2 = 1/2",
            [abs(r.H - 2 / 3), abs(r.ratio - 9 / 17)], 1e-12)
    c.flag("separation: hypothesis and separation at alpha^2 = tau^2 = 1/2",
           r.hypothesis and r.separates, r.ratio - r.riem_closed_form)
    closed, boundary, limit = [], [], []
    for _ in range(50):
        a = rng.uniform(0.05, 1)
        tau = rng.uniform(-1, 1) * np.sqrt(1 - a * a)
        a2, t2 = a * a, tau * tau
        ht1 = 2 * a2 * (4 - a2 - 4 * t2) / ((4 - a2) ** 2 - 16 * t2)
        closed.append(abs(separation_ratio(a, tau, 1.0).H_tilde - ht1))
        s = rng.uniform(0.05, 1)
        boundary.append(abs(separation_ratio(a, np.sqrt(1 - a2), s).ratio - separation_boundary_ratio(a, s)))
        a_small = 1e-4
        rr = separation_ratio(a_small, np.sqrt(1 - a_small**2), s)
        limit.append(abs(rr.ratio / rr.riem_closed_form - separation_small_alpha_limit(s)))
    c.worst("H~(1) closed form", closed, 1e-12)
    c.worst("CP-boundary ratio formula", boundary, 1e-12)
    c.worst("small-alpha limit ratio", limit, 1e-6)
    s_grid = np.linspace(0.01, 1, 200)
    above = np.array([separation_small_alpha_limit(s) > 1 for s in s_grid])
    c.flag("small-alpha limit exceeds 1 exactly above s* = 0.457",
           bool(np.all(above == (s_grid > SEPARATION_THRESHOLD))), SEPARATION_THRESHOLD)

    approach, direct = [], []
    for _ in range(20):
        a = rng.uniform(0.1, 1)
        tau = rng.uniform(-1, 1) * np.sqrt(1 - a * a)
        s = rng.uniform(0.1, 1)
        terms = separation_terms(a, tau, s, 1 - 1e-6)
        r = separation_ratio(a, tau, s)
        approach.append(abs((terms[2] + terms[3]) / (terms[0] + terms[1]) - r.ratio))
        w1 = rng.uniform(0.1, 0.95)
        ch = channel_from_affine(cq_map(a, tau))
        P = bloch_to_matrix([w1, 0, 0])
        Q = np.eye(2) / 2
        g = gfun("gs", s)
        # densities are half of the unnormalized P, Q; H_g is homogeneous of degree one
        vals = [2 * float(h_g(g, *pair)) / (2 * (1 + s))
                for pair in ((P, Q), (Q, P), (ch(P), ch(Q)), (ch(Q), ch(P)))]
        direct.append(np.max(np.abs(np.array(vals) - separation_terms(a, tau, s, w1))))
    c.worst("|w1| -> 1 approach at 1 - 1e-6", approach, 1e-5)
    c.worst("finite-w1 formulas vs spectral h_g", direct, 1e-9)

    within, remark = [], []
    for _ in range(50):
        a = rng.uniform(0, 1)
        tau = rng.uniform(-1, 1) * np.sqrt(1 - a * a)
        rep = cq_coeffs(a, tau, s_list=rng.uniform(0, 1, 3))
        lo, hi = a * a, rep["riem:max"].value
        for key, e in rep.items():
            if key.startswith("riem:extreme"):
                within.append(max(lo - e.value, e.value - hi))
            if not 0 - 1e-12 <= e.value <= 1 + 1e-12:
                within.append(1.0)
    rep = cq_coeffs(1 / np.sqrt(2), 1 / np.sqrt(2))
    remark.append(abs(rep["riem:max"].value - 1))
    remark.append(abs(rep["tr"].value - 1 / np.sqrt(2)))
    c.worst("extreme-point values within [alpha^2, alpha^2/(1-tau^2)]", within, 1e-12)
    c.worst("alpha = tau = 1/sqrt 2: eta_max = 1, eta_tr = 0.70711", remark, 1e-12)
    T = np.diag([0.5, 0.3, 0.2])
    u = unital_coeffs(T)
    c.worst("unital report for diag(0.5, 0.3, 0.2)",
            [abs(u["tr"].value - 0.5), abs(u["riem"].value - 0.25)], 1e-15)
    return c.report


# ---------------------------------------------------------------- theorems


def suite_theorems(seed: int = 0, budget: Budget = Budget(4, 300)) -> SuiteReport:
    """Estimator-level checks of the main equalities on a few seeded channels."""
    rng = np.random.default_rng(seed)
    c = _Collector("theorems", seed)

    T = np.diag([0.5, 0.3, 0.2]) @ _rotation(rng)
    ch = channel_from_affine(unital_map(T))
    n2 = np.linalg.norm(T, 2) ** 2
    errs = [abs(eta_riem(ch, kappa(k), budget, seed).value - n2) for k in ("bkm", "wy", "max")]
    errs.append(abs(eta_relent(ch, gfun("xlogx"), budget, seed).value - n2))
    c.worst("unital qubit: eta = ||T||^2", errs, 2e-2)

    a, tau = 0.6, 0.8
    ch = channel_from_affine(cq_map(a, tau))
    errs = []
    for k in (kappa("max"), kappa("extreme", 1 / 3), kappa("min")):
        errs.append(abs(eta_riem(ch, k, budget, seed).value - cq_closed_form(k, a, tau).value))
    c.worst("CQ channel closed forms", errs, 2e-2)
    e_tr = eta_tr(ch).value
    c.worst("CQ eta_tr = alpha", [abs(e_tr - a)], 1e-12)

    phi = random_channel(2, seed=rng)
    bkm = eta_riem(phi, kappa("bkm"), budget, seed).value
    gaps = [abs(bkm - eta_relent(phi, parse_g("sym:xlogx"), budget, seed).value)]
    mx = eta_riem(phi, kappa("max"), budget, seed).value
    gaps.append(abs(mx - eta_relent(phi, gfun("quadratic"), budget, seed).value))
    c.worst("BKM and maximal-metric equalities", gaps, 5e-2)
    tr2 = np.linalg.norm(_affine_T(phi), 2) ** 2
    c.worst("eta_tr^2 <= eta_riem", [tr2 - bkm, tr2 - mx], 2e-2)

    near = []
    eps = 1e-3
    for i in range(20):
        d = 2 + i % 2
        phi = random_channel(d, seed=rng)
        rho = random_density(d, 0.3, rng)
        A = random_traceless(d, rng)
        A /= np.linalg.norm(A)
        k = KAPPA_CATALOG[i % len(KAPPA_CATALOG)]
        g = kappa_g_correspond(k)
        gam = rho + eps * A
        ratio = float(h_g(g, phi(rho), phi(gam))) / float(h_g(g, rho, gam))
        m = riem_ratio(phi, k, rho, A)
        near.append(abs(ratio - m) / m)
    c.worst("near-coincident divergence ratio -> metric ratio (eps = 1e-3)", near, 1e-2)

    phi = random_channel(2, seed=rng)
    v1 = eta_riem(phi, kappa("wy"), budget, seed).value
    v2 = eta_riem(phi, kappa("wy"), budget, seed).value
    c.flag("estimator determinism (bit-identical rerun)", v1 == v2, v1 - v2)
    return c.report


def _rotation(rng):
    Q, R = np.linalg.qr(rng.standard_normal((3, 3)))
    Q = Q * np.sign(np.diag(R))
    return Q if np.linalg.det(Q) > 0 else -Q


_RUNNERS: dict[str, Callable[[int], SuiteReport]] = {
    "functions": suite_functions,
    "divergence": suite_divergence,
    "geometry": suite_geometry,
    "lambda2": suite_lambda2,
    "qubit": suite_qubit,
    "theorems": suite_theorems,
}


def run_suite(name: str, seed: int = 0) -> SuiteReport:
    if name not in _RUNNERS:
        raise KeyError(f"unknown suite {name!r}; choose from {SUITES}")
    return _RUNNERS[name](seed)
