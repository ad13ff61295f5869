"""Operator convex function classes used to build divergences and monotone metrics.

Two families live here:

* ``KappaFunction`` -- positive ``kappa`` with ``kappa(1) = 1`` and
  ``x kappa(x) = kappa(1/x)``; each one fixes a symmetric monotone metric.
* ``GFunction`` -- operator convex ``g`` with ``g(1) = 0`` and ``g''(1) > 0``; each one
  fixes a quasi-entropy style divergence.

A symmetric ``g`` with ``g''(1) = 2`` and a ``kappa`` determine each other through
``g(x) = (x - 1)**2 kappa(x)``.

Evaluators accept scalars or arrays and return the same shape. Canonical names
(``"wyd:0.25"``, ``"sym:xlogx"``, ...) round-trip through :func:`parse_kappa` and
:func:`parse_g`.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import numpy as np

from .errors import DomainError, InvalidInput

# below this |x - 1| the removable singularities switch to series expansions
NEAR_ONE = 1e-4

__all__ = [
    "DiscreteMeasure",
    "KappaFunction",
    "GFunction",
    "KAPPA_CATALOG",
    "G_CATALOG",
    "kappa",
    "gfun",
    "parse_kappa",
    "parse_g",
    "eval_kappa",
    "eval_g",
    "symmetrize_g",
    "dual_g",
    "kappa_g_correspond",
    "kappa_mixture",
    "g_mixture",
]


def _pstr(p: float) -> str:
    # shortest text that parses back to the same float
    return repr(float(p))


def _positive(x):
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError("argument must be strictly positive")
    return arr


def _ret(x, out):
    return float(out) if np.ndim(x) == 0 else out


def _expm1_ratio(z):
    """``expm1(z)/z`` with the value 1 at ``z = 0``."""
    z = np.asarray(z, dtype=float)
    small = np.abs(z) < NEAR_ONE
    with np.errstate(all="ignore"):
        out = np.where(small, 1.0, np.expm1(z) / np.where(small, 1.0, z))
    series = 1.0 + z / 2 + z**2 / 6 + z**3 / 24 + z**4 / 120
    return np.where(small, series, out)


def _wyd(t: float, x):
    # kappa_t = E(t L) E((1-t) L) / E(L)^2 with E(z) = expm1(z)/z, L = log x
    L = np.log(x)
    return _expm1_ratio(t * L) * _expm1_ratio((1 - t) * L) / _expm1_ratio(L) ** 2


def _extreme(s: float, x):
    return 0.5 * (1 + s) * (1 / (x + s) + 1 / (1 + s * x))


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finite measure ``sum_i w_i delta_{s_i}`` plus a constant ``c >= 0``.

    For kappa mixtures the atoms lie in ``[0, 1]``, the weights sum to one and ``c = 0``.
    For g mixtures the atoms lie in ``[0, inf)`` and ``c`` weights the ``(x - 1)**2`` term.
    """

    atoms: tuple[tuple[float, float], ...]
    constant_c: float = 0.0

    def __post_init__(self):
        atoms = tuple((float(s), float(w)) for s, w in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if any(w <= 0 for _, w in atoms):
            raise InvalidInput("atom weights must be positive")
        if any(s < 0 for s, _ in atoms):
            raise InvalidInput("atom locations must be non-negative")
        if self.constant_c < 0:
            raise InvalidInput("constant c must be non-negative")

    @property
    def total_weight(self) -> float:
        return sum(w for _, w in self.atoms)


_KAPPA_TAGS = ("min", "max", "bkm", "wy", "wy_hat", "inv_sqrt", "wyd", "extreme", "mixture")


@dataclass(frozen=True)
class KappaFunction:
    """A member of the kappa class, identified by ``tag`` (and ``param`` / ``measure``)."""

    tag: str
    param: float | None = None
    measure: DiscreteMeasure | None = field(default=None, compare=True)

    def __post_init__(self):
        if self.tag not in _KAPPA_TAGS:
            raise InvalidInput(f"unknown kappa tag {self.tag!r}")
        if self.tag == "wyd":
            if self.param is None or not -1.0 <= self.param <= 2.0:
                raise InvalidInput("WYD parameter must lie in [-1, 2]")
        if self.tag == "extreme":
            if self.param is None or not 0.0 <= self.param <= 1.0:
                raise InvalidInput("extreme-point parameter must lie in [0, 1]")
        if self.tag == "mixture" and self.measure is None:
            raise InvalidInput("mixture needs a measure")

    def __call__(self, x):
        xa = _positive(x)
        tag = self.tag
        with np.errstate(all="ignore"):
            if tag == "min":
                out = 2.0 / (1.0 + xa)
            elif tag == "max":
                out = (1.0 + xa) / (2.0 * xa)
            elif tag == "bkm":
                out = 1.0 / _expm1_ratio(np.log(xa))
            elif tag == "wy":
                out = 4.0 / (1.0 + np.sqrt(xa)) ** 2
            elif tag == "wy_hat":
                out = (1.0 + np.sqrt(xa)) ** 2 / (4.0 * xa)
            elif tag == "inv_sqrt":
                out = 1.0 / np.sqrt(xa)
            elif tag == "wyd":
                out = _wyd(self.param, xa)
            elif tag == "extreme":
                out = _extreme(self.param, xa)
            else:
                out = sum(w * _extreme(s, xa) for s, w in self.measure.atoms)
        return _ret(x, out)

    @property
    def name(self) -> str:
        if self.tag == "wyd":
            return f"wyd:{_pstr(self.param)}"
        if self.tag == "extreme":
            return f"extreme:{_pstr(self.param)}"
        if self.tag == "mixture":
            return "mixture[" + ",".join(f"{s:g}@{w:g}" for s, w in self.measure.atoms) + "]"
        return self.tag.replace("_", "-")

    def __repr__(self):
        return f"KappaFunction({self.name})"


_G_TAGS = ("xlogx", "neg_log", "quadratic", "gs", "gt", "gmin", "gmax",
           "from_kappa", "symmetrized", "dual", "mixture")


@dataclass(frozen=True)
class GFunction:
    """A member of the g class. Composite tags keep their operand in ``inner``."""

    tag: str
    param: float | None = None
    inner: Union["GFunction", KappaFunction, None] = None
    measure: DiscreteMeasure | None = None

    def __post_init__(self):
        if self.tag not in _G_TAGS:
            raise InvalidInput(f"unknown g tag {self.tag!r}")
        if self.tag == "gs" and (self.param is None or self.param < 0):
            raise InvalidInput("g_s needs s >= 0")
        if self.tag == "gt":
            t = self.param
            if t is None or not (0 < t < 1 or 1 < t <= 2):
                raise InvalidInput("WYD g^(t) needs t in (0,1) or (1,2]")
        if self.tag == "from_kappa" and not isinstance(self.inner, KappaFunction):
            raise InvalidInput("from_kappa needs a KappaFunction")
        if self.tag in ("symmetrized", "dual") and not isinstance(self.inner, GFunction):
            raise InvalidInput(f"{self.tag} needs a GFunction")
        if self.tag == "mixture":
            m = self.measure
            if m is None or (m.constant_c == 0 and not m.atoms):
                raise InvalidInput("g mixture needs c > 0 or at least one atom")

    def __call__(self, x):
        xa = _positive(x)
        tag = self.tag
        with np.errstate(all="ignore"):
            if tag == "xlogx":
                out = xa * np.log(xa)
            elif tag == "neg_log":
                out = -np.log(xa)
            elif tag == "quadratic":
                out = (xa - 1.0) ** 2
            elif tag == "gs":
                out = (xa - 1.0) ** 2 / (xa + self.param)
            elif tag == "gt":
                t = self.param
                # x - x^t = -x expm1((t-1) log x)
                out = -xa * np.expm1((t - 1.0) * np.log(xa)) / (t * (1.0 - t))
            elif tag == "gmin":
                out = 2.0 * (xa - 1.0) ** 2 / (xa + 1.0)
            elif tag == "gmax":
                out = (xa - 1.0) ** 2 * (1.0 + xa) / (2.0 * xa)
            elif tag == "from_kappa":
                out = (xa - 1.0) ** 2 * self.inner(xa)
            elif tag == "symmetrized":
                g = self.inner
                out = (g(xa) + xa * g(1.0 / xa)) / g.second_derivative_at_one
            elif tag == "dual":
                out = xa * self.inner(1.0 / xa)
            else:
                m = self.measure
                out = m.constant_c * (xa - 1.0) ** 2
                for s, w in m.atoms:
                    out = out + w * (xa - 1.0) ** 2 / (xa + s)
        return _ret(x, out)

    @property
    def second_derivative_at_one(self) -> float:
        tag = self.tag
        if tag in ("xlogx", "neg_log", "gt"):
            return 1.0
        if tag in ("quadratic", "gmin", "gmax", "from_kappa", "symmetrized"):
            return 2.0
        if tag == "gs":
            return 2.0 / (1.0 + self.param)
        if tag == "dual":
            return self.inner.second_derivative_at_one
        m = self.measure
        return 2.0 * (m.constant_c + sum(w / (1.0 + s) for s, w in m.atoms))

    @property
    def is_symmetric(self) -> bool:
        """Whether ``g(x) = x g(1/x)`` holds identically."""
        if self.tag in ("gmin", "gmax", "from_kappa", "symmetrized"):
            return True
        if self.tag == "gs":
            return self.param == 1.0
        if self.tag == "dual":
            return self.inner.is_symmetric
        return False

    @property
    def name(self) -> str:
        tag = self.tag
        if tag == "neg_log":
            return "neglog"
        if tag == "gs":
            return f"gs:{_pstr(self.param)}"
        if tag == "gt":
            return f"gt:{_pstr(self.param)}"
        if tag == "from_kappa":
            return f"kappa:{self.inner.name}"
        if tag == "symmetrized":
            return f"sym:{self.inner.name}"
        if tag == "dual":
            return f"dual:{self.inner.name}"
        if tag == "mixture":
            m = self.measure
            return (f"gmix[c={m.constant_c:g};"
                    + ",".join(f"{s:g}@{w:g}" for s, w in m.atoms) + "]")
        return tag

    def __repr__(self):
        return f"GFunction({self.name})"


def kappa(tag: str, param: float | None = None) -> KappaFunction:
    """Build a catalog kappa; WYD at ``t`` in ``{0, 1}`` collapses to BKM."""
    tag = tag.replace("-", "_")
    if tag == "wyd" and param is not None and param in (0.0, 1.0):
        return KappaFunction("bkm")
    return KappaFunction(tag, None if param is None else float(param))


def gfun(tag: str, param: float | None = None) -> GFunction:
    tag = {"neglog": "neg_log"}.get(tag, tag)
    return GFunction(tag, None if param is None else float(param))


KAPPA_CATALOG = (
    KappaFunction("min"),
    KappaFunction("max"),
    KappaFunction("bkm"),
    KappaFunction("wy"),
    KappaFunction("wy_hat"),
    KappaFunction("inv_sqrt"),
    KappaFunction("wyd", 0.25),
    KappaFunction("wyd", -0.5),
    KappaFunction("wyd", 1.75),
    KappaFunction("extreme", 1 / 3),
    KappaFunction("extreme", 0.8),
)

G_CATALOG = (
    GFunction("xlogx"),
    GFunction("neg_log"),
    GFunction("quadratic"),
    GFunction("gs", 0.0),
    GFunction("gs", 0.5),
    GFunction("gs", 1.0),
    GFunction("gs", 3.0),
    GFunction("gt", 0.5),
    GFunction("gt", 0.3),
    GFunction("gt", 1.5),
    GFunction("gmin"),
    GFunction("gmax"),
    GFunction("from_kappa", inner=KappaFunction("inv_sqrt")),
)


def _num(text: str) -> float:
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"bad numeric parameter {text!r}") from exc


def parse_kappa(name: str) -> KappaFunction:
    """Parse ``min``, ``max``, ``bkm``, ``wy``, ``wy-hat``, ``inv-sqrt``, ``wyd:<t>``,
    ``extreme:<s>``. Parameters accept fractions such as ``1/3``."""
    name = name.strip()
    head, _, arg = name.partition(":")
    head = head.replace("-", "_")
    if head in ("wyd", "extreme"):
        if not arg:
            raise InvalidInput(f"{head} needs a parameter")
        return kappa(head, _num(arg))
    if arg or head not in ("min", "max", "bkm", "wy", "wy_hat", "inv_sqrt"):
        raise InvalidInput(f"unknown kappa name {name!r}")
    return KappaFunction(head)


def parse_g(name: str) -> GFunction:
    """Parse ``xlogx``, ``neglog``, ``quadratic``, ``gs:<s>``, ``gt:<t>``, ``gmin``, ``gmax``,
    ``sym:<g>``, ``dual:<g>``, ``kappa:<kappa-name>``."""
    name = name.strip()
    head, _, arg = name.partition(":")
    if head == "sym":
        return symmetrize_g(parse_g(arg))
    if head == "dual":
        return dual_g(parse_g(arg))
    if head == "kappa":
        return GFunction("from_kappa", inner=parse_kappa(arg))
    if head in ("gs", "gt"):
        if not arg:
            raise InvalidInput(f"{head} needs a parameter")
        return gfun(head, _num(arg))
    if arg or head not in ("xlogx", "neglog", "quadratic", "gmin", "gmax"):
        raise InvalidInput(f"unknown g name {name!r}")
    return gfun(head)


def eval_kappa(k: KappaFunction, x):
    return k(x)


def eval_g(g: GFunction, x):
    return g(x)


def symmetrize_g(g: GFunction) -> GFunction:
    """``(g + x g(1/x)) / g''(1)``; the result is symmetric with ``g''(1) = 2``."""
    if not g.second_derivative_at_one > 1e-12:
        raise InvalidInput("symmetrization needs g''(1) > 0")
    return GFunction("symmetrized", inner=g)


def dual_g(g: GFunction) -> GFunction:
    """``x g(1/x)``, the function whose divergence swaps the arguments."""
    return GFunction("dual", inner=g)


def _kappa_of_symmetrization(g: GFunction) -> KappaFunction:
    tag = g.tag
    if tag in ("xlogx", "neg_log"):
        return KappaFunction("bkm")
    if tag == "quadratic":
        return KappaFunction("max")
    if tag == "gs":
        s = g.param
        return KappaFunction("extreme", s if s <= 1 else 1 / s)
    if tag == "gt":
        return kappa("wyd", g.param)
    if tag == "dual":
        return _kappa_of_symmetrization(g.inner)
    if tag == "mixture":
        return _kappa_of_gmixture(g.measure)
    if g.is_symmetric:
        # sym(g) = 2 g / g''(1) for symmetric g
        if tag == "gs":  # only s == 1 reaches here
            return KappaFunction("min")
        return kappa_g_correspond(g)
    raise InvalidInput(f"no kappa known for sym({g.name})")


def _kappa_of_gmixture(m: DiscreteMeasure) -> KappaFunction:
    # c (x-1)^2 + sum w (x-1)^2/(x+s): symmetrization weighs kappa_0 by c and
    # kappa_{min(s,1/s)} by w/(1+s)
    atoms = {}
    if m.constant_c > 0:
        atoms[0.0] = m.constant_c
    for s, w in m.atoms:
        s_eff = s if s <= 1 else 1 / s
        atoms[s_eff] = atoms.get(s_eff, 0.0) + w / (1 + s)
    total = sum(atoms.values())
    return kappa_mixture(DiscreteMeasure(tuple((s, w / total) for s, w in sorted(atoms.items()))))


def kappa_g_correspond(obj):
    """Map a kappa to its symmetric g, or a symmetric g (``g''(1) = 2``) to its kappa."""
    if isinstance(obj, KappaFunction):
        if obj.tag == "min":
            return GFunction("gmin")
        if obj.tag == "max":
            return GFunction("gmax")
        return GFunction("from_kappa", inner=obj)
    if not isinstance(obj, GFunction):
        raise InvalidInput("expected a KappaFunction or GFunction")
    g = obj
    if not g.is_symmetric or abs(g.second_derivative_at_one - 2.0) > 1e-12:
        raise InvalidInput(f"{g.name} is not symmetric with g''(1) = 2")
    if g.tag == "gmin":
        return KappaFunction("min")
    if g.tag == "gmax":
        return KappaFunction("max")
    if g.tag == "from_kappa":
        return g.inner
    if g.tag == "symmetrized":
        return _kappa_of_symmetrization(g.inner)
    if g.tag == "dual":
        return kappa_g_correspond(g.inner)
    raise InvalidInput(f"no kappa known for {g.name}")


def kappa_mixture(m: DiscreteMeasure) -> KappaFunction:
    """``sum_i w_i kappa_{s_i}`` for a probability measure with atoms in ``[0, 1]``."""
    if not m.atoms:
        raise InvalidInput("mixture needs at least one atom")
    if abs(m.total_weight - 1.0) > 1e-12:
        raise InvalidInput("kappa mixture weights must sum to 1")
    if m.constant_c != 0:
        raise InvalidInput("kappa mixtures carry no constant term")
    if any(s > 1 for s, _ in m.atoms):
        raise InvalidInput("kappa mixture atoms must lie in [0, 1]")
    return KappaFunction("mixture", measure=m)


def g_mixture(m: DiscreteMeasure) -> GFunction:
    """``c (x-1)^2 + sum_i w_i (x-1)^2/(x+s_i)``, the integral representation with
    finitely many atoms."""
    return GFunction("mixture", measure=m)
