"""Generating functions for characters and dimensions, and their PDE checks.

Every transcribed formula lives in ``data/<name>.txt`` in canonical polynomial
text over ``t1, t2, t3, z1, z2, z3``; the builders here only assemble them.
A transcription slip therefore shows up as a failing oracle comparison, and
the offending file is the only thing to diff.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence

from .algebra import LaurentPoly, RationalFn, TruncatedSeries, VarSet, series_expand
from .calogero import A3_EIGENFORM, DELTA_Z, DiffOperator, EigenForm, Z
from .errors import UnknownKind
from .roots import weyl_character

TZ = VarSet(["t1", "t2", "t3", "z1", "z2", "z3"])

GOLDEN_NAMES = (
    "N", "D1", "D2", "D3", "P", "D13", "N_R", "P_R",
    "B3_first_num", "B3_first_den", "B3_third_num", "B3_third_den", "B3_mixed_num",
    "C3_first_num", "C3_first_den", "C3_third_num", "C3_third_den", "C3_mixed_num",
    "A_000", "A_100", "A_010", "A_200", "A_110", "A_101", "A_020",
)


def golden_text(name: str, golden_dir: str | Path | None = None) -> str:
    """Raw text of a golden formula; ``golden_dir`` files shadow the packaged ones."""
    if name not in GOLDEN_NAMES:
        raise KeyError(f"no golden formula named {name!r}")
    if golden_dir is not None:
        path = Path(golden_dir) / f"{name}.txt"
        if path.exists():
            return path.read_text()
    return resources.files("a3char").joinpath("data").joinpath(f"{name}.txt").read_text()


def load_golden(name: str, golden_dir: str | Path | None = None) -> LaurentPoly:
    return _parse_cached(golden_text(name, golden_dir))


@lru_cache(maxsize=None)
def _parse_cached(text: str) -> LaurentPoly:
    return LaurentPoly.parse(text, TZ)


@dataclass(frozen=True)
class GenFun:
    """``num / prod(factors)`` as a power series in ``variables``.

    ``num`` and the factors live over ``variables + (z1, z2, z3)``; the
    z-variables ride along in the coefficients.
    """

    name: str
    variables: tuple[str, ...]
    num: LaurentPoly
    factors: tuple[LaurentPoly, ...]

    @property
    def varset(self) -> VarSet:
        return self.num.varset

    @property
    def den(self) -> LaurentPoly:
        return self.rational().den

    def rational(self) -> RationalFn:
        return RationalFn.from_factors(self.num, self.factors)

    def expand(self, caps: Sequence[int], max_total: int | None = None) -> TruncatedSeries:
        return series_expand(self.rational(), caps, self.variables, max_total)


def _make(name: str, variables: Sequence[str], num: LaurentPoly, factors: Sequence[LaurentPoly]) -> GenFun:
    vs = VarSet(tuple(variables) + Z.names)
    return GenFun(name, tuple(variables), num.over(vs), tuple(f.over(vs) for f in factors))


def _one_minus(var: str, power: int) -> list[LaurentPoly]:
    return [LaurentPoly.parse(f"1 - {var}", TZ)] * power


def build_G(num: LaurentPoly | None = None, golden_dir=None) -> GenFun:
    """All A3 characters: ``sum_m t^m chi_m = N / (D1*D2*D3)``.

    ``num`` overrides the numerator, which is how negative controls are run.
    """
    if num is None:
        num = load_golden("N", golden_dir)
    dens = [load_golden(f"D{i}", golden_dir) for i in (1, 2, 3)]
    return _make("G", ("t1", "t2", "t3"), num, dens)


def build_E(golden_dir=None) -> GenFun:
    factors = _one_minus("t1", 4) + _one_minus("t2", 6) + _one_minus("t3", 4)
    return _make("E", ("t1", "t2", "t3"), load_golden("P", golden_dir), factors)


def build_G_real(num: LaurentPoly | None = None, golden_dir=None) -> GenFun:
    """Characters ``chi_{m1,m2,m1}`` of the real representations."""
    if num is None:
        num = load_golden("N_R", golden_dir)
    dens = [load_golden("D13", golden_dir), load_golden("D2", golden_dir)]
    return _make("G_R", ("t1", "t2"), num, dens)


def build_E_real(golden_dir=None) -> GenFun:
    # kept in unreduced form: (1-t1)^6 (1-t2) P_R over (1-t1)^12 (1-t2)^6
    num = load_golden("P_R", golden_dir)
    for f in _one_minus("t1", 6) + _one_minus("t2", 1):
        num = num * f
    factors = _one_minus("t1", 12) + _one_minus("t2", 6)
    return _make("E_R", ("t1", "t2"), num, factors)


RESTRICTED_KINDS = ("first", "third", "mixed")


def build_restricted(algebra: str, kind: str, golden_dir=None) -> GenFun:
    """Characters of ``m1*l1``, ``m3*l3`` or ``m1*l1 + m3*l3`` for B3 or C3."""
    algebra = algebra.upper()
    if algebra not in ("B3", "C3"):
        raise UnknownKind(f"restricted generating functions exist for B3 and C3, not {algebra}")
    if kind not in RESTRICTED_KINDS:
        raise UnknownKind(f"unknown kind {kind!r}; expected one of {RESTRICTED_KINDS}")
    first = load_golden(f"{algebra}_first_den", golden_dir)
    third = load_golden(f"{algebra}_third_den", golden_dir)
    if kind == "first":
        return _make(f"{algebra}_first", ("t1",), load_golden(f"{algebra}_first_num", golden_dir), [first])
    if kind == "third":
        return _make(f"{algebra}_third", ("t3",), load_golden(f"{algebra}_third_num", golden_dir), [third])
    return _make(f"{algebra}_mixed", ("t1", "t3"), load_golden(f"{algebra}_mixed_num", golden_dir),
                 [first, third])


def restricted_weight(kind: str, exponent: Sequence[int]) -> tuple[int, int, int]:
    """Highest weight whose character sits at ``exponent`` of a restricted function."""
    if kind == "first":
        return (exponent[0], 0, 0)
    if kind == "third":
        return (0, 0, exponent[0])
    if kind == "mixed":
        return (exponent[0], 0, exponent[1])
    raise UnknownKind(kind)


def expand_genfun(g: GenFun, caps: Sequence[int], max_total: int | None = None) -> dict[tuple[int, ...], LaurentPoly]:
    """Coefficient of every ``t^m`` inside the caps, keyed by ``m``."""
    s = g.expand(caps, max_total)
    out = {}
    for e in s.exponents():
        if max_total is None or sum(e) <= max_total:
            out[e] = s.coeff(e)
    return out


# -- differential operators in t ------------------------------------------------


def delta_t_from_eigen(form: EigenForm, variables: Sequence[str]) -> DiffOperator:
    """Replace each label ``m_i`` by the Euler operator ``t_i d/dt_i``.

    ``m_i^2`` becomes ``t_i^2 d_i^2 + t_i d_i`` and ``m_i m_j`` becomes
    ``t_i t_j d_i d_j``.
    """
    vs = VarSet(variables)
    n = len(vs)
    if form.size != n:
        raise ValueError(f"form in {form.size} labels, {n} variables given")
    acc: dict[tuple[int, ...], Fraction] = {}

    def bump(alpha, c):
        acc[alpha] = acc.get(alpha, 0) + c

    for (i, j), c in form.quadratic.items():
        alpha = [0] * n
        alpha[i] += 1
        alpha[j] += 1
        bump(tuple(alpha), c)
        if i == j:
            one = [0] * n
            one[i] = 1
            bump(tuple(one), c)
    for i, c in form.linear.items():
        one = [0] * n
        one[i] = 1
        bump(tuple(one), c)
    terms = []
    for alpha in sorted(acc, key=lambda a: (-sum(a), [-x for x in a])):
        c = acc[alpha]
        if c:
            terms.append((LaurentPoly.monomial(vs, alpha, c), alpha))
    return DiffOperator(vs, tuple(terms))


REAL_EIGENFORM = A3_EIGENFORM.pullback([[1, 0], [0, 1], [1, 0]])
DELTA_T = delta_t_from_eigen(A3_EIGENFORM, ("t1", "t2", "t3"))
DELTA_T_REAL = delta_t_from_eigen(REAL_EIGENFORM, ("t1", "t2"))


def verify_pde(g: GenFun, op: DiffOperator, caps: Sequence[int],
               z_op: DiffOperator = DELTA_Z) -> TruncatedSeries:
    """Residual series of ``(op - z_op) g`` truncated to ``caps``; zero means PASS."""
    if tuple(op.varset.names) != g.variables:
        raise ValueError(f"operator in {op.varset.names}, series in {g.variables}")
    s = g.expand(caps)
    t_part = op.apply_series(s)
    z_part = TruncatedSeries(s.varset, s.caps, s.coeff_varset,
                             {e: z_op.apply(c) for e, c in s.terms.items()})
    return t_part - z_part


def _lift(op: DiffOperator, varset: VarSet) -> DiffOperator:
    pos = [varset.index(n) for n in op.varset.names]
    terms = []
    for coef, alpha in op.terms:
        full = [0] * len(varset)
        for p, a in zip(pos, alpha):
            full[p] = a
        terms.append((coef.over(varset), tuple(full)))
    return DiffOperator(varset, tuple(terms))


def verify_pde_symbolic(g: GenFun, op: DiffOperator, z_op: DiffOperator = DELTA_Z) -> LaurentPoly:
    """Numerator of ``(op - z_op)(N/D)`` times ``D^3``; zero proves the identity.

    Works on the full rational function in all variables at once, so it can
    be slow; the series check in :func:`verify_pde` is the everyday route.
    """
    vs = g.varset
    lifted = _lift(op, vs)
    zl = _lift(z_op, vs)
    terms = list(lifted.terms) + [(-c, a) for c, a in zl.terms]
    if any(sum(a) > 2 for _, a in terms):
        raise ValueError("only operators of order <= 2 are supported")
    n, d = g.num, g.den
    names = vs.names

    def deriv(p, alpha):
        for name, a in zip(names, alpha):
            for _ in range(a):
                p = p.diff(name)
        return p

    def d_of(p, i, cache):
        if i not in cache:
            cache[i] = p.diff(names[i])
        return cache[i]

    dn_cache, dd_cache = {}, {}
    l_n = LaurentPoly.zero(vs)
    b = LaurentPoly.zero(vs)
    c2 = LaurentPoly.zero(vs)
    for coef, alpha in terms:
        l_n = l_n + coef * deriv(n, alpha)
        idx = [i for i, a in enumerate(alpha) for _ in range(a)]
        if len(idx) == 1:
            (i,) = idx
            b = b + coef * (n * d_of(d, i, dd_cache))
        elif len(idx) == 2:
            i, j = idx
            di, dj = d_of(d, i, dd_cache), d_of(d, j, dd_cache)
            ni, nj = d_of(n, i, dn_cache), d_of(n, j, dn_cache)
            b = b + coef * (ni * dj + nj * di + n * deriv(d, alpha))
            c2 = c2 + coef * (n * di * dj)
    # first-order terms contribute (N_i D - N D_i) D; second-order terms
    # (N_ij D^2 - (N_i D_j + N_j D_i + N D_ij) D + 2 N D_i D_j)
    return d * (d * l_n - b) + 2 * c2


# -- restricted functions against the Weyl oracle ---------------------------------


def fundamental_bindings(algebra: str) -> dict[str, LaurentPoly]:
    """``z_i`` bound to the Weyl character of the i-th fundamental representation."""
    return {f"z{i + 1}": weyl_character(algebra, tuple(int(i == j) for j in range(3)))
            for i in range(3)}


def check_restricted(algebra: str, kind: str, caps: Sequence[int], max_total: int | None = None,
                     golden_dir=None) -> list[dict]:
    """Compare each coefficient (in x-variables) with the Weyl character.

    Returns the mismatches, each as ``{exponent, weight, expected, got}``.
    """
    g = build_restricted(algebra, kind, golden_dir)
    bindings = fundamental_bindings(algebra)
    bad = []
    for e, c in expand_genfun(g, caps, max_total).items():
        weight = restricted_weight(kind, e)
        got = c.subst(bindings, target=bindings["z1"].varset)
        want = weyl_character(algebra, weight)
        if got != want:
            bad.append({"exponent": e, "weight": weight, "expected": want, "got": got})
    return bad


def real_dimension(m1: int, m2: int) -> int:
    v = Fraction((m1 + 1) ** 2 * (m2 + 1) * (m1 + m2 + 2) ** 2 * (2 * m1 + m2 + 3), 12)
    if v.denominator != 1:
        raise ArithmeticError(f"non-integral real dimension at {(m1, m2)}")
    return v.numerator


def golden_map(golden_dir=None) -> Mapping[str, LaurentPoly]:
    return {name: load_golden(name, golden_dir) for name in GOLDEN_NAMES}
