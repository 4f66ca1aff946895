"""The kappa = 1 Calogero-Sutherland operator for A3 in fundamental characters.

Irreducible characters of A3 are the polynomial eigenfunctions of the
second-order operator ``DELTA_Z`` acting on ``z1, z2, z3`` (the characters of
the three fundamental representations).  :func:`solve_character` recovers
them by back-substitution, without any Weyl-group combinatorics.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Mapping, Sequence

from .algebra import Coeff, LaurentPoly, TruncatedSeries, VarSet, _div, _norm
from .errors import EigenvalueCollision, NegativeExponentInput, NonDominantWeight
from .roots import X, dominance_leq, to_root_coords, weyl_dim

Z = VarSet(["z1", "z2", "z3"])


def _falling(n: int, k: int) -> int:
    return prod(range(n, n - k, -1)) if k else 1


@dataclass(frozen=True)
class DiffOperator:
    """``sum coef * d^alpha`` over the variables of ``varset``.

    ``terms`` pairs a polynomial coefficient (over ``varset``) with a
    derivative multi-index.
    """

    varset: VarSet
    terms: tuple[tuple[LaurentPoly, tuple[int, ...]], ...]

    @classmethod
    def from_text(cls, varset: VarSet, terms: Sequence[tuple[str, Sequence[int]]],
                  scale: Coeff = 1) -> DiffOperator:
        return cls(varset, tuple((LaurentPoly.parse(c, varset).scale(scale), tuple(a))
                                 for c, a in terms))

    def derivative(self, p: LaurentPoly, alpha: Sequence[int]) -> LaurentPoly:
        out = {}
        for e, c in p.terms.items():
            f = 1
            for x, a in zip(e, alpha):
                if a:
                    f *= _falling(x, a)
                    if not f:
                        break
            if f:
                out[tuple(x - a for x, a in zip(e, alpha))] = _norm(c * f)
        return LaurentPoly(p.varset, out)

    def apply(self, p: LaurentPoly) -> LaurentPoly:
        if p.varset != self.varset:
            p = p.over(self.varset)
        acc = LaurentPoly.zero(self.varset)
        for coef, alpha in self.terms:
            d = self.derivative(p, alpha)
            if d:
                acc = acc + coef * d
        return acc

    __call__ = apply

    def apply_series(self, s: TruncatedSeries) -> TruncatedSeries:
        """Apply to a truncated series in the operator's variables.

        Exact within the caps only for operators that never lower degrees,
        i.e. every coefficient is divisible by ``t^alpha``; anything else
        raises ``ValueError``.
        """
        if s.varset != self.varset:
            raise ValueError("operator and series variables differ")
        for coef, alpha in self.terms:
            if any(min(e[i] for e in coef.terms) < a for i, a in enumerate(alpha) if a):
                raise ValueError("operator lowers degree; truncation would be inexact")
        out: dict = {}
        for e, c in s.terms.items():
            for coef, alpha in self.terms:
                f = 1
                for x, a in zip(e, alpha):
                    f *= _falling(x, a)
                if not f:
                    continue
                base = tuple(x - a for x, a in zip(e, alpha))
                for g, v in coef.terms.items():
                    k = tuple(x + y for x, y in zip(base, g))
                    if s.in_caps(k):
                        term = c.scale(v * f)
                        out[k] = out[k] + term if k in out else term
        return TruncatedSeries(s.varset, s.caps, s.coeff_varset, out)

    def __str__(self) -> str:
        parts = []
        names = self.varset.names
        for coef, alpha in self.terms:
            d = "*".join(f"d{n}" + (f"^{a}" if a > 1 else "") for n, a in zip(names, alpha) if a)
            parts.append(f"({coef})*{d}" if d else f"({coef})")
        return " + ".join(parts)


DELTA_Z = DiffOperator.from_text(Z, [
    ("3*z1^2 - 8*z2", (2, 0, 0)),
    ("4*z2^2 - 8*z1*z3 - 16", (0, 2, 0)),
    ("3*z3^2 - 8*z2", (0, 0, 2)),
    ("4*z1*z2 - 24*z3", (1, 1, 0)),
    ("2*z1*z3 - 32", (1, 0, 1)),
    ("4*z2*z3 - 24*z1", (0, 1, 1)),
    ("15*z1", (1, 0, 0)),
    ("20*z2", (0, 1, 0)),
    ("15*z3", (0, 0, 1)),
], scale=Fraction(1, 2))


@dataclass(frozen=True)
class EigenForm:
    """Quadratic plus linear form in the labels ``m``.

    ``quadratic`` maps index pairs ``(i, j)`` with ``i <= j`` to the
    coefficient of ``m_i*m_j``; ``linear`` maps ``i`` to the coefficient of
    ``m_i``.
    """

    quadratic: Mapping[tuple[int, int], Fraction]
    linear: Mapping[int, Fraction]
    size: int = 3

    def __call__(self, m: Sequence[int]) -> Fraction:
        q = sum(c * m[i] * m[j] for (i, j), c in self.quadratic.items())
        return _norm(Fraction(q + sum(c * m[i] for i, c in self.linear.items())))

    def pullback(self, matrix: Sequence[Sequence[int]]) -> EigenForm:
        """The form in new labels ``u`` with ``m = matrix @ u``."""
        k = len(matrix[0])
        quad: dict[tuple[int, int], Fraction] = {}
        lin: dict[int, Fraction] = {}
        for (i, j), c in self.quadratic.items():
            for a in range(k):
                for b in range(k):
                    v = c * matrix[i][a] * matrix[j][b]
                    if v:
                        key = (min(a, b), max(a, b))
                        quad[key] = quad.get(key, 0) + v
        for i, c in self.linear.items():
            for a in range(k):
                if matrix[i][a]:
                    lin[a] = lin.get(a, 0) + c * matrix[i][a]
        return EigenForm({key: v for key, v in quad.items() if v},
                         {key: v for key, v in lin.items() if v}, k)

    def is_flip_symmetric(self) -> bool:
        flip = [[0, 0, 1], [0, 1, 0], [1, 0, 0]]
        other = self.pullback(flip)
        return dict(other.quadratic) == dict(self.quadratic) and dict(other.linear) == dict(self.linear)


_h = Fraction(1, 2)
A3_EIGENFORM = EigenForm(
    quadratic={(0, 0): 3 * _h, (1, 1): 4 * _h, (2, 2): 3 * _h,
               (0, 1): 4 * _h, (0, 2): 2 * _h, (1, 2): 4 * _h},
    linear={0: 12 * _h, 1: 16 * _h, 2: 12 * _h},
)


def _dominant(m: Sequence[int]) -> tuple[int, int, int]:
    m = tuple(int(x) for x in m)
    if len(m) != 3 or any(x < 0 for x in m):
        raise NonDominantWeight(f"{m} is not a dominant weight")
    return m


def eigenvalue(m: Sequence[int]) -> Coeff:
    return A3_EIGENFORM(_dominant(m))


def apply_delta_z(p: LaurentPoly) -> LaurentPoly:
    if p.varset != Z:
        p = p.over(Z)
    if not p.is_polynomial():
        raise NegativeExponentInput(f"{p} has negative exponents")
    return DELTA_Z.apply(p)


@dataclass(frozen=True)
class CharPoly:
    m: tuple[int, int, int]
    body: LaurentPoly

    def __str__(self) -> str:
        return str(self.body)


def _height(m, a) -> int:
    return int(sum(to_root_coords("A3", [x - y for x, y in zip(m, a)])))


def ansatz(m: Sequence[int]) -> list[tuple[int, int, int]]:
    """Exponents ``a >= 0`` with ``a <= m`` in dominance order, highest first."""
    m = _dominant(m)
    # a <= m forces a1+2a2+3a3 <= m1+2m2+3m3 (pairing with 4*l3) and similarly from the left
    bound1 = m[0] + 2 * m[1] + 3 * m[2]
    bound3 = 3 * m[0] + 2 * m[1] + m[2]
    out = []
    for a1 in range(bound3 // 3 + 1):
        for a3 in range(bound1 // 3 + 1):
            for a2 in range(min(bound1, bound3) // 2 + 1):
                a = (a1, a2, a3)
                if dominance_leq("A3", a, m):
                    out.append(a)
    out.sort(key=lambda a: (_height(m, a), a))
    return out


_DELTA_CACHE: dict[tuple[int, ...], dict[tuple[int, ...], Coeff]] = {}


def _delta_monomial(a: tuple[int, int, int]) -> dict[tuple[int, ...], Coeff]:
    r = _DELTA_CACHE.get(a)
    if r is None:
        r = DELTA_Z.apply(LaurentPoly.monomial(Z, a)).terms
        _DELTA_CACHE[a] = r
    return r


_SOLVED: dict[tuple[int, int, int], CharPoly] = {}
_SOLVED_LOCK = threading.Lock()


def solve_character(m: Sequence[int]) -> CharPoly:
    """The character with highest weight ``m`` as a polynomial in z1, z2, z3.

    Writes ``chi = sum c_a z^a`` over :func:`ansatz` with ``c_m = 1``.  The
    operator is triangular (``z^a`` maps to ``eps_a z^a`` plus monomials lower
    in dominance), so each ``c_b`` follows from the higher ones by dividing
    by ``eps_m - eps_b``.
    """
    m = _dominant(m)
    hit = _SOLVED.get(m)
    if hit is not None:
        return hit
    eps_m = eigenvalue(m)
    monos = ansatz(m)
    allowed = set(monos)
    pending: dict[tuple[int, ...], Coeff] = {}
    coeffs: dict[tuple[int, ...], Coeff] = {}
    for b in monos:
        if b == m:
            c = 1
        else:
            eps_b = eigenvalue(b)
            if eps_b == eps_m:
                raise EigenvalueCollision(f"eps{m} == eps{b} == {eps_m}")
            acc = pending.pop(b, 0)
            c = _div(acc, eps_m - eps_b) if acc else 0
        if not c:
            continue
        coeffs[b] = c
        for k, v in _delta_monomial(b).items():
            if k == b:
                continue
            if k not in allowed:
                raise AssertionError(f"operator left the ansatz: {b} -> {k}")
            pending[k] = pending.get(k, 0) + c * v
    body = LaurentPoly(Z, coeffs)
    if not body.is_integral():
        raise ArithmeticError(f"non-integral character coefficients for {m}: {body}")
    result = CharPoly(m, body)
    with _SOLVED_LOCK:
        _SOLVED.setdefault(m, result)
    return _SOLVED[m]


FUNDAMENTAL_X = {
    "z1": LaurentPoly.parse("x1 + x1^-1*x2 + x2^-1*x3 + x3^-1", X),
    "z2": LaurentPoly.parse("x2 + x1^-1*x3 + x1^-1*x2*x3^-1 + x1*x2^-1*x3 + x1*x3^-1 + x2^-1", X),
    "z3": LaurentPoly.parse("x3 + x2*x3^-1 + x1*x2^-1 + x1^-1", X),
}


def char_to_x(c: CharPoly | LaurentPoly) -> LaurentPoly:
    """Rewrite a z-polynomial in the torus variables x1, x2, x3."""
    body = c.body if isinstance(c, CharPoly) else c
    return body.over(Z).subst(FUNDAMENTAL_X, target=X)


def weight_multiplicities(m: Sequence[int]) -> dict[tuple[int, int, int], int]:
    """Weight -> multiplicity for the irrep ``m``, read off the x-form of its character."""
    chi = char_to_x(solve_character(m))
    out = dict(sorted(chi.terms.items()))
    if sum(out.values()) != weyl_dim("A3", m):
        raise ArithmeticError(f"multiplicities of {m} do not sum to the dimension")
    return out
