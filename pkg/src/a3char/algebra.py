"""Exact sparse Laurent polynomials, rational functions and truncated series.

Everything here works over arbitrary-precision rationals.  Coefficients are
stored as ``int`` whenever they are integral and as ``Fraction`` otherwise, so
the common integer case never pays for ``Fraction`` arithmetic.

Exponent vectors are plain tuples of ints, one entry per variable of the
owning :class:`VarSet`.  The canonical text form sorts terms by graded-lex
order, lowest first::

    >>> V = VarSet(["t1", "z1", "z2"])
    >>> str(LaurentPoly.parse("t1^2*z2 + 1 - t1*z1", V))
    '1 - t1*z1 + t1^2*z2'
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from operator import add, sub
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    DenominatorNotUnit,
    ExponentOutOfCaps,
    InexactDivision,
    NonInvertibleBinding,
    ParseError,
    UnknownVariable,
    VarSetMismatch,
)

Coeff = int | Fraction
Exponent = tuple[int, ...]


def _norm(c: Coeff) -> Coeff:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _div(a: Coeff, b: Coeff) -> Coeff:
    if type(a) is int and type(b) is int:
        q, r = divmod(a, b)
        if r == 0:
            return q
    return _norm(Fraction(a) / b)


def _grlex_key(e: Exponent) -> tuple[int, Exponent]:
    return (sum(e), e)


class VarSet:
    """An ordered tuple of distinct variable names."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(f"{name!r} is not in {self.names}") from None

    def without(self, names: Iterable[str]) -> VarSet:
        drop = set(names)
        return VarSet(n for n in self.names if n not in drop)

    @property
    def zero(self) -> Exponent:
        return (0,) * len(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, VarSet) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"VarSet({list(self.names)!r})"


class LaurentPoly:
    """Immutable sparse Laurent polynomial with rational coefficients."""

    __slots__ = ("varset", "terms", "_hash")

    def __init__(self, varset: VarSet, terms: Mapping[Exponent, Coeff] | None = None):
        self.varset = varset
        clean: dict[Exponent, Coeff] = {}
        n = len(varset)
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match {varset}")
                if c:
                    clean[e] = _norm(Fraction(c) if isinstance(c, float) else c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, varset: VarSet, terms: dict[Exponent, Coeff]) -> LaurentPoly:
        # trusted constructor: keys valid, no zeros, normalized
        p = object.__new__(cls)
        p.varset = varset
        p.terms = terms
        p._hash = None
        return p

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, varset: VarSet) -> LaurentPoly:
        return cls._raw(varset, {})

    @classmethod
    def constant(cls, varset: VarSet, c: Coeff) -> LaurentPoly:
        c = _norm(c)
        return cls._raw(varset, {varset.zero: c} if c else {})

    @classmethod
    def monomial(cls, varset: VarSet, exponent: Sequence[int], c: Coeff = 1) -> LaurentPoly:
        return cls(varset, {tuple(exponent): c})

    @classmethod
    def variable(cls, varset: VarSet, name: str) -> LaurentPoly:
        e = [0] * len(varset)
        e[varset.index(name)] = 1
        return cls._raw(varset, {tuple(e): 1})

    @classmethod
    def parse(cls, text: str, varset: VarSet) -> LaurentPoly:
        return parse_poly(text, varset)

    # -- basic protocol -----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self.varset == other.varset and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self.terms
            return self.terms == {self.varset.zero: other}
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.varset, frozenset(self.terms.items())))
        return self._hash

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({format_poly(self)!r}, {list(self.varset.names)})"

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other: object) -> LaurentPoly | None:
        if isinstance(other, LaurentPoly):
            if other.varset != self.varset:
                raise VarSetMismatch(f"{self.varset} vs {other.varset}")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(self.varset, other)
        return None

    def __add__(self, other: object) -> LaurentPoly:
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        if len(q.terms) > len(self.terms):
            return q._add_terms(self.terms, 1)
        return self._add_terms(q.terms, 1)

    __radd__ = __add__

    def __sub__(self, other: object) -> LaurentPoly:
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return self._add_terms(q.terms, -1)

    def __rsub__(self, other: object) -> LaurentPoly:
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return q._add_terms(self.terms, -1)

    def _add_terms(self, terms: Mapping[Exponent, Coeff], sign: int) -> LaurentPoly:
        out = dict(self.terms)
        for e, c in terms.items():
            v = out.get(e, 0) + sign * c
            if v:
                out[e] = _norm(v)
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.varset, out)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw(self.varset, {e: -c for e, c in self.terms.items()})

    def scale(self, c: Coeff) -> LaurentPoly:
        c = _norm(c)
        if not c:
            return LaurentPoly.zero(self.varset)
        if c == 1:
            return self
        return LaurentPoly._raw(self.varset, {e: _norm(v * c) for e, v in self.terms.items()})

    def __mul__(self, other: object) -> LaurentPoly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return LaurentPoly._raw(self.varset, _mul_terms(self.terms, q.terms))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            return self.inverse_monomial() ** (-k)
        result = LaurentPoly.constant(self.varset, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse_monomial(self) -> LaurentPoly:
        """Inverse of a single term ``c*x^e``; anything else is not a unit."""
        if len(self.terms) != 1:
            raise NonInvertibleBinding(f"{self} is not a unit in the Laurent ring")
        ((e, c),) = self.terms.items()
        return LaurentPoly._raw(self.varset, {tuple(-x for x in e): _div(1, c)})

    # -- inspection ---------------------------------------------------------

    def coeff(self, exponent: Sequence[int]) -> Coeff:
        return self.terms.get(tuple(exponent), 0)

    def constant_term(self) -> Coeff:
        return self.terms.get(self.varset.zero, 0)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.varset.zero in self.terms)

    def is_integral(self) -> bool:
        return all(type(c) is int for c in self.terms.values())

    def is_polynomial(self) -> bool:
        """True when no exponent is negative."""
        return all(min(e, default=0) >= 0 for e in self.terms)

    def leading_term(self) -> tuple[Exponent, Coeff]:
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def degree_bounds(self) -> list[tuple[int, int]]:
        """Per-variable (min, max) exponent; requires a nonzero polynomial."""
        cols = list(zip(*self.terms))
        return [(min(c), max(c)) for c in cols]

    def sorted_terms(self) -> list[tuple[Exponent, Coeff]]:
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]))

    def used_variables(self) -> set[str]:
        used = set()
        for e in self.terms:
            used.update(n for n, x in zip(self.varset.names, e) if x)
        return used

    # -- structural operations ---------------------------------------------

    def over(self, varset: VarSet) -> LaurentPoly:
        """Re-embed into another varset; every variable in use must exist there."""
        if varset == self.varset:
            return self
        idx = []
        for i, name in enumerate(self.varset.names):
            if name in varset:
                idx.append((i, varset.index(name)))
        missing = self.used_variables() - set(varset.names)
        if missing:
            raise VarSetMismatch(f"variables {sorted(missing)} not in {varset}")
        n = len(varset)
        out = {}
        for e, c in self.terms.items():
            f = [0] * n
            for i, j in idx:
                f[j] = e[i]
            out[tuple(f)] = c
        return LaurentPoly._raw(varset, out)

    def split(self, names: Sequence[str]) -> dict[Exponent, LaurentPoly]:
        """Group terms by their exponents in ``names``.

        Returns a mapping from the exponent vector in ``names`` to the
        coefficient, a Laurent polynomial over the remaining variables.
        """
        pick = [self.varset.index(n) for n in names]
        rest_names = [n for n in self.varset.names if n not in set(names)]
        rest = VarSet(rest_names)
        keep = [self.varset.index(n) for n in rest_names]
        groups: dict[Exponent, dict[Exponent, Coeff]] = {}
        for e, c in self.terms.items():
            k = tuple(e[i] for i in pick)
            groups.setdefault(k, {})[tuple(e[i] for i in keep)] = c
        return {k: LaurentPoly._raw(rest, g) for k, g in groups.items()}

    def diff(self, name: str) -> LaurentPoly:
        return poly_diff(self, name)

    def subst(self, bindings: Mapping[str, LaurentPoly | Coeff], target: VarSet | None = None) -> LaurentPoly:
        return poly_subst(self, bindings, target)

    def exact_div(self, d: LaurentPoly) -> LaurentPoly:
        return poly_exact_div(self, d)

    def map_exponents(self, fn) -> LaurentPoly:
        """Apply ``fn`` to every exponent vector; colliding terms are summed."""
        out: dict[Exponent, Coeff] = {}
        for e, c in self.terms.items():
            k = tuple(fn(e))
            out[k] = out.get(k, 0) + c
        return LaurentPoly(self.varset, out)

    def swap(self, a: str, b: str) -> LaurentPoly:
        i, j = self.varset.index(a), self.varset.index(b)

        def fn(e):
            e = list(e)
            e[i], e[j] = e[j], e[i]
            return e

        return self.map_exponents(fn)


def _mul_terms(a: Mapping[Exponent, Coeff], b: Mapping[Exponent, Coeff]) -> dict[Exponent, Coeff]:
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return {}
    if len(b) == 1:
        ((f, d),) = b.items()
        return {tuple(map(add, e, f)): _norm(c * d) for e, c in a.items()}
    out: dict[Exponent, Coeff] = {}
    get = out.get
    for f, d in b.items():
        for e, c in a.items():
            k = tuple(map(add, e, f))
            out[k] = get(k, 0) + c * d
    return {k: _norm(v) for k, v in out.items() if v}


# -- named operations -------------------------------------------------------


def poly_mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    if p.varset != q.varset:
        raise VarSetMismatch(f"{p.varset} vs {q.varset}")
    return p * q


def poly_diff(p: LaurentPoly, name: str) -> LaurentPoly:
    i = p.varset.index(name)
    out = {}
    for e, c in p.terms.items():
        k = e[i]
        if k:
            f = list(e)
            f[i] = k - 1
            out[tuple(f)] = _norm(c * k)
    return LaurentPoly._raw(p.varset, out)


def poly_exact_div(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """Return ``q`` with ``q*d == p`` or raise :class:`InexactDivision`.

    Leading-term elimination in graded-lex order.  Degrees in each variable
    are additive for Laurent polynomials, so every quotient exponent must lie
    in the box ``[min(p)-min(d), max(p)-max(d)]``; a candidate term outside
    it proves the division is inexact, which also bounds the loop.
    """
    if p.varset != d.varset:
        raise VarSetMismatch(f"{p.varset} vs {d.varset}")
    if not d:
        raise ZeroDivisionError("division by the zero polynomial")
    vs = p.varset
    if not p:
        return LaurentPoly.zero(vs)
    pb, db = p.degree_bounds(), d.degree_bounds()
    lo = [a[0] - b[0] for a, b in zip(pb, db)]
    hi = [a[1] - b[1] for a, b in zip(pb, db)]
    if any(l > h for l, h in zip(lo, hi)):
        raise InexactDivision(f"degree box of {p} cannot contain a quotient by {d}")

    lead_e, lead_c = d.leading_term()
    d_items = list(d.terms.items())
    rem = dict(p.terms)
    heap = [(-sum(e), tuple(-x for x in e)) for e in rem]
    heapq.heapify(heap)
    quot: dict[Exponent, Coeff] = {}
    while heap:
        _, neg = heapq.heappop(heap)
        e = tuple(-x for x in neg)
        c = rem.get(e)
        if c is None:
            continue
        t = tuple(map(sub, e, lead_e))
        if any(x < l or x > h for x, l, h in zip(t, lo, hi)):
            raise InexactDivision(f"{p} is not divisible by {d}")
        qc = _div(c, lead_c)
        quot[t] = qc
        for f, dc in d_items:
            k = tuple(map(add, t, f))
            old = rem.get(k)
            v = (old or 0) - qc * dc
            if v:
                rem[k] = _norm(v)
                if old is None:
                    heapq.heappush(heap, (-sum(k), tuple(-x for x in k)))
            elif old is not None:
                del rem[k]
    return LaurentPoly._raw(vs, quot)


def poly_subst(
    p: LaurentPoly,
    bindings: Mapping[str, LaurentPoly | Coeff],
    target: VarSet | None = None,
) -> LaurentPoly:
    """Substitute polynomials (or numbers) for variables of ``p``.

    Unbound variables pass through unchanged.  The result lives in ``target``
    when given, otherwise in the varset shared by the polynomial bindings,
    extended by whatever unbound variables ``p`` uses.  Negative powers of a
    bound variable need a binding that is a single Laurent term.
    """
    for name in bindings:
        p.varset.index(name)
    if target is None:
        target = _subst_target(p, bindings)
    values: list[LaurentPoly] = []
    used = p.used_variables()
    for name in p.varset.names:
        if name in bindings:
            b = bindings[name]
            if isinstance(b, LaurentPoly):
                values.append(b.over(target))
            else:
                values.append(LaurentPoly.constant(target, b))
        elif name in used:
            values.append(LaurentPoly.variable(target, name))
        else:
            values.append(LaurentPoly.zero(target))  # never raised to a power
    if not p:
        return LaurentPoly.zero(target)
    return _horner(list(p.terms.items()), values, 0, target)


def _subst_target(p: LaurentPoly, bindings: Mapping[str, LaurentPoly | Coeff]) -> VarSet:
    polys = [b for b in bindings.values() if isinstance(b, LaurentPoly)]
    if polys:
        base = polys[0].varset
        for b in polys[1:]:
            if b.varset != base:
                raise VarSetMismatch("bindings live in different varsets")
        names = list(base.names)
    else:
        names = []
    unbound = p.used_variables() - set(bindings)
    names += [n for n in p.varset.names if n in unbound and n not in names]
    return VarSet(names)


def _horner(items, values, i, target) -> LaurentPoly:
    # nested Horner scheme in variable i; each step multiplies by a small binding
    if i == len(values):
        total = sum((c for _, c in items), 0)
        return LaurentPoly.constant(target, total)
    groups: dict[int, list] = {}
    for e, c in items:
        groups.setdefault(e[i], []).append((e, c))
    b = values[i]
    lo, hi = min(groups), max(groups)
    acc = LaurentPoly.zero(target)
    for k in range(hi, lo - 1, -1):
        if acc:
            acc = acc * b
        if k in groups:
            acc = acc + _horner(groups[k], values, i + 1, target)
    if lo > 0:
        acc = acc * b**lo
    elif lo < 0:
        if len(b.terms) != 1:
            raise NonInvertibleBinding(
                f"negative power of a variable bound to non-monomial {b}"
            )
        acc = acc * b**lo
    return acc


# -- text format --------------------------------------------------------------


def _format_coeff(c: Coeff) -> str:
    return str(c) if type(c) is int else f"{c.numerator}/{c.denominator}"


def format_poly(p: LaurentPoly) -> str:
    if not p.terms:
        return "0"
    names = p.varset.names
    parts = []
    for idx, (e, c) in enumerate(p.sorted_terms()):
        mono = "*".join(
            n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
        )
        mag = -c if c < 0 else c
        if not mono:
            body = _format_coeff(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_format_coeff(mag)}*{mono}"
        if idx == 0:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"{'-' if c < 0 else '+'} {body}")
    return " ".join(parts)


def _split_terms(s: str) -> list[str]:
    terms, start = [], 0
    for i, ch in enumerate(s):
        if ch in "+-" and i > start and s[i - 1] not in "^(*/":
            terms.append(s[start:i])
            start = i
    terms.append(s[start:])
    return terms


def parse_poly(text: str, varset: VarSet) -> LaurentPoly:
    """Parse the canonical text format (term order is free on input)."""
    s = "".join(text.split())
    if not s:
        raise ParseError("empty polynomial text")
    out: dict[Exponent, Coeff] = {}
    n = len(varset)
    for term in _split_terms(s):
        sign = 1
        if term[0] in "+-":
            sign = -1 if term[0] == "-" else 1
            term = term[1:]
        if not term:
            raise ParseError(f"dangling sign in {text!r}")
        coef: Coeff = sign
        e = [0] * n
        for factor in term.split("*"):
            if not factor:
                raise ParseError(f"empty factor in {text!r}")
            if factor[0].isdigit():
                try:
                    coef = coef * Fraction(factor)
                except ValueError:
                    raise ParseError(f"bad coefficient {factor!r}") from None
                continue
            name, caret, power = factor.partition("^")
            if caret and not power:
                raise ParseError(f"missing exponent in {text!r}")
            if name not in varset:
                raise ParseError(f"unknown variable {name!r} in {text!r}")
            k = 1
            if power:
                power = power.strip("()")
                try:
                    k = int(power)
                except ValueError:
                    raise ParseError(f"bad exponent {power!r}") from None
            e[varset.index(name)] += k
        key = tuple(e)
        out[key] = out.get(key, 0) + coef
    return LaurentPoly(varset, out)


# -- rational functions and series -------------------------------------------


@dataclass(frozen=True)
class RationalFn:
    """``num/den``, optionally with ``den`` known as a product of factors."""

    num: LaurentPoly
    den: LaurentPoly
    factors: tuple[LaurentPoly, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.num.varset != self.den.varset:
            raise VarSetMismatch("numerator and denominator varsets differ")
        if not self.den:
            raise ZeroDivisionError("zero denominator")

    @classmethod
    def from_factors(cls, num: LaurentPoly, factors: Sequence[LaurentPoly]) -> RationalFn:
        den = LaurentPoly.constant(num.varset, 1)
        for f in factors:
            den = den * f
        return cls(num, den, tuple(factors))


class TruncatedSeries:
    """Power series in ``varset`` truncated to the box ``0 <= e <= caps``.

    Coefficients are Laurent polynomials over ``coeff_varset`` (possibly the
    empty varset, for purely numeric series).  Zero coefficients are not
    stored.
    """

    __slots__ = ("varset", "caps", "coeff_varset", "terms")

    def __init__(self, varset: VarSet, caps: Sequence[int], coeff_varset: VarSet,
                 terms: Mapping[Exponent, LaurentPoly] | None = None):
        caps = tuple(int(c) for c in caps)
        if len(caps) != len(varset) or any(c < 0 for c in caps):
            raise ValueError(f"caps {caps} invalid for {varset}")
        self.varset = varset
        self.caps = caps
        self.coeff_varset = coeff_varset
        self.terms = {}
        for e, c in (terms or {}).items():
            if not isinstance(c, LaurentPoly):
                c = LaurentPoly.constant(coeff_varset, c)
            if c and self.in_caps(e):
                self.terms[tuple(e)] = c

    def in_caps(self, e: Sequence[int]) -> bool:
        return all(0 <= x <= c for x, c in zip(e, self.caps))

    def exponents(self) -> Iterator[Exponent]:
        """All exponents in the box, in lexicographic order."""
        return itertools.product(*(range(c + 1) for c in self.caps))

    def coeff(self, e: Sequence[int]) -> LaurentPoly:
        e = tuple(e)
        if len(e) != len(self.caps) or not self.in_caps(e):
            raise ExponentOutOfCaps(f"{e} outside caps {self.caps}")
        c = self.terms.get(e)
        return c if c is not None else LaurentPoly.zero(self.coeff_varset)

    def is_zero(self) -> bool:
        return not self.terms

    def first_nonzero(self) -> Exponent | None:
        """Lowest stored exponent in graded-lex order."""
        if not self.terms:
            return None
        return min(self.terms, key=_grlex_key)

    def _same_shape(self, other: TruncatedSeries):
        if (self.varset, self.caps, self.coeff_varset) != (other.varset, other.caps, other.coeff_varset):
            raise VarSetMismatch("series shapes differ")

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._same_shape(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return TruncatedSeries(self.varset, self.caps, self.coeff_varset, out)

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        return self + (-other)

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries(self.varset, self.caps, self.coeff_varset,
                               {e: -c for e, c in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.varset, self.caps, self.coeff_varset, self.terms) == (
            other.varset, other.caps, other.coeff_varset, other.terms)

    __hash__ = None

    def mul_poly(self, p: LaurentPoly) -> TruncatedSeries:
        """Multiply by a polynomial over ``varset + coeff_varset`` and truncate."""
        parts = p.split(self.varset.names)
        out: dict[Exponent, LaurentPoly] = {}
        for f, pc in parts.items():
            if min(f, default=0) < 0:
                raise ValueError("series variables must have non-negative exponents")
            pc = pc.over(self.coeff_varset)
            for e, c in self.terms.items():
                k = tuple(map(add, e, f))
                if self.in_caps(k):
                    v = c * pc
                    out[k] = out[k] + v if k in out else v
        return TruncatedSeries(self.varset, self.caps, self.coeff_varset, out)

    def to_poly(self) -> LaurentPoly:
        """Flatten into one polynomial over ``varset + coeff_varset``."""
        full = VarSet(self.varset.names + self.coeff_varset.names)
        out: dict[Exponent, Coeff] = {}
        for e, c in self.terms.items():
            for f, v in c.terms.items():
                out[e + f] = v
        return LaurentPoly._raw(full, out)

    def truncate(self, caps: Sequence[int]) -> TruncatedSeries:
        return TruncatedSeries(self.varset, caps, self.coeff_varset, self.terms)

    def __repr__(self) -> str:
        return f"TruncatedSeries({list(self.varset.names)}, caps={self.caps}, {len(self.terms)} terms)"


def _normalize_caps(caps, names: Sequence[str]) -> tuple[int, ...]:
    if isinstance(caps, Mapping):
        return tuple(int(caps[n]) for n in names)
    caps = tuple(int(c) for c in caps)
    if len(caps) != len(names):
        raise ValueError(f"{len(caps)} caps for variables {list(names)}")
    return caps


def series_expand(
    r: RationalFn,
    caps: Mapping[str, int] | Sequence[int],
    variables: Sequence[str] | None = None,
    max_total: int | None = None,
) -> TruncatedSeries:
    """Expand ``r`` as a power series in ``variables`` up to ``caps``.

    The remaining variables ride along in the coefficients.  Each denominator
    factor must have a nonzero *numeric* constant term in the expansion
    variables.  If ``max_total`` is given, exponents whose total degree
    exceeds it are skipped (they never feed lower degrees).
    """
    if variables is None:
        if not isinstance(caps, Mapping):
            raise ValueError("caps must be a mapping when variables are not given")
        variables = list(caps)
    variables = list(variables)
    caps = _normalize_caps(caps, variables)
    vs = r.num.varset
    tvars = VarSet(variables)
    cvars = vs.without(variables)
    series = TruncatedSeries(tvars, caps, cvars)

    keep = (lambda e: True) if max_total is None else (lambda e: sum(e) <= max_total)
    order = [e for e in series.exponents() if keep(e)]
    current = {e: c for e, c in r.num.split(variables).items()
               if min(e, default=0) >= 0 and series.in_caps(e) and keep(e)}
    if any(min(e, default=0) < 0 for e in r.num.split(variables)):
        raise ValueError("numerator has negative powers of expansion variables")
    for factor in (r.factors or (r.den,)):
        current = _divide_series(current, factor, variables, order, cvars)
    return TruncatedSeries(tvars, caps, cvars, current)


def _divide_series(num, factor: LaurentPoly, variables, order, cvars):
    parts = factor.split(variables)
    zero = tuple(0 for _ in variables)
    c0 = parts.get(zero)
    if c0 is None or not c0.is_constant():
        raise DenominatorNotUnit(f"{factor} has no numeric constant term")
    if any(min(e, default=0) < 0 for e in parts):
        raise DenominatorNotUnit(f"{factor} has negative powers of {variables}")
    unit = c0.constant_term()
    rest = [(g, c.over(cvars)) for g, c in parts.items() if g != zero]
    out: dict[Exponent, LaurentPoly] = {}
    for e in order:
        acc = num.get(e)
        for g, c in rest:
            k = tuple(map(sub, e, g))
            prev = out.get(k) if min(k) >= 0 else None
            if prev is not None:
                term = c * prev
                acc = -term if acc is None else acc - term
        if acc:
            out[e] = acc.scale(_div(1, unit)) if unit != 1 else acc
    return out


def coeff(s: TruncatedSeries, e: Sequence[int]) -> LaurentPoly:
    return s.coeff(e)
