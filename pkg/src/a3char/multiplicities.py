"""Weight-multiplicity generating functions and closed multiplicity formulas for A3.

``A_n(t) = sum_m mu_m(n) t^m`` is a rational function ``N_n / D0`` with one
common denominator for every target weight ``n`` with ``n1+n2+n3 <= 2``.
Three of the ten numerators are obtained from others by ``t1 <-> t3``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import LaurentPoly, RationalFn, series_expand
from .errors import NonDominantWeight, TranscriptionError, UnsupportedWeight
from .genfun import load_golden
from .roots import T, kostant_multiplicity, weyl_character

D0_FACTORS_TEXT = (
    "1 - t1^4", "1 - t3^4", "1 - t1*t3", "1 - t1*t3",
    "1 - t1^2*t2", "1 - t2*t3^2", "1 - t2^2", "1 - t2^2",
)

SUPPORTED = tuple(
    (a, b, c) for s in range(3) for a in range(3) for b in range(3) for c in range(3) if a + b + c == s
)
# weights obtained from a stored numerator by t1 <-> t3
_MIRRORED = {(0, 0, 1): (1, 0, 0), (0, 1, 1): (1, 1, 0), (0, 0, 2): (2, 0, 0)}

REAL_WEIGHTS = ((0, 0, 0), (0, 1, 0), (1, 0, 1), (0, 2, 0))


def d0_factors() -> list[LaurentPoly]:
    return [LaurentPoly.parse(f, T) for f in D0_FACTORS_TEXT]


@dataclass(frozen=True)
class MultGenFun:
    n: tuple[int, int, int]
    num: LaurentPoly

    @property
    def den(self) -> LaurentPoly:
        return self.rational().den

    def rational(self) -> RationalFn:
        return RationalFn.from_factors(self.num, d0_factors())


def _supported(n: Sequence[int]) -> tuple[int, int, int]:
    n = tuple(int(x) for x in n)
    if len(n) != 3 or any(x < 0 for x in n) or sum(n) > 2:
        raise UnsupportedWeight(f"no multiplicity generating function for weight {n}")
    return n


def build_A(n: Sequence[int], golden_dir=None) -> MultGenFun:
    n = _supported(n)
    source = _MIRRORED.get(n, n)
    name = "A_" + "".join(map(str, source))
    num = load_golden(name, golden_dir).over(T)
    if n in _MIRRORED:
        num = num.swap("t1", "t3")
    return MultGenFun(n, num)


def expand_A(a: MultGenFun, caps: Sequence[int]) -> dict[tuple[int, ...], int]:
    """Multiplicities ``mu_m(n)`` for every ``m`` in the caps.

    A negative or fractional coefficient cannot be a multiplicity and is
    reported as a :class:`TranscriptionError` naming the exponent.
    """
    s = series_expand(a.rational(), caps, T.names)
    out = {}
    for e in s.exponents():
        v = s.coeff(e).constant_term()
        if type(v) is not int or v < 0:
            raise TranscriptionError(f"A_{a.n}: coefficient {v} at t^{e}")
        out[e] = v
    return out


def helpers_ab(m: Sequence[int]) -> tuple[Fraction, int]:
    m1, m2, m3 = m
    a = Fraction((m1 + 1) * (m2 + 1) * (m1 + m2 + 2), 2)
    b = 4 * ((m2 + 1) * (m3 + 1) - 1) - (m1 - m3) ** 2
    return a, b


_SHIFT = {(0, 0, 0): 0, (0, 1, 0): -2, (1, 0, 1): 0, (0, 2, 0): -4}


def closed_mu(m: Sequence[int], n: Sequence[int]) -> int:
    """Closed-form multiplicity of a real weight ``n`` in the irrep ``m``."""
    m = tuple(int(x) for x in m)
    n = tuple(int(x) for x in n)
    if len(m) != 3 or any(x < 0 for x in m):
        raise NonDominantWeight(f"{m} is not a dominant weight")
    if n not in _SHIFT:
        raise UnsupportedWeight(f"no closed formula for weight {n}; use kostant_multiplicity")
    m1, m2, m3 = m
    if m1 > m3:
        m1, m3 = m3, m1
    # m3 - m1 = 2*m2 + shift + 4p
    four_p = m3 - m1 - 2 * m2 - _SHIFT[n]
    if four_p % 4:
        return 0
    p = four_p // 4
    a, b = helpers_ab((m1, m2, m3))
    d = lambda x, y: int(x == y)  # noqa: E731
    if p >= 0:
        if n == (0, 0, 0):
            v = a
        elif n == (0, 1, 0):
            v = a - 2 * (m1 + 1) * d(p, 0)
        elif n == (1, 0, 1):
            v = a - (m1 + 1) * d(p, 0)
        else:
            v = (a - 2 * (m1 + 1) * (d(p, 1) + 3 * d(p, 0))
                 + d(p, 1) * d(m2, 0) + d(p, 0) * d(m2, 2))
    else:
        if n == (0, 0, 0):
            eight = (m1 + 1) * (b + 8)
        elif n == (0, 1, 0):
            eight = (m1 + 1) * (b + 4)
        elif n == (1, 0, 1):
            eight = (m1 + 1) * b
        else:
            eight = (m1 + 1) * (b - 8) + 8 * d(m1, m3)
        if eight % 8:
            raise TranscriptionError(f"8*mu = {eight} not divisible by 8 at m={m}, n={n}")
        v = eight // 8
    v = Fraction(v)
    if v.denominator != 1:
        raise TranscriptionError(f"non-integral multiplicity {v} at m={m}, n={n}")
    return v.numerator


def direct_mu(m: Sequence[int], n: Sequence[int]) -> int:
    """Coefficient of ``x^n`` in the Weyl character of ``m``."""
    return weyl_character("A3", m).coeff(tuple(n))


def multiplicity(m: Sequence[int], n: Sequence[int], method: str = "kostant") -> int:
    """Multiplicity by a named route: ``closed``, ``kostant``, ``genfun``,
    ``direct`` (Weyl character) or ``calogero`` (eigenvalue solver)."""
    if method == "closed":
        return closed_mu(m, n)
    if method == "kostant":
        return kostant_multiplicity(m, n)
    if method == "direct":
        return direct_mu(m, n)
    if method == "calogero":
        from .calogero import weight_multiplicities
        return weight_multiplicities(m).get(tuple(n), 0)
    if method == "genfun":
        m = tuple(int(x) for x in m)
        if any(x < 0 for x in m):
            raise NonDominantWeight(f"{m} is not a dominant weight")
        return expand_A(build_A(n), m)[m]
    raise ValueError(f"unknown method {method!r}")


def compare_A(n: Sequence[int], caps: Sequence[int], golden_dir=None) -> list[dict]:
    """Three-way check of ``A_n`` against Weyl-character extraction and the Kostant sum.

    Returns every disagreement with the offending coefficient and both
    oracle values.
    """
    n = _supported(n)
    series = expand_A(build_A(n, golden_dir), caps)
    bad = []
    for m, v in series.items():
        direct = direct_mu(m, n)
        kostant = kostant_multiplicity(m, n)
        if not v == direct == kostant:
            bad.append({"m": m, "n": n, "genfun": v, "direct": direct, "kostant": kostant})
    return bad
