"""Root systems of rank three, Weyl groups, and Kostant's partition function.

Weights are always integer vectors in the basis of fundamental weights
(Dynkin labels).  In characters the monomial ``x1^a1*x2^a2*x3^a3`` stands for
the weight ``a1*l1 + a2*l2 + a3*l3``.

Cartan matrices follow ``A[i][j] = <alpha_i, alpha_j^vee>``, so row ``i`` is
the simple root ``alpha_i`` written in fundamental-weight coordinates.  For
B3 and C3 the root of unequal length is ``alpha_3``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .algebra import LaurentPoly, VarSet, series_expand, RationalFn, TruncatedSeries
from .errors import NonDominantWeight, TranscriptionError

X = VarSet(["x1", "x2", "x3"])
T = VarSet(["t1", "t2", "t3"])

Weight = tuple[int, int, int]

_CARTAN = {
    "A3": ((2, -1, 0), (-1, 2, -1), (0, -1, 2)),
    "B3": ((2, -1, 0), (-1, 2, -2), (0, -1, 2)),
    "C3": ((2, -1, 0), (-1, 2, -1), (0, -2, 2)),
}


@dataclass(frozen=True)
class RootSystemData:
    label: str
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[Fraction, ...]
    rho: Weight = (1, 1, 1)

    @property
    def num_positive_roots(self) -> int:
        return len(self.positive_roots)

    def simple_root(self, i: int) -> Weight:
        """Simple root ``alpha_i`` (0-based) in fundamental-weight coordinates."""
        return tuple(self.cartan[i])

    def root_to_weight(self, k: Sequence[int]) -> Weight:
        return tuple(sum(k[i] * self.cartan[i][j] for i in range(3)) for j in range(3))


@dataclass(frozen=True)
class WeylElement:
    """Integer matrix acting on Dynkin labels, with its sign ``(-1)^length``."""

    matrix: tuple[tuple[int, ...], ...]
    sign: int

    def __call__(self, weight: Sequence[int]) -> Weight:
        return tuple(sum(r[j] * weight[j] for j in range(3)) for r in self.matrix)


def _symmetrizer(cartan) -> tuple[Fraction, ...]:
    # d_i proportional to |alpha_i|^2 / 2, so that A[i][j]*d_j is symmetric
    d = [None, None, None]
    d[0] = Fraction(1)
    changed = True
    while changed:
        changed = False
        for i in range(3):
            for j in range(3):
                if d[i] is not None and d[j] is None and cartan[i][j]:
                    d[j] = d[i] * cartan[j][i] / cartan[i][j]
                    changed = True
    return tuple(d)


def _reflect_root(cartan, k: tuple[int, ...], i: int) -> tuple[int, ...]:
    # s_i(beta) = beta - <beta, alpha_i^vee> alpha_i, beta in root coordinates
    pairing = sum(k[j] * cartan[j][i] for j in range(3))
    out = list(k)
    out[i] -= pairing
    return tuple(out)


@lru_cache(maxsize=None)
def root_system(label: str) -> RootSystemData:
    label = label.upper()
    if label not in _CARTAN:
        raise ValueError(f"unknown root system {label!r}; expected one of {sorted(_CARTAN)}")
    cartan = _CARTAN[label]
    simple = [tuple(int(i == j) for j in range(3)) for i in range(3)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for k in frontier:
            for i in range(3):
                r = _reflect_root(cartan, k, i)
                if r not in roots:
                    roots.add(r)
                    nxt.append(r)
        frontier = nxt
    positive = tuple(sorted((r for r in roots if all(x >= 0 for x in r)),
                            key=lambda r: (sum(r), r)))
    return RootSystemData(label, cartan, positive, _symmetrizer(cartan))


def _simple_reflection(cartan, i: int) -> tuple[tuple[int, ...], ...]:
    # (s_i l)_k = l_k - l_i * A[i][k]
    rows = []
    for k in range(3):
        row = [int(k == j) for j in range(3)]
        row[i] -= cartan[i][k]
        rows.append(tuple(row))
    return tuple(rows)


def _matmul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)) for i in range(3))


@lru_cache(maxsize=None)
def _weyl_group(label: str) -> tuple[WeylElement, ...]:
    sys = root_system(label)
    gens = [_simple_reflection(sys.cartan, i) for i in range(3)]
    ident = tuple(tuple(int(i == j) for j in range(3)) for i in range(3))
    seen = {ident: 1}
    order = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                w = _matmul(g, m)
                if w not in seen:
                    seen[w] = -seen[m]
                    order.append(w)
                    nxt.append(w)
        frontier = nxt
    return tuple(WeylElement(m, seen[m]) for m in order)


def enumerate_weyl(sys: RootSystemData | str) -> list[WeylElement]:
    """All Weyl group elements, identity first, in breadth-first word order."""
    label = sys if isinstance(sys, str) else sys.label
    return list(_weyl_group(label.upper()))


def _check_dominant(weight: Sequence[int]) -> Weight:
    weight = tuple(int(x) for x in weight)
    if len(weight) != 3 or any(x < 0 for x in weight):
        raise NonDominantWeight(f"{weight} is not a dominant weight")
    return weight


def weyl_character(sys: RootSystemData | str, weight: Sequence[int]) -> LaurentPoly:
    """Irreducible character as a Laurent polynomial in x1, x2, x3.

    Ratio of the alternants ``sum sign(w) x^{w(l+rho)}`` and
    ``sum sign(w) x^{w(rho)}`` computed by exact division.
    """
    label = sys if isinstance(sys, str) else sys.label
    return _weyl_character(label.upper(), _check_dominant(weight))


def _alternant(label: str, weight: Weight) -> LaurentPoly:
    group = _weyl_group(label)
    terms: dict = {}
    for w in group:
        e = w(weight)
        terms[e] = terms.get(e, 0) + w.sign
    return LaurentPoly(X, terms)


@lru_cache(maxsize=4096)
def _weyl_character(label: str, weight: Weight) -> LaurentPoly:
    rho = root_system(label).rho
    shifted = tuple(a + r for a, r in zip(weight, rho))
    return _alternant(label, shifted).exact_div(_weyl_denominator(label))


@lru_cache(maxsize=None)
def _weyl_denominator(label: str) -> LaurentPoly:
    return _alternant(label, root_system(label).rho)


def weyl_dim(sys: RootSystemData | str, weight: Sequence[int]) -> int:
    """Weyl dimension formula, product over positive roots."""
    if isinstance(sys, str):
        sys = root_system(sys)
    weight = _check_dominant(weight)
    num = Fraction(1)
    for k in sys.positive_roots:
        top = sum(k[i] * sys.symmetrizer[i] * (weight[i] + sys.rho[i]) for i in range(3))
        bottom = sum(k[i] * sys.symmetrizer[i] * sys.rho[i] for i in range(3))
        num *= top / bottom
    if num.denominator != 1:
        raise ArithmeticError(f"non-integral dimension {num} for {weight}")
    return num.numerator


@lru_cache(maxsize=None)
def _cartan_transpose_inverse(label: str):
    a = root_system(label).cartan
    # solve v = A^T k by Gauss-Jordan over the rationals
    m = [[Fraction(a[j][i]) for j in range(3)] + [Fraction(int(i == j)) for j in range(3)]
         for i in range(3)]
    for col in range(3):
        piv = next(r for r in range(col, 3) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(3):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return tuple(tuple(row[3:]) for row in m)


def to_root_coords(sys: RootSystemData | str, v: Sequence[int]) -> tuple[Fraction, Fraction, Fraction]:
    """Coordinates of a weight in the basis of simple roots."""
    label = sys if isinstance(sys, str) else sys.label
    inv = _cartan_transpose_inverse(label.upper())
    return tuple(sum(inv[i][j] * v[j] for j in range(3)) for i in range(3))


def in_root_lattice(sys: RootSystemData | str, v: Sequence[int]) -> bool:
    return all(k.denominator == 1 for k in to_root_coords(sys, v))


def dominance_leq(sys: RootSystemData | str, a: Sequence[int], b: Sequence[int]) -> bool:
    """``a <= b``: ``b - a`` is a non-negative integer combination of simple roots."""
    k = to_root_coords(sys, [y - x for x, y in zip(a, b)])
    return all(c.denominator == 1 and c >= 0 for c in k)


# -- Kostant partition function for A3 -----------------------------------------


def kostant_Z(k: Sequence) -> int:
    """Number of ways to write ``k1*a1 + k2*a2 + k3*a3`` as a sum of positive roots of A3.

    Piecewise cubic closed form; the k1 <-> k3 symmetry is used to reach
    ``k1 <= k3``.
    """
    ks = [Fraction(c) for c in k]
    if any(c.denominator != 1 or c < 0 for c in ks):
        return 0
    k1, k2, k3 = (int(c) for c in ks)
    if k1 > k3:
        k1, k3 = k3, k1
    if k1 >= k2:
        six_z = (k2 + 1) * (k2 + 2) * (k2 + 3)
    elif k3 >= k2:
        six_z = (k1 + 1) * (k1 + 2) * (3 * k2 - 2 * k1 + 3)
    elif k1 <= k2 - k3:
        six_z = (k1 + 1) * (k1 + 2) * (3 * k3 - k1 + 3)
    else:
        six_z = (k2 - k3 + 1) * (k2 - k3 + 2) * (2 * k2 - 3 * k1 + k3 + 3) - (k1 - k2 + k3) * (
            3 * k1 + 3 * k3 - 12 * k2 + 2 * k1**2 + 2 * k3**2 - k2**2
            - k1 * k2 - 2 * k1 * k3 - k2 * k3 - 11
        )
    z, r = divmod(six_z, 6)
    if r:
        raise TranscriptionError(f"6*Z[{k1},{k2},{k3}] = {six_z} is not divisible by 6")
    return z


def kostant_Z_factors() -> list[LaurentPoly]:
    """Denominator factors of the partition-function generating series."""
    return [LaurentPoly.parse(f"1 - {m}", T) for m in
            ("t1", "t2", "t3", "t1*t2*t3", "t1*t2", "t2*t3")]


def kostant_Z_series(caps: Sequence[int]) -> TruncatedSeries:
    r = RationalFn.from_factors(LaurentPoly.constant(T, 1), kostant_Z_factors())
    return series_expand(r, caps, variables=T.names)


def kostant_multiplicity(m: Sequence[int], n: Sequence[int]) -> int:
    """Multiplicity of weight ``n`` in the A3 irrep of highest weight ``m``."""
    m = _check_dominant(m)
    n = tuple(int(x) for x in n)
    rho = (1, 1, 1)
    target = tuple(a + r for a, r in zip(n, rho))
    shifted = tuple(a + r for a, r in zip(m, rho))
    total = 0
    for w in _weyl_group("A3"):
        v = tuple(a - b for a, b in zip(w(shifted), target))
        total += w.sign * kostant_Z(to_root_coords("A3", v))
    return total
