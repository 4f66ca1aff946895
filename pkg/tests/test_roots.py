import itertools
from fractions import Fraction

import pytest

from a3char.algebra import LaurentPoly
from a3char.errors import NonDominantWeight
from a3char.roots import (
    X,
    dominance_leq,
    enumerate_weyl,
    in_root_lattice,
    kostant_multiplicity,
    kostant_Z,
    kostant_Z_series,
    root_system,
    to_root_coords,
    weyl_character,
    weyl_dim,
)


def brute_Z(k):
    """Count non-negative combinations of the six positive roots of A3.

    The coefficients of a1+a2, a2+a3 and a1+a2+a3 determine the rest.
    """
    count = 0
    for c12 in range(k[1] + 1):
        for c23 in range(k[1] + 1):
            for c123 in range(k[1] + 1):
                a1 = k[0] - c12 - c123
                a2 = k[1] - c12 - c23 - c123
                a3 = k[2] - c23 - c123
                if min(a1, a2, a3) >= 0:
                    count += 1
    return count


@pytest.mark.parametrize("label,order,npos", [("A3", 24, 6), ("B3", 48, 9), ("C3", 48, 9)])
def test_group_orders(label, order, npos):
    group = enumerate_weyl(label)
    assert len(group) == order
    assert group[0].sign == 1 and group[0]((1, 2, 3)) == (1, 2, 3)
    assert root_system(label).num_positive_roots == npos
    assert sum(w.sign for w in group) == 0


def test_character_examples():
    assert weyl_character("A3", (1, 0, 0)) == LaurentPoly.parse("x1 + x2*x1^-1 + x3*x2^-1 + x3^-1", X)
    assert weyl_character("A3", (0, 0, 0)) == LaurentPoly.constant(X, 1)
    spin = weyl_character("B3", (0, 0, 1))
    assert len(spin.terms) == 8 and set(spin.terms.values()) == {1}
    assert weyl_dim("B3", (0, 0, 1)) == 8


def test_non_dominant():
    with pytest.raises(NonDominantWeight):
        weyl_character("A3", (1, -1, 0))
    with pytest.raises(NonDominantWeight):
        weyl_dim("A3", (0, 0, -2))
    with pytest.raises(NonDominantWeight):
        kostant_multiplicity((-1, 0, 0), (0, 0, 0))


def test_dim_examples():
    assert weyl_dim("A3", (1, 0, 0)) == 4
    assert weyl_dim("A3", (1, 0, 1)) == 15
    for m1, m2 in itertools.product(range(11), repeat=2):
        want = Fraction((m1 + 1) ** 2 * (m2 + 1) * (m1 + m2 + 2) ** 2 * (2 * m1 + m2 + 3), 12)
        assert weyl_dim("A3", (m1, m2, m1)) == want


@pytest.mark.parametrize("label", ["A3", "B3", "C3"])
def test_dim_is_coefficient_sum(label):
    for m in itertools.product(range(3), repeat=3):
        assert sum(weyl_character(label, m).terms.values()) == weyl_dim(label, m)


def test_known_small_dims():
    assert weyl_dim("B3", (1, 0, 0)) == 7
    assert weyl_dim("B3", (0, 1, 0)) == 21
    assert weyl_dim("C3", (1, 0, 0)) == 6
    assert weyl_dim("C3", (0, 0, 1)) == 14


def test_flip_symmetry():
    for m in itertools.product(range(5), repeat=3):
        if sum(m) > 4:
            continue
        inv = weyl_character("A3", m).map_exponents(lambda e: tuple(-x for x in e))
        assert inv == weyl_character("A3", m[::-1])


def test_root_coords():
    assert to_root_coords("A3", (2, -1, 0)) == (1, 0, 0)
    assert to_root_coords("A3", (0, 0, 0)) == (0, 0, 0)
    assert to_root_coords("A3", (1, 0, 1)) == (1, 1, 1)
    assert not in_root_lattice("A3", (1, 0, 0))
    assert dominance_leq("A3", (0, 0, 0), (1, 0, 1))
    assert not dominance_leq("A3", (1, 0, 1), (0, 0, 0))


def test_kostant_examples():
    assert kostant_Z((0, 0, 0)) == 1
    assert kostant_Z((1, 1, 1)) == 4
    assert kostant_Z((1, 0, 1)) == 1
    assert kostant_Z((-1, 0, 0)) == 0
    assert kostant_Z((Fraction(1, 2), 0, 0)) == 0
    s = kostant_Z_series((2, 2, 2))
    assert s.coeff((0, 0, 0)) == 1 and s.coeff((1, 1, 1)) == 4
    assert s.coeff((2, 1, 0)).constant_term() == kostant_Z((2, 1, 0)) == brute_Z((2, 1, 0))


def test_kostant_against_brute_force():
    for k in itertools.product(range(7), repeat=3):
        assert kostant_Z(k) == brute_Z(k), k


def test_kostant_multiplicity_examples():
    assert kostant_multiplicity((0, 0, 0), (0, 0, 0)) == 1
    assert kostant_multiplicity((1, 0, 1), (0, 0, 0)) == 3
    assert kostant_multiplicity((1, 0, 0), (1, 0, 0)) == 1


def test_kostant_multiplicity_matches_character():
    for m in itertools.product(range(3), repeat=3):
        chi = weyl_character("A3", m)
        for n, v in chi.terms.items():
            assert kostant_multiplicity(m, n) == v
