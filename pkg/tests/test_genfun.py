import itertools
from fractions import Fraction

import pytest

from a3char.algebra import LaurentPoly, VarSet
from a3char.calogero import Z, solve_character
from a3char.errors import UnknownKind
from a3char.genfun import (
    DELTA_T,
    DELTA_T_REAL,
    GOLDEN_NAMES,
    REAL_EIGENFORM,
    build_E,
    build_E_real,
    build_G,
    build_G_real,
    build_restricted,
    check_restricted,
    expand_genfun,
    fundamental_bindings,
    golden_text,
    load_golden,
    real_dimension,
    verify_pde,
    verify_pde_symbolic,
)
from a3char.roots import weyl_character, weyl_dim


def zp(text):
    return LaurentPoly.parse(text, Z)


def test_golden_files_parse_and_are_canonical():
    for name in GOLDEN_NAMES:
        p = load_golden(name)
        assert p and str(p) == golden_text(name).strip(), name


def test_golden_term_counts():
    assert len(load_golden("N").terms) == 20
    counts = {"A_000": 35, "A_100": 32, "A_010": 32, "A_200": 43, "A_110": 40, "A_101": 37, "A_020": 64}
    for name, n in counts.items():
        assert len(load_golden(name).terms) == n, name


def test_golden_dir_override(tmp_path):
    (tmp_path / "N.txt").write_text("1\n")
    assert load_golden("N", tmp_path) == LaurentPoly.parse("1", load_golden("N").varset)
    assert load_golden("D1", tmp_path) == load_golden("D1")


def test_G_examples():
    c = expand_genfun(build_G(), (2, 1, 1))
    assert c[(0, 0, 0)] == zp("1")
    assert c[(1, 0, 0)] == zp("z1")
    assert c[(1, 0, 1)] == zp("z1*z3 - 1")
    assert c[(2, 0, 0)] == zp("z1^2 - z2")
    assert c[(0, 1, 0)] == zp("z2")


def test_E_examples():
    c = expand_genfun(build_E(), (1, 1, 1))
    assert c[(0, 0, 0)] == 1 and c[(1, 0, 0)] == 4 and c[(1, 0, 1)] == 15


def test_G_real_examples():
    c = expand_genfun(build_G_real(), (1, 1))
    assert c[(0, 0)] == zp("1")
    assert c[(1, 0)] == zp("z1*z3 - 1")
    assert c[(0, 1)] == zp("z2")
    e = expand_genfun(build_E_real(), (1, 1))
    assert e[(0, 0)] == 1 and e[(1, 0)] == 15


def test_real_dimension_formula():
    for a, b in itertools.product(range(6), repeat=2):
        assert real_dimension(a, b) == weyl_dim("A3", (a, b, a))


def test_restricted_examples():
    b_first = expand_genfun(build_restricted("B3", "first"), (1,))
    assert b_first[(1,)] == zp("z1")
    c_third = expand_genfun(build_restricted("C3", "third"), (1,))
    assert c_third[(1,)] == zp("z3")
    mixed = expand_genfun(build_restricted("B3", "mixed"), (1, 1))[(1, 1)]
    bind = fundamental_bindings("B3")
    assert mixed.subst(bind, target=bind["z1"].varset) == weyl_character("B3", (1, 0, 1))
    with pytest.raises(UnknownKind):
        build_restricted("B3", "second")
    with pytest.raises(UnknownKind):
        build_restricted("A3", "first")


@pytest.mark.parametrize("algebra", ["B3", "C3"])
def test_restricted_small(algebra):
    for kind in ("first", "third"):
        assert check_restricted(algebra, kind, (3,)) == []
    assert check_restricted(algebra, "mixed", (2, 2), 2) == []


def test_delta_t_explicit_forms():
    t = DELTA_T_REAL.varset
    want = {
        (2, 0): "4*t1^2", (0, 2): "2*t2^2", (1, 1): "4*t1*t2", (1, 0): "16*t1", (0, 1): "10*t2",
    }
    got = {alpha: str(c) for c, alpha in DELTA_T_REAL.terms}
    assert got == {a: str(LaurentPoly.parse(s, t)) for a, s in want.items()}
    assert REAL_EIGENFORM((1, 0)) == 16
    t1 = LaurentPoly.variable(DELTA_T.varset, "t1")
    assert DELTA_T.apply(t1) == t1.scale(Fraction(15, 2))
    assert not DELTA_T.apply(LaurentPoly.constant(DELTA_T.varset, 1))


def test_pde_small_caps():
    assert verify_pde(build_G(), DELTA_T, (2, 2, 2)).is_zero()
    assert verify_pde(build_G_real(), DELTA_T_REAL, (3, 3)).is_zero()


def test_pde_perturbed_numerator():
    n = load_golden("N")
    e, c = n.sorted_terms()[3]
    bad = n - LaurentPoly.monomial(n.varset, e, 2 * c)
    assert not verify_pde(build_G(bad), DELTA_T, (2, 2, 2)).is_zero()


def test_pde_symbolic_G():
    assert not verify_pde_symbolic(build_G(), DELTA_T)


@pytest.mark.slow
def test_pde_symbolic_G_real():
    assert not verify_pde_symbolic(build_G_real(), DELTA_T_REAL)


def test_G_matches_solver_small():
    c = expand_genfun(build_G(), (3, 3, 3), max_total=3)
    for m, chi in c.items():
        assert chi == solve_character(m).body, m


def test_genfun_properties():
    g = build_G()
    assert g.varset == VarSet(["t1", "t2", "t3", "z1", "z2", "z3"])
    assert g.rational().den == g.den
