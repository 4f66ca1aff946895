"""Verification suites run by ``a3char selftest``.

Each suite returns a :class:`SuiteResult`; failures carry the first
counterexample instead of raising.  ``quick`` halves every bound.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .algebra import LaurentPoly
from .calogero import Z, apply_delta_z, char_to_x, eigenvalue, solve_character
from .genfun import (
    DELTA_T,
    DELTA_T_REAL,
    RESTRICTED_KINDS,
    build_E,
    build_E_real,
    build_G,
    build_G_real,
    check_restricted,
    expand_genfun,
    real_dimension,
    verify_pde,
)
from .multiplicities import REAL_WEIGHTS, SUPPORTED, closed_mu, compare_A, direct_mu, multiplicity
from .roots import T, kostant_multiplicity, kostant_Z, kostant_Z_series, weyl_character, weyl_dim


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checked: int
    counterexample: dict | None = None
    seconds: float = field(default=0.0, compare=False)

    def as_dict(self, timing: bool = False) -> dict[str, Any]:
        d = {"name": self.name, "passed": self.passed, "checked": self.checked,
             "counterexample": self.counterexample}
        if timing:
            d["seconds"] = round(self.seconds, 3)
        return d


def _graded(box):
    return sorted(box, key=lambda e: (sum(e), e))


def _weights(total: int):
    return _graded(m for m in itertools.product(range(total + 1), repeat=3) if sum(m) <= total)


def characters(bound: int = 6, golden_dir=None, num: LaurentPoly | None = None) -> SuiteResult:
    """Operator solution == G coefficient == Weyl character, for m1+m2+m3 <= bound."""
    g = build_G(num, golden_dir)
    coeffs = expand_genfun(g, (bound,) * 3, max_total=bound)
    count = 0
    for m in _weights(bound):
        chi = solve_character(m).body
        got = coeffs[m]
        if got != chi:
            return SuiteResult("characters", False, count, {
                "m": list(m), "route": "genfun", "expected": str(chi), "got": str(got)})
        x = char_to_x(chi)
        if x != weyl_character("A3", m):
            return SuiteResult("characters", False, count, {
                "m": list(m), "route": "weyl", "expected": str(weyl_character("A3", m)), "got": str(x)})
        count += 1
    return SuiteResult("characters", True, count)


def pde(caps_g=(4, 4, 4), caps_r=(6, 6), golden_dir=None, num: LaurentPoly | None = None,
        num_real: LaurentPoly | None = None) -> SuiteResult:
    """Residual of the operator equation for G and for the real-character function."""
    checked = 0
    for label, g, op, caps in (
        ("G", build_G(num, golden_dir), DELTA_T, caps_g),
        ("G_R", build_G_real(num_real, golden_dir), DELTA_T_REAL, caps_r),
    ):
        r = verify_pde(g, op, caps)
        e = r.first_nonzero()
        if e is not None:
            return SuiteResult("pde", False, checked, {
                "function": label, "exponent": list(e), "residual": str(r.coeff(e))})
        checked += 1
    return SuiteResult("pde", True, checked)


def dimensions(bound: int = 10, bound_real: int = 8, golden_dir=None) -> SuiteResult:
    coeffs = expand_genfun(build_E(golden_dir), (bound,) * 3, max_total=bound)
    count = 0
    for m in _weights(bound):
        got, want = coeffs[m].constant_term(), weyl_dim("A3", m)
        if got != want:
            return SuiteResult("dimensions", False, count, {
                "function": "E", "m": list(m), "expected": want, "got": got})
        count += 1
    real = expand_genfun(build_E_real(golden_dir), (bound_real,) * 2, max_total=bound_real)
    for m in _graded(real):
        got, want = real[m].constant_term(), real_dimension(*m)
        if got != want:
            return SuiteResult("dimensions", False, count, {
                "function": "E_R", "m": list(m), "expected": want, "got": got})
        count += 1
    return SuiteResult("dimensions", True, count)


def multiplicity_functions(cap: int = 6, golden_dir=None) -> SuiteResult:
    count = 0
    for n in SUPPORTED:
        bad = compare_A(n, (cap,) * 3, golden_dir)
        if bad:
            ce = dict(bad[0])
            ce["m"], ce["n"] = list(ce["m"]), list(ce["n"])
            return SuiteResult("multiplicity_functions", False, count, ce)
        count += (cap + 1) ** 3
    return SuiteResult("multiplicity_functions", True, count)


def partition_function(bound: int = 15) -> SuiteResult:
    series = kostant_Z_series((bound,) * 3)
    count = 0
    for k in itertools.product(range(bound + 1), repeat=3):
        z = kostant_Z(k)
        s = series.coeff(k).constant_term()
        if z != s or z != kostant_Z(k[::-1]):
            return SuiteResult("partition_function", False, count, {
                "k": list(k), "closed": z, "series": s, "swapped": kostant_Z(k[::-1])})
        count += 1
    return SuiteResult("partition_function", True, count)


def closed_formulas(bound: int = 8) -> SuiteResult:
    count = 0
    for m in itertools.product(range(bound + 1), repeat=3):
        for n in REAL_WEIGHTS:
            c, k = closed_mu(m, n), kostant_multiplicity(m, n)
            if c != k:
                return SuiteResult("closed_formulas", False, count, {
                    "m": list(m), "n": list(n), "closed": c, "kostant": k})
            count += 1
    return SuiteResult("closed_formulas", True, count)


def real_diagonal(bound: int = 5, golden_dir=None) -> SuiteResult:
    full = expand_genfun(build_G(None, golden_dir), (bound,) * 3)
    real = expand_genfun(build_G_real(None, golden_dir), (bound,) * 2, max_total=bound)
    count = 0
    for a, b in _graded(real):
        if real[(a, b)] != full[(a, b, a)]:
            return SuiteResult("real_diagonal", False, count, {
                "exponent": [a, b], "G": str(full[(a, b, a)]), "G_R": str(real[(a, b)])})
        count += 1
    return SuiteResult("real_diagonal", True, count)


def restricted(single: int = 6, mixed: int = 4, golden_dir=None) -> SuiteResult:
    count = 0
    for algebra in ("B3", "C3"):
        for kind in RESTRICTED_KINDS:
            if kind == "mixed":
                bad = check_restricted(algebra, kind, (mixed, mixed), mixed, golden_dir)
                count += (mixed + 1) * (mixed + 2) // 2
            else:
                bad = check_restricted(algebra, kind, (single,), None, golden_dir)
                count += single + 1
            if bad:
                b = bad[0]
                return SuiteResult("restricted", False, count, {
                    "algebra": algebra, "kind": kind, "exponent": list(b["exponent"]),
                    "weight": list(b["weight"]), "expected": str(b["expected"]), "got": str(b["got"])})
    return SuiteResult("restricted", True, count)


def _brute_Z(k) -> int:
    from .roots import root_system
    roots = root_system("A3").positive_roots
    total = 0
    bound = max(k) + 1
    for c in itertools.product(range(bound), repeat=len(roots)):
        if all(sum(ci * r[j] for ci, r in zip(c, roots)) == k[j] for j in range(3)):
            total += 1
    return total


def spot_values(golden_dir=None) -> SuiteResult:
    """Each value from at least two independent routes."""
    e = expand_genfun(build_E(golden_dir), (1, 1, 1))
    g = expand_genfun(build_G(None, golden_dir), (2, 0, 0))
    z1 = LaurentPoly.variable(Z, "z1")
    t1 = LaurentPoly.variable(T, "t1")
    eval_at_dims = lambda p: p.subst({"z1": 4, "z2": 6, "z3": 4}).constant_term()  # noqa: E731
    checks = [
        ("dim(1,0,0)", 4, [weyl_dim("A3", (1, 0, 0)), e[(1, 0, 0)].constant_term(),
                           eval_at_dims(solve_character((1, 0, 0)).body)]),
        ("dim(1,0,1)", 15, [weyl_dim("A3", (1, 0, 1)), e[(1, 0, 1)].constant_term(),
                            eval_at_dims(solve_character((1, 0, 1)).body)]),
        ("mu(1,0,1)(0,0,0)", 3, [closed_mu((1, 0, 1), (0, 0, 0)), kostant_multiplicity((1, 0, 1), (0, 0, 0)),
                                 multiplicity((1, 0, 1), (0, 0, 0), "genfun"), direct_mu((1, 0, 1), (0, 0, 0))]),
        ("chi(2,0,0)", "z1^2 - z2", [str(solve_character((2, 0, 0)).body), str(g[(2, 0, 0)])]),
        ("eps(1,0,0)", Fraction(15, 2), [eigenvalue((1, 0, 0)), apply_delta_z(z1).coeff((1, 0, 0)),
                                         DELTA_T.apply(t1.over(DELTA_T.varset)).coeff((1, 0, 0))]),
        ("Z[1,1,1]", 4, [kostant_Z((1, 1, 1)), kostant_Z_series((1, 1, 1)).coeff((1, 1, 1)).constant_term(),
                         _brute_Z((1, 1, 1))]),
    ]
    for name, want, got in checks:
        if isinstance(want, str):
            want = str(LaurentPoly.parse(want, Z))
        if any(v != want for v in got):
            return SuiteResult("spot_values", False, 0, {"value": name, "expected": str(want),
                                                         "got": [str(v) for v in got]})
    return SuiteResult("spot_values", True, len(checks))


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "characters": characters,
    "pde": pde,
    "dimensions": dimensions,
    "multiplicity_functions": multiplicity_functions,
    "partition_function": partition_function,
    "closed_formulas": closed_formulas,
    "real_diagonal": real_diagonal,
    "restricted": restricted,
    "spot_values": spot_values,
}


def _plan(level: str, golden_dir):
    h = (lambda x: x // 2) if level == "quick" else (lambda x: x)
    gd = {"golden_dir": golden_dir}
    return [
        (characters, dict(bound=h(6), **gd)),
        (pde, dict(caps_g=(h(4),) * 3, caps_r=(h(6),) * 2, **gd)),
        (dimensions, dict(bound=h(10), bound_real=h(8), **gd)),
        (multiplicity_functions, dict(cap=h(6), **gd)),
        (partition_function, dict(bound=h(15))),
        (closed_formulas, dict(bound=h(8))),
        (real_diagonal, dict(bound=h(5), **gd)),
        (restricted, dict(single=h(6), mixed=h(4), **gd)),
        (spot_values, dict(**gd)),
    ]


def run_selftest(level: str = "quick", golden_dir=None) -> list[SuiteResult]:
    if level not in ("quick", "full"):
        raise ValueError(f"level must be 'quick' or 'full', not {level!r}")
    results = []
    for fn, kwargs in _plan(level, golden_dir):
        start = time.perf_counter()
        r = fn(**kwargs)
        r.seconds = time.perf_counter() - start
        results.append(r)
    return results
