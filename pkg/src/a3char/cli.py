"""Command-line interface: ``a3char <subcommand> [options]``.

Every command prints one envelope ``{command, result, status}`` as JSON or as
flattened ``path = value`` text lines.  Exit codes: 0 for success or a
passing verification, 1 for usage errors, 2 for a failed verification.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from fractions import Fraction
from typing import Any, Sequence

from . import genfun, multiplicities, roots, selftest
from .algebra import LaurentPoly
from .calogero import char_to_x, eigenvalue, solve_character, weight_multiplicities
from .errors import A3CharError, TranscriptionError

CAPS_ENV = "A3CHAR_CAPS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


# -- argument parsing -------------------------------------------------------------


def _labels(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _caps(text: str) -> tuple[int, ...]:
    caps = _labels(text)
    if any(c < 0 for c in caps):
        raise argparse.ArgumentTypeError(f"caps must be non-negative, got {text!r}")
    return caps


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--timing", action="store_true", help="add wall-clock seconds to the output")
    common.add_argument("--golden-dir", default=None, help="directory overriding packaged golden files")

    p = _Parser(prog="a3char", description="Exact characters and weight multiplicities of A3.")
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def add(name, help_text):
        return sub.add_parser(name, help=help_text, parents=[common])

    s = add("char", "irreducible character")
    s.add_argument("-m", type=_labels, required=True)
    s.add_argument("--algebra", choices=("a3", "b3", "c3"), default="a3")
    s.add_argument("--basis", choices=("z", "x"), default="z")
    s.add_argument("--method", choices=("calogero", "genfun", "weyl", "all"), default="calogero")

    s = add("dim", "dimension of an irrep")
    s.add_argument("-m", type=_labels, required=True)
    s.add_argument("--algebra", choices=("a3", "b3", "c3"), default="a3")
    s.add_argument("--method", choices=("weyl", "genfun", "calogero", "all"), default="weyl")

    s = add("weights", "weight multiplicity table of an irrep")
    s.add_argument("-m", type=_labels, required=True)
    s.add_argument("--algebra", choices=("a3", "b3", "c3"), default="a3")

    s = add("mult", "multiplicity of weight n in irrep m")
    s.add_argument("-m", type=_labels, required=True)
    s.add_argument("-n", type=_labels, required=True)
    s.add_argument("--method", choices=("closed", "kostant", "genfun", "direct", "calogero", "all"),
                   default="kostant")

    s = add("kostant", "Kostant partition function Z[k]")
    s.add_argument("-k", type=_labels, required=True)
    s.add_argument("--method", choices=("closed", "series", "all"), default="closed")

    s = add("genfun-expand", "expand a generating function")
    s.add_argument("--which", choices=("G", "E", "G_R", "E_R", "A"), default="G")
    s.add_argument("-n", type=_labels, help="target weight for --which A")
    s.add_argument("--caps", type=_caps)
    s.add_argument("--max-total", type=int)

    s = add("genfun-verify", "check the differential equation for G and G_R")
    s.add_argument("--which", choices=("G", "G_R", "all"), default="all")
    s.add_argument("--caps", type=_caps, help="caps for G; G_R uses the first two")
    s.add_argument("--symbolic", action="store_true", help="clear denominators instead of truncating")

    s = add("real", "character and dimension of the real irrep (m1, m2, m1)")
    s.add_argument("-m", type=_labels, required=True)

    s = add("restricted", "B3/C3 restricted generating functions")
    s.add_argument("--algebra", choices=("b3", "c3"), required=True)
    s.add_argument("--kind", choices=genfun.RESTRICTED_KINDS, required=True)
    s.add_argument("--caps", type=_caps)
    s.add_argument("--verify", action="store_true", help="compare with Weyl characters")

    s = add("selftest", "run the verification suites")
    s.add_argument("--level", choices=("quick", "full"), default="quick")
    return p


def _need_len(name: str, value, n: int):
    if value is None or len(value) != n:
        raise UsageError(f"{name}: expected {n} comma-separated values")
    return value


def _default_caps(args, n: int, fallback: int) -> tuple[int, ...]:
    if args.caps is not None:
        return _need_len("--caps", args.caps, n)
    env = os.environ.get(CAPS_ENV)
    if env:
        try:
            caps = _caps(env)
        except argparse.ArgumentTypeError as exc:
            raise UsageError(f"{CAPS_ENV}: {exc}") from None
        if len(caps) == 1:
            return caps * n
        return _need_len(CAPS_ENV, caps[:n], n)
    return (fallback,) * n


# -- serialization ----------------------------------------------------------------


def _jsonable(v: Any) -> Any:
    if isinstance(v, LaurentPoly):
        return str(v)
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def to_text(obj: Any) -> str:
    """Flatten to ``path = json-scalar`` lines."""
    lines: list[str] = []

    def walk(path: str, v: Any):
        if isinstance(v, dict) and v:
            for k, x in v.items():
                walk(f"{path}.{k}" if path else k, x)
        elif isinstance(v, list) and v:
            for i, x in enumerate(v):
                walk(f"{path}[{i}]", x)
        else:
            lines.append(f"{path} = {json.dumps(v)}")

    walk("", obj)
    return "\n".join(lines) + "\n"


_TOKEN = re.compile(r"\.?([^.\[\]]+)|\[(\d+)\]")


def from_text(text: str) -> Any:
    """Inverse of :func:`to_text`."""
    root: dict = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        path, _, raw = line.partition(" = ")
        keys: list[str | int] = [int(i) if i else k for k, i in _TOKEN.findall(path)]
        node: Any = root
        for key, nxt in zip(keys, keys[1:]):
            empty = [] if isinstance(nxt, int) else {}
            if isinstance(key, int):
                while len(node) <= key:
                    node.append(None)
                if node[key] is None:
                    node[key] = empty
                node = node[key]
            else:
                node = node.setdefault(key, empty)
        value = json.loads(raw)
        last = keys[-1]
        if isinstance(last, int):
            while len(node) <= last:
                node.append(None)
        node[last] = value
    return root


# -- commands ---------------------------------------------------------------------


def _algebra(args) -> str:
    return getattr(args, "algebra", "a3").upper()


def cmd_char(args):
    alg = _algebra(args)
    m = _need_len("-m", args.m, 3)
    if alg != "A3":
        if args.basis == "z" or args.method not in ("weyl", "calogero"):
            raise UsageError("--algebra b3/c3 supports only --basis x with the weyl method")
        return {"x": roots.weyl_character(alg, m)}, "ok"
    if args.method != "all":
        if args.method == "weyl":
            if args.basis == "z":
                raise UsageError("--method weyl produces x-basis characters; add --basis x")
            return {"x": roots.weyl_character("A3", m)}, "ok"
        if args.method == "genfun":
            z = genfun.expand_genfun(genfun.build_G(None, args.golden_dir), m)[m]
        else:
            z = solve_character(m).body
        return ({"z": z} if args.basis == "z" else {"x": char_to_x(z)}), "ok"
    z_cal = solve_character(m).body
    z_gen = genfun.expand_genfun(genfun.build_G(None, args.golden_dir), m)[m]
    x_weyl = roots.weyl_character("A3", m)
    agree = z_cal == z_gen and char_to_x(z_cal) == x_weyl
    return {"z": z_cal, "x": x_weyl, "eigenvalue": eigenvalue(m),
            "genfun": z_gen, "agree": agree}, "pass" if agree else "fail"


def cmd_dim(args):
    alg = _algebra(args)
    m = _need_len("-m", args.m, 3)
    d = roots.weyl_dim(alg, m)
    if args.method == "weyl":
        return d, "ok"
    if alg != "A3":
        raise UsageError(f"--method {args.method} is available for a3 only")
    gen = genfun.expand_genfun(genfun.build_E(args.golden_dir), m)[m].constant_term()
    cal = sum(weight_multiplicities(m).values())
    if args.method == "genfun":
        return gen, "ok"
    if args.method == "calogero":
        return cal, "ok"
    agree = d == gen == cal
    return {"weyl": d, "genfun": gen, "calogero": cal, "agree": agree}, "pass" if agree else "fail"


def cmd_weights(args):
    alg = _algebra(args)
    m = _need_len("-m", args.m, 3)
    if alg == "A3":
        table = weight_multiplicities(m)
    else:
        table = dict(sorted(roots.weyl_character(alg, m).terms.items()))
    return [{"m": list(m), "n": list(n), "value": v} for n, v in table.items()], "ok"


def cmd_mult(args):
    m = _need_len("-m", args.m, 3)
    n = _need_len("-n", args.n, 3)
    if args.method != "all":
        return multiplicities.multiplicity(m, n, args.method), "ok"
    out = {}
    if n in multiplicities.REAL_WEIGHTS:
        out["closed"] = multiplicities.closed_mu(m, n)
    out["kostant"] = multiplicities.kostant_multiplicity(m, n)
    if n in multiplicities.SUPPORTED:
        a = multiplicities.build_A(n, args.golden_dir)
        out["genfun"] = multiplicities.expand_A(a, m)[m]
    out["direct"] = multiplicities.direct_mu(m, n)
    agree = len(set(out.values())) == 1
    out["agree"] = agree
    return out, "pass" if agree else "fail"


def cmd_kostant(args):
    k = _need_len("-k", args.k, 3)
    if any(x < 0 for x in k):
        return 0, "ok"
    closed = roots.kostant_Z(k)
    if args.method == "closed":
        return closed, "ok"
    series = roots.kostant_Z_series(k).coeff(k).constant_term()
    if args.method == "series":
        return series, "ok"
    agree = closed == series
    return {"closed": closed, "series": series, "agree": agree}, "pass" if agree else "fail"


def cmd_genfun_expand(args):
    gd = args.golden_dir
    if args.which == "A":
        n = _need_len("-n", args.n, 3)
        caps = _default_caps(args, 3, 2)
        table = multiplicities.expand_A(multiplicities.build_A(n, gd), caps)
        rows = [{"m": list(m), "n": list(n), "value": v}
                for m, v in sorted(table.items(), key=lambda kv: (sum(kv[0]), kv[0]))
                if args.max_total is None or sum(m) <= args.max_total]
        return rows, "ok"
    builders = {"G": lambda: genfun.build_G(None, gd), "E": lambda: genfun.build_E(gd),
                "G_R": lambda: genfun.build_G_real(None, gd), "E_R": lambda: genfun.build_E_real(gd)}
    g = builders[args.which]()
    caps = _default_caps(args, len(g.variables), 2)
    coeffs = genfun.expand_genfun(g, caps, args.max_total)
    rows = [{"m": list(m), "value": c} for m, c in sorted(coeffs.items(), key=lambda kv: (sum(kv[0]), kv[0]))]
    return rows, "ok"


def cmd_genfun_verify(args):
    gd = args.golden_dir
    caps = _default_caps(args, 3, 4)
    jobs = []
    if args.which in ("G", "all"):
        jobs.append(("G", genfun.build_G(None, gd), genfun.DELTA_T, caps))
    if args.which in ("G_R", "all"):
        jobs.append(("G_R", genfun.build_G_real(None, gd), genfun.DELTA_T_REAL, caps[:2]))
    out = []
    for name, g, op, c in jobs:
        if args.symbolic:
            r = genfun.verify_pde_symbolic(g, op)
            bad = r.leading_term()[0] if r else None
            entry = {"function": name, "mode": "symbolic", "passed": not r}
            if r:
                entry["counterexample"] = {"exponent": list(bad), "residual_terms": len(r.terms)}
        else:
            r = genfun.verify_pde(g, op, c)
            e = r.first_nonzero()
            entry = {"function": name, "mode": "series", "caps": list(c), "passed": e is None}
            if e is not None:
                entry["counterexample"] = {"exponent": list(e), "residual": r.coeff(e)}
        out.append(entry)
        if not entry["passed"]:
            return out, "fail"
    return out, "pass"


def cmd_real(args):
    m = _need_len("-m", args.m, 2)
    if any(x < 0 for x in m):
        raise UsageError(f"-m: {m} is not a dominant weight")
    g = genfun.build_G_real(None, args.golden_dir)
    z = genfun.expand_genfun(g, m)[tuple(m)]
    full = (m[0], m[1], m[0])
    dim = genfun.real_dimension(*m)
    agree = z == solve_character(full).body and dim == roots.weyl_dim("A3", full)
    return {"m": list(full), "char": z, "dim": dim, "agree": agree}, "pass" if agree else "fail"


def cmd_restricted(args):
    alg = args.algebra.upper()
    g = genfun.build_restricted(alg, args.kind, args.golden_dir)
    n = len(g.variables)
    caps = _default_caps(args, n, 2)
    coeffs = genfun.expand_genfun(g, caps)
    rows = [{"m": list(genfun.restricted_weight(args.kind, e)), "value": c}
            for e, c in sorted(coeffs.items(), key=lambda kv: (sum(kv[0]), kv[0]))]
    if not args.verify:
        return rows, "ok"
    bad = genfun.check_restricted(alg, args.kind, caps, None, args.golden_dir)
    result = {"rows": rows, "passed": not bad}
    if bad:
        b = bad[0]
        result["counterexample"] = {"exponent": list(b["exponent"]), "weight": list(b["weight"]),
                                    "expected": b["expected"], "got": b["got"]}
        return result, "fail"
    return result, "pass"


def cmd_selftest(args):
    results = selftest.run_selftest(args.level, args.golden_dir)
    passed = all(r.passed for r in results)
    suites = [r.as_dict(timing=args.timing) for r in results]
    return {"level": args.level, "passed": passed, "suites": suites}, "pass" if passed else "fail"


COMMANDS = {
    "char": cmd_char, "dim": cmd_dim, "weights": cmd_weights, "mult": cmd_mult,
    "kostant": cmd_kostant, "genfun-expand": cmd_genfun_expand, "genfun-verify": cmd_genfun_verify,
    "real": cmd_real, "restricted": cmd_restricted, "selftest": cmd_selftest,
}


def _echo(args) -> dict:
    skip = {"format", "timing", "golden_dir", "subcommand"}
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in skip or v is None:
            continue
        out[k] = ",".join(map(str, v)) if isinstance(v, tuple) else v
    return out


def render(envelope: dict, fmt: str) -> str:
    if fmt == "text":
        return to_text(envelope)
    return json.dumps(envelope, indent=2) + "\n"


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"a3char: error: {exc}", file=stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        result, status = COMMANDS[args.subcommand](args)
    except UsageError as exc:
        print(f"a3char: error: {exc}", file=stderr)
        return 1
    except TranscriptionError as exc:
        result, status = {"error": type(exc).__name__, "detail": str(exc)}, "fail"
    except (A3CharError, ValueError) as exc:
        print(f"a3char: error: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    envelope = {"command": {"name": args.subcommand, **_echo(args)},
                "result": _jsonable(result), "status": status}
    if args.timing:
        envelope["timing"] = {"seconds": round(time.perf_counter() - start, 3)}
    stdout.write(render(envelope, args.format))
    return 2 if status == "fail" else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
