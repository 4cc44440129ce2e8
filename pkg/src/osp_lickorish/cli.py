"""Command-line frontend: tables, eval, invariant, selftest.

Exit codes: 0 success, 1 usage, 2 parse error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .cyclotomic import CycContext, CycNum, make_context
from .diagram import (
    DiagramError,
    MLPParseError,
    MorseDiagram,
    add_kink,
    disjoint_union,
    empty_link,
    hopf,
    parse_mlp,
    unknot,
)
from .evaluator import EvaluationError, colored_evaluate, evaluate, evaluate_open
from .invariant import (
    VerificationError,
    build_tables,
    invariant_F,
    b_rows,
    d_times_B,
    verify_kirby_equation,
    verify_master,
    z_by_evaluator,
    z_forms,
)
from .rep import (
    braid_eigenspace_dims,
    braid_relation_residual,
    build_irrep,
    check_relations,
    cubic_residual,
    decompose_power,
    signed_multiplicities,
    tensor_power,
)

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


# -- output ----------------------------------------------------------------------

def _float(c: complex) -> list[float]:
    return [round(c.real, 12) + 0.0, round(c.imag, 12) + 0.0]


def scalar_record(v: CycNum) -> dict:
    return {"exact": str(v), "coeffs": v.coeff_strings(), "float": _float(v.embed())}


def matrix_record(M) -> dict:
    return {
        "shape": list(M.shape),
        "entries": [[i, j, str(v)] for i, j, v in sorted(M.items(), key=lambda t: (t[0], t[1]))],
    }


def _emit_text(doc: dict, out, indent: int = 0) -> None:
    pad = "  " * indent
    for key, val in doc.items():
        if isinstance(val, dict) and "exact" in val and "float" in val:
            re, im = val["float"]
            out.write(f"{pad}{key}: {val['exact']}    [coeffs {', '.join(val['coeffs'])}]  ~ {re:.12g} {im:+.12g}i\n")
        elif isinstance(val, dict):
            out.write(f"{pad}{key}:\n")
            _emit_text(val, out, indent + 1)
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            out.write(f"{pad}{key}:\n")
            for n, item in enumerate(val):
                if "exact" in item:
                    _emit_text({f"[{n}]": item}, out, indent + 1)
                else:
                    out.write(f"{pad}  - \n")
                    _emit_text(item, out, indent + 2)
        elif isinstance(val, list) and val and all(isinstance(v, str) for v in val):
            out.write(f"{pad}{key}:\n")
            for v in val:
                out.write(f"{pad}  - {v}\n")
        else:
            out.write(f"{pad}{key}: {val}\n")


def emit(doc: dict, as_json: bool, out=None) -> None:
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps(doc, indent=2, sort_keys=False) + "\n")
    else:
        _emit_text(doc, out)


# -- config -------------------------------------------------------------------------

def _context(args) -> CycContext:
    if args.N < 3 or args.N % 2 == 0:
        raise UsageError(f"--N must be an odd integer >= 3, got {args.N}")
    if math.gcd(args.root, args.N) != 1:
        raise UsageError(f"--root must be coprime to N, got {args.root}")
    return make_context(args.N, args.root % args.N)


def _read_x(path: Optional[str], ctx: CycContext) -> Optional[list[CycNum]]:
    """x file: JSON list of N entries; each a rational (number or "a/b") or a list of power-basis coefficients."""
    if path is None:
        return None
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read --x-file: {exc}") from exc
    if not isinstance(raw, list) or len(raw) != ctx.N:
        raise UsageError(f"--x-file must hold a list of {ctx.N} entries")
    out = []
    for item in raw:
        try:
            if isinstance(item, list):
                out.append(ctx.from_coeffs([Fraction(str(c)) for c in item]))
            else:
                out.append(ctx.const(Fraction(str(item))))
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad x entry {item!r}: {exc}") from exc
    return out


def _parse_kinks(specs: Sequence[str]) -> list[tuple[int, int]]:
    out = []
    for item in specs or ():
        try:
            comp, sign = (int(t) for t in item.split(","))
        except ValueError as exc:
            raise UsageError(f"--kink expects comp,sign, got {item!r}") from exc
        if sign not in (1, -1):
            raise UsageError("--kink sign must be +1 or -1")
        out.append((comp, sign))
    return out


def _load_diagram(path: str, kinks: Sequence[tuple[int, int]]) -> MorseDiagram:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    d = parse_mlp(text)
    for comp, sign in kinks:
        try:
            d = add_kink(d, comp, sign)
        except DiagramError as exc:
            raise UsageError(str(exc)) from exc
    return d


def _header(ctx: CycContext, command: str) -> dict:
    return {"N": ctx.N, "root": ctx.root_k, "command": command}


# -- commands ---------------------------------------------------------------------------

def cmd_tables(args) -> tuple[dict, int]:
    ctx = _context(args)
    x = _read_x(args.x_file, ctx)
    tables = build_tables(ctx, x)
    kirby = verify_kirby_equation(ctx, tables.d)
    z1, z2, z3 = z_forms(ctx, tables.d, tables.b)
    roundtrip = d_times_B(ctx, tables.d) == list(tables.b)
    z_ok = z1 == z2 == z3
    norm_ok = abs(abs(tables.z.embed()) - 1) < 1e-9
    doc = _header(ctx, "tables")
    doc["b_rows"] = [list(r) for r in b_rows(ctx.N - 1).rows]
    doc["B"] = [list(r) for r in tables.B]
    doc["x"] = [scalar_record(v) for v in tables.x]
    doc["b"] = [scalar_record(v) for v in tables.b]
    doc["d"] = [scalar_record(v) for v in tables.d]
    doc["z"] = scalar_record(tables.z)
    checks = {
        "kirby equation": kirby.ok,
        "d B = b": roundtrip,
        "z three forms agree": z_ok,
        "|z| = 1": norm_ok,
    }
    doc["verification"] = _summary(checks, list(kirby.failures))
    return doc, EXIT_OK if all(checks.values()) else EXIT_VERIFY


def cmd_eval(args) -> tuple[dict, int]:
    ctx = _context(args)
    kinks = _parse_kinks(args.kink)
    d = _load_diagram(args.file, kinks)
    doc = _header(ctx, "eval")
    doc["file"] = args.file
    if args.open:
        M = evaluate_open(d, ctx).matrix
        doc["tangle"] = f"({d.k_in},{d.k_out})"
        doc["matrix"] = matrix_record(M)
        c = M.is_scalar()
        if c is not None:
            doc["scalar"] = scalar_record(c)
        return doc, EXIT_OK
    if not d.closed:
        raise UsageError("diagram has boundary strands; pass --open")
    if args.colors:
        try:
            colors = [int(t) for t in args.colors.split(",")]
        except ValueError as exc:
            raise UsageError(f"--colors expects a comma-separated list, got {args.colors!r}") from exc
        m = d.trace().count
        if len(colors) != m:
            raise UsageError(f"--colors needs {m} entries, one per component")
        doc["colors"] = colors
        doc["value"] = scalar_record(colored_evaluate(d, ctx, colors))
    else:
        doc["value"] = scalar_record(evaluate(d, ctx))
    return doc, EXIT_OK


def cmd_invariant(args) -> tuple[dict, int]:
    ctx = _context(args)
    kinks = _parse_kinks(args.kink)
    x = _read_x(args.x_file, ctx)
    d = _load_diagram(args.file, kinks)
    if not d.closed:
        raise UsageError("surgery needs a closed diagram")
    tables = build_tables(ctx, x)
    res = invariant_F(d, ctx, tables)
    doc = _header(ctx, "invariant")
    doc["file"] = args.file
    doc["components"] = res.linking.component_count
    doc["linking_matrix"] = [list(r) for r in res.linking.matrix]
    doc["Sigma"] = scalar_record(res.Sigma)
    doc["sigma"] = res.sigma
    doc["z"] = scalar_record(tables.z)
    doc["F"] = scalar_record(res.F)
    return doc, EXIT_OK


def _summary(checks: dict[str, bool], notes: Sequence[str] = ()) -> dict:
    passed = sum(1 for v in checks.values() if v)
    out = {"passed": passed, "failed": len(checks) - passed}
    out["checks"] = {k: "pass" if v else "FAIL" for k, v in checks.items()}
    if notes:
        out["notes"] = list(notes)
    return out


def selftest_checks(ctx: CycContext, perturb_d: bool = False) -> dict[str, Callable[[], bool]]:
    N = ctx.N
    d_override = None
    if perturb_d:
        base = build_tables(ctx)
        d_override = [v + (1 if l == 1 else 0) for l, v in enumerate(base.d)]
    tables = build_tables(ctx, d_override=d_override)

    def relations() -> bool:
        reps = [build_irrep(lam, ctx) for lam in range((N - 1) // 2 + 1)]
        reps += [tensor_power(ctx, k) for k in range(1, 4)]
        return all(all(check_relations(R).values()) for R in reps)

    def decomposition() -> bool:
        rows = b_rows(min(4, N - 1))
        for k in range(1, len(rows)):
            m = signed_multiplicities(tensor_power(ctx, k))
            if [m.get(j, 0) for j in range(k + 1)] != list(rows[k]):
                return False
            if sum(2 * s.label.lam + 1 for s in decompose_power(ctx, k)) != 3**k:
                return False
        return True

    def fixtures(manifold: str) -> Callable[[], bool]:
        s3 = [empty_link(), unknot(1), unknot(-1), disjoint_union(unknot(1), unknot(-1))]
        s1s2 = [unknot(0), disjoint_union(unknot(0), unknot(1)), disjoint_union(unknot(0), unknot(-1))]
        if N == 3:
            # Hopf cables reach width 4(N-1), beyond the evaluator limit for N > 3
            s3.append(hopf(0, 0))
        group = s3 if manifold == "S3" else s1s2

        def run() -> bool:
            vals = [invariant_F(L, ctx, tables).F for L in group]
            if manifold == "S3" and vals[0] != ctx.one():
                return False
            return all(v == vals[0] for v in vals)

        return run

    return {
        "module relations (irreps, V^k for k <= 3)": relations,
        "braid cubic (R - q)(R + q^-1)(R + q^-2) = 0": lambda: cubic_residual(ctx, -1).is_zero(),
        "braid relation on V^3": lambda: braid_relation_residual(ctx).is_zero(),
        "braid eigenspace dimensions 5,3,1": lambda: [braid_eigenspace_dims(ctx)[k] for k in ("q", "-q^-1", "-q^-2")] == [5, 3, 1],
        "decomposition matches b recursion": decomposition,
        "kirby equation": lambda: verify_kirby_equation(ctx, tables.d).ok,
        "z forms agree": lambda: len({str(v) for v in z_forms(ctx, tables.d, tables.b)}) == 1,
        "z equals evaluated cable sum of O-1": lambda: z_by_evaluator(ctx, tables) == tables.z,
        "master equation k=1": lambda: verify_master(ctx, 1, tables).ok,
        "master equation k=2": lambda: verify_master(ctx, 2, tables).ok,
        "S3 presentations agree and give 1": fixtures("S3"),
        "S1xS2 presentations agree": fixtures("S1xS2"),
    }


def cmd_selftest(args) -> tuple[dict, int]:
    ctx = _context(args)
    results = {}
    notes = []
    for name, check in selftest_checks(ctx, args.perturb_d).items():
        t = time.perf_counter()
        try:
            ok = bool(check())
        except (VerificationError, EvaluationError, ArithmeticError) as exc:
            ok = False
            notes.append(f"{name}: {exc}")
        results[name] = ok
        if args.timing:
            notes.append(f"{name}: {time.perf_counter() - t:.2f}s")
    doc = _header(ctx, "selftest")
    if args.perturb_d:
        doc["perturbation"] = "d^(1) += 1"
    doc["verification"] = _summary(results, notes)
    return doc, EXIT_OK if all(results.values()) else EXIT_VERIFY


# -- entry point ---------------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2 by default; usage errors are 1 here
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--N", type=int, default=3, help="odd order of the root of unity (default 3)")
    common.add_argument("--root", type=int, default=1, help="use q = exp(2 pi i k / N) for the float embedding (default 1)")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")

    p = _Parser(prog="osp-lickorish", description="Exact Lickorish invariants from U_q(osp(1|2)) at odd roots of unity.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("tables", parents=[common], help="b, B, d and z with verification")
    t.add_argument("--x-file", help="JSON list of N free parameters x_mu")

    e = sub.add_parser("eval", parents=[common], help="evaluate a .mlp diagram colored by V")
    e.add_argument("file")
    e.add_argument("--open", action="store_true", help="evaluate a (k,k) tangle to a matrix")
    e.add_argument("--colors", help="comma-separated colors mu per component (projector-colored)")
    e.add_argument("--kink", action="append", metavar="COMP,SIGN", help="change the framing of component COMP (from 1) by SIGN; repeatable")

    i = sub.add_parser("invariant", parents=[common], help="surgery invariant of a framed link")
    i.add_argument("file")
    i.add_argument("--x-file", help="JSON list of N free parameters x_mu")
    i.add_argument("--kink", action="append", metavar="COMP,SIGN", help="change the framing of component COMP (from 1) by SIGN; repeatable")

    s = sub.add_parser("selftest", parents=[common], help="run the verification suites for N")
    s.add_argument("--perturb-d", action="store_true", help="negative control: shift d^(1) by one")
    s.add_argument("--timing", action="store_true", help="report the time of every check")
    return p


COMMANDS = {"tables": cmd_tables, "eval": cmd_eval, "invariant": cmd_invariant, "selftest": cmd_selftest}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help, or a usage error already reported
        return int(exc.code or 0)
    try:
        doc, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MLPParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DiagramError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (VerificationError, EvaluationError) as exc:
        print(f"verification error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    emit(doc, args.json)
    return code


if __name__ == "__main__":
    sys.exit(main())
