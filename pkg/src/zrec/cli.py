"""Command line interface: ``zrec <command> ...`` or ``python -m zrec ...``.

Exit status is 0 on success, 1 on a domain error (reported on stderr with
its code) and 2 on a usage error.  ``ZREC_FUEL`` overrides the default
reduction fuel.  Ranges are written ``a:b``; use ``--rows=-3:2`` when the
range starts with a minus sign.
"""
import argparse
import json
import os
import sys

from . import combinatorics as comb
from . import oracle
from .corpus import BUILTIN, REDUCED_CORPUS
from .dsl import SystemSpec, format_spec, parse
from .errors import ZrecError
from .frieze import (check_superperiodic, frieze_from_json, frieze_from_text,
                     frieze_to_recurrence, validate_tame)
from .kernel import (derived, extend_solution, is_schedule, solve_affine,
                     solve_one_sided, t_set)
from .recmat import (EPSeq, dense_window, is_reduced, matrix_from_dict,
                     matrix_to_dict)
from .reduction import (DEFAULT_FUEL, ORDERS, equivalent, is_trivial, reduce,
                        reduce_system)
from .render import render_juggling


class UsageError(Exception):
    pass


def default_fuel():
    v = os.environ.get("ZREC_FUEL")
    if v is None:
        return DEFAULT_FUEL
    try:
        n = int(v)
    except ValueError:
        raise UsageError(f"ZREC_FUEL must be a positive integer, got {v!r}")
    if n <= 0:
        raise UsageError("ZREC_FUEL must be positive")
    return n


def parse_range(text):
    try:
        a, b = text.split(":")
        a, b = int(a), int(b)
    except ValueError:
        raise UsageError(f"bad range {text!r}, expected a:b")
    if a > b:
        raise UsageError(f"empty range {text!r}")
    return a, b


def parse_assignments(text, field):
    out = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            k, v = part.split("=")
            out[int(k)] = field.parse(v)
        except ValueError:
            raise UsageError(f"bad assignment {part!r}, expected index=value")
    return out


def _seq_to_dict(seq, field):
    s = seq.canonical()
    f = field.fmt
    return {"leftPeriod": {"p": len(s.left), "anchor": s.start, "values": [f(x) for x in s.left]},
            "middle": {"start": s.start, "values": [f(x) for x in s.middle]},
            "rightPeriod": {"p": len(s.right), "values": [f(x) for x in s.right]}}


def _seq_from_dict(d, field):
    left = [field.parse(x) for x in d["leftPeriod"]["values"]]
    right = [field.parse(x) for x in d["rightPeriod"]["values"]]
    mid = d.get("middle", {})
    return EPSeq(left, mid.get("start", 0), [field.parse(x) for x in mid.get("values", [])], right)


def spec_to_dict(spec):
    d = matrix_to_dict(spec.matrix)
    if any(spec.rhs.items() - {spec.field.zero}):
        d["rhs"] = _seq_to_dict(spec.rhs, spec.field)
    return d


def load_spec(path):
    if path.startswith("builtin:"):
        name = path.split(":", 1)[1]
        if name not in BUILTIN:
            raise UsageError(f"unknown builtin {name!r}; known: {', '.join(BUILTIN)}")
        return SystemSpec(BUILTIN[name]())
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}")
    if path.endswith(".json"):
        d = json.loads(text)
        C = matrix_from_dict(d)
        rhs = _seq_from_dict(d["rhs"], C.field) if "rhs" in d else None
        return SystemSpec(C, rhs)
    return parse(text)


def _reduce_kw(args):
    fuel = args.fuel if getattr(args, "fuel", None) else default_fuel()
    return {"fuel": fuel, "order": getattr(args, "order", "ascending"),
            "seed": getattr(args, "seed", None)}


def _reduced(args, spec):
    C = spec.matrix
    return C if is_reduced(C) else reduce(C, **_reduce_kw(args))


def cmd_parse(args, out):
    spec = load_spec(args.file)
    if args.dsl:
        out.write(format_spec(spec))
    else:
        out.write(json.dumps(spec_to_dict(spec), indent=1) + "\n")


def cmd_reduce(args, out):
    spec = load_spec(args.file)
    C, rhs = reduce_system(spec.matrix, spec.rhs, **_reduce_kw(args))
    res = SystemSpec(C, rhs)
    if args.format == "dsl":
        out.write(format_spec(res))
    else:
        out.write(json.dumps(spec_to_dict(res), indent=1) + "\n")


def cmd_check(args, out):
    C = load_spec(args.file).matrix
    if args.reduced:
        out.write("reduced\n" if is_reduced(C) else "not reduced\n")
    elif args.trivial:
        out.write("trivial\n" if is_trivial(C, **_reduce_kw(args)) else "not trivial\n")
    else:
        C2 = load_spec(args.equivalent).matrix
        same = equivalent(C, C2, **_reduce_kw(args))
        out.write("equivalent\n" if same else "not equivalent\n")


def cmd_dim(args, out):
    C = _reduced(args, load_spec(args.file))
    out.write(f"{comb.count_balls(C)}\n")


def cmd_balls(args, out):
    C = _reduced(args, load_spec(args.file))
    bl = comb.balls(C)
    if args.json:
        out.write(json.dumps([b.to_dict() for b in bl], indent=1) + "\n")
        return
    lo, hi = parse_range(args.window)
    out.write(f"{len(bl)}\n")
    for k, b in enumerate(bl):
        mem = " ".join(str(x) for x in b.members(lo, hi))
        top = "" if b.top is None else f" (top {b.top})"
        out.write(f"ball {k}: {mem}{top}\n")


def cmd_schedule(args, out):
    C = _reduced(args, load_spec(args.file))
    if args.check is not None:
        J = [int(x) for x in args.check.split(",") if x.strip()]
        out.write("schedule\n" if is_schedule(C, J) else "not a schedule\n")
        return
    out.write(" ".join(str(t) for t in t_set(C, args.at).J) + "\n")


def cmd_dump(args, out):
    spec = load_spec(args.file)
    C = spec.matrix
    if args.matrix not in ("c", "adj"):
        C = _reduced(args, spec)
    M = derived(C, args.matrix)
    W = dense_window(M, parse_range(args.rows), parse_range(args.cols))
    out.write(W.to_csv() if args.format == "csv" else W.to_json() + "\n")


def _write_values(out, lo, values, field):
    for i, x in enumerate(values):
        out.write(f"{lo + i},{field.fmt(x)}\n")


def cmd_solve(args, out):
    spec = load_spec(args.file)
    F = spec.field
    if args.one_sided:
        init = parse_assignments(args.initial or "", F)
        vals = solve_one_sided(spec.matrix, init, args.n)
        _write_values(out, 0, vals, F)
        return
    lo, hi = parse_range(args.window)
    if args.affine:
        vals = solve_affine(spec, (lo, hi), **_reduce_kw(args))
    else:
        C = _reduced(args, spec)
        vals = extend_solution(C, parse_assignments(args.from_schedule, F), (lo, hi))
    _write_values(out, lo, vals, F)


def cmd_rank(args, out):
    spec = load_spec(args.file)
    a, b = parse_range(args.interval)
    if args.defects:
        C = _reduced(args, spec)
        for r, c in comb.defects(C, (a, b)):
            out.write(f"{r},{c}\n")
        return
    if args.oracle:
        out.write(f"{oracle.nullspace_dim(spec.matrix, (a, b))}\n")
        return
    C = _reduced(args, spec)
    out.write(f"{comb.rank_matrix_entry(C, a, b)}\n")


def _load_frieze(path, k):
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}")
    if path.endswith(".json"):
        return frieze_from_json(text)
    return frieze_from_text(text, k)


def cmd_frieze(args, out):
    f = _load_frieze(args.file, args.k)
    if args.action == "validate":
        res = validate_tame(f)
        if res.ok:
            out.write("tame\n")
        else:
            size, a, b, d = res.where
            out.write(f"not tame: {size}x{size} diamond at ({a},{b}) has determinant {d}\n")
        return
    C = frieze_to_recurrence(f, args.alternating)
    if args.action == "convert":
        out.write(json.dumps(matrix_to_dict(C), indent=1) + "\n")
        return
    max_n = args.max_n or 4 * f.period
    res = check_superperiodic(C, (-max_n, 2 * max_n), max_n)
    out.write("none\n" if res is None else f"n={res[0]} s={res[1]}\n")


def cmd_render(args, out):
    C = _reduced(args, load_spec(args.file))
    svg = render_juggling(C, parse_range(args.window))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(svg)
    else:
        out.write(svg)


def verify_matrix(C, window=(-6, 6)):
    """Oracle cross-checks on one matrix; returns a list of discrepancy strings."""
    from .kernel import adj_entry, sol_entry
    bad = []
    lo, hi = window
    for a in range(lo, hi + 1):
        for b in range(max(lo, a - 8), a + 1):
            if adj_entry(C, a, b) != oracle.det_minor_adjugate(C, a, b):
                bad.append(f"adjugate entry ({a},{b}) disagrees with its minor")
    R = reduce(C)
    if reduce(R) != R or not is_reduced(R):
        bad.append("reduction is not idempotent")
    for a in range(lo, hi + 1):
        for b in range(a, min(hi, a + 6) + 1):
            if comb.rank_matrix_entry(R, a, b) != oracle.nullspace_dim(C, (a, b)):
                bad.append(f"rank on [{a},{b}] disagrees with the nullspace oracle")
    for b in range(lo, hi + 1):
        for a in range(lo, hi + 1):
            s = sum((R.entry(a, k) * sol_entry(R, k, b)
                     for k in range(a - R.band, a + 1)), R.field.zero)
            if s:
                bad.append(f"C*Sol is nonzero at ({a},{b})")
    n = comb.count_balls(R)
    for b in (lo, 0, hi):
        if len(t_set(R, b)) != n:
            bad.append(f"|T_{b}| differs from the ball count")
    return bad


def cmd_verify(args, out):
    targets = args.files or [f"builtin:{n}" for n in REDUCED_CORPUS]
    window = parse_range(args.window)
    total = 0
    for t in targets:
        C = load_spec(t).matrix
        bad = verify_matrix(C, window)
        total += len(bad)
        out.write(f"{'ok' if not bad else 'FAIL'} {t}\n")
        for msg in bad:
            out.write(f"  {msg}\n")
    return 1 if total else 0


def build_parser():
    p = argparse.ArgumentParser(prog="zrec", description="Bi-infinite linear recurrences "
                                "as recurrence matrices, in exact arithmetic.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, reduce_opts=True):
        sp = sub.add_parser(name, help=help_, description=help_)
        sp.set_defaults(fn=fn)
        if reduce_opts:
            sp.add_argument("--fuel", type=int, default=None,
                            help="reduction fuel (default $ZREC_FUEL or %d)" % DEFAULT_FUEL)
            sp.add_argument("--order", choices=ORDERS, default="ascending",
                            help="sweep order used by the reduction")
            sp.add_argument("--seed", type=int, default=None, help="seed for --order random")
        return sp

    sp = add("parse", cmd_parse, "parse a .zrec file and print canonical JSON", False)
    sp.add_argument("file")
    sp.add_argument("--dsl", action="store_true", help="print canonical DSL text instead")

    sp = add("reduce", cmd_reduce, "print the reduced equivalent system")
    sp.add_argument("file")
    sp.add_argument("--format", choices=("json", "dsl"), default="json")

    sp = add("check", cmd_check, "test a property of the matrix")
    sp.add_argument("file")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--reduced", action="store_true")
    g.add_argument("--trivial", action="store_true")
    g.add_argument("--equivalent", metavar="OTHER")

    sp = add("dim", cmd_dim, "kernel dimension (number of S-balls)")
    sp.add_argument("file")

    sp = add("balls", cmd_balls, "list the S-balls")
    sp.add_argument("file")
    sp.add_argument("--window", default="-8:8", help="members shown in this range")
    sp.add_argument("--json", action="store_true", help="ball descriptors as JSON")

    sp = add("schedule", cmd_schedule, "print T_b, or test a schedule with --check")
    sp.add_argument("file")
    sp.add_argument("--at", type=int, default=0, help="b for T_b")
    sp.add_argument("--check", metavar="J", help="comma separated indices")

    sp = add("dump", cmd_dump, "dump a window of C or a derived matrix")
    sp.add_argument("file")
    sp.add_argument("--matrix", choices=("c", "adj", "sol", "spl", "p", "cp", "upper", "py"),
                    default="c")
    sp.add_argument("--rows", required=True)
    sp.add_argument("--cols", required=True)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")

    sp = add("solve", cmd_solve, "solve the system on a window")
    sp.add_argument("file")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--from-schedule", metavar="K=V,...")
    g.add_argument("--affine", action="store_true")
    g.add_argument("--one-sided", action="store_true")
    sp.add_argument("--window", default="-5:5")
    sp.add_argument("--initial", metavar="K=V,...", help="initial values for --one-sided")
    sp.add_argument("-n", type=int, default=10, help="last index for --one-sided")

    sp = add("rank", cmd_rank, "rank matrix entry R[a,b]")
    sp.add_argument("file")
    sp.add_argument("--interval", required=True)
    sp.add_argument("--oracle", action="store_true", help="brute-force nullspace instead")
    sp.add_argument("--defects", action="store_true", help="list defects in the box")

    sp = add("frieze", cmd_frieze, "tame frieze tools", False)
    sp.add_argument("action", choices=("validate", "convert", "superperiod"))
    sp.add_argument("file")
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--alternating", action="store_true", help="flip signs of odd offsets")
    sp.add_argument("--max-n", type=int, default=None)

    sp = add("render", cmd_render, "SVG juggling diagram")
    sp.add_argument("file")
    sp.add_argument("--window", default="0:16")
    sp.add_argument("-o", "--output")

    sp = add("verify", cmd_verify, "run oracle cross-checks")
    sp.add_argument("files", nargs="*")
    sp.add_argument("--window", default="-6:6")
    return p


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        default_fuel()  # reject a bad ZREC_FUEL even when nothing is reduced
        rc = args.fn(args, out)
    except UsageError as e:
        err.write(f"zrec: usage error: {e}\n")
        return 2
    except ZrecError as e:
        err.write(f"zrec: error {e.code} {type(e).__name__}: {e}\n")
        return 1
    return rc or 0


def run(argv):
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
