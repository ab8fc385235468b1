"""Command-line front end.

Exit codes: 0 success, 1 domain or format error, 2 usage error.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
import tempfile
from math import lcm

from . import imagelab, mapcore, period, qualia
from .errors import CatlabError
from .pgm import read_pgm_file

TABLE_MAX = 10000


class UsageError(Exception):
    pass


def _atomic_write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _dump(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _power(p: int, e: int) -> str:
    return str(p) if e == 1 else f"{p}^{e}"


def cmd_period(args) -> None:
    rep = period.period_report(args.n)
    values = [t.value for t in rep.terms]
    without = [lcm(*(v for j, v in enumerate(values) if j != i)) if len(values) > 1 else 1 for i in range(len(values))]
    if args.json:
        doc = rep.to_dict()
        for term, w in zip(doc["terms"], without):
            term["lcm_without"] = w
        _dump(doc)
        return
    fac = " * ".join(_power(t.prime, t.exponent) for t in rep.terms)
    out = [f"N = {rep.n} = {fac}"]
    for t, w in zip(rep.terms, without):
        extra = f" (epsilon = {max(t.exponent - 1, 1)})" if t.cls is period.PrimeClass.TWO else ""
        out.append(f"  {_power(t.prime, t.exponent):>8}  {t.cls.value:<6}  term {t.value}{extra}; lcm of the other terms {w}")
    out.append(f"2m* = LCM({', '.join(map(str, values))}) = {rep.lcm}")
    if rep.odd_lcm:
        out.append("  (LCM is odd; bound rounded up)")
    out.append(f"period={rep.period} bound={rep.bound} ratio={rep.ratio}")
    print("\n".join(out))


def cmd_table(args) -> None:
    if args.start > args.stop:
        raise UsageError(f"empty range {args.start}..{args.stop}")
    if args.stop > TABLE_MAX:
        raise UsageError(f"upper limit is {TABLE_MAX}")
    if args.start < 2:
        raise CatlabError(f"table starts at N >= 2, got {args.start}")
    buf = io.StringIO()
    buf.write("N,period,bound\n")
    for n in range(args.start, args.stop + 1):
        buf.write(f"{n},{mapcore.exact_period_factored(n)},{period.dyson_falk_bound(n)}\n")
    _atomic_write(args.csv, buf.getvalue())


def cmd_iterate(args) -> None:
    c = read_pgm_file(args.input, strict=args.strict)
    written = imagelab.write_snapshots(c, args.steps, args.every, args.outdir)
    print(f"wrote {len(written)} snapshot(s) to {args.outdir}")


def cmd_recurrence(args) -> None:
    c = read_pgm_file(args.input, strict=args.strict)
    rep = imagelab.configuration_recurrence(c)
    if args.json:
        _dump(rep.to_dict())
        return
    print(f"N = {rep.n}")
    print(f"recurrence={rep.recurrence_time} period={rep.period} bound={rep.bound}")
    print(f"binary configurations on this screen: 2^{rep.n * rep.n}")
    for (length, d), count in sorted(rep.cycle_summary.items()):
        print(f"  {count} cycle(s) of length {length} restored after {d}")


def cmd_orbit(args) -> None:
    n = mapcore.check_modulus(args.n)
    p = mapcore.check_point((args.x, args.y), n)
    if args.points:
        points = [list(q) for q in mapcore.iter_orbit(p, n)]
        length = len(points)
    else:
        points, length = None, mapcore.orbit_length(p, n)
    if args.json:
        doc = {"n": n, "start": list(p), "length": length}
        if points is not None:
            doc["points"] = points
        _dump(doc)
        return
    print(f"orbit of ({p.x}, {p.y}) mod {n}: length {length}")
    if points is not None:
        print(" -> ".join(f"({x}, {y})" for x, y in points))


def cmd_dispersion(args) -> None:
    buf = io.StringIO()
    buf.write("step,mean_distance\n")
    for s in imagelab.dispersion_curve(args.n, args.steps):
        buf.write(f"{s.step},{s.mean_distance:.6f}\n")
    _atomic_write(args.csv, buf.getvalue())


def _load_graph(path: str) -> qualia.MatchGraph:
    try:
        with open(path, encoding="utf-8") as fh:
            return qualia.MatchGraph.loads(fh.read())
    except OSError as exc:
        raise CatlabError(f"cannot read {path}: {exc.strerror}") from None


def _show_sets(label: str, sets, as_json: bool) -> None:
    if as_json:
        _dump([list(s) for s in sets])
        return
    for i, s in enumerate(sets, 1):
        print(f"{label} {i}: " + " + ".join(s))


def _show_manor(m: qualia.Manor, as_json: bool) -> None:
    if as_json:
        _dump({"quale": m.center, "manor": list(m.members)})
    else:
        print(f"manor of {m.center} = " + " + ".join(m.members))


def cmd_qualia_manor(args) -> None:
    _show_manor(qualia.manor_of(_load_graph(args.graph), args.quale), args.json)


def cmd_qualia_clans(args) -> None:
    _show_sets("clan", qualia.clan_partition(_load_graph(args.graph)), args.json)


def cmd_qualia_categories(args) -> None:
    _show_sets("category", qualia.categories(_load_graph(args.graph)), args.json)


def cmd_qualia_maxmanor(args) -> None:
    kind = qualia.NetworkKind(args.kind)
    size = qualia.max_manor_size(kind, args.n)
    doc = {"kind": kind.value, "n": args.n, "max_manor": size}
    if args.brute:
        doc["brute_force"] = qualia.brute_force_max_manor(kind, args.n)
    if args.json:
        _dump(doc)
    else:
        print(" ".join(f"{k}={v}" for k, v in doc.items()))


def cmd_qualia_span(args) -> None:
    g = qualia.expand_linear_span(qualia.LinearSpanArray(args.count, args.span))
    if args.dump:
        sys.stdout.write(g.dumps() + "\n")
        return
    centres = [args.quale] if args.quale is not None else list(g.qualia)
    manors = [qualia.manor_of(g, q) for q in centres]
    if args.json:
        _dump([{"quale": m.center, "manor": list(m.members)} for m in manors])
        return
    for m in manors:
        _show_manor(m, False)


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="catlab", description="Discrete cat map and qualia matching laboratory.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("period", help="exact period, Dyson-Falk bound and its terms")
    p.add_argument("n", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("table", help="CSV table N,period,bound")
    p.add_argument("start", type=int)
    p.add_argument("stop", type=int)
    p.add_argument("--csv", nargs="?", const="-", default="-", metavar="PATH")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("iterate", help="write snapshot PGMs of an iterated image")
    p.add_argument("--input", required=True)
    p.add_argument("--steps", type=_nonnegative, required=True)
    p.add_argument("--every", type=_positive, default=1)
    p.add_argument("--outdir", required=True)
    p.add_argument("--strict", action="store_true", help="reject maxval other than 255")
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser("recurrence", help="steps until an image reappears")
    p.add_argument("--input", required=True)
    p.add_argument("--strict", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_recurrence)

    p = sub.add_parser("orbit", help="orbit of one lattice point")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--points", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("dispersion", help="CSV step,mean_distance of adjacent-pixel spreading")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--steps", type=_nonnegative, required=True)
    p.add_argument("--csv", nargs="?", const="-", default="-", metavar="PATH")
    p.set_defaults(func=cmd_dispersion)

    q = sub.add_parser("qualia", help="matching calculus queries").add_subparsers(dest="qualia_command", required=True)

    p = q.add_parser("manor")
    p.add_argument("--graph", required=True)
    p.add_argument("--quale", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_qualia_manor)

    for name, func in (("clans", cmd_qualia_clans), ("categories", cmd_qualia_categories)):
        p = q.add_parser(name)
        p.add_argument("--graph", required=True)
        p.add_argument("--json", action="store_true")
        p.set_defaults(func=func)

    p = q.add_parser("maxmanor")
    p.add_argument("--kind", choices=[k.value for k in qualia.NetworkKind], required=True)
    p.add_argument("--n", type=_nonnegative, required=True)
    p.add_argument("--brute", action="store_true", help="also count by lattice enumeration")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_qualia_maxmanor)

    p = q.add_parser("span")
    p.add_argument("--count", type=_positive, required=True)
    p.add_argument("--span", type=_nonnegative, required=True)
    p.add_argument("--quale")
    p.add_argument("--dump", action="store_true", help="print the expanded match graph document")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_qualia_span)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"catlab: error: {exc}", file=sys.stderr)
        return 2
    except (CatlabError, OSError) as exc:
        print(f"catlab: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
