"""Command-line interface: ``takagi <subcommand> ...``.

Exit codes: 0 on success, 2 on parse or domain errors, 3 when a cap is
hit (a partial report is still written when one exists).
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .digits import (PeriodicReal, enumerate_balanced, enumerate_leading,
                     local_level_set, parse_periodic, reflect_to_X0, walk)
from .errors import ResourceError, TakagiError
from .evaluate import takagi_rational, takagi_series
from .humps import hump, xstar_invert
from .levelsets import (average_count_exact, classify, jt_mass, monte_carlo_average,
                        solve)
from .numerics import decimal_string, parse_rational
from . import plotting, serialize as ser

EXIT_OK, EXIT_DOMAIN, EXIT_CAP = 0, 2, 3


def rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return parse_periodic(text).to_rational()
    except (ValueError, TakagiError):
        raise argparse.ArgumentTypeError(
            f"expected p/q, k/2^n or 0.bits(period), got {text!r}") from None


def _common(p: argparse.ArgumentParser, formats=("json", "csv", "text")) -> None:
    p.add_argument("--format", choices=formats, default="json")
    p.add_argument("--decimals", type=int, default=None, metavar="K",
                   help="also render the main values in decimal with K places")
    p.add_argument("--timing", action="store_true",
                   help="include wall-clock time (output is then not reproducible)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="takagi", description="Exact Takagi function toolkit")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="exact value of T at a rational")
    p.add_argument("--x", type=rational_arg, required=True)
    p.add_argument("--series-terms", type=int, default=None)
    _common(p)

    p = sub.add_parser("levelset", help="certified cover of a level set")
    p.add_argument("--y", type=rational_arg, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--max-order", type=int, default=3)
    p.add_argument("--boundary", choices=("closed", "half-open"), default="closed")
    p.add_argument("--figure", type=Path, default=None, help="write an SVG figure here")
    _common(p)

    p = sub.add_parser("locals", help="local level set of a rational")
    p.add_argument("--x", type=rational_arg, required=True)
    p.add_argument("--depth", type=int, default=4)
    _common(p)

    p = sub.add_parser("humps", help="list humps")
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--leading", action="store_true")
    p.add_argument("--generation", type=int, default=None)
    _common(p)

    p = sub.add_parser("invert", help="invert T on its increasing branch")
    p.add_argument("--y", type=rational_arg, required=True)
    p.add_argument("--precision", type=int, default=64)
    _common(p)

    p = sub.add_parser("stats", help="truncated hump mass and mean local count")
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--figure", type=Path, default=None)
    _common(p)

    p = sub.add_parser("classify", help="finite-budget evidence about a level set")
    p.add_argument("--y", type=rational_arg, required=True)
    p.add_argument("--depth", type=int, default=16)
    p.add_argument("--max-order", type=int, default=6)
    p.add_argument("--figure", type=Path, default=None)
    _common(p)

    p = sub.add_parser("plot", help="SVG of the graph, humps and a level line")
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--level", type=rational_arg, default=None)
    p.add_argument("--humps", type=int, default=None, metavar="M")
    return ap


def cmd_eval(a):
    value = takagi_rational(a.x)
    out = {"x": ser.rat(a.x), "T": ser.rat(value)}
    if a.series_terms:
        enc = takagi_series(a.x, a.series_terms)
        out["series"] = {"terms": a.series_terms, "enclosure": ser.interval_to_json(enc.interval),
                         "contains_exact": value in enc}
    return out, {"x": a.x, "T": value}, [out], ("x", "T")


def cmd_levelset(a):
    report = solve(a.y, a.depth, a.max_order, a.boundary)
    out = ser.level_report_to_json(report)
    if a.figure:
        a.figure.write_text(plotting.render_graph(
            min(a.depth, 12), a.y, None, report.brackets, report.exact_points))
        out["figure"] = str(a.figure)
    csv_text = ser.brackets_to_csv(report)
    return out, {"y": a.y}, csv_text, report.truncated


def cmd_locals(a):
    x = PeriodicReal.from_rational(a.x)
    fam = local_level_set(x, a.depth)
    rep = reflect_to_X0(x)
    zeros = x.finite_zeros()
    out = {
        "x": ser.rat(a.x),
        "binary": str(x),
        "T": ser.rat(takagi_rational(a.x)),
        "finite": zeros is not None,
        "zero_positions": list(fam.zero_positions),
        "representative": ser.periodic_to_json(rep),
        "members": [ser.periodic_to_json(m) for m in fam.members],
        "truncated": fam.truncated,
    }
    rows = [{"value": m["value"], "binary": m["binary"]} for m in out["members"]]
    return out, {"x": a.x, "T": takagi_rational(a.x)}, rows, ("value", "binary")


def cmd_humps(a):
    words = enumerate_leading(a.max_order) if a.leading else enumerate_balanced(a.max_order)
    hs = [hump(w) for w in words]
    if a.generation is not None:
        hs = [h for h in hs if h.generation == a.generation]
    out = {"max_order": a.max_order, "count": len(hs), "humps": [ser.hump_to_json(h) for h in hs]}
    return out, {}, ser.humps_to_csv(hs)


def cmd_invert(a):
    pt = xstar_invert(a.y, a.precision)
    out = {"y": ser.rat(a.y), **ser.xstar_to_json(pt)}
    row = {"y": out["y"], "exact": out["exact"], "digits": pt.digits,
           "lo": ser.rat(pt.enclosure.lo), "hi": ser.rat(pt.enclosure.hi)}
    return out, {"x": pt.exact if pt.exact is not None else pt.enclosure.lo}, [row], tuple(row)


def cmd_stats(a):
    closed, enumerated = jt_mass(a.max_order)
    avg = average_count_exact(a.max_order)
    out = {"max_order": a.max_order, "jt_mass": ser.rat(closed),
           "jt_mass_enumerated": ser.rat(enumerated), "avg_count": ser.rat(avg)}
    nums = {"jt_mass": closed, "avg_count": avg}
    if a.samples:
        mc = monte_carlo_average(a.max_order, a.samples, a.seed)
        out.update({"samples": a.samples, "seed": a.seed, "mc_avg_count": ser.rat(mc)})
        nums["mc_avg_count"] = mc
    if a.figure:
        a.figure.write_text(plotting.render_mass(a.max_order))
        out["figure"] = str(a.figure)
    rows = [{"key": k, "value": v} for k, v in out.items()]
    return out, nums, rows, ("key", "value")


def cmd_classify(a):
    c = classify(a.y, a.depth, a.max_order)
    out = ser.classification_to_json(c)
    if a.figure:
        report = solve(a.y, min(a.depth, 12), None)
        a.figure.write_text(plotting.render_graph(min(a.depth, 12), a.y, None, report.brackets))
        out["figure"] = str(a.figure)
    rows = [{"order": k, "count": v} for k, v in c.finite_local_count_at_order.items()]
    return out, {"y": a.y}, rows, ("order", "count"), c.truncated


def _render(a, out: dict, nums: dict, table, columns=None) -> str:
    out = dict(out)
    out["version"] = __version__
    out["input"] = {k: (ser.rat(v) if isinstance(v, Fraction) else
                        str(v) if isinstance(v, Path) else v)
                    for k, v in vars(a).items() if k not in ("func",)}
    if a.decimals is not None:
        out["decimal"] = {k: decimal_string(v, a.decimals) for k, v in nums.items()}
    if a.format == "json":
        return json.dumps(out, indent=2) + "\n"
    if a.format == "csv":
        return table if isinstance(table, str) else ser.to_csv(table, columns)
    lines = []
    for k, v in out.items():
        lines.append(f"{k}: {json.dumps(v) if isinstance(v, (dict, list)) else v}")
    return "\n".join(lines) + "\n"


HANDLERS = {
    "eval": cmd_eval, "levelset": cmd_levelset, "locals": cmd_locals, "humps": cmd_humps,
    "invert": cmd_invert, "stats": cmd_stats, "classify": cmd_classify,
}


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help/--version
        return exc.code if isinstance(exc.code, int) else EXIT_DOMAIN
    start = time.perf_counter()
    try:
        if args.command == "plot":
            brackets, points = (), ()
            if args.level is not None:
                report = solve(args.level, min(args.depth, plotting.MAX_PLOT_DEPTH), 3)
                brackets, points = report.brackets, report.exact_points
            svg = plotting.render_graph(args.depth, args.level, args.humps, brackets, points)
            args.out.write_text(svg)
            stdout.write(json.dumps({"out": str(args.out), "bytes": len(svg.encode()),
                                     "version": __version__}, indent=2) + "\n")
            return EXIT_OK
        result = HANDLERS[args.command](args)
    except ResourceError as exc:
        print(f"takagi: {exc}", file=sys.stderr)
        stdout.write(json.dumps({"error": str(exc), "what": exc.what, "needed": exc.needed,
                                 "cap": exc.cap}) + "\n")
        return EXIT_CAP
    except (TakagiError, ValueError, ZeroDivisionError) as exc:
        print(f"takagi: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    partial = False
    if isinstance(result[-1], bool):
        partial = result[-1]
        result = result[:-1]
    out, nums, table, *columns = result
    if args.timing:
        out = {**out, "elapsed_s": round(time.perf_counter() - start, 6)}
    stdout.write(_render(args, out, nums, table, columns[0] if columns else None))
    return EXIT_CAP if partial else EXIT_OK


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
