"""JSON and CSV forms of reports.  Rationals are always ``"p/q"`` strings."""
from __future__ import annotations

import csv
import io
from fractions import Fraction
from typing import Iterable, Optional

from .digits import PeriodicReal, parse_periodic
from .humps import Hump, XStarPoint
from .levelsets import ClassificationReport, LevelSetReport, LocalClassRecord
from .numerics import Dyadic, RatInterval, format_rational, parse_rational

HUMP_COLUMNS = ("word", "x0", "m", "generation", "leading", "I", "J", "Jt")


def rat(x) -> Optional[str]:
    return None if x is None else format_rational(x)


def unrat(s: Optional[str]) -> Optional[Fraction]:
    return None if s is None else parse_rational(s)


def interval_to_json(iv: RatInterval) -> list[str]:
    return [rat(iv.lo), rat(iv.hi)]


def interval_from_json(v) -> RatInterval:
    return RatInterval(unrat(v[0]), unrat(v[1]))


def hump_to_json(h: Hump) -> dict:
    return {
        "word": h.word,
        "x0": rat(h.x0.to_rational()),
        "m": h.m,
        "generation": h.generation,
        "leading": h.leading,
        "I": interval_to_json(h.I),
        "J": interval_to_json(h.J),
        "Jt": interval_to_json(h.Jt),
    }


def hump_from_json(d: dict) -> Hump:
    return Hump(
        word=d["word"],
        x0=Dyadic.from_rational(unrat(d["x0"])),
        m=d["m"],
        generation=d["generation"],
        leading=d["leading"],
        I=interval_from_json(d["I"]),
        J=interval_from_json(d["J"]),
        Jt=interval_from_json(d["Jt"]),
    )


def periodic_to_json(p: Optional[PeriodicReal]) -> Optional[dict]:
    if p is None:
        return None
    return {"value": rat(p.to_rational()), "binary": str(p)}


def periodic_from_json(d: Optional[dict]) -> Optional[PeriodicReal]:
    return None if d is None else parse_periodic(d["binary"])


def xstar_to_json(p: XStarPoint) -> dict:
    return {
        "exact": rat(p.exact),
        "periodic": periodic_to_json(p.periodic),
        "enclosure": interval_to_json(p.enclosure),
        "level_enclosure": interval_to_json(p.level_enclosure),
        "digits": p.digits,
        "prefix_walk_ok": p.prefix_walk_ok,
    }


def xstar_from_json(d: dict) -> XStarPoint:
    return XStarPoint(
        enclosure=interval_from_json(d["enclosure"]),
        level_enclosure=interval_from_json(d["level_enclosure"]),
        digits=d["digits"],
        prefix_walk_ok=d["prefix_walk_ok"],
        exact=unrat(d["exact"]),
        periodic=periodic_from_json(d["periodic"]),
    )


def level_report_to_json(r: LevelSetReport) -> dict:
    return {
        "y": rat(r.y),
        "depth": r.depth,
        "exact_points": [rat(x) for x in r.exact_points],
        "brackets": [{"lo": rat(b.lo), "hi": rat(b.hi), "depth": r.depth} for b in r.brackets],
        "complete_cover": r.complete_cover,
        "truncated": r.truncated,
        "growth": [list(g) for g in r.growth],
    }


def level_report_from_json(d: dict) -> LevelSetReport:
    return LevelSetReport(
        y=unrat(d["y"]),
        depth=d["depth"],
        exact_points=[unrat(x) for x in d["exact_points"]],
        brackets=[RatInterval(unrat(b["lo"]), unrat(b["hi"])) for b in d["brackets"]],
        complete_cover=d["complete_cover"],
        truncated=d["truncated"],
        growth=[tuple(g) for g in d["growth"]],
    )


def local_record_to_json(rec: LocalClassRecord) -> dict:
    return {
        "witness": hump_to_json(rec.witness),
        "left": xstar_to_json(rec.left),
        "right": xstar_to_json(rec.right),
        "representative": periodic_to_json(rec.representative),
        "members": [periodic_to_json(m) for m in rec.members],
        "exact": rec.exact,
        "boundary": rec.boundary,
        "size": rec.size,
    }


def local_record_from_json(d: dict) -> LocalClassRecord:
    return LocalClassRecord(
        witness=hump_from_json(d["witness"]),
        left=xstar_from_json(d["left"]),
        right=xstar_from_json(d["right"]),
        representative=periodic_from_json(d["representative"]),
        members=tuple(periodic_from_json(m) for m in d["members"]),
        exact=d["exact"],
        boundary=d["boundary"],
    )


def classification_to_json(c: ClassificationReport) -> dict:
    return {
        "y": rat(c.y),
        "finite_local_count_at_order": {str(k): v for k, v in c.finite_local_count_at_order.items()},
        "exact_points_found": c.exact_points_found,
        "bracket_growth": [list(g) for g in c.bracket_growth],
        "flags": dict(c.flags),
        "stabilized": c.stabilized,
        "truncated": c.truncated,
    }


def classification_from_json(d: dict) -> ClassificationReport:
    return ClassificationReport(
        y=unrat(d["y"]),
        finite_local_count_at_order={int(k): v for k, v in d["finite_local_count_at_order"].items()},
        exact_points_found=d["exact_points_found"],
        bracket_growth=[tuple(g) for g in d["bracket_growth"]],
        flags=dict(d["flags"]),
        stabilized=d["stabilized"],
        truncated=d["truncated"],
    )


def _cell(v) -> str:
    if isinstance(v, list):
        return "[" + ",".join(map(str, v)) + "]"
    if isinstance(v, bool):
        return "true" if v else "false"
    return "" if v is None else str(v)


def to_csv(rows: Iterable[dict], columns: Iterable[str]) -> str:
    buf = io.StringIO()
    columns = list(columns)
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(c)) for c in columns])
    return buf.getvalue()


def humps_to_csv(humps: Iterable[Hump]) -> str:
    return to_csv((hump_to_json(h) for h in humps), HUMP_COLUMNS)


def brackets_to_csv(r: LevelSetReport) -> str:
    rows = [{"kind": "exact", "lo": rat(x), "hi": rat(x), "depth": r.depth} for x in r.exact_points]
    rows += [{"kind": "bracket", "lo": rat(b.lo), "hi": rat(b.hi), "depth": r.depth}
             for b in r.brackets]
    return to_csv(rows, ("kind", "lo", "hi", "depth"))
