"""Text, CSV and JSON rendering of rank reports and comparisons."""

from __future__ import annotations

import csv
import io
import json
from decimal import ROUND_DOWN, Decimal
from fractions import Fraction
from typing import Any

from semrank.compare import ComparisonReport
from semrank.relation_ranker import RankReport

DEFAULT_PLACES = 5
FORMATS = ("table", "csv", "json")


def format_score(value: Fraction | float, places: int = DEFAULT_PLACES) -> str:
    """Fixed-point text for a score.

    Rationals are truncated, never rounded up, so a score just below the
    next relevance class cannot print as that class (2.99999..., not 3.0).
    Floats from the eigen solver are rounded.
    """
    quantum = Decimal(1).scaleb(-places)
    if isinstance(value, Fraction):
        exact = Decimal(value.numerator) / Decimal(value.denominator)
        return str(exact.quantize(quantum, rounding=ROUND_DOWN))
    return f"{value:.{places}f}"


def exact(value: Fraction | float) -> str:
    """Full-precision text: ``num/den`` for rationals, repr for floats."""
    if isinstance(value, Fraction):
        return str(value)
    return repr(float(value))


def _to_float(value: Fraction | float) -> float:
    return float(value)


def rank_rows(report: RankReport) -> list[dict[str, Any]]:
    rows = []
    for pos, e in enumerate(report.entries, 1):
        d = e.detail
        rows.append(
            {
                "rank": pos,
                "page_id": e.page_id,
                "score": e.score,
                "length": None if d is None else d.chosen_length,
                "probability": None if d is None else d.probability,
                "bonus_nodes": None if d is None else d.bonus_nodes,
                "bonus_edges": None if d is None else d.bonus_edges,
            }
        )
    return rows


def render_rank(report: RankReport, fmt: str = "table", places: int = DEFAULT_PLACES) -> str:
    rows = rank_rows(report)
    if fmt == "table":
        lines = [f"# method: {report.method}"]
        if report.eigen is not None:
            lines.append(f"# eigenvalue: {format_score(report.eigen.eigenvalue, places)}")
        lines.append(f"{'rank':>4}  {'page_id':<10}  {'score':>12}  {'class':>6}  {'P':>10}  {'base':>10}  bonuses")
        for r in rows:
            if r["length"] is None:
                cls, prob, base, bonus = "-", "-", "-", "-"
            else:
                cls = f"l={r['length']}"
                prob = format_score(r["probability"], places)
                base = format_score(r["probability"] + r["length"], places)
                bonus = (
                    f"nodes={format_score(r['bonus_nodes'], places)} "
                    f"edges={format_score(r['bonus_edges'], places)}"
                )
            lines.append(
                f"{r['rank']:>4}  {r['page_id']:<10}  {format_score(r['score'], places):>12}  "
                f"{cls:>6}  {prob:>10}  {base:>10}  {bonus}"
            )
        for group in report.ties:
            lines.append(f"# tie: {' = '.join(group)}")
        return "\n".join(lines) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["rank", "page_id", "score", "length", "probability", "bonus_nodes", "bonus_edges"])
        for r in rows:
            row = [r["rank"], r["page_id"], exact(r["score"])]
            if r["length"] is None:
                row += ["", "", "", ""]
            else:
                row += [r["length"], exact(r["probability"]), exact(r["bonus_nodes"]), exact(r["bonus_edges"])]
            writer.writerow(row)
        return buf.getvalue()
    if fmt == "json":
        return json.dumps(rank_to_dict(report), indent=2) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def rank_to_dict(report: RankReport) -> dict[str, Any]:
    out: dict[str, Any] = {"method": str(report.method), "pages": [], "ties": [list(t) for t in report.ties]}
    for r in rank_rows(report):
        entry = {"rank": r["rank"], "page_id": r["page_id"], "score": _to_float(r["score"]),
                 "score_exact": exact(r["score"])}
        if r["length"] is not None:
            entry.update(
                length=r["length"],
                probability=exact(r["probability"]),
                bonus_nodes=exact(r["bonus_nodes"]),
                bonus_edges=exact(r["bonus_edges"]),
            )
        out["pages"].append(entry)
    if report.eigen is not None:
        ev = report.eigen
        out["eigen"] = {
            "eigenvalue": ev.eigenvalue,
            "vector": list(ev.vector),
            "iterations": ev.iterations,
            "residual": ev.residual,
            "normalized_by": ev.normalized_by,
        }
    return out


def render_comparison(report: ComparisonReport, fmt: str = "table", places: int = DEFAULT_PLACES) -> str:
    methods = report.methods
    depth = max((len(r.entries) for r in report.columns.values()), default=0)
    if fmt == "table":
        cells = []
        for m in methods:
            col = [str(m)]
            if m in report.errors:
                col.append(f"ERROR {report.errors[m]}")
                col += [""] * (depth - 1)
            else:
                col += [f"PS[{e.page_id}] = {format_score(e.score, places)}" for e in report.columns[m].entries]
            cells.append(col)
        widths = [max(len(x) for x in col) for col in cells]
        lines = []
        for i in range(depth + 1):
            lines.append("  ".join(
                (col[i] if i < len(col) else "").ljust(w) for col, w in zip(cells, widths)
            ).rstrip())
        lines.append("")
        lines.append("agreement (kendall tau, top-1, top-2):")
        for a in report.agreements:
            lines.append(
                f"  {str(a.first):>8} vs {str(a.second):<8}  tau={a.kendall_tau:+.5f}  "
                f"top1={'yes' if a.top1 else 'no'}  top2={'yes' if a.top2 else 'no'}"
            )
        return "\n".join(lines) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        header = ["position"]
        for m in methods:
            header += [f"{m}_page", f"{m}_score"]
        writer.writerow(header)
        for i in range(depth):
            row: list[Any] = [i + 1]
            for m in methods:
                if m in report.errors:
                    row += ["ERROR" if i == 0 else "", report.errors[m] if i == 0 else ""]
                else:
                    e = report.columns[m].entries[i]
                    row += [e.page_id, exact(e.score)]
            writer.writerow(row)
        return buf.getvalue()
    if fmt == "json":
        doc = {
            "columns": {str(m): rank_to_dict(r) for m, r in report.columns.items()},
            "errors": {str(m): msg for m, msg in report.errors.items()},
            "agreement": [
                {"first": str(a.first), "second": str(a.second), "kendall_tau": a.kendall_tau,
                 "top1": a.top1, "top2": a.top2}
                for a in report.agreements
            ],
        }
        return json.dumps(doc, indent=2) + "\n"
    raise ValueError(f"unknown format {fmt!r}")
