"""Serialization of analysis results: JSON records and CSV artifacts."""

from __future__ import annotations

import csv
import json
from fractions import Fraction
from pathlib import Path

from .asymptotics import DecayPrediction, EnvelopePiece
from .diagnosis import WellBehavedReport
from .newton import NewtonPolygon
from .terms import MonomialTerm, TermSum

SCHEMA = "newton-decay/1"


def frac(x: Fraction) -> str:
    return str(Fraction(x))


def term_records(f: TermSum) -> list[dict]:
    return [
        {"num": t.coeff.numerator, "den": t.coeff.denominator,
         "a": t.a, "b": t.b, "abs1": t.abs1, "abs2": t.abs2}
        for t in f.terms
    ]


def terms_from_records(records) -> TermSum:
    from .terms import make_term_sum

    if isinstance(records, dict):
        records = records.get("terms", records)
    terms = [
        MonomialTerm(a=int(r["a"]), b=int(r["b"]),
                     abs1=bool(r.get("abs1", False)),
                     abs2=bool(r.get("abs2", False)),
                     coeff=Fraction(int(r["num"]), int(r.get("den", 1))))
        for r in records
    ]
    return make_term_sum(terms)


def polygon_record(p: NewtonPolygon, d: Fraction) -> dict:
    return {
        "vertices": [[v.v1, v.v2] for v in p.vertices],
        "edges": [
            {"m": frac(e.m), "support": [list(pt) for pt in e.support]}
            for e in p.compact_edges
        ],
        "d": frac(d),
        "horizontal_ray_height": p.horizontal_ray_height,
        "vertical_ray_abscissa": p.vertical_ray_abscissa,
    }


def well_behaved_record(report: WellBehavedReport) -> dict:
    return {
        "verdict": report.verdict,
        "d": frac(report.d),
        "max_order": report.max_order,
        "slope_minus_one_violation": report.slope_minus_one_violation,
        "edges": [
            {
                "m": frac(ed.edge.m),
                "zeros": [
                    {"quadrant": [z.quadrant.s1, z.quadrant.s2],
                     "interval": [frac(z.lo), frac(z.hi)],
                     "order": z.order}
                    for z in ed.zeros
                ],
            }
            for ed in report.edges
        ],
    }


def envelope_piece_records(pieces: tuple[EnvelopePiece, ...]) -> list[dict]:
    return [
        {"region": pc.region_text(),
         "alpha1": frac(pc.alpha1), "alpha2": frac(pc.alpha2),
         "log1": pc.log1, "log2": pc.log2}
        for pc in pieces
    ]


def power_log_sum_records(s) -> list[dict]:
    return [{"coeff": frac(t.coeff), "alpha": frac(t.alpha), "logpow": t.p}
            for t in s.terms]


def prediction_record(pred: DecayPrediction,
                      pieces: tuple[EnvelopePiece, ...] | None,
                      envelope_divergent: bool) -> dict:
    def pair(p):
        return None if p is None else {"eps": frac(p.epsilon), "d": p.log_power}

    rec = {
        "rho": frac(pred.rho),
        "eps1": None if pred.pair1 is None else frac(pred.pair1.epsilon),
        "d1": None if pred.pair1 is None else pred.pair1.log_power,
        "eps2": None if pred.pair2 is None else frac(pred.pair2.epsilon),
        "d2": None if pred.pair2 is None else pred.pair2.log_power,
        "divergent": pred.divergent,
        "applicable": pred.applicable,
        "reasons": list(pred.reasons),
        "combined": pair(pred.combined),
    }
    if pred.combined is not None:
        e, dd = pred.combined.epsilon, pred.combined.log_power
        logpart = f"*ln(2+|l|)^{dd}" if dd else ""
        rec["bound"] = f"C*(2+|l|)^({frac(e - 1)}){logpart}"
    else:
        rec["bound"] = None
    rec["envelope_divergent"] = envelope_divergent
    rec["envelope_pieces"] = (envelope_piece_records(pieces)
                              if pieces is not None else None)
    return rec


def analysis_report(f: TermSum, expression: str | None,
                    rhos: list[Fraction]) -> dict:
    from .asymptotics import (envelope_pieces, fourier_decay_prediction,
                              slice_expansion)
    from .diagnosis import is_well_behaved
    from .errors import DivergentError
    from .newton import build_polygon, newton_distance

    polygon = build_polygon(f)
    d = newton_distance(polygon)
    wb = is_well_behaved(f)
    table = []
    for rho in rhos:
        pred = fourier_decay_prediction(f, rho)
        try:
            pieces = envelope_pieces(polygon, rho)
            env_div = False
        except DivergentError:
            pieces, env_div = None, True
        row = prediction_record(pred, pieces, env_div)
        try:
            row["slice_expansion"] = power_log_sum_records(
                slice_expansion(polygon, rho))
        except DivergentError:
            row["slice_expansion"] = None
        table.append(row)
    return {
        "schema": SCHEMA,
        "input": {"expression": expression, "terms": term_records(f),
                  "canonical": str(f)},
        "polygon": polygon_record(polygon, d),
        "well_behaved": well_behaved_record(wb),
        "rho_table": table,
    }


def to_json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=True) + "\n"


def write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
