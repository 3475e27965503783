"""Canonical JSON forms of divisor classes, weightings and reports."""
from __future__ import annotations

import json
from fractions import Fraction

from .certificate import CertificateReport, EdgeWeighting
from .divisor import DivisorClass, Partition
from .errors import DomainError


def rational(x) -> str:
    """Reduced ``p/q`` (or ``p`` for integers)."""
    return str(Fraction(x))


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"malformed rational {text!r}") from None


def divisor_to_obj(D: DivisorClass) -> dict:
    return {
        "n": D.n,
        "psi": [rational(a) for a in D.psi],
        "boundary": [
            {"side": list(p.side), "coeff": rational(c)}
            for p, c in sorted(D.boundary.items(), key=lambda kv: kv[0].sort_key())
        ],
    }


def divisor_from_obj(obj: dict) -> DivisorClass:
    n = int(obj["n"])
    boundary = {}
    for entry in obj["boundary"]:
        p = Partition.from_block(n, entry["side"])
        if p in boundary:
            raise DomainError(f"partition {list(p.side)} listed twice")
        boundary[p] = parse_rational(entry["coeff"])
    return DivisorClass(n, tuple(parse_rational(a) for a in obj["psi"]), boundary)


def weighting_to_obj(w: EdgeWeighting) -> dict:
    return {
        "n": w.n,
        "edges": [{"i": i, "j": j, "w": rational(v)} for (i, j), v in w.weights.items()],
    }


def weighting_from_obj(obj: dict) -> EdgeWeighting:
    edges = {}
    for e in obj["edges"]:
        i, j = int(e["i"]), int(e["j"])
        if i >= j:
            raise DomainError(f"edge ({i}, {j}) must satisfy i < j")
        edges[i, j] = parse_rational(e["w"])
    return EdgeWeighting(int(obj["n"]), edges)


def report_to_obj(report: CertificateReport) -> dict:
    return {
        "vertex_residuals": [rational(x) for x in report.vertex_residuals],
        "min_slack": rational(report.min_slack),
        "argmin": list(report.argmin.side) if report.argmin else None,
        "failing": [{"side": list(p.side), "slack": rational(s)} for p, s in report.failing],
        "verdict": report.verdict,
    }


def emit_json(value) -> str:
    """Compact, deterministic JSON text for any of the JSON-bearing types."""
    if isinstance(value, DivisorClass):
        value = divisor_to_obj(value)
    elif isinstance(value, EdgeWeighting):
        value = weighting_to_obj(value)
    elif isinstance(value, CertificateReport):
        value = report_to_obj(value)
    return json.dumps(value, separators=(",", ":"), ensure_ascii=False)
