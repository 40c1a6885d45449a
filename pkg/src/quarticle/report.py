"""Structured reports and their JSON / CSV / text renderings.

JSON is canonical: sorted keys, two-space indent, ``schema_version`` "1".
Complex numbers serialize as ``{"re": x, "im": y}``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .discern import DiscernibilityVerdict, Witness
from .errors import DomainError
from .probability import NON_REAL_FLAG, NULL_CONDITION, Query
from .tensor import DEFAULT_TOL, MultiKet

SCHEMA_VERSION = "1"
CSV_HEADER = ["slot", "eigenvalue", "value_ij", "value_ji", "abs_diff"]
FORMATS = ("json", "csv", "text")


def default_tolerances():
    from .discern import WITNESS_THRESHOLD

    return {"evaluation": DEFAULT_TOL, "ray_compare": DEFAULT_TOL, "witness_threshold": WITNESS_THRESHOLD,
            "null_condition": NULL_CONDITION, "non_real_flag": NON_REAL_FLAG}


def complex_json(z):
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def atom_json(atom):
    return {"observable": getattr(atom.observable, "name", None) or "O", "slot": atom.slot,
            "eigenvalue": float(atom.eigenvalue)}


def query_json(q: Query):
    return {"text": str(q), "conclusion": [atom_json(a) for a in q.conclusion],
            "condition": [atom_json(a) for a in q.condition]}


def witness_json(w: Witness | None):
    if w is None:
        return None
    return {"query": query_json(w.query), "value_ij": complex_json(w.value_ij),
            "value_ji": complex_json(w.value_ji), "gap": w.gap, "evaluations": w.evaluations}


def verdict_json(v: DiscernibilityVerdict):
    return {"pair": list(v.pair), "character": v.character, "indiscernible": v.indiscernible,
            "witness": witness_json(v.witness), "search_budget_used": v.search_budget_used,
            "inconclusive_search": v.inconclusive_search}


def ket_json(k: MultiKet):
    return {"d": k.dim, "n": k.slots,
            "amplitudes": [{"labels": list(t), **complex_json(a)} for t, a in sorted(k.amplitudes.items())]}


def to_jsonable(obj):
    """Recursively convert report payloads (verdicts, kets, fractions, complex) to JSON types."""
    if isinstance(obj, DiscernibilityVerdict):
        return verdict_json(obj)
    if isinstance(obj, Witness):
        return witness_json(obj)
    if isinstance(obj, Query):
        return query_json(obj)
    if isinstance(obj, MultiKet):
        return ket_json(obj)
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, complex):
        return complex_json(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalar
        return to_jsonable(obj.item())
    return obj


@dataclass
class ReportDocument:
    command: str
    inputs: dict = field(default_factory=dict)
    verdicts: list = field(default_factory=list)
    tables: list = field(default_factory=list)
    tallies: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    status: str = "ok"
    tolerances: dict = field(default_factory=default_tolerances)
    timing: dict | None = None
    schema_version: str = SCHEMA_VERSION

    def to_dict(self):
        doc = {
            "schema_version": self.schema_version,
            "command": self.command,
            "inputs": self.inputs,
            "verdicts": self.verdicts,
            "tables": self.tables,
            "tallies": self.tallies,
            "details": self.details,
            "status": self.status,
            "tolerances": self.tolerances,
        }
        if self.timing is not None:
            doc["timing"] = self.timing
        return to_jsonable(doc)

    @classmethod
    def from_dict(cls, data):
        fields = ("command", "inputs", "verdicts", "tables", "tallies", "details", "status",
                  "tolerances", "timing", "schema_version")
        return cls(**{k: data[k] for k in fields if k in data})


def _csv(doc: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for table in doc["tables"]:
        for row in table["rows"]:
            writer.writerow([repr(row[c]) if isinstance(row[c], float) else row[c] for c in CSV_HEADER])
    return buf.getvalue()


def _fmt(x):
    if isinstance(x, dict) and set(x) == {"re", "im"}:
        if abs(x["im"]) <= NON_REAL_FLAG:
            return f"{x['re']:.12g}"
        return f"{x['re']:.12g}{x['im']:+.12g}i"
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _text(doc: dict) -> str:
    lines = [f"command: {doc['command']}   status: {doc['status']}"]
    for key, value in sorted(doc["inputs"].items()):
        lines.append(f"  {key}: {value}")
    if doc["verdicts"]:
        lines.append("verdicts:")
        for v in doc["verdicts"]:
            w = v["witness"]
            wtxt = (f"witness {w['query']['text']}: {_fmt(w['value_ij'])} vs {_fmt(w['value_ji'])}"
                    if w else ("no witness (search inconclusive)" if v["inconclusive_search"] else "no witness"))
            lines.append(f"  pair {v['pair'][0]},{v['pair'][1]}: {v['character']:<13} "
                         f"indiscernible={str(v['indiscernible']).lower():<5}  {wtxt}")
    for table in doc["tables"]:
        lines.append(f"table {table.get('name', '')} pair {table.get('pair', '')}:")
        lines.append("  " + "  ".join(f"{c:>14}" for c in CSV_HEADER))
        for row in table["rows"]:
            lines.append("  " + "  ".join(f"{_fmt(row[c]):>14}" for c in CSV_HEADER))
    if doc["tallies"]:
        lines.append("tallies:")
        for key, value in sorted(doc["tallies"].items()):
            lines.append(f"  {key}: {_fmt(value)}")
    for key, value in sorted(doc["details"].items()):
        lines.extend(_text_detail(key, value))
    return "\n".join(lines) + "\n"


def _text_detail(key, value):
    if isinstance(value, list) and value and isinstance(value[0], dict):
        cols = list(value[0].keys())
        out = [f"{key}:", "  " + "  ".join(f"{c:>12}" for c in cols)]
        for row in value:
            out.append("  " + "  ".join(f"{_fmt(row.get(c)):>12}" for c in cols))
        return out
    if isinstance(value, dict):
        out = [f"{key}:"]
        for k2, v2 in sorted(value.items()):
            out.extend("  " + line for line in _text_detail(k2, v2))
        return out
    return [f"{key}: {_fmt(value)}"]


def emit_report(doc: ReportDocument, fmt: str = "json") -> bytes:
    if fmt not in FORMATS:
        raise DomainError(f"unsupported report format {fmt!r}; choose from {', '.join(FORMATS)}")
    data = doc.to_dict()
    if fmt == "json":
        text = json.dumps(data, sort_keys=True, indent=2) + "\n"
    elif fmt == "csv":
        text = _csv(data)
    else:
        text = _text(data)
    return text.encode("utf-8")
