"""Persistence: JSONL solution records, report JSON, and CSV tables.

Solutions are stored one JSON object per line so runs can stream and resume.
Every float is written with 17 significant digits, which round-trips IEEE
doubles bit-exactly; the serializer is hand-rolled so the encoding is
deterministic across platforms.

Base record:

    {"N":12,"ell":6,"kind":"regular","roots":[[re,im],...],"residual":x}

Singular solutions add ``"c":[re,im]`` (the deformation constant of the
exact pair).  Labeling appends Bethe quantum numbers as doubled integers
(``null`` for the exact-pair members, whose combined number is stored in
``"pair_doubled"``) together with per-root defects, and the string
decomposition (lengths, centers, doubled J sums, doubled corrected values).
Classification appends the rigged configuration in its textual form.
"""

from __future__ import annotations

import csv
import json
from typing import Any, Iterable, Iterator

from .solver import BetheSolution

__all__ = [
    "RecordError",
    "format_float",
    "dumps_record",
    "loads_record",
    "solution_record",
    "solution_from_record",
    "label_fields",
    "classification_fields",
    "report_dict",
    "write_solutions_jsonl",
    "read_solutions_jsonl",
    "iter_jsonl",
    "write_report_json",
    "write_sector_csv",
]


class RecordError(ValueError):
    """Raised for malformed persisted data, with file position context."""


def format_float(x: float) -> str:
    """17-significant-digit decimal encoding; parses back bit-exactly."""
    if x != x or x in (float("inf"), float("-inf")):
        raise RecordError(f"non-finite float {x!r} cannot be persisted")
    s = format(float(x), ".17g")
    if "." not in s and "e" not in s and "E" not in s:
        s += ".0"
    return s


def _encode(obj: Any) -> str:
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_encode(v) for v in obj) + "]"
    if isinstance(obj, dict):
        parts = []
        for k, v in obj.items():
            if not isinstance(k, str):
                raise RecordError(f"record keys must be strings, got {k!r}")
            parts.append(json.dumps(k) + ":" + _encode(v))
        return "{" + ",".join(parts) + "}"
    raise RecordError(f"cannot encode {type(obj).__name__} value {obj!r}")


def dumps_record(record: dict[str, Any]) -> str:
    """One-line JSON with deterministic 17-significant-digit floats."""
    return _encode(record)


def loads_record(line: str, *, lineno: int | None = None) -> dict[str, Any]:
    where = f" at line {lineno}" if lineno is not None else ""
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise RecordError(f"malformed JSONL record{where}: {exc.msg} "
                          f"(column {exc.colno})") from exc
    if not isinstance(obj, dict):
        raise RecordError(f"JSONL record{where} is not an object")
    return obj


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def solution_record(sol: BetheSolution, ell: int | None = None) -> dict[str, Any]:
    """Base JSONL record for one solution."""
    rec: dict[str, Any] = {
        "N": sol.N,
        "ell": len(sol.roots) if ell is None else ell,
        "kind": sol.kind,
        "roots": [_pair(z) for z in sol.roots],
        "residual": float(sol.residual),
    }
    if sol.c_constant is not None:
        rec["c"] = _pair(sol.c_constant)
    return rec


def _require(rec: dict[str, Any], key: str, lineno: int | None) -> Any:
    if key not in rec:
        where = f" at line {lineno}" if lineno is not None else ""
        raise RecordError(f"solution record{where} missing field {key!r}")
    return rec[key]


def solution_from_record(rec: dict[str, Any],
                         *, lineno: int | None = None) -> BetheSolution:
    roots_raw = _require(rec, "roots", lineno)
    try:
        roots = tuple(complex(float(p[0]), float(p[1])) for p in roots_raw)
        kind = str(_require(rec, "kind", lineno))
        c_raw = rec.get("c")
        c = complex(float(c_raw[0]), float(c_raw[1])) if c_raw is not None else None
        sol = BetheSolution(
            N=int(_require(rec, "N", lineno)),
            roots=roots,
            kind=kind,
            residual=float(_require(rec, "residual", lineno)),
            c_constant=c,
        )
    except RecordError:
        raise
    except (TypeError, ValueError, IndexError) as exc:
        where = f" at line {lineno}" if lineno is not None else ""
        raise RecordError(f"invalid solution record{where}: {exc}") from exc
    if int(_require(rec, "ell", lineno)) != len(roots):
        where = f" at line {lineno}" if lineno is not None else ""
        raise RecordError(f"solution record{where}: ell does not match root count")
    return sol


def label_fields(labeled) -> dict[str, Any]:
    """Quantum-number and string-decomposition fields for a labeled solution.

    Bethe numbers are stored as doubled integers (null for the exact-pair
    members); defects are the distances of the raw values from the rounded
    half-integers, recomputed here so the record carries the diagnostic.
    """
    from .quantum_numbers import bethe_numbers_regular, singular_string_J

    sol = labeled.solution
    if sol.kind == "regular":
        recs = bethe_numbers_regular(sol)
        doubled: list[int | None] = [r.value.doubled for r in recs]
        defects: list[float | None] = [float(r.defect) for r in recs]
        pair_doubled = None
    else:
        pair, rest = singular_string_J(sol)
        doubled = [None, None] + [r.value.doubled for r in rest]
        defects = [None, None] + [float(r.defect) for r in rest]
        pair_doubled = pair.doubled
    strings = labeled.partition.strings
    return {
        "bethe_doubled": doubled,
        "pair_doubled": pair_doubled,
        "defects": defects,
        "strings": {
            "lengths": [S.length for S in strings],
            "centers": [float(S.center) for S in strings],
            "j_sum_doubled": [v.doubled for v in labeled.string_numbers],
            "j_tilde_doubled": [None if v is None else v.doubled
                                for v in labeled.corrected],
        },
        "ambiguous_partition": labeled.partition.ambiguous,
    }


def classification_fields(classification) -> dict[str, Any]:
    return {"rc": classification.rigged.text()}


def report_dict(report, flip_problems: Iterable[str] = ()) -> dict[str, Any]:
    """Report JSON body: rigged-configuration map, verdict, offset tables."""
    from .classify import compute_M

    by_nu = report.by_configuration()
    m_tables = {}
    rc_map = []
    for nu, classes in sorted(by_nu.items(), reverse=True):
        key = ",".join(str(p) for p in nu)
        m_tables[key] = {
            f"{length},{rank}": str(v)
            for (length, rank), v in sorted(
                compute_M([c.labeled for c in classes]).items())
        }
        for c in classes:
            rc_map.append({
                "kind": c.labeled.solution.kind,
                "roots": [_pair(z) for z in c.labeled.solution.roots],
                "configuration": list(nu),
                "rc": c.rigged.text(),
            })
    flip = list(flip_problems)
    return {
        "N": report.N,
        "ell": report.ell,
        "n_solutions": len(report.classifications),
        "bijective": report.bijective,
        "problems": list(report.problems),
        "flip_problems": flip,
        "m_tables": m_tables,
        "rc_map": rc_map,
    }


def write_report_json(path: str, body: dict[str, Any]) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps_record(body) + "\n")


def write_sector_csv(path: str, report) -> int:
    """Catalogue table: one row per classified solution."""
    rows = 0
    with open(path, "w", encoding="ascii", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index", "kind", "configuration", "roots",
                         "string_centers", "j_tilde", "rc"])
        for i, c in enumerate(report.classifications, start=1):
            lab = c.labeled
            writer.writerow([
                i,
                lab.solution.kind,
                " ".join(str(p) for p in lab.configuration),
                " ".join(f"{z.real:.10g}{z.imag:+.10g}i"
                         for z in lab.solution.roots),
                " ".join(f"{S.center:.10g}" for S in lab.partition.strings),
                " ".join("-" if v is None else str(v) for v in lab.corrected),
                c.rigged.text(),
            ])
            rows += 1
    return rows


def write_solutions_jsonl(path: str, records: Iterable[dict[str, Any]]) -> int:
    n = 0
    with open(path, "w", encoding="ascii") as fh:
        for rec in records:
            fh.write(dumps_record(rec) + "\n")
            n += 1
    return n


def iter_jsonl(path: str) -> Iterator[tuple[int, dict[str, Any]]]:
    """Yield (lineno, record); raises RecordError with position on bad lines."""
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            yield lineno, loads_record(line, lineno=lineno)


def read_solutions_jsonl(path: str) -> list[tuple[BetheSolution, dict[str, Any]]]:
    """All solutions in a JSONL file, each with its full raw record."""
    out = []
    for lineno, rec in iter_jsonl(path):
        out.append((solution_from_record(rec, lineno=lineno), rec))
    return out
