"""JSON and CSV serialization for matrices, families, and rank-distance codes.

File formats
------------

Single matrix (JSON)::

    {"h": 6, "rows": 2, "cols": 2, "entries": [[1, 2], [3, 4]]}

Family of matrices (JSON) — used for cliques and codes::

    {"h": 6, "rows": 2, "cols": 2, "members": [[[1, 2], [3, 4]], ...]}

Code files add top-level metadata next to ``members``::

    {..., "size": 36, "claimed_min_distance": 2,
     "verified_min_distance": 2, "linear": true, "basis": [...]}

``verified_min_distance`` is ``null`` when unknown or infinite (singleton
code).  CSV files carry one matrix per line, entries row-major, comma
separated; shape and modulus must then be supplied out of band.
"""

from __future__ import annotations

import json
import math
from typing import Any, Iterable, Sequence

from .errors import UsageError
from .matrix import Mat
from .ring import RingSpec, ring_spec


def dumps_compact(obj: Any, indent: int = 0) -> str:
    """Deterministic JSON: sorted keys, scalar lists kept on one line."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f"{inner}{json.dumps(str(k))}: {dumps_compact(v, indent + 1)}"
            for k, v in sorted(obj.items())
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(not isinstance(x, (list, tuple, dict)) for x in seq):
            return json.dumps(seq)
        items = [f"{inner}{dumps_compact(x, indent + 1)}" for x in seq]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(obj)


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise UsageError(message)


def _as_int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise UsageError(f"{what} must be an integer, got {value!r}")
    return value


def _entries_from_rows(ring: RingSpec, rows: int, cols: int, obj: Any,
                       what: str) -> tuple[int, ...]:
    _require(isinstance(obj, (list, tuple)) and len(obj) == rows,
             f"{what} must be a list of {rows} rows")
    flat: list[int] = []
    for row in obj:
        _require(isinstance(row, (list, tuple)) and len(row) == cols,
                 f"each row of {what} must have {cols} entries")
        for e in row:
            v = _as_int(e, f"entry of {what}")
            _require(0 <= v < ring.h,
                     f"entry {v} of {what} out of range for modulus {ring.h}")
            flat.append(v)
    return tuple(flat)


# ---------------------------------------------------------------------------
# single matrix
# ---------------------------------------------------------------------------

def matrix_to_obj(mat: Mat) -> dict[str, Any]:
    return {
        "h": mat.ring.h,
        "rows": mat.rows,
        "cols": mat.cols,
        "entries": [list(mat.row(i)) for i in range(mat.rows)],
    }


def matrix_from_obj(obj: Any, expect_h: int | None = None) -> Mat:
    _require(isinstance(obj, dict), "matrix object must be a JSON object")
    for key in ("h", "rows", "cols", "entries"):
        _require(key in obj, f"matrix object missing key {key!r}")
    h = _as_int(obj["h"], "h")
    if expect_h is not None:
        _require(h == expect_h,
                 f"matrix modulus {h} does not match requested modulus {expect_h}")
    ring = ring_spec(h)
    rows = _as_int(obj["rows"], "rows")
    cols = _as_int(obj["cols"], "cols")
    _require(rows >= 1 and cols >= 1, "rows and cols must be positive")
    entries = _entries_from_rows(ring, rows, cols, obj["entries"], "entries")
    return Mat(ring, rows, cols, entries)


def save_matrix(path: str, mat: Mat) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_compact(matrix_to_obj(mat)) + "\n")


def load_matrix(path: str, expect_h: int | None = None) -> Mat:
    return matrix_from_obj(_load_json(path), expect_h=expect_h)


def _load_json(path: str) -> Any:
    try:
        if path == "-":
            import sys

            return json.load(sys.stdin)
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


# ---------------------------------------------------------------------------
# CSV matrices (one matrix per line, row-major)
# ---------------------------------------------------------------------------

def matrix_from_csv_line(ring: RingSpec, rows: int, cols: int, line: str) -> Mat:
    parts = [p.strip() for p in line.strip().split(",") if p.strip() != ""]
    _require(len(parts) == rows * cols,
             f"CSV line has {len(parts)} entries, expected {rows * cols}")
    entries = []
    for p in parts:
        try:
            v = int(p)
        except ValueError as exc:
            raise UsageError(f"CSV entry {p!r} is not an integer") from exc
        _require(0 <= v < ring.h,
                 f"CSV entry {v} out of range for modulus {ring.h}")
        entries.append(v)
    return Mat(ring, rows, cols, tuple(entries))


def matrix_to_csv_line(mat: Mat) -> str:
    return ",".join(str(e) for e in mat.entries)


def load_matrices_csv(path: str, h: int, rows: int, cols: int) -> list[Mat]:
    ring = ring_spec(h)
    out: list[Mat] = []
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                if line.strip() == "" or line.lstrip().startswith("#"):
                    continue
                out.append(matrix_from_csv_line(ring, rows, cols, line))
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    return out


# ---------------------------------------------------------------------------
# families and codes
# ---------------------------------------------------------------------------

def family_to_obj(ring: RingSpec, rows: int, cols: int,
                  members: Iterable[Mat],
                  extra: dict[str, Any] | None = None) -> dict[str, Any]:
    ordered = sorted(members, key=lambda m: m.entries)
    obj: dict[str, Any] = {
        "h": ring.h,
        "rows": rows,
        "cols": cols,
        "members": [[list(m.row(i)) for i in range(rows)] for m in ordered],
    }
    if extra:
        for key, value in extra.items():
            obj[key] = value
    return obj


def family_from_obj(obj: Any, expect_h: int | None = None
                    ) -> tuple[RingSpec, int, int, list[Mat], dict[str, Any]]:
    _require(isinstance(obj, dict), "family object must be a JSON object")
    for key in ("h", "rows", "cols", "members"):
        _require(key in obj, f"family object missing key {key!r}")
    h = _as_int(obj["h"], "h")
    if expect_h is not None:
        _require(h == expect_h,
                 f"family modulus {h} does not match requested modulus {expect_h}")
    ring = ring_spec(h)
    rows = _as_int(obj["rows"], "rows")
    cols = _as_int(obj["cols"], "cols")
    _require(rows >= 1 and cols >= 1, "rows and cols must be positive")
    raw = obj["members"]
    _require(isinstance(raw, list) and raw, "members must be a non-empty list")
    members = [Mat(ring, rows, cols,
                   _entries_from_rows(ring, rows, cols, item, "member"))
               for item in raw]
    meta = {k: v for k, v in obj.items()
            if k not in ("h", "rows", "cols", "members")}
    return ring, rows, cols, members, meta


def save_family(path: str, ring: RingSpec, rows: int, cols: int,
                members: Iterable[Mat],
                extra: dict[str, Any] | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_compact(family_to_obj(ring, rows, cols, members, extra)) + "\n")


def load_family(path: str, expect_h: int | None = None
                ) -> tuple[RingSpec, int, int, list[Mat], dict[str, Any]]:
    return family_from_obj(_load_json(path), expect_h=expect_h)


def distance_value(d: float | int | None) -> int | None:
    """JSON-safe minimum distance: ``None`` for unknown or infinite."""
    if d is None:
        return None
    if isinstance(d, float) and math.isinf(d):
        return None
    return int(d)


def code_to_obj(code, verified: float | int | None = None) -> dict[str, Any]:
    """Serialize a rank-distance code as a family object with metadata.

    ``verified`` is the exhaustively computed minimum distance, if the
    caller has one; it is stored as ``verified_min_distance`` (``null``
    when absent or infinite).
    """
    extra: dict[str, Any] = {
        "size": code.size,
        "claimed_min_distance": code.claimed_min_distance,
        "verified_min_distance": distance_value(verified),
        "linear": code.linear,
    }
    if code.basis is not None:
        extra["basis"] = [[list(b.row(i)) for i in range(b.rows)]
                          for b in code.basis]
    return family_to_obj(code.ring, code.rows, code.cols, code.members, extra)
