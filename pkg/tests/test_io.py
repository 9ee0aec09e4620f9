"""Serialization round trips and input validation."""

import json
import math

import pytest

from ringmat.codes import mrd_code
from ringmat.errors import UsageError
from ringmat.graph import GraphSpec
from ringmat.io import (
    code_to_obj,
    distance_value,
    dumps_compact,
    family_from_obj,
    family_to_obj,
    load_family,
    load_matrices_csv,
    load_matrix,
    matrix_from_csv_line,
    matrix_from_obj,
    matrix_to_csv_line,
    matrix_to_obj,
    save_family,
    save_matrix,
)
from ringmat.matrix import Mat
from ringmat.ring import ring_spec


def test_matrix_file_round_trip(tmp_path):
    ring = ring_spec(12)
    a = Mat.from_rows(ring, [[1, 2, 3], [4, 5, 6]])
    path = tmp_path / "a.json"
    save_matrix(str(path), a)
    assert load_matrix(str(path)) == a
    assert load_matrix(str(path), expect_h=12) == a
    with pytest.raises(UsageError):
        load_matrix(str(path), expect_h=6)


def test_matrix_obj_validation():
    good = {"h": 6, "rows": 2, "cols": 2, "entries": [[1, 2], [3, 4]]}
    assert matrix_from_obj(good).entries == (1, 2, 3, 4)
    for broken in (
        {**good, "entries": [[1, 2]]},             # wrong row count
        {**good, "entries": [[1, 2], [3]]},        # ragged
        {**good, "entries": [[1, 2], [3, 6]]},     # out of range
        {**good, "entries": [[1, 2], [3, 4.5]]},   # not an integer
        {**good, "rows": "2"},                     # non-int dimension
        {"h": 6, "rows": 2, "cols": 2},            # missing entries
        [1, 2, 3],                                 # not an object
    ):
        with pytest.raises(UsageError):
            matrix_from_obj(broken)


def test_matrix_csv_round_trip(tmp_path):
    ring = ring_spec(6)
    a = Mat.from_rows(ring, [[1, 2], [3, 4]])
    line = matrix_to_csv_line(a)
    assert line == "1,2,3,4"
    assert matrix_from_csv_line(ring, 2, 2, line) == a
    path = tmp_path / "mats.csv"
    path.write_text("# comment\n1,2,3,4\n\n5,0,1,2\n")
    mats = load_matrices_csv(str(path), 6, 2, 2)
    assert len(mats) == 2 and mats[0] == a
    with pytest.raises(UsageError):
        matrix_from_csv_line(ring, 2, 2, "1,2,3")
    with pytest.raises(UsageError):
        matrix_from_csv_line(ring, 2, 2, "1,2,3,9")
    with pytest.raises(UsageError):
        matrix_from_csv_line(ring, 2, 2, "1,2,3,x")


def test_family_round_trip(tmp_path):
    ring = ring_spec(6)
    members = [Mat.from_rows(ring, [[1, 2], [3, 4]]), Mat.zeros(ring, 2, 2)]
    path = tmp_path / "fam.json"
    save_family(str(path), ring, 2, 2, members, {"note": 7})
    ring2, rows, cols, loaded, meta = load_family(str(path))
    assert (ring2.h, rows, cols) == (6, 2, 2)
    assert set(loaded) == set(members)
    assert meta == {"note": 7}
    # members are serialized sorted for stable bytes
    obj = family_to_obj(ring, 2, 2, members)
    assert obj["members"][0] == [[0, 0], [0, 0]]


def test_family_validation():
    with pytest.raises(UsageError):
        family_from_obj({"h": 6, "rows": 2, "cols": 2, "members": []})
    with pytest.raises(UsageError):
        family_from_obj({"h": 6, "rows": 2, "cols": 2})
    with pytest.raises(UsageError):
        family_from_obj(
            {"h": 6, "rows": 2, "cols": 2, "members": [[[9, 0], [0, 0]]]}
        )


def test_load_rejects_bad_files(tmp_path):
    missing = tmp_path / "nope.json"
    with pytest.raises(UsageError):
        load_matrix(str(missing))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(UsageError):
        load_matrix(str(bad))


def test_code_to_obj_metadata():
    spec = GraphSpec(ring_spec(4), 2, 2, 1)
    code = mrd_code(spec)
    obj = code_to_obj(code, 2)
    assert obj["size"] == 16
    assert obj["claimed_min_distance"] == 2
    assert obj["verified_min_distance"] == 2
    assert obj["linear"] is True
    assert len(obj["members"]) == 16
    assert obj["basis"]
    # loadable as a plain family
    ring, rows, cols, members, meta = family_from_obj(obj)
    assert len(members) == 16 and meta["size"] == 16


def test_distance_value():
    assert distance_value(3) == 3
    assert distance_value(3.0) == 3
    assert distance_value(math.inf) is None
    assert distance_value(None) is None


def test_dumps_compact_shape():
    obj = {"b": [[1, 2], [3, 4]], "a": 1, "c": {"x": [1, 2, 3]}, "d": []}
    text = dumps_compact(obj)
    assert json.loads(text) == obj
    lines = text.splitlines()
    assert lines[1].strip() == '"a": 1,'  # keys sorted
    assert "[1, 2]" in text              # scalar rows inline
    assert dumps_compact(obj) == text    # deterministic
