"""End-to-end command line tests (in-process via main())."""

import json

import pytest

from ringmat.cli import main
from ringmat.io import dumps_compact, family_from_obj, load_family
from ringmat.matrix import Mat
from ringmat.ring import ring_spec


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


def write_matrix(tmp_path, name, h, rows):
    path = tmp_path / name
    obj = {"h": h, "rows": len(rows), "cols": len(rows[0]), "entries": rows}
    path.write_text(dumps_compact(obj) + "\n")
    return str(path)


# ---------------------------------------------------------------------------
# matrix commands
# ---------------------------------------------------------------------------

def test_snf_command(tmp_path, capsys):
    path = write_matrix(tmp_path, "a.json", 4, [[2, 1], [2, 2]])
    code, obj, _ = run_json(capsys, "snf", "--matrix", path)
    assert code == 0
    assert obj["omega"] == [[0, 1]]
    assert obj["diagonal"] == [1, 2]
    assert obj["inner_rank"] == 2
    assert obj["D"] == [[1, 0], [0, 2]]
    assert obj["S"] and obj["T"]


def test_snf_csv_input(tmp_path, capsys):
    path = tmp_path / "a.csv"
    path.write_text("2,1,2,2\n")
    code, obj, _ = run_json(capsys, "snf", "--matrix", str(path),
                            "--h", "4", "--rows", "2", "--cols", "2")
    assert code == 0 and obj["omega"] == [[0, 1]]
    # CSV without shape information is a usage error
    code, _, err = run(capsys, "snf", "--matrix", str(path))
    assert code == 2 and "error:" in err


def test_rank_command(tmp_path, capsys):
    path = write_matrix(tmp_path, "a.json", 6, [[2, 0], [0, 3]])
    code, obj, _ = run_json(capsys, "rank", "--matrix", path)
    assert code == 0
    assert obj["inner_rank"] == 1
    assert obj["via_components"] == 1
    assert obj["via_quotients"] == 1
    assert obj["omega"] == [[0, 1], [0, 1]]


def test_oracle_commands(tmp_path, capsys):
    path = write_matrix(tmp_path, "a.json", 4, [[2, 1], [2, 2]])
    code, obj, _ = run_json(capsys, "oracle", "omega", "--matrix", path)
    assert code == 0 and obj["omega"] == [[0, 1]]
    code, obj, _ = run_json(capsys, "oracle", "rank", "--matrix", path)
    assert code == 0 and obj["inner_rank"] == 2


# ---------------------------------------------------------------------------
# orbit commands
# ---------------------------------------------------------------------------

def test_orbits_json(capsys):
    code, obj, _ = run_json(capsys, "orbits", "--h", "6", "--m", "2", "--n", "2",
                            "--verify-product")
    assert code == 0
    assert obj["total"] == 1296
    assert obj["label_count"] == 9 == obj["expected_label_count"]
    assert obj["product_ok"] is True
    lengths = {tuple(tuple(r) for r in e["omega"]): e["length"] for e in obj["labels"]}
    assert lengths[((0, 1), (0, 1))] == 288
    assert sum(lengths.values()) == 1296


def test_orbits_csv(capsys):
    code, out, _ = run(capsys, "orbits", "--h", "6", "--m", "2", "--n", "2",
                       "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "label,length"
    assert len(lines) == 10
    assert "0 1|0 1,288" in lines


# ---------------------------------------------------------------------------
# graph commands
# ---------------------------------------------------------------------------

def test_graph_stats_certificate(capsys):
    code, obj, err = run_json(capsys, "graph-stats", "--h", "6", "--m", "2",
                              "--n", "2", "--r", "1", "--connectivity")
    assert code == 0
    assert obj["vertices"] == 1296
    assert (obj["omega"], obj["alpha"], obj["chi"]) == (36, 36, 36)
    assert obj["method"] == "certificate"
    assert obj["sandwich_tight"] is True
    assert obj["code_distance"] == 2
    assert obj["coloring_verification"] == "edges"
    assert obj["degree"] == 329
    assert obj["connected"] is True
    assert err == ""


def test_graph_stats_exact(capsys):
    code, obj, _ = run_json(capsys, "graph-stats", "--h", "2", "--m", "2",
                            "--n", "2", "--r", "1", "--exact")
    assert code == 0
    assert (obj["omega"], obj["alpha"], obj["chi"]) == (4, 4, 4)
    assert obj["method"] == "exact-search"
    assert obj["degree"] == 9


def test_seed_notice_on_stderr(capsys):
    args = ("graph-stats", "--h", "2", "--m", "2", "--n", "2", "--r", "1",
            "--transitivity-samples", "5")
    code, obj, err = run_json(capsys, *args)
    assert code == 0 and obj["transitivity_ok"] is True
    assert "using seed 0" in err
    code, obj, err = run_json(capsys, *args, "--seed", "7")
    assert code == 0 and obj["transitivity_ok"] is True
    assert err == ""


def test_byte_stability(capsys):
    args = ("graph-stats", "--h", "6", "--m", "2", "--n", "2", "--r", "1")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_oracle_search_commands(capsys):
    code, obj, _ = run_json(capsys, "oracle", "clique", "--h", "3", "--m", "2",
                            "--n", "2", "--r", "1")
    assert code == 0
    assert obj["size"] == 9
    assert obj["vertex_ids"] == sorted(obj["vertex_ids"])
    assert len(set(obj["vertex_ids"])) == 9
    code, obj, _ = run_json(capsys, "oracle", "mis", "--h", "2", "--m", "2",
                            "--n", "2", "--r", "1")
    assert code == 0 and obj["size"] == 4


def test_oracle_budget_exit(capsys):
    code, out, err = run(capsys, "oracle", "clique", "--h", "6", "--m", "2",
                         "--n", "2", "--r", "1", "--budget", "100")
    assert code == 3
    assert "budget exceeded" in err


# ---------------------------------------------------------------------------
# clique commands
# ---------------------------------------------------------------------------

def test_build_classify_verify_round_trip(tmp_path, capsys):
    fam = tmp_path / "fam.json"
    code, obj, _ = run_json(capsys, "build-clique", "--h", "6", "--m", "2",
                            "--n", "2", "--r", "1", "--alpha", "0,0",
                            "--out", str(fam))
    assert code == 0 and obj == {"written": str(fam)}
    ring, rows, cols, members, meta = load_family(str(fam))
    assert (ring.h, rows, cols, len(members)) == (6, 2, 2, 36)
    assert meta["size"] == 36 and meta["bound"] == 36

    code, obj, _ = run_json(capsys, "classify-clique", "--family", str(fam),
                            "--r", "1")
    assert code == 0
    assert obj["tag"] == "RowForm"
    assert obj["alpha"] == [0, 0]
    assert obj["T"] is None

    code, obj, _ = run_json(capsys, "verify-ekr", "--family", str(fam),
                            "--r", "1")
    assert code == 0
    assert obj["intersecting"] is True
    assert obj["within_bound"] is True
    assert obj["extremal"] is True
    assert obj["form"]["tag"] == "RowForm"


def test_build_clique_with_shift(tmp_path, capsys):
    b0 = write_matrix(tmp_path, "b0.json", 6, [[1, 2], [3, 4]])
    code, obj, _ = run_json(capsys, "build-clique", "--h", "6", "--m", "2",
                            "--n", "2", "--r", "1", "--alpha", "1,0",
                            "--B0", b0)
    assert code == 0
    assert obj["size"] == 36 and len(obj["members"]) == 36
    # the shift is a member of its own translated clique
    assert [[1, 2], [3, 4]] in obj["members"]


def test_build_clique_bad_alpha(capsys):
    code, _, err = run(capsys, "build-clique", "--h", "6", "--m", "2",
                       "--n", "2", "--r", "1", "--alpha", "0")
    assert code == 2 and "one exponent per prime component" in err


def test_verify_ekr_subfamily_and_rejection(tmp_path, capsys):
    ring = ring_spec(2)
    zero = [[0, 0], [0, 0]]
    row = [[1, 0], [0, 0]]
    sub = tmp_path / "sub.json"
    sub.write_text(json.dumps({"h": 2, "rows": 2, "cols": 2,
                               "members": [zero, row]}))
    code, obj, _ = run_json(capsys, "verify-ekr", "--family", str(sub),
                            "--r", "1")
    assert code == 0
    assert obj["intersecting"] is True and obj["extremal"] is False
    assert obj["form"] is None

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"h": 2, "rows": 2, "cols": 2,
                               "members": [zero, [[1, 0], [0, 1]]]}))
    code, obj, err = run_json(capsys, "verify-ekr", "--family", str(bad),
                              "--r", "1")
    assert code == 1
    assert obj["intersecting"] is False and "reason" in obj


def test_classify_non_clique_exit_one(tmp_path, capsys):
    members = [[[0, 0], [0, 0]], [[1, 0], [0, 0]],
               [[0, 1], [0, 0]], [[1, 1], [1, 0]]]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"h": 2, "rows": 2, "cols": 2, "members": members}))
    code, _, err = run(capsys, "classify-clique", "--family", str(bad), "--r", "1")
    assert code == 1 and "verification failed" in err


def test_family_modulus_mismatch(tmp_path, capsys):
    fam = tmp_path / "fam.json"
    fam.write_text(json.dumps({"h": 6, "rows": 2, "cols": 2,
                               "members": [[[0, 0], [0, 0]]]}))
    code, _, err = run(capsys, "verify-ekr", "--family", str(fam),
                       "--r", "1", "--h", "12")
    assert code == 2 and "does not match" in err


# ---------------------------------------------------------------------------
# code commands
# ---------------------------------------------------------------------------

def test_build_mrd_and_verify_code(tmp_path, capsys):
    out = tmp_path / "code.json"
    code, obj, _ = run_json(capsys, "build-mrd", "--h", "6", "--m", "2",
                            "--n", "2", "--r", "1", "--out", str(out))
    assert code == 0 and obj == {"written": str(out)}
    saved = json.loads(out.read_text())
    assert saved["size"] == 36
    assert saved["claimed_min_distance"] == 2
    assert saved["verified_min_distance"] == 2
    assert saved["bound"] == 36

    code, obj, _ = run_json(capsys, "verify-code", "--family", str(out),
                            "--d", "2")
    assert code == 0
    assert obj["meets"] is True and obj["exact"] is True
    assert obj["computed_min_distance"] == 2

    code, obj, _ = run_json(capsys, "verify-code", "--family", str(out),
                            "--d", "3")
    assert code == 1
    assert obj["meets"] is False


def test_color_and_cover(tmp_path, capsys):
    code, obj, err = run_json(capsys, "color", "--h", "6", "--m", "2",
                              "--n", "2", "--r", "1")
    assert code == 0
    assert obj["n_colors"] == 36
    assert obj["verification"] == "edges"
    assert err == ""  # graph fits the budget: no sampling, no seed notice

    code, obj, _ = run_json(capsys, "cover-complement", "--h", "6", "--m", "2",
                            "--n", "2", "--r", "1")
    assert code == 0
    assert obj["parts"] == 36 and obj["part_sizes"] == [36]
    assert obj["partition"] is True

    out = tmp_path / "cover.json"
    code, obj, _ = run_json(capsys, "color", "--h", "6", "--m", "2", "--n", "2",
                            "--r", "1", "--complement", "--out", str(out))
    assert code == 0 and obj["written"] == str(out)
    saved = json.loads(out.read_text())
    assert len(saved["families"]) == 36
    seen = {tuple(tuple(r) for r in mat) for fam in saved["families"] for mat in fam}
    assert len(seen) == 1296


def test_color_structural_when_large(capsys):
    code, obj, err = run_json(capsys, "color", "--h", "12", "--m", "2",
                              "--n", "2", "--r", "1", "--seed", "3",
                              "--samples", "50")
    assert code == 0
    assert obj["n_colors"] == 144
    assert obj["verification"] == "structural"
    assert err == ""


# ---------------------------------------------------------------------------
# plumbing
# ---------------------------------------------------------------------------

def test_threads_validation(capsys):
    code, _, err = run(capsys, "orbits", "--h", "4", "--m", "1", "--n", "1",
                       "--threads", "0")
    assert code == 2 and "--threads" in err


def test_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("RINGMAT_THREADS", "junk")
    code, _, err = run(capsys, "orbits", "--h", "4", "--m", "1", "--n", "1")
    assert code == 2
    monkeypatch.setenv("RINGMAT_THREADS", "2")
    code, _, _ = run(capsys, "orbits", "--h", "4", "--m", "1", "--n", "1")
    assert code == 0


def test_argparse_usage_exit(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["graph-stats", "--h", "2"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_missing_file_exit(capsys):
    code, _, err = run(capsys, "snf", "--matrix", "/nonexistent/x.json")
    assert code == 2 and "error:" in err


def test_selftest_subset(capsys):
    code, out, _ = run(capsys, "selftest", "--level", "quick", "--only", "3")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 1
    assert lines[0].startswith("PASS check 3: orbit-product-law")
