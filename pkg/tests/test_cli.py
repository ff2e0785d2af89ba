"""Command line interface: envelopes, records, exit codes, determinism."""

import contextlib
import io
import json
from pathlib import Path

import pytest

from hyper4.cli import DETERMINISM_NOTE, SCHEMA, main


DATA = Path(__file__).parent / "data"


def run(*argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


def run_json(*argv):
    code, out = run(*argv)
    return code, json.loads(out)


def test_envelope_shape():
    code, doc = run_json("verify", "14FF28")
    assert code == 0
    assert doc["schema"] == SCHEMA == "hyper4-census/1"
    assert doc["tool"] == {"name": "hyper4", "version": "0.1.0"}
    assert doc["command"] == ["verify", "14FF28"]
    assert doc["determinism"] == DETERMINISM_NOTE
    assert doc["errors"] == []
    assert len(doc["records"]) == 1


def test_decode_json_record():
    code, doc = run_json("decode", "14FF28")
    assert code == 0
    rec = doc["records"][0]
    arrows = {a["letter"]: a for a in rec["arrows"]}
    assert len(arrows) == 12
    assert arrows["a"]["source"] == "A" and arrows["a"]["target"] == "A'"
    assert arrows["a"]["k"] == [-1, 1, 1, 1]
    assert len(arrows["a"]["matrix"]) == 5
    assert set(rec["orientation"]) == {"preserving", "reversing"}
    assert rec["orientation"]["reversing"] == ["e", "f", "g", "h"]


def test_decode_text_golden():
    code, out = run("decode", "14FF28", "--format", "text")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "code 14FF28"
    assert lines[1] == "a: A(+1,+1,0,0) -> A'(-1,+1,0,0)  k=(-1,+1,+1,+1)"
    assert "k: K(0,0,+1,+1) -> K'(0,0,+1,-1)  k=(+1,+1,+1,-1)" in lines


def test_decode_invalid_code_exits_nonzero():
    code, doc = run_json("decode", "ZZZZZZ")
    assert code == 1
    assert doc["records"] == []
    assert "position 1" in doc["errors"][0]["message"]


def test_verify_record_values():
    _, doc = run_json("verify", "14FF28")
    rec = doc["records"][0]
    assert rec["valid"] is True
    assert rec["chi"] == 1
    assert rec["orientable"] is False
    assert rec["side_classes"] == 12
    assert rec["ridge_classes"] == 24
    assert rec["edge_classes"] == 12
    assert rec["ridge_cycles"]["all_identity"] is True
    assert rec["ridge_cycles"]["lengths"] == [4]
    assert rec["h1"] == "Z/2 + Z/2 + Z/2 + Z/2 + Z/2 + Z/2"
    assert rec["cusp_types"] == "GGGGG"
    assert rec["signature"] is None
    pairs = rec["checks"]["pairings"]
    assert [p["letter"] for p in pairs] == list("abcdefghijkl")
    assert all(
        p["congruence_two"] and p["maps_side_plane"] and p["maps_vertex_set"]
        for p in pairs
    )
    assert rec["checks"]["involution"] is True


def test_verify_orientable_cusps():
    _, doc = run_json("verify", "1428BD")
    rec = doc["records"][0]
    assert rec["valid"] is True
    assert rec["cusp_types"] == "FABAA"
    assert rec["signature"] == 0


def test_verify_double_cover_flag():
    _, doc = run_json("verify", "14FF28", "--double-cover")
    rec = doc["records"][0]
    assert rec["double_cover"]["degree"] == 2
    assert rec["double_cover"]["cusp_types"] == "AAAAA"


def test_cusps_record():
    _, doc = run_json("cusps", "14FF28")
    rec = doc["records"][0]
    assert rec["cusp_count"] == 5
    assert [c["size"] for c in rec["cusps"]] == [16, 2, 2, 2, 2]
    assert all(c["flat_type"] == "G" for c in rec["cusps"])
    assert all(c["holonomy"]["order"] == 2 for c in rec["cusps"])
    assert rec["signature"] is None


def test_cover_record():
    code, doc = run_json("cover", "14FF28", "--cyclic", "2")
    assert code == 0
    rec = doc["records"][0]
    assert rec["degree"] == 4
    assert rec["chi"] == 4
    assert rec["cusp_lift_counts"] == [2, 1, 2, 2, 2]
    assert rec["cusp_types"] == "A" * 9
    assert rec["sigma"] == 0
    assert rec["spin_status"] == "unknown"


def test_cover_classify_filling():
    code, doc = run_json("cover", "14FF28", "--cyclic", "1", "--classify-filling")
    assert code == 0
    filling = doc["records"][0]["filling"]
    assert filling["status"] == "certified"
    assert filling["verdict"]["verdict"] == "S^4"
    assert filling["simply_connected"] is True


def test_fill_default_meridians():
    code, doc = run_json("fill", "14FF28", "--meridians", "default")
    assert code == 0
    rec = doc["records"][0]
    assert rec["order"] == 2
    assert rec["h1"] == "Z/2"
    assert [m["cusp"] for m in rec["meridians"]] == [0, 1, 2, 3, 4]


def test_fill_meridian_file(tmp_path):
    path = tmp_path / "meridians.txt"
    path.write_text("0: Eg\n1: c ^ 3\n2: a\n3: k\n4: j\n")
    code, doc = run_json("fill", "14FF28", "--meridians", str(path))
    assert code == 0
    assert doc["records"][0]["order"] == 6


def test_fill_rejects_wrong_cusp(tmp_path):
    path = tmp_path / "meridians.txt"
    path.write_text("2: c\n")
    code, doc = run_json("fill", "14FF28", "--meridians", str(path))
    assert code == 1
    assert "stabilizer" in doc["errors"][0]["message"]


def test_classify_flags():
    code, doc = run_json("classify", "--chi", "26", "--sigma", "0", "--spin")
    assert code == 0
    assert doc["records"][0]["verdict"]["verdict"] == "#_12(S^2xS^2)"

    code, doc = run_json("classify", "--chi", "6", "--sigma", "3", "--spin")
    assert code == 1
    assert "impossible invariants" in doc["errors"][0]["message"]


def test_classify_unknown_spin_reports_both():
    code, doc = run_json("classify", "--chi", "4", "--sigma", "0", "--spin-unknown")
    assert code == 0
    rec = doc["records"][0]
    assert rec["verdicts"]["if_spin"]["verdict"] == "#_1(S^2xS^2)"
    assert rec["verdicts"]["if_not_spin"]["verdict"] == "#_1CP^2#_1CP^2bar"


def test_census_runs_sample():
    code, doc = run_json("census", str(DATA / "census_sample.txt"))
    assert code == 0
    assert [(r["line"], r["code"]) for r in doc["records"]] == [
        (2, "14FF28"),
        (3, "1428BD"),
    ]
    assert doc["records"][0]["annotation"] == "five nonorientable cusps"
    assert doc["records"][0]["cusp_types"] == "GGGGG"
    assert doc["records"][1]["cusp_types"] == "FABAA"


def test_census_identical_across_jobs():
    _, out1 = run("census", str(DATA / "census_sample.txt"), "--jobs", "1")
    _, out4 = run("census", str(DATA / "census_sample.txt"), "--jobs", "4")
    assert out1 == out4
    assert json.loads(out1)["command"] == ["census", str(DATA / "census_sample.txt")]


def test_census_bad_line_is_error_not_abort(tmp_path):
    path = tmp_path / "census.txt"
    path.write_text("14FF28\nZZZZZZ\n1428BD\n")
    code, doc = run_json("census", str(path))
    assert code == 1
    assert len(doc["records"]) == 2
    assert len(doc["errors"]) == 1
    assert doc["errors"][0]["line"] == 2


def test_missing_file_is_clean_error():
    code, doc = run_json("census", "no_such_file.txt")
    assert code == 1
    assert doc["records"] == []
    assert doc["errors"]
