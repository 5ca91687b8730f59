"""CLI: parsing, exit codes, canonical reports, determinism, search."""

import json
from pathlib import Path

import pytest

from hyparr.arrangement import build, from_graph
from hyparr.cli import main, parse_input
from hyparr.errors import InputError
from hyparr.graphs import make_graph
from hyparr.report import canonical_json_bytes, canonical_json_line

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return str(p)


# ---------------------------------------------------------------- parsing


def test_parse_twogen6_fixture():
    arr = parse_input(str(FIXTURES / "twogen6.arr"))
    assert arr.ambient_dim == 4
    assert arr.normals == (
        (1, 0, 0, 0),
        (0, 1, 0, 0),
        (0, 0, 1, 0),
        (0, 0, 0, 1),
        (1, 1, 1, 1),
        (1, -1, -1, 1),
    )


def test_parse_theta_fixture():
    arr = parse_input(str(FIXTURES / "theta6.graph"))
    assert arr.source_graph is not None
    assert arr.n == 7
    # edges re-sorted lexicographically
    assert arr.source_graph.edges == (
        (0, 1), (0, 5), (1, 2), (1, 4), (2, 3), (3, 4), (4, 5),
    )


def test_parse_loop_error(tmp_path):
    path = write(tmp_path, "bad.graph", "graph 3\n1 1\n")
    with pytest.raises(InputError, match="loop"):
        parse_input(path)


def test_parse_error_names_line(tmp_path):
    path = write(tmp_path, "bad.arr", "arrangement 2\n1 0\n# comment\n\n2 0\n")
    with pytest.raises(InputError, match="lines 2 and 5"):
        parse_input(path)


def test_parse_zero_normal_line(tmp_path):
    path = write(tmp_path, "zero.arr", "arrangement 2\n1 1\n0 0\n")
    with pytest.raises(InputError, match="line 3"):
        parse_input(path)


def test_parse_wrong_width(tmp_path):
    path = write(tmp_path, "w.arr", "arrangement 3\n1 0\n")
    with pytest.raises(InputError, match="expected 3 integers"):
        parse_input(path)


def test_parse_format_override_mismatch(tmp_path):
    path = write(tmp_path, "g.graph", "graph 3\n1 2\n")
    with pytest.raises(InputError, match="--format"):
        parse_input(path, fmt="arr")


def test_parse_missing_file():
    with pytest.raises(InputError, match="cannot read"):
        parse_input("/nonexistent/file.arr")


# ---------------------------------------------------------------- analyze


def test_analyze_theta_exit0(tmp_path, capsys):
    out = tmp_path / "theta.json"
    code = main(["analyze", "--input", str(FIXTURES / "theta6.graph"),
                 "--json", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["classification"]["p"] == 2
    assert doc["classification"]["rank"] == 5
    assert doc["homotopy"]["gr1_invariant_factors"] == []
    assert doc["homotopy"]["gr1_rank"] == 6
    text = capsys.readouterr().out
    assert "p=2" in text


def test_analyze_k3_exit2(tmp_path):
    out = tmp_path / "k3.json"
    code = main(["analyze", "--input", str(FIXTURES / "k3.graph"),
                 "--json", str(out)])
    assert code == 2
    doc = json.loads(out.read_text())
    assert doc["classification"]["supersolvable"] is True
    assert "homotopy" not in doc


def test_analyze_d4_exit2(tmp_path):
    out = tmp_path / "d4.json"
    code = main(["analyze", "--input", str(FIXTURES / "d4.arr"),
                 "--json", str(out)])
    assert code == 2
    doc = json.loads(out.read_text())
    assert doc["classification"]["hypersolvable"] is False
    assert "homotopy" not in doc


def test_analyze_missing_input_exit1(capsys):
    assert main(["analyze", "--input", "/no/such/file"]) == 1
    assert "error:" in capsys.readouterr().err


def test_analyze_deterministic(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    for out in (a, b):
        code = main(["analyze", "--input", str(FIXTURES / "twogen6.arr"),
                     "--json", str(out)])
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_report_roundtrip_echo(tmp_path):
    out = tmp_path / "r.json"
    main(["analyze", "--input", str(FIXTURES / "twogen7.arr"), "--json", str(out)])
    doc = json.loads(out.read_text())
    echo = doc["input"]
    rebuilt = build(echo["ambient_dim"], echo["normals"])
    original = parse_input(str(FIXTURES / "twogen7.arr"))
    assert rebuilt.normals == original.normals

    out2 = tmp_path / "g.json"
    main(["analyze", "--input", str(FIXTURES / "theta6.graph"), "--json", str(out2)])
    doc2 = json.loads(out2.read_text())
    echo2 = doc2["input"]
    g = make_graph(echo2["vertices"], [(u - 1, v - 1) for u, v in echo2["edges"]])
    assert from_graph(g).normals == parse_input(str(FIXTURES / "theta6.graph")).normals


def test_analyze_fields_flag(tmp_path):
    out = tmp_path / "f.json"
    code = main(["analyze", "--input", str(FIXTURES / "twogen6.arr"),
                 "--fields", "0,7", "--json", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["r_table"]["characteristics"] == [0, 7]


def test_analyze_bad_fields(capsys):
    code = main(["analyze", "--input", str(FIXTURES / "twogen6.arr"),
                 "--fields", "0,6"])
    assert code == 1


# ---------------------------------------------------------------- circuits


def test_circuits_command(capsys):
    code = main(["circuits", "--input", str(FIXTURES / "k3.graph")])
    assert code == 0
    out = capsys.readouterr().out
    assert "3: 0 1 2" in out


def test_circuits_chordless_size(capsys):
    code = main(["circuits", "--input", str(FIXTURES / "twogen6.arr"),
                 "--chordless", "--size", "5"])
    assert code == 0
    lines = [l for l in capsys.readouterr().out.splitlines() if l]
    assert len(lines) == 2
    assert lines[0].startswith("5: 0 1 2 3 4")
    assert lines[1].startswith("5: 0 1 2 3 5")


# ------------------------------------------------------------------ search


def test_search_graphic_small(tmp_path):
    out = tmp_path / "s.jsonl"
    code = main(["search", "--family", "graphic", "--max-size", "5",
                 "--output", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines, "some qualifying graph with <= 5 vertices must exist"
    for line in lines:
        doc = json.loads(line)
        assert doc["qualifies"] is True
        te = doc["torsion_equivalences"]
        assert te["gr1_torsion_free"] is te["a_plus_free_p2"] is te["ind_free_p2"]
        assert doc["torsion_found"] is False


def test_search_contains_theta_matching_analyze(tmp_path):
    out = tmp_path / "s6.jsonl"
    code = main(["search", "--family", "graphic", "--max-size", "6",
                 "--output", str(out)])
    assert code == 0
    theta = parse_input(str(FIXTURES / "theta6.graph"))
    want_edges = [[u + 1, v + 1] for u, v in theta.source_graph.edges]
    hits = []
    for line in out.read_text().splitlines():
        doc = json.loads(line)
        if doc.get("vertices") == 6 and sorted(map(tuple, doc["edges"])) == sorted(
            map(tuple, want_edges)
        ):
            hits.append(doc)
    # the theta graph itself is enumerated with these exact labels (it is
    # already canonical up to relabeling; match on invariants instead)
    assert any(
        d["classification"]["p"] == 2
        and d["classification"]["rank"] == 5
        and d["gr1_rank"] == 6
        for d in map(json.loads, out.read_text().splitlines())
    )


def test_search_seeded_determinism(tmp_path):
    a = tmp_path / "a.jsonl"
    b = tmp_path / "b.jsonl"
    for out in (a, b):
        code = main(["search", "--family", "random2g", "--max-size", "8",
                     "--seed", "11", "--count", "5", "--output", str(out)])
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    for line in a.read_text().splitlines():
        doc = json.loads(line)
        cls = doc["classification"]
        assert cls["two_generic"] is True
        assert doc["qualifies"] is True
        # dependent 2-generic arrangements sit at p = c - 2
        assert cls["p"] == cls["c"] - 2


def test_search_prefix_consistent(tmp_path):
    small = tmp_path / "g4.jsonl"
    big = tmp_path / "g5.jsonl"
    assert main(["search", "--family", "graphic", "--max-size", "4",
                 "--output", str(small)]) == 0
    assert main(["search", "--family", "graphic", "--max-size", "5",
                 "--output", str(big)]) == 0
    assert big.read_text().startswith(small.read_text())

    r4 = tmp_path / "r4.jsonl"
    r8 = tmp_path / "r8.jsonl"
    assert main(["search", "--family", "random2g", "--max-size", "8",
                 "--seed", "3", "--count", "3", "--output", str(r4)]) == 0
    assert main(["search", "--family", "random2g", "--max-size", "8",
                 "--seed", "3", "--count", "6", "--output", str(r8)]) == 0
    assert r8.read_text().startswith(r4.read_text())


def test_search_bounds(capsys, tmp_path):
    assert main(["search", "--family", "graphic", "--max-size", "9",
                 "--output", str(tmp_path / "x.jsonl")]) == 1
    assert main(["search", "--family", "random2g", "--max-size", "13",
                 "--output", str(tmp_path / "y.jsonl")]) == 1


# ------------------------------------------------------------- serializer


def test_canonical_json_bigint_and_sorting():
    doc = {"b": 2**60, "a": [True, None, "x"], "c": {"z": 1, "y": -(2**54)}}
    data = canonical_json_bytes(doc).decode()
    assert data.index('"a"') < data.index('"b"') < data.index('"c"')
    assert f'"{2**60}"' in data
    assert f'"{-(2**54)}"' in data
    assert data.endswith("\n") and "\r" not in data
    line = canonical_json_line(doc)
    assert "\n" not in line
    parsed = json.loads(line)
    assert parsed["b"] == str(2**60)


def test_canonical_json_rejects_floats():
    from hyparr.errors import InternalInvariantViolation

    with pytest.raises(InternalInvariantViolation):
        canonical_json_bytes({"x": 1.5})


def test_analyze_json_to_stdout(capsys):
    code = main(["analyze", "--input", str(FIXTURES / "k3.graph"), "--json", "-"])
    assert code == 2
    out = capsys.readouterr().out
    doc = json.loads(out)
    assert doc["classification"]["supersolvable"] is True


def test_analyze_unwritable_json_exit1(capsys):
    code = main(["analyze", "--input", str(FIXTURES / "k3.graph"),
                 "--json", "/nonexistent-dir/x.json"])
    assert code == 1
    assert "error:" in capsys.readouterr().err


def test_internal_violation_exit3(monkeypatch, capsys):
    # main() builds its parser after the patch, so the stub is picked up
    import hyparr.cli as cli
    from hyparr.errors import InternalInvariantViolation

    def boom(args):
        raise InternalInvariantViolation("simulated theorem failure")

    monkeypatch.setattr(cli, "cmd_analyze", boom)
    assert cli.main(["analyze", "--input", str(FIXTURES / "k3.graph")]) == 3
    assert "INTERNAL INVARIANT VIOLATION" in capsys.readouterr().err


def test_torsion_found_line_dumps_matrix(monkeypatch):
    # no known input produces torsion, so exercise the reporting path by
    # stubbing the gr1 computation
    import hyparr.cli as cli
    from hyparr.intlinalg import AbelianInvariants

    arr = parse_input(str(FIXTURES / "theta6.graph"))
    monkeypatch.setattr(
        cli, "gr1_invariants", lambda a: AbelianInvariants(5, (2, 4))
    )
    line = cli._instance_line("test-key", arr, {"vertices": 6})
    assert line["torsion_found"] is True
    assert line["gr1_invariant_factors"] == [2, 4]
    assert line["mu_matrix"] == cli.mu_presentation(arr).matrix
    payload = canonical_json_line(line)
    assert '"torsion_found": true' in payload
