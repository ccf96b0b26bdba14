from __future__ import annotations

import json
import subprocess
import sys

import pytest

from treepack import MultiGraph, verify_packing
from treepack.cli import (
    EXIT_INPUT_ERROR,
    EXIT_INTERNAL_ERROR,
    EXIT_OK,
    EXIT_VERIFY_FAILED,
    GraphFileError,
    SplitMix64,
    main,
    parse_graph,
    serialize_graph,
)

from graphs import complete_graph, path_graph


K4_TEXT = "p 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n"


def _write(tmp_path, name: str, text: str) -> str:
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def _run(capsys, argv: list[str]) -> tuple[int, str, str]:
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# parsing -------------------------------------------------------------------

def test_parse_triangle():
    g = parse_graph("p 3 3\ne 1 2\ne 1 3\ne 2 3\n")
    assert g.n == 3
    assert g.edges == ((0, 1), (0, 2), (1, 2))


def test_parse_single_vertex_no_edges():
    g = parse_graph("p 1 0\n")
    assert g.n == 1 and g.m == 0


def test_parse_parallel_pair_and_comments():
    g = parse_graph("c header comment\n\np 2 2\ne 1 2\nc again\ne 1 2\n")
    assert g.edges == ((0, 1), (0, 1))


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("e 1 2\n", "before 'p'"),
        ("p 2\n", "header"),
        ("p 2 1\n", "promises 1 edges"),
        ("p 2 1\ne 1 3\n", "out of range"),
        ("p 2 1\ne 1 2\ne 2 2\n", "more than 1"),
        ("p 2 1\nq 1 2\n", "unrecognized"),
        ("p 2 x\n", "integers"),
        ("p 0 0\n", "n >= 1"),
    ],
)
def test_parse_errors_carry_context(text, fragment):
    with pytest.raises(GraphFileError) as err:
        parse_graph(text)
    assert fragment in str(err.value)


def test_parse_serialize_round_trip():
    g = MultiGraph(3, ((0, 1), (1, 1), (0, 2), (0, 1)))
    assert parse_graph(serialize_graph(g)) == g


# gen -----------------------------------------------------------------------

def test_splitmix64_reference_stream():
    # transcription check against an independent rendering of the update
    def reference(seed: int, count: int) -> list[int]:
        mask = 2**64 - 1
        out = []
        x = seed
        for _ in range(count):
            x = (x + 0x9E3779B97F4A7C15) & mask
            z = x
            z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
            z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
            out.append(z ^ (z >> 31))
        return out

    rng = SplitMix64(42)
    assert [rng.next_word() for _ in range(5)] == reference(42, 5)


def test_gen_is_reproducible_and_well_formed(tmp_path, capsys):
    code_a, out_a, _ = _run(capsys, ["gen", "4", "6", "1"])
    code_b, out_b, _ = _run(capsys, ["gen", "4", "6", "1"])
    assert code_a == code_b == EXIT_OK
    assert out_a == out_b
    g = parse_graph(out_a)
    assert g.n == 4 and g.m == 6


def test_gen_writes_files_identically(tmp_path, capsys):
    first = tmp_path / "a.gr"
    second = tmp_path / "b.gr"
    assert main(["gen", "5", "9", "7", "-o", str(first)]) == EXIT_OK
    assert main(["gen", "5", "9", "7", "-o", str(second)]) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()


# pack ------------------------------------------------------------------------

def test_cmd_pack_k4(tmp_path, capsys):
    path = _write(tmp_path, "k4.gr", K4_TEXT)
    code, out, _ = _run(capsys, ["pack", path, "2"])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["verdict"] == "packing"
    assert doc["k"] == 2
    ok, detail = verify_packing(complete_graph(4), doc["trees"], 2)
    assert ok, detail


def test_cmd_pack_path_certificate(tmp_path, capsys):
    path = _write(tmp_path, "p4.gr", serialize_graph(path_graph(4)))
    code, out, _ = _run(capsys, ["pack", path, "2"])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["verdict"] == "certificate"
    assert doc["classes"] == [[1], [2], [3], [4]]
    assert doc["crossing_edges"] == 3
    assert doc["bound"] == 6


def test_cmd_pack_disconnected_k1(tmp_path, capsys):
    path = _write(tmp_path, "dis.gr", "p 4 2\ne 1 2\ne 3 4\n")
    code, out, _ = _run(capsys, ["pack", path, "1"])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["verdict"] == "certificate"
    assert doc["classes"] == [[1, 2], [3, 4]]


def test_cmd_pack_trace_records_exchanges(tmp_path, capsys):
    path = _write(tmp_path, "k4.gr", K4_TEXT)
    code, out, _ = _run(capsys, ["pack", path, "2", "--trace"])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert len(doc["trace"]) >= 1
    record = doc["trace"][0]
    assert record["j"] < record["m"]
    assert set(record) >= {"e", "m", "class_p", "c_m", "cycle", "e_prime", "j", "class_q", "sequence"}


def test_cmd_pack_input_errors(tmp_path, capsys):
    missing, _, _ = _run(capsys, ["pack", str(tmp_path / "nope.gr"), "2"])
    assert missing == EXIT_INPUT_ERROR
    bad = _write(tmp_path, "bad.gr", "p 2 9\ne 1 2\n")
    code, _, err = _run(capsys, ["pack", bad, "2"])
    assert code == EXIT_INPUT_ERROR and "error" in err
    k4 = _write(tmp_path, "k4.gr", K4_TEXT)
    code, _, _ = _run(capsys, ["pack", k4, "-1"])
    assert code == EXIT_INPUT_ERROR


def test_cmd_pack_cap_exceeded_is_internal_error(tmp_path, capsys):
    path = _write(tmp_path, "k4.gr", K4_TEXT)
    code, _, err = _run(capsys, ["pack", path, "2", "--cap", "0"])
    assert code == EXIT_INTERNAL_ERROR
    assert "cap" in err


def test_cmd_pack_deterministic_output(tmp_path, capsys):
    path = _write(tmp_path, "k4.gr", K4_TEXT)
    _, out_a, _ = _run(capsys, ["pack", path, "2", "--trace"])
    _, out_b, _ = _run(capsys, ["pack", path, "2", "--trace"])
    assert out_a == out_b


# verify ------------------------------------------------------------------------

def test_cmd_verify_accepts_pack_output(tmp_path, capsys):
    graph = _write(tmp_path, "k4.gr", K4_TEXT)
    code, out, _ = _run(capsys, ["pack", graph, "2", "--trace"])
    assert code == EXIT_OK
    result = _write(tmp_path, "result.json", out)
    code, _, err = _run(capsys, ["verify", graph, result])
    assert code == EXIT_OK, err


def test_cmd_verify_rejects_repeated_edge_id(tmp_path, capsys):
    graph = _write(tmp_path, "k4.gr", K4_TEXT)
    doc = {"verdict": "packing", "k": 2, "trees": [[0, 1, 2], [0, 4, 5]]}
    result = _write(tmp_path, "result.json", json.dumps(doc))
    code, _, err = _run(capsys, ["verify", graph, result])
    assert code == EXIT_VERIFY_FAILED
    assert "share" in err


def test_cmd_verify_rejects_non_violating_certificate(tmp_path, capsys):
    graph = _write(tmp_path, "k4.gr", K4_TEXT)
    doc = {
        "verdict": "certificate",
        "k": 2,
        "classes": [[1], [2], [3], [4]],
        "crossing_edges": 6,
        "bound": 6,
    }
    result = _write(tmp_path, "result.json", json.dumps(doc))
    code, _, err = _run(capsys, ["verify", graph, result])
    assert code == EXIT_VERIFY_FAILED


def test_cmd_verify_rejects_tampered_trace(tmp_path, capsys):
    graph = _write(tmp_path, "k4.gr", K4_TEXT)
    code, out, _ = _run(capsys, ["pack", graph, "2", "--trace"])
    doc = json.loads(out)
    doc["trace"][0]["e_prime"] = 5
    result = _write(tmp_path, "result.json", json.dumps(doc))
    code, _, err = _run(capsys, ["verify", graph, result])
    assert code == EXIT_VERIFY_FAILED
    assert "e_prime" in err


def test_cmd_verify_malformed_documents(tmp_path, capsys):
    graph = _write(tmp_path, "k4.gr", K4_TEXT)
    for text in (
        "not json",
        json.dumps({"verdict": "maybe"}),
        json.dumps({"verdict": "packing", "k": 2, "trees": [[99, 1, 2], [3, 4, 5]]}),
        json.dumps({"verdict": "certificate", "k": 2, "classes": [[1, 2], [2, 3, 4]],
                    "crossing_edges": 0, "bound": 2}),
    ):
        result = _write(tmp_path, "result.json", text)
        code, _, _ = _run(capsys, ["verify", graph, result])
        assert code == EXIT_INPUT_ERROR


# stp / oracle --------------------------------------------------------------------

def test_cmd_stp_on_k6(tmp_path, capsys):
    graph = _write(tmp_path, "k6.gr", serialize_graph(complete_graph(6)))
    code, out, _ = _run(capsys, ["stp", graph])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["k_max"] == 3
    assert doc["certificate"]["k"] == 4
    assert doc["certificate"]["crossing_edges"] < doc["certificate"]["bound"]


def test_cmd_stp_tree_and_single_vertex(tmp_path, capsys):
    tree = _write(tmp_path, "t.gr", serialize_graph(path_graph(5)))
    code, out, _ = _run(capsys, ["stp", tree])
    assert code == EXIT_OK and json.loads(out)["k_max"] == 1
    tiny = _write(tmp_path, "one.gr", "p 1 0\n")
    code, out, _ = _run(capsys, ["stp", tiny])
    assert code == EXIT_OK
    assert json.loads(out) == {"k_max": None, "unbounded": True}


def test_cmd_oracle_k4(tmp_path, capsys):
    graph = _write(tmp_path, "k4.gr", K4_TEXT)
    code, out, _ = _run(capsys, ["oracle", graph, "2"])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["margin"] == 0


def test_cmd_oracle_rejects_large_n(tmp_path, capsys):
    graph = _write(tmp_path, "big.gr", "p 13 0\n")
    code, _, _ = _run(capsys, ["oracle", graph, "1"])
    assert code == EXIT_INPUT_ERROR


# dot -------------------------------------------------------------------------------

def test_cmd_dot_packing_and_certificate(tmp_path, capsys):
    graph = _write(tmp_path, "k4.gr", K4_TEXT)
    _, out, _ = _run(capsys, ["pack", graph, "2"])
    result = _write(tmp_path, "result.json", out)
    code, dot, _ = _run(capsys, ["dot", graph, result])
    assert code == EXIT_OK
    assert dot.startswith("graph packing {")
    assert 'color="red"' in dot and 'color="blue"' in dot

    path_file = _write(tmp_path, "p4.gr", serialize_graph(path_graph(4)))
    _, out, _ = _run(capsys, ["pack", path_file, "2"])
    cert = _write(tmp_path, "cert.json", out)
    code, dot, _ = _run(capsys, ["dot", path_file, cert])
    assert code == EXIT_OK
    assert "style=dashed" in dot


# console entry point ---------------------------------------------------------------

def test_module_invocation_round_trip(tmp_path):
    graph = tmp_path / "k4.gr"
    graph.write_text(K4_TEXT)
    run = subprocess.run(
        [sys.executable, "-m", "treepack.cli", "pack", str(graph), "2"],
        capture_output=True,
        text=True,
    )
    assert run.returncode == 0
    assert json.loads(run.stdout)["verdict"] == "packing"
