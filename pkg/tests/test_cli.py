import json

import pytest

from lincut import config
from lincut.cli import EXIT_CAP, EXIT_FAILED, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE, main
from lincut.netio import parse_bnet

N_SWAP = "x1, x2\nx2, x1\n"
N_FIVE = "x1, x3\nx2, x4 & x5\nx3, x1\nx4, x1\nx5, x2\n"
N_NEG = "x1, !x1\nx2, x1\n"


def run(capsys, *argv):
    code = main([str(arg) for arg in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_info_lists_edges_with_signs(capsys, write_rules):
    code, out, _ = run(capsys, "info", write_rules(N_NEG))

    report = json.loads(out)
    assert code == EXIT_OK
    assert report["kind"] == "network_info"
    assert report["components"] == ["x1", "x2"]
    assert {"source": "x1", "target": "x1", "signs": [-1]} in report["edges"]


def test_cut_of_five(capsys, write_rules):
    code, out, _ = run(capsys, "cut", write_rules(N_FIVE))

    assert code == EXIT_OK
    assert json.loads(out)["cut"] == ["x3", "x4", "x5"]


def test_cut_minimize_is_opt_in(capsys, write_rules):
    path = write_rules(N_SWAP)

    code, out, _ = run(capsys, "cut", path)
    assert code == EXIT_OK
    assert json.loads(out)["cut"] == ["x1", "x2"]

    code, out, _ = run(capsys, "cut", path, "--minimize")
    assert code == EXIT_OK
    assert json.loads(out)["cut"] == ["x2"]


def test_cut_reports_violation(capsys, write_rules):
    code, out, _ = run(capsys, "cut", write_rules("x1, x1 & x2\nx2, x1 & x2\n"))

    report = json.loads(out)
    assert code == EXIT_NEGATIVE
    assert report["cuttable"] is False
    assert report["violation"] == "cycle"


def test_reach_and_unreachable(capsys, write_rules):
    path = write_rules(N_SWAP)

    code, out, _ = run(capsys, "reach", path, "--from", "01", "--to", "10", "--sem", "sync")
    assert code == EXIT_OK
    assert json.loads(out)["path"] == ["01", "10"]

    code, out, err = run(capsys, "reach", path, "--from", "01", "--to", "10")
    assert code == EXIT_NEGATIVE
    assert json.loads(out)["reachable"] is False
    assert "unreachable" in err


def test_reach_in_five(capsys, write_rules):
    path = write_rules(N_FIVE)

    code, out, _ = run(capsys, "reach", path, "--from", "11011", "--to", "00000")
    assert code == EXIT_OK
    assert len(json.loads(out)["path"]) == 5

    code, _, err = run(capsys, "reach", path, "--from", "11011", "--to", "10110")
    assert code == EXIT_NEGATIVE
    assert "unreachable" in err


def test_reach_to_subspace_with_permissive_semantics(capsys, write_rules):
    code, out, _ = run(capsys, "reach", write_rules(N_SWAP), "--from", "01", "--to", "1*", "--sem", "permissive")

    assert code == EXIT_OK
    assert json.loads(out)["path"] == ["01", "11"]


def test_lreach_goes_through_the_cuttable_extension(capsys, write_rules):
    code, out, _ = run(capsys, "reach", write_rules(N_SWAP), "--from", "01", "--to", "10", "--sem", "lreach")

    report = json.loads(out)
    assert code == EXIT_OK
    assert report["semantics"] == "lreach"
    assert report["path"] == ["010", "110", "100", "101"]


def test_geodesic_with_certificate(capsys, write_rules):
    code, out, _ = run(
        capsys, "geodesic", write_rules(N_SWAP), "--from", "01", "--flip", "x1,2", "--sem", "permissive", "--certificate"
    )

    report = json.loads(out)
    assert code == EXIT_OK
    assert report["path"] == ["01", "11", "10"]
    assert report["certificate"] == {"x1": "*1", "x2": "0*"}


def test_missing_geodesic_is_negative(capsys, write_rules):
    code, out, _ = run(capsys, "geodesic", write_rules(N_SWAP), "--from", "01", "--flip", "1,2")

    assert code == EXIT_NEGATIVE
    assert json.loads(out)["exists"] is False


def test_extend_full_writes_rules(capsys, write_rules):
    code, out, _ = run(capsys, "extend", write_rules("x1, x1\n"), "--full")

    assert code == EXIT_OK
    assert out.startswith("# extender: e_x1_x1\n")
    assert parse_bnet(out).names == ("x1", "e_x1_x1")


def test_extend_selected_edges(capsys, write_rules):
    code, out, _ = run(capsys, "extend", write_rules(N_SWAP), "--edges", "x1->x2")

    assert code == EXIT_OK
    assert parse_bnet(out).names == ("x1", "x2", "e_x1_x2")


def test_export_marks_extenders_named_in_the_file(capsys, write_rules, tmp_path):
    extended = tmp_path / "extended.bnet"

    code, _, _ = run(capsys, "--output", extended, "extend", write_rules(N_SWAP), "--full")
    assert code == EXIT_OK

    code, out, _ = run(capsys, "export", extended)
    assert code == EXIT_OK
    assert "dashed" in out
    assert "box" in out

    code, out, _ = run(capsys, "export", write_rules(N_SWAP))
    assert "dashed" not in out


def test_attractors_and_trap_spaces(capsys, write_rules):
    path = write_rules(N_SWAP)

    code, out, _ = run(capsys, "attractors", path, "--sem", "sync")
    assert code == EXIT_OK
    assert [a["states"] for a in json.loads(out)["attractors"]] == [["00"], ["01", "10"], ["11"]]

    code, out, _ = run(capsys, "trapspaces", path, "--minimal")
    assert json.loads(out)["trap_spaces"] == ["00", "11"]

    code, out, _ = run(capsys, "mintrap", path, "--state", "01")
    assert json.loads(out)["trap_space"] == "**"


def test_fixpoints(capsys, write_rules):
    code, out, _ = run(capsys, "fixpoints", write_rules(N_FIVE))

    assert code == EXIT_OK
    assert json.loads(out)["states"] == ["00000", "10110", "11111"]


def test_refine(capsys, write_rules):
    rules = write_rules(N_NEG)
    thresholds = write_rules("x1, x1, 1\nx1, x2, 2\n", name="net.thr")

    code, out, _ = run(capsys, "refine", rules, "--thresholds", thresholds, "--from", "0,0", "--to", "1,0")
    assert code == EXIT_OK
    assert json.loads(out)["path"] == [[0, 0], [1, 0]]

    code, _, _ = run(capsys, "refine", rules, "--thresholds", thresholds, "--from", "00", "--to", "20")
    assert code == EXIT_NEGATIVE


def test_refine_default_threshold(capsys, write_rules):
    rules = write_rules(N_NEG)
    thresholds = write_rules("x1, x2, 2\n", name="net.thr")

    code, _, _ = run(capsys, "refine", rules, "--thresholds", thresholds, "--from", "00", "--to", "10")
    assert code == EXIT_USAGE

    code, _, _ = run(
        capsys, "refine", rules, "--thresholds", thresholds, "--from", "00", "--to", "10", "--default-threshold", "1"
    )
    assert code == EXIT_OK


def test_export_interaction_graph(capsys, write_rules):
    code, out, _ = run(capsys, "export", write_rules(N_SWAP), "--extender", "x2")

    assert code == EXIT_OK
    assert "digraph" in out
    assert "dashed" in out


def test_output_file(capsys, write_rules, tmp_path):
    target = tmp_path / "fixpoints.json"

    code, out, _ = run(capsys, "--output", target, "fixpoints", write_rules(N_SWAP))

    assert code == EXIT_OK
    assert out == ""
    assert json.loads(target.read_text(encoding="utf-8"))["states"] == ["00", "11"]


@pytest.mark.parametrize(
    "argv",
    [
        ("reach", "{rules}", "--from", "0", "--to", "10"),
        ("mintrap", "{rules}", "--state", "0*"),
        ("geodesic", "{rules}", "--from", "01", "--flip", "x9"),
        ("extend", "{rules}", "--edges", "x1-x2"),
    ],
)
def test_usage_errors(capsys, write_rules, argv):
    rules = write_rules(N_SWAP)

    code, _, err = run(capsys, *(str(rules) if arg == "{rules}" else arg for arg in argv))

    assert code == EXIT_USAGE
    assert "error:" in err


def test_parse_error_exit_code(capsys, write_rules):
    code, _, err = run(capsys, "info", write_rules("x1, x1 &\n"))

    assert code == EXIT_USAGE
    assert "line 1" in err


def test_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "info", tmp_path / "absent.bnet")

    assert code == EXIT_USAGE


def test_cap_exceeded_exit_code(capsys, write_rules, monkeypatch):
    monkeypatch.setattr(config, "CAP_N", 2)

    code, _, err = run(capsys, "fixpoints", write_rules(N_FIVE))

    assert code == EXIT_CAP
    assert "exceeds cap" in err


def test_verify_examples(capsys):
    code, out, _ = run(capsys, "verify", "examples")

    report = json.loads(out)
    assert code == EXIT_OK
    assert report["passed"] is True
    assert report["suites"][0]["name"] == "examples"


def test_verify_failure_exit_code(capsys, monkeypatch, tmp_path):
    from lincut import harness

    monkeypatch.setattr(config, "DUMP_DIR", tmp_path / "failures")
    monkeypatch.setitem(harness.SUITES, "core", lambda net, rng, cfg: ["always wrong"])

    code, out, _ = run(capsys, "verify", "core", "--count", "1", "--n", "2", "--workers", "1")

    assert code == EXIT_FAILED
    assert json.loads(out)["passed"] is False
    assert [p.name for p in (tmp_path / "failures").iterdir()] == ["core_0000.bnet"]
