import json
from fractions import Fraction

import pytest

from ramseypairs import Color, Graph, TwoColoring, format_coloring, format_graph, parse_coloring
from ramseypairs.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from ramseypairs.ramsey import biased_coloring, paley_coloring


@pytest.fixture
def files(tmp_path):
    def put(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    red_star = TwoColoring.from_red_edges(5, [(0, v) for v in range(1, 5)] + [(1, 2)])
    return {
        "k3": put("k3.graph", format_graph(Graph.complete(3))),
        "p4": put("p4.graph", format_graph(Graph.path(4))),
        "paley5": put("paley5.col", format_coloring(paley_coloring(5))),
        "red7": put("red7.col", format_coloring(TwoColoring.monochromatic(7, Color.RED))),
        "star5": put("star5.col", format_coloring(red_star)),
        "sparse": put("sparse.col", format_coloring(biased_coloring(300, Fraction(1, 10), seed=4))),
        "pair": put("pair.json", json.dumps({"color": "red", "X": [0], "Y": [1, 2, 3, 4]})),
        "dup": put("dup.graph", "p edge 3 2\ne 1 2\ne 2 1\n"),
    }


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_round_trip(capsys, tmp_path):
    target = tmp_path / "c.col"
    code, out, _ = run(capsys, "gen", "--kind", "biased", "--n", 40, "--p", "1/10", "--seed", 9, "--out", target)
    assert code == EXIT_OK and out == ""
    assert parse_coloring(target.read_text()) == biased_coloring(40, Fraction(1, 10), 9)
    code, out, _ = run(capsys, "gen", "--kind", "paley", "--n", 5)
    assert parse_coloring(out) == paley_coloring(5)


def test_extract_pair_text_and_json(capsys, files):
    code, out, _ = run(capsys, "extract-pair", "--coloring", files["paley5"], "--k", 1, "--l", 1)
    assert code == EXIT_OK and out.startswith(("red X=", "blue X="))
    code, out, _ = run(
        capsys, "extract-pair", "--coloring", files["sparse"], "--eps", "1/7", "--t", 4, "--format", "json"
    )
    data = json.loads(out)
    assert code == EXIT_OK and data["trace"]["branch"] == "blue-clique"
    assert len(data["pair"]["X"]) >= 4


def test_amplify_from_pair_file(capsys, files):
    code, out, _ = run(
        capsys, "amplify", "--coloring", files["star5"], "--pattern", files["k3"], "--pair", files["pair"], "--alpha", 1
    )
    assert code == EXIT_OK
    assert out.splitlines()[-1] == "copy red map=0,1,2"


def test_prove(capsys, files):
    code, out, _ = run(capsys, "prove", "--coloring", files["paley5"], "--pattern", files["k3"])
    assert code == EXIT_OK and out.splitlines()[-1] == "outcome exhausted"
    code, out, _ = run(capsys, "prove", "--coloring", files["red7"], "--pattern", files["p4"], "--format", "json")
    data = json.loads(out)
    assert data["outcome"] == "mono-copy" and data["copy"]["color"] == "red"


def test_trace_bounds_json(capsys):
    code, out, _ = run(capsys, "trace-bounds", "--m", 3600, "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK and data["alphas"] == ["27", "64", "256"] and data["stop_index"] == 3


def test_trace_bounds_small_m_exits_one(capsys):
    code, out, _ = run(capsys, "trace-bounds", "--m", 64)
    assert code == EXIT_FAIL and "FAIL" in out


def test_verify_constants(capsys):
    code, out, _ = run(capsys, "verify-constants", "--m", "3600", "--alpha-points", 10)
    assert code == EXIT_OK
    assert len(out.splitlines()) == 12 and all(line.startswith("PASS") for line in out.splitlines())


def test_ramsey_modes(capsys, files):
    assert run(capsys, "ramsey", "--exact", files["k3"], "--nmax", 6)[1] == "6\n"
    assert run(capsys, "ramsey", "--exact", files["k3"], "--nmax", 5)[1] == "unknown\n"
    code, out, _ = run(capsys, "ramsey", "--arrows", files["k3"], "--n", 5)
    assert code == EXIT_OK and out.startswith("K_5 does not arrow the pattern")
    code, out, _ = run(
        capsys, "ramsey", "--lower", files["k3"], "--n", 5, "--trials", 200, "--seed", 1, "--format", "json"
    )
    assert json.loads(out)["found"] is True


def test_check(capsys, files):
    assert (
        run(capsys, "check", "--coloring", files["paley5"], "--pattern", files["k3"])[1]
        == "none in red; none in blue\n"
    )
    code, out, _ = run(capsys, "check", "--coloring", files["red7"], "--pattern", files["k3"], "--format", "json")
    assert json.loads(out) == {"red": [0, 1, 2], "blue": None}


def test_parse_error_names_the_line(capsys, files):
    code, _, err = run(capsys, "ramsey", "--exact", files["dup"])
    assert code == EXIT_USAGE and "line 3:" in err


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["gen", "--kind", "paley", "--n", "7"], EXIT_USAGE),
        (["gen", "--kind", "biased", "--n", "7"], EXIT_USAGE),
        (["bogus"], EXIT_USAGE),
        (["check", "--coloring", "/nonexistent/c.col", "--pattern", "/nonexistent/g.graph"], EXIT_USAGE),
        (["trace-bounds", "--m", "1"], EXIT_USAGE),
    ],
)
def test_usage_errors(capsys, argv, expected):
    assert run(capsys, *argv)[0] == expected


def test_paper_profile_violation_exits_one(capsys, files):
    code, _, err = run(
        capsys,
        "amplify",
        "--coloring",
        files["star5"],
        "--pattern",
        files["k3"],
        "--pair",
        files["pair"],
        "--alpha",
        "26.9",
        "--profile",
        "paper",
    )
    assert code == EXIT_FAIL and "27 <= alpha" in err
