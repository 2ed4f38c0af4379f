import pytest

from ramseypairs import Graph, ParseError, TwoColoring, format_coloring, format_graph, parse_coloring, parse_graph
from ramseypairs.fileio import read_coloring, write_coloring
from ramseypairs.ramsey import paley_coloring, uniform_coloring


def test_parse_graph_triangle():
    g = parse_graph("c a triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n")
    assert g == Graph.complete(3)


def test_parse_coloring_unlisted_pairs_are_blue():
    c = parse_coloring("p kn2 4\nr 1 2\nr 4 3\n")
    assert c.red.edges == {(0, 1), (2, 3)}
    assert c.blue.m == 4


@pytest.mark.parametrize(
    "parse, text, line, fragment",
    [
        (parse_graph, "p edge 3 2\ne 1 2\ne 2 1\n", 3, "duplicate edge"),
        (parse_graph, "p edge 3 1\ne 2 2\n", 2, "self-loop"),
        (parse_graph, "p edge 3 1\ne 1 4\n", 2, "out of range"),
        (parse_graph, "p edge 3 1\ne 0 1\n", 2, "out of range"),
        (parse_graph, "e 1 2\np edge 3 1\n", 1, "before header"),
        (parse_graph, "p edge 3 1\np edge 3 1\ne 1 2\n", 2, "duplicate header"),
        (parse_graph, "p edge 3 1\nx 1 2\n", 2, "unknown line type"),
        (parse_graph, "p edge 3 1\ne 1 two\n", 2, "non-integer"),
        (parse_coloring, "p edge 3 1\n", 1, "expected header"),
        (parse_coloring, "c hi\np kn2 4\nr 1 2\nr 2 1\n", 4, "duplicate edge"),
        (parse_coloring, "p kn2 4\nr 3 3\n", 2, "self-loop"),
    ],
)
def test_parse_errors_carry_line_numbers(parse, text, line, fragment):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.line == line
    assert fragment in str(info.value)
    assert str(info.value).startswith(f"line {line}:")


def test_edge_count_mismatch_and_missing_header():
    with pytest.raises(ParseError, match="declares 2 edges, found 1"):
        parse_graph("p edge 3 2\ne 1 2\n")
    with pytest.raises(ParseError, match="missing header"):
        parse_coloring("c nothing here\n")


def test_round_trips(tmp_path):
    for c in (paley_coloring(13), uniform_coloring(9, seed=4), TwoColoring.monochromatic(3, "blue")):
        assert parse_coloring(format_coloring(c, comment="x")) == c
        path = tmp_path / "c.kn2"
        write_coloring(c, path)
        assert read_coloring(path) == c
    g = Graph.cycle(7)
    assert parse_graph(format_graph(g)) == g


def test_format_is_sorted_and_one_indexed():
    c = TwoColoring.from_red_edges(3, [(1, 2), (0, 2)])
    assert format_coloring(c) == "p kn2 3\nr 1 3\nr 2 3\n"
