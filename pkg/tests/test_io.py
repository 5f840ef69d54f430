import networkx as nx
import pytest
from hypothesis import given

from conftest import graphs
from hadminor.errors import ParseError
from hadminor.graph import Graph
from hadminor.io import (
    detect_format,
    parse_dimacs,
    parse_graph6,
    read_graph,
    read_graphs,
    serialize_dimacs,
    serialize_graph6,
    write_graph,
)
from oracles import nx_graph


def test_graph6_examples():
    g = parse_graph6("D?{")
    assert g.n == 5 and serialize_graph6(g) == "D?{"
    assert parse_graph6("@") == Graph(1)
    assert parse_graph6(">>graph6<<D?{") == g
    assert parse_graph6("?") == Graph(0)


def test_graph6_errors_carry_offsets():
    with pytest.raises(ParseError) as e:
        parse_graph6("D?")
    assert e.value.offset is not None
    with pytest.raises(ParseError):
        parse_graph6("")
    with pytest.raises(ParseError) as e:
        parse_graph6("D? {")
    assert e.value.offset == 2
    with pytest.raises(ParseError):
        parse_graph6("B@")  # padding bit set
    with pytest.raises(ParseError):
        parse_graph6("~")


@given(graphs(max_n=12))
def test_graph6_round_trip_and_networkx_agreement(g):
    code = serialize_graph6(g)
    assert parse_graph6(code) == g
    assert code == nx.to_graph6_bytes(nx_graph(g), header=False).decode().strip()


def test_graph6_long_header():
    g = Graph.path(70)
    code = serialize_graph6(g)
    assert code.startswith("~") and parse_graph6(code) == g
    assert code == nx.to_graph6_bytes(nx_graph(g), header=False).decode().strip()


def test_dimacs_examples():
    tri = parse_dimacs("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n")
    assert tri == Graph.complete(3)
    dup = parse_dimacs("p edge 2 2\ne 1 2\ne 1 2\ne 2 1\n")
    assert dup.m == 1


@pytest.mark.parametrize(
    "text",
    [
        "p edge 2 1\ne 1 1\n",
        "p edge 2 1\ne 1 3\n",
        "e 1 2\n",
        "p edge 2 1\np edge 2 1\n",
        "p edge 2 1\nx 1 2\n",
        "p edge 2\n",
        "p edge 2 1\ne 1 b\n",
        "",
    ],
)
def test_dimacs_errors(text):
    with pytest.raises(ParseError):
        parse_dimacs(text)


def test_dimacs_error_line_number():
    with pytest.raises(ParseError) as e:
        parse_dimacs("p edge 3 1\ne 1 2\ne 2 2\n")
    assert e.value.offset == 3


@given(graphs(max_n=12))
def test_dimacs_round_trip(g):
    assert parse_dimacs(serialize_dimacs(g)) == g


def test_files(tmp_path):
    g = Graph.petersen()
    write_graph(g, tmp_path / "p.g6")
    write_graph(g, tmp_path / "p.dimacs", "dimacs")
    assert read_graph(tmp_path / "p.g6") == g == read_graph(tmp_path / "p.dimacs")
    (tmp_path / "many").write_text("D?{\n@\n\n")
    assert detect_format(tmp_path / "many") == "g6"
    assert [h.n for h in read_graphs(tmp_path / "many")] == [5, 1]
    with pytest.raises(ParseError):
        read_graph(tmp_path / "many")
    (tmp_path / "d").write_text("p edge 1 0\n")
    assert detect_format(tmp_path / "d") == "dimacs"
