import pytest
from hypothesis import given

from gemfree.errors import ParseError
from gemfree.graph import Graph, complete, empty, s_minus, s_nk, star
from gemfree.graph6 import from_graph6, to_graph6

from .helpers import graphs, random_graph


def manual_graph6(g: Graph) -> bytes:
    """Direct transcription of the format: N(n), then column-major upper-triangle bits."""
    bitstring = "".join("1" if g.has_edge(i, j) else "0" for j in range(1, g.n) for i in range(j))
    bitstring += "0" * (-len(bitstring) % 6)
    body = bytes(int(bitstring[k : k + 6], 2) + 63 for k in range(0, len(bitstring), 6))
    return bytes([g.n + 63]) + body


def test_k3():
    assert to_graph6(complete(3)) == b"Bw"


def test_k1():
    assert to_graph6(complete(1)) == b"@"


def test_k13_centre_zero():
    assert to_graph6(star(3)) == b"Cs"


def test_s62_minus_one_is_stable():
    # fixed labelling: vertices 0,1 the K_2, edge {1,5} deleted
    g = s_minus(8, 1)
    assert from_graph6(to_graph6(g)) == g
    assert to_graph6(g) == manual_graph6(g)


@given(graphs(max_n=14))
def test_matches_manual_packing(g):
    assert to_graph6(g) == manual_graph6(g)


@given(graphs(max_n=20))
def test_round_trip(g):
    assert from_graph6(to_graph6(g)) == g


@pytest.mark.parametrize("n", [1, 2, 7, 13, 30, 47, 62])
def test_round_trip_large(n, rng):
    g = random_graph(rng, n, 0.4)
    assert from_graph6(to_graph6(g)) == g


def test_long_header_for_63_and_64():
    for n in (63, 64):
        g = s_nk(n, 2)
        code = to_graph6(g)
        assert code[0] == 126
        assert from_graph6(code) == g


def test_accepts_str_and_trailing_newline():
    assert from_graph6("Bw\n") == complete(3)


@pytest.mark.parametrize(
    "data, offset",
    [
        (b"", 0),
        (b"B", 1),
        (b"Bww", 2),
        (b"B x", 1),
        (b">>graph6<<Bw", 0),
        (b"Bx", 1),  # padding bits set
        (b"~?", 2),
    ],
)
def test_malformed_input_reports_offset(data, offset):
    with pytest.raises(ParseError) as err:
        from_graph6(data)
    assert err.value.offset == offset


def test_too_many_vertices():
    with pytest.raises(ParseError):
        from_graph6(bytes([126, 63, 64, 65]) + b"?" * 10)


def test_empty_graphs():
    assert from_graph6(to_graph6(empty(5))) == empty(5)
