import random
from fractions import Fraction

import pytest

from symchaos.graphs import (
    EXAMPLE_GRAPHS,
    GraphError,
    Interior,
    Node,
    decode_word,
    encode_point,
    exceptional_points,
    graph_map,
    graph_metric,
    graph_orbit,
    graph_system,
    parse_graph,
)
from symchaos.words import Word, parse_word, prefix_int

W = parse_word
F = Fraction


# ------------------------------------------------------------------ parser

def test_parse_simple_arc():
    spec = parse_graph("node a\nnode b\narc E1 a b\n")
    assert spec.r == 1
    assert spec.arcs[0] == ("E1", "a", "b")
    assert spec.nodes == ("a", "b")


def test_parse_k3_prefixes(k3):
    assert k3.spec.r == 3
    assert k3.prefixes == [(0,), (1, 0), (1, 1)]


def test_parse_loop_allowed():
    spec = parse_graph("node a\narc E1 a a\n")
    assert spec.arcs[0].tail == spec.arcs[0].head == "a"


def test_parse_comments_and_blank_lines():
    spec = parse_graph("# a triangle\n\nnode a\nnode b # inline\nnode c\n"
                       "arc E1 a b\narc E2 b c\narc E3 c a\n")
    assert spec.r == 3


@pytest.mark.parametrize("text,fragment", [
    ("node a\nnode a\narc E1 a a\n", "duplicate"),
    ("node a\narc E1 a b\n", "unknown node"),
    ("node a\n", "empty graph"),
    ("", "empty graph"),
    ("node a\nedge E1 a a\n", "unknown directive"),
    ("node a\narc E1 a\n", "expected"),
    ("node a*\narc E1 a a\n", "bad identifier"),
    ("node a\nnode b\nnode c\narc E1 a b\n", "not an endpoint"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(GraphError) as err:
        parse_graph(text)
    assert fragment in str(err.value)


def test_parse_errors_carry_line_numbers():
    with pytest.raises(GraphError) as err:
        parse_graph("node a\nnode a\n")
    assert str(err.value).startswith("line 2:")


def test_disconnected_graph_parses(two_segments):
    assert two_segments.spec.r == 2
    assert two_segments.prefixes == [(0,), (1,)]


# ------------------------------------------------------------------ codec

def test_encode_examples(k3):
    assert set(encode_point(k3, Interior(2, F(1, 3)))) == {W("10:01")}
    assert set(encode_point(k3, Node("b"))) == {W("0:1"), W("1:0")}
    assert set(encode_point(k3, Interior(3, F(1, 2)))) == {W("111:0"), W("110:1")}


def test_decode_examples(k3):
    assert decode_word(k3, W("0:01")) == Interior(1, F(1, 3))
    assert decode_word(k3, W(":1")) == Node("a")
    assert decode_word(k3, W("1:0")) == Node("b")


def test_codec_round_trip_sampled(k3, loop1, figure8, two_segments):
    rng = random.Random(5)
    for sys in (k3, loop1, figure8, two_segments):
        points = [Node(v) for v in sys.spec.nodes]
        for i in range(1, sys.spec.r + 1):
            points.append(Interior(i, F(1, 2)))
            points.append(Interior(i, F(1, 3)))
            for _ in range(20):
                q = rng.randrange(2, 500)
                p = rng.randrange(1, q)
                points.append(Interior(i, F(p, q)))
        for pt in points:
            fib = encode_point(sys, pt)
            for w in fib:
                assert decode_word(sys, w) == pt
            # decode is constant on the fiber and encode recovers it
            assert encode_point(sys, decode_word(sys, fib.words[0])) == fib


def test_cylinder_partition(k3, path2, loop1, figure8, two_segments):
    # every prefix of length r+4 decodes, and the fiber of the decoded
    # point contains a word carrying that prefix
    for sys in (k3, path2, loop1, figure8, two_segments):
        n = sys.spec.r + 4
        for seed in range(1 << n):
            w = Word._from_packed(n, seed, 1, 0)
            pt = decode_word(sys, w)
            fib = encode_point(sys, pt)
            assert any(prefix_int(member, n) == seed for member in fib)


# ------------------------------------------------------------------- map

def test_graph_map_examples(k3):
    assert graph_map(k3, Interior(2, F(1, 3))) == Interior(1, F(1, 3))
    assert graph_map(k3, Node("b")) == Node("b")
    assert graph_map(k3, Interior(3, F(1, 3))) == Interior(2, F(2, 3))


def test_exceptional_points_examples(k3, loop1, path2):
    assert exceptional_points(k3) == [Node("a"), Node("b"), Node("c"),
                                      Interior(1, F(1, 2)), Interior(3, F(1, 2))]
    assert exceptional_points(loop1) == [Node("a"), Interior(1, F(1, 2))]
    assert exceptional_points(path2) == [Node("a"), Node("b"), Node("c"),
                                         Interior(1, F(1, 2)), Interior(2, F(1, 2))]


def test_exceptional_points_are_fixed(k3, path2, loop1, figure8, two_segments):
    for sys in (k3, path2, loop1, figure8, two_segments):
        for pt in exceptional_points(sys):
            assert graph_map(sys, pt) == pt


def test_parameter_preserving_descent(k3):
    # arcs strictly between the first and last: parameter carried over
    rng = random.Random(11)
    for num in range(1, 64):
        t = F(num, 64)
        assert graph_map(k3, Interior(2, t)) == Interior(1, t)
    for _ in range(100):
        q = rng.randrange(3, 10 ** 4)
        p = rng.randrange(1, q)
        t = F(p, q)
        assert graph_map(k3, Interior(2, t)) == Interior(1, t)


def test_last_arc_split(k3):
    # on the last arc the parameter doubles into arc r-1 or stays with 2t-1
    rng = random.Random(13)
    for _ in range(100):
        q = rng.randrange(3, 10 ** 4, 2)
        p = rng.randrange(1, q)
        t = F(p, q)
        if t == F(1, 2):
            continue
        expected = Interior(2, 2 * t) if t < F(1, 2) else Interior(3, 2 * t - 1)
        assert graph_map(k3, Interior(3, t)) == expected


def test_graph_orbit_example(k3):
    orbit = graph_orbit(k3, Interior(2, F(1, 3)), 2)
    assert orbit == [Interior(2, F(1, 3)), Interior(1, F(1, 3)), Interior(1, F(2, 3))]


def test_graph_orbit_validates(k3):
    with pytest.raises(ValueError):
        graph_orbit(k3, Node("a"), -1)


def test_loop_graph_is_doubling(loop1):
    # doubling mod 1 away from the pinned midpoint; endpoints collapse to
    # the node; the midpoint itself is exceptional and fixed
    for num in range(1, 256):
        t = F(num, 256)
        got = graph_map(loop1, Interior(1, t))
        if t == F(1, 2):
            assert got == Interior(1, F(1, 2))
            continue
        doubled = 2 * t if t < F(1, 2) else 2 * t - 1
        assert got == Interior(1, doubled)
    assert graph_map(loop1, Node("a")) == Node("a")


def test_figure_eight_moves_between_loops(figure8):
    # the second loop's interior shifts into the first for small parameters
    assert graph_map(figure8, Interior(2, F(1, 3))) == Interior(1, F(2, 3))
    assert graph_map(figure8, Interior(1, F(1, 3))) == Interior(1, F(2, 3))


def test_disconnected_graph_map_crosses_components(two_segments):
    # interior points may hop components; the exceptional set stays fixed
    assert graph_map(two_segments, Interior(1, F(2, 3))) == Interior(2, F(1, 3))
    assert graph_map(two_segments, Interior(1, F(1, 3))) == Interior(1, F(2, 3))


# ---------------------------------------------------------------- metric

def test_graph_metric_axioms(k3):
    pts = [Node("a"), Node("b"), Node("c"),
           Interior(1, F(1, 3)), Interior(2, F(1, 2)), Interior(3, F(3, 7))]
    for p in pts:
        assert graph_metric(k3, p, p) == 0
        for q in pts:
            assert graph_metric(k3, p, q) == graph_metric(k3, q, p)
            assert (graph_metric(k3, p, q) == 0) == (p == q)
    for p in pts:
        for q in pts:
            for s in pts:
                assert graph_metric(k3, p, s) <= graph_metric(k3, p, q) + graph_metric(k3, q, s)


def test_interior_validation():
    with pytest.raises(ValueError):
        Interior(1, F(0))
    with pytest.raises(ValueError):
        Interior(1, F(3, 2))


def test_example_graphs_all_parse():
    for name, text in EXAMPLE_GRAPHS.items():
        sys = graph_system(parse_graph(text))
        assert sys.spec.r >= 1, name
