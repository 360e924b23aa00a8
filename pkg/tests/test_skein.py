import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modtv.decor import (
    genus2_one_vertex,
    genus2_two_vertex,
    random_rep,
    reverse_path,
    torus_one_vertex,
    torus_two_vertex,
    trivial_rep,
    validate_rep,
)
from modtv.gcore import cyclic_group, symmetric_group
from modtv.skein import (
    ColoredSkein,
    DualEdge,
    GSkein,
    dual_graph_rep,
    format_word,
    intersect_colored,
    intersect_path,
    skein_to_rep,
)

Z5 = cyclic_group(5)
S3 = symmetric_group(3)


def test_trivial_rep_gives_identity_colors():
    t = genus2_one_vertex()
    sk = dual_graph_rep(trivial_rep(t, S3))
    assert {e.color for e in sk.edges} == {S3.identity}


def test_empty_path():
    sk = dual_graph_rep(trivial_rep(torus_one_vertex(), Z5))
    assert intersect_path([], sk) == Z5.identity


def test_one_vertex_torus_colors():
    t = torus_one_vertex()
    sk = dual_graph_rep(validate_rep(t, {"a": 2, "b": 3, "c": 0}, Z5))
    assert [sk.dual_edge(k).color for k in range(3)] == [2, 3, 0]


def test_mixed_crossing_signs():
    # a path crossing three dual edges, the middle one against its direction
    t = torus_one_vertex()
    G = S3
    g1, g2, g3 = G.index("(12)"), G.index("(123)"), G.index("(13)")
    sk = GSkein(t, G, (DualEdge(0, 1, g1), DualEdge(1, -1, g2), DualEdge(2, 1, g3)))
    path = [(0, 1), (1, 1), (2, 1)]
    assert intersect_path(path, sk) == G.prod([g1, G.inv[g2], g3])


def test_colored_word():
    t = torus_one_vertex()
    deg = {"V1": 1, "V2": 2, "V3": 4}
    sk = ColoredSkein(t, Z5, (DualEdge(0, 1, "V1"), DualEdge(1, -1, "V2"), DualEdge(2, 1, "V3")), deg.get)
    word, d = intersect_colored([(0, 1), (1, 1), (2, 1)], sk)
    assert format_word(word) == "V1 (x) V2* (x) V3"
    assert d == (1 - 2 + 4) % 5
    assert intersect_colored([], sk) == ([], Z5.identity)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6),
       st.sampled_from([torus_one_vertex, torus_two_vertex, genus2_one_vertex, genus2_two_vertex]),
       st.sampled_from([Z5, S3]))
def test_bijection_round_trip(seed, make, G):
    t = make()
    r = random_rep(t, G, random.Random(seed))
    sk = dual_graph_rep(r)
    assert skein_to_rep(sk) == r
    for k in range(len(t.edges)):
        assert intersect_path([(k, 1)], sk) == r((k, 1))
        # reversing a dual edge and inverting its color gives the same skein class
        assert intersect_path([(k, 1)], sk.reversed_edge(k)) == r((k, 1))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_paths_and_reversal(seed):
    rng = random.Random(seed)
    t = torus_two_vertex()
    r = random_rep(t, S3, rng)
    sk = dual_graph_rep(r)
    v = [rng.choice(t.vertices) for _ in range(4)]
    path = ()
    for a, b in zip(v, v[1:]):
        path += t.path_between(a, b)
    if not path:
        return
    assert intersect_path(path, sk) == r.path_value(path)
    assert intersect_path(reverse_path(path), sk) == S3.inv[intersect_path(path, sk)]


@pytest.mark.parametrize("G", [Z5, S3])
def test_colored_degree_matches_plain(G):
    rng = random.Random(5)
    t = torus_two_vertex()
    r = random_rep(t, G, rng)
    sk = dual_graph_rep(r)
    colored = ColoredSkein(t, G, tuple(DualEdge(e.crosses, e.head_side, ("X", e.color)) for e in sk.edges),
                           lambda sym: sym[1])
    for _ in range(50):
        a, b = rng.choice(t.vertices), rng.choice(t.vertices)
        path = t.path_between(a, b) + t.path_between(b, a)
        if path:
            assert intersect_colored(path, colored)[1] == intersect_path(path, sk)
