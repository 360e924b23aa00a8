import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modtv.decor import (
    gauge_act,
    genus2_one_vertex,
    genus2_two_vertex,
    load_surface,
    random_rep,
    reps_equal_up_to_equivalence,
    restrict_rep,
    sphere_bigon,
    surface_to_json,
    torus_one_vertex,
    torus_two_vertex,
    torus_with_vertices,
    trivial_rep,
    validate_rep,
)
from modtv.errors import CocycleViolation, DomainMismatch, EmptyComponent
from modtv.gcore import GaugeFunction, cyclic_group, gauge_compose, symmetric_group

S3 = symmetric_group(3)
Z5 = cyclic_group(5)
Z6 = cyclic_group(6)

SURFACES = [torus_one_vertex, torus_two_vertex, genus2_one_vertex, genus2_two_vertex,
            lambda: torus_with_vertices(3)]


@pytest.mark.parametrize("make", SURFACES)
def test_surfaces_are_closed(make):
    t = make()
    chi = t.euler_characteristic()
    assert chi in (0, -2)
    assert len(t.triangles) * 3 == 2 * len(t.edges)
    assert load_surface(surface_to_json(t)).euler_characteristic() == chi


def test_one_vertex_torus_diagonal_is_forced():
    t = torus_one_vertex()
    # triangle (a, b, -c): c = a + b in Z/5
    validate_rep(t, {"a": 2, "b": 3, "c": 0}, Z5)
    with pytest.raises(CocycleViolation):
        validate_rep(t, {"a": 2, "b": 3, "c": 1}, Z5)


def test_noncommuting_pair_rejected():
    with pytest.raises(CocycleViolation):
        validate_rep(torus_one_vertex(), {"a": "(123)", "b": "(12)", "c": "(12)"}, S3)


def test_trivial_rep_valid():
    t = genus2_two_vertex()
    r = trivial_rep(t, S3)
    assert set(r.labels) == {S3.identity}


def test_gauge_conjugates_loop():
    t = torus_one_vertex()
    r = validate_rep(t, {"a": "(123)", "b": "e", "c": "(123)"}, S3)
    out = gauge_act(GaugeFunction.make(S3, {"p": S3.index("(12)")}), r)
    assert out.named_labels() == {"a": "(132)", "b": "e", "c": "(132)"}


def test_gauge_identity_and_domain():
    t = torus_two_vertex()
    r = random_rep(t, S3, random.Random(0))
    assert gauge_act(GaugeFunction.identity(S3, t.vertices), r) == r
    with pytest.raises(DomainMismatch):
        gauge_act(GaugeFunction.make(S3, {"p": 1}), r)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.lists(st.integers(0, 5), min_size=6, max_size=6))
def test_gauge_is_an_action(seed, vals):
    t = torus_with_vertices(3)
    r = random_rep(t, Z6, random.Random(seed))
    f = GaugeFunction.make(Z6, dict(zip(t.vertices, vals[:3])))
    g = GaugeFunction.make(Z6, dict(zip(t.vertices, vals[3:])))
    assert gauge_act(gauge_compose(f, g), r) == gauge_act(f, gauge_act(g, r))


def test_restrict_keep_all_is_identity():
    t = torus_two_vertex()
    r = random_rep(t, Z5, random.Random(2))
    assert restrict_rep(r, t.vertices) is r


def test_restrict_sphere_pair():
    r = validate_rep(sphere_bigon(), {"arc": "(12)"}, S3)
    out = restrict_rep(r, ["p"])
    assert out.tri.vertices == ("p",) and out.labels == ()


def test_restrict_empty_component():
    r = trivial_rep(torus_two_vertex(), Z5)
    with pytest.raises(EmptyComponent):
        restrict_rep(r, [])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_restriction_keeps_loop_values(seed):
    rng = random.Random(seed)
    t = genus2_two_vertex()
    G = S3
    r = random_rep(t, G, rng)
    out = restrict_rep(r, ["p"])
    # a loop at p that goes through q has the same value after contraction
    for k, e in enumerate(t.edges):
        if e.start == "p" and e.end == "p":
            assert out.root_path_value([(k, 1)]) == r.path_value([(k, 1)])
    path = t.path_between("p", "q") + t.path_between("q", "p")
    if path:
        assert out.root_path_value(path) == r.path_value(path)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_equivalence_detects_gauge_shift(seed):
    rng = random.Random(seed)
    t = torus_two_vertex()
    r = random_rep(t, S3, rng)
    f = GaugeFunction.make(S3, {v: rng.randrange(6) for v in t.vertices})
    assert reps_equal_up_to_equivalence(r, gauge_act(f, r))


def test_equivalence_distinguishes_abelian_loops():
    t = torus_one_vertex()
    a = validate_rep(t, {"a": 1, "b": 2, "c": 3}, Z5)
    b = validate_rep(t, {"a": 2, "b": 1, "c": 3}, Z5)
    assert reps_equal_up_to_equivalence(a, a)
    assert not reps_equal_up_to_equivalence(a, b)
