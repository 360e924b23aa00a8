import dataclasses
import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modtv import builtins
from modtv.catdata import canonical_rotation, face_triples, load_backend
from modtv.errors import InadmissibleState, UnsupportedDecoration
from modtv.gcore import cyclic_group
from modtv.tricomplex import gauge_move_phi, load_h_triangulation, standard_h_triangulation
from modtv.statesum import (
    ContractionPlan,
    Stats,
    contract_state,
    count_states,
    edge_domains,
    enumerate_states,
    fuzz_invariance,
    state_weight,
    tv_invariant,
)


def _tri(name, B):
    return load_h_triangulation(builtins.backend_path(name), B.group, B)


def test_pointed_collapse(vec_z2, vec_s3):
    for B in (vec_z2, vec_s3):
        h = standard_h_triangulation(B.group, B)
        stats = Stats()
        assert tv_invariant(h, B, stats=stats) == 1
        assert stats.states == 1


def test_fibonacci_sphere(fib):
    phi = builtins.golden()
    h = standard_h_triangulation(fib.group, fib)
    val = tv_invariant(h, fib)
    assert val == 1 / (phi + 2)
    assert val == tv_invariant(_tri("s3_pachner", fib), fib)


def test_ising_sphere_hand_count(ising):
    # only degree-0 colors (1, p) occur; 2^4 flat Z/2 colorings, b = 1/2 on the five gamma edges
    h = standard_h_triangulation(ising.group, ising)
    assert count_states(h, ising) == 16
    assert tv_invariant(h, ising) == ising.field.from_fraction(1) * 16 / 2**5


@pytest.mark.parametrize("name", ["fib", "ising", "vec_s3"])
def test_methods_agree(name):
    B = builtins.load_shipped(name)
    h = _tri("s3_pachner", B)
    assert tv_invariant(h, B, method="states") == tv_invariant(h, B)


def test_parallel_matches_serial(fib):
    h = _tri("s3_pachner", fib)
    assert tv_invariant(h, fib, method="states", jobs=2) == tv_invariant(h, fib, method="states")


@pytest.mark.parametrize("name", ["fib", "ising"])
def test_brute_force_oracle(name):
    # sum over the full product of edge domains; inadmissible states raise and are skipped
    B = builtins.load_shipped(name)
    h = standard_h_triangulation(B.group, B)
    total, n = B.field.zero(), 0
    for state in itertools.product(*edge_domains(h, B)):
        try:
            v = contract_state(h, B, state)
        except InadmissibleState:
            continue
        n += 1
        total = total + state_weight(h, B, state) * v
    assert n == count_states(h, B) == len(list(enumerate_states(h, B)))
    assert total == tv_invariant(h, B)


def test_general_path_matches_fast_path(fib):
    h = _tri("s3_pachner", fib)
    for k, s in enumerate(enumerate_states(h, fib)):
        if k > 30:
            break
        a = contract_state(h, fib, s)
        b = contract_state(h, fib, s, plan=ContractionPlan.shuffled(h, k), fast=False)
        assert a == b


def test_plan_must_cover_faces(fib):
    h = standard_h_triangulation(fib.group, fib)
    s = next(enumerate_states(h, fib))
    with pytest.raises(ValueError):
        contract_state(h, fib, s, plan=ContractionPlan((0, 1)), fast=False)


def _rescaled(B, cls, lam, mu):
    """Same category with the basis of class ``cls`` scaled by ``lam`` and its partner class by ``mu``."""
    cls = canonical_rotation(cls)
    part = canonical_rotation(B.partner(cls))
    if part == cls:
        mu = lam
    gram = {}
    for key, m in B.gram_table.items():
        f = lam * mu if key in (cls, part) else 1
        gram[key] = tuple(tuple(x * f for x in row) for row in m)

    def tensors(sign, table):
        out = {}
        for labels, tensor in table.items():
            f = 1
            for tr in face_triples(labels, sign, B.star):
                r = canonical_rotation(tr)
                f = f * (lam if r == cls else mu if r == part else 1)
            out[labels] = {k: v * f for k, v in tensor.items()}
        return out

    return dataclasses.replace(B, gram_table=gram, tet_plus=tensors(1, B.tet_plus),
                               tet_minus=tensors(-1, B.tet_minus), _cache={})


@pytest.mark.parametrize("name,cls,lam,mu", [
    ("fib", ("1", "t", "t"), 3, 3),
    ("fib", ("t", "t", "t"), -2, -2),
    ("ising", ("p", "s", "s"), 5, 5),
    ("vec_s3", ("v(12)", "v(13)", "v(123)"), 2, 7),
])
def test_basis_rescaling_invariance(name, cls, lam, mu):
    B = builtins.load_shipped(name)
    cls = tuple(B.index(x) for x in cls)
    assert B.N(*cls) == 1
    R = _rescaled(B, cls, B.field.coerce(lam), B.field.coerce(mu))
    assert R.gram(*cls) != B.gram(*cls)
    for tri in ("s3_boundary4simplex", "s3_pachner"):
        h = _tri(tri, B)
        if name == "vec_s3":
            h = gauge_move_phi(gauge_move_phi(h, 1, 3), 2, 1)
        assert tv_invariant(h, R) == tv_invariant(h, B)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_gauge_invariance_s3(seed):
    B = builtins.load_shipped("vec_s3")
    rng = random.Random(seed)
    h = _tri("s3_pachner", B)
    base = tv_invariant(h, B)
    for _ in range(5):
        h = gauge_move_phi(h, rng.choice(h.complex.vertices), rng.randrange(6))
        assert tv_invariant(h, B) == base


def test_group_mismatch(fib):
    h = standard_h_triangulation(cyclic_group(2))
    with pytest.raises(UnsupportedDecoration):
        tv_invariant(h, fib)


@pytest.mark.parametrize("name", ["fib", "ising", "vec_s3"])
def test_short_fuzz(name):
    B = builtins.load_shipped(name)
    rep = fuzz_invariance(_tri("s3_boundary4simplex", B), B, 20, seed=11)
    assert rep.ok, rep.as_dict()


def test_fuzz_catches_corrupt_tet():
    B = load_backend(builtins.fib_bad_tet())
    rep = fuzz_invariance(standard_h_triangulation(B.group, B), B, 30, seed=7)
    assert not rep.ok and rep.first_bad is not None
    assert rep.log[rep.first_bad]["value"] != str(rep.baseline)


def test_fuzz_is_deterministic(vec_z2):
    h = standard_h_triangulation(vec_z2.group, vec_z2)
    a = fuzz_invariance(h, vec_z2, 15, seed=3).as_dict()
    b = fuzz_invariance(h, vec_z2, 15, seed=3).as_dict()
    assert a == b


def test_fuzz_walk_stays_small(vec_z2):
    # without gauge moves the walk must still make progress and not drift upward
    h = standard_h_triangulation(vec_z2.group, vec_z2)
    rep = fuzz_invariance(h, vec_z2, 200, seed=0, gauge=False, max_tets=10)
    assert rep.ok and len(rep.log) == 200
    assert max(e["tets"] for e in rep.log) <= 20
    assert {"2-3", "3-2", "1-4", "4-1"} <= rep.kinds()
