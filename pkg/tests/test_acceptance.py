"""End-to-end acceptance checks, each under its wall-clock budget.

A summary line per criterion is printed at the end of the pytest run.
"""

import contextlib
import random
import time

from conftest import ACCEPTANCE
from modtv import builtins
from modtv.catdata import check_chromatic, load_backend, validate_b
from modtv.decor import (
    genus2_one_vertex,
    genus2_two_vertex,
    random_rep,
    torus_one_vertex,
    torus_two_vertex,
    torus_with_vertices,
)
from modtv.equivalence import Decoration, evaluate_word, normal_form, random_subset, random_word
from modtv.gcore import cyclic_group, symmetric_group
from modtv.graphval import check_cancellation_12, check_cancellation_23, check_even_permutation
from modtv.skein import dual_graph_rep, intersect_path
from modtv.statesum import ContractionPlan, Stats, contract_state, enumerate_states, fuzz_invariance, tv_invariant
from modtv.tricomplex import gauge_move_phi, hamiltonian_cycle, make_h_triangulation, standard_h_triangulation


@contextlib.contextmanager
def criterion(n, label, limit=None):
    t0 = time.perf_counter()
    ACCEPTANCE[n] = (False, 0.0, limit, label)
    yield
    secs = time.perf_counter() - t0
    ok = limit is None or secs < limit
    ACCEPTANCE[n] = (ok, secs, limit, label)
    assert ok, f"criterion {n} took {secs:.2f}s, limit {limit}s"


def test_1_pointed_collapse():
    with criterion(1, "pointed collapse on the 4-simplex boundary", 1.0):
        rng = random.Random(1)
        for name in ("vec_z2", "vec_s3"):
            B = builtins.load_shipped(name)
            h = standard_h_triangulation(B.group, B)
            assert len(h.gamma) == 5 and h.gamma == hamiltonian_cycle(h.complex)
            for _ in range(3):
                stats = Stats()
                assert tv_invariant(h, B, stats=stats) == 1
                assert stats.states == 1
                h = gauge_move_phi(h, rng.choice(h.complex.vertices), rng.randrange(B.group.order))


def test_2_pachner_invariance():
    with criterion(2, "100-move Pachner fuzz, Fibonacci and Vec_Z2", 60.0):
        for name in ("fib", "vec_z2"):
            B = builtins.load_shipped(name)
            rep = fuzz_invariance(standard_h_triangulation(B.group, B), B, 100, seed=7, gauge=False)
            assert rep.ok, rep.as_dict()
            assert len(rep.log) == 100
            assert {"2-3", "3-2", "1-4", "4-1"} <= rep.kinds()


def test_3_gauge_invariance():
    with criterion(3, "50 gauge moves leave the invariant unchanged", 10.0):
        rng = random.Random(3)
        for name in ("vec_s3", "ising"):
            B = builtins.load_shipped(name)
            h = standard_h_triangulation(B.group, B)
            base = tv_invariant(h, B)
            for _ in range(50):
                h = gauge_move_phi(h, rng.choice(h.complex.vertices), rng.randrange(B.group.order))
                assert tv_invariant(h, B) == base
            assert any(g != B.group.identity for g in h.phi)


def _suite(B):
    G = B.group
    res = {"validate_b": validate_b(B),
           "check_even_permutation": check_even_permutation(B),
           "check_cancellation_23": check_cancellation_23(B)}
    generic = [g for g in G.elements if g not in B.badset]
    res["check_chromatic"] = next((r for g in generic for r in [check_chromatic(B, g)] if not r.ok), check_chromatic(B, generic[0]))
    res["check_cancellation_12"] = next((r for g in generic for r in [check_cancellation_12(B, g)] if not r.ok),
                                        check_cancellation_12(B, generic[0]))
    return res


def test_4_identity_suite():
    with criterion(4, "identity suite on shipped and corrupted backends", 5.0):
        for name in ("vec_z2", "vec_s3", "fib", "ising"):
            res = _suite(builtins.load_shipped(name))
            assert all(r.ok for r in res.values()), (name, res)
        corrupt = {
            "validate_b": "fib_bad_b",
            "check_chromatic": "fib_bad_d",
            "check_even_permutation": "fib_bad_tet",
            "check_cancellation_12": "fib_bad_gram",
            "check_cancellation_23": "fib_bad_gram",
        }
        for check, name in corrupt.items():
            r = _suite(load_backend(builtins.backend_path(name)))[check]
            assert not r.ok and r.witness, (check, name)


def test_5_groupoid_normal_forms():
    with criterion(5, "1000 random words over Z/6 and S3", 10.0):
        rng = random.Random(5)
        tri = torus_with_vertices(3)
        groups = [cyclic_group(6), symmetric_group(3)]
        for i in range(1000):
            G = groups[i % 2]
            src = Decoration(random_subset(rng, tri.vertices), random_rep(tri, G, rng))
            w = random_word(src, rng.randint(1, 8), rng)
            assert normal_form(w).target.same(evaluate_word(w))


def test_6_intersection_bijection():
    with criterion(6, "200 intersection-pairing round trips", 5.0):
        rng = random.Random(6)
        surfaces = [torus_one_vertex(), torus_two_vertex(), genus2_one_vertex(), genus2_two_vertex()]
        groups = [cyclic_group(5), symmetric_group(3)]
        for i in range(200):
            tri = surfaces[i % 4]
            G = groups[(i // 4) % 2]
            rho = random_rep(tri, G, rng)
            sk = dual_graph_rep(rho)
            for k in range(len(tri.edges)):
                assert intersect_path([(k, 1)], sk) == rho((k, 1))


def test_7_fibonacci_b_identity():
    with criterion(7, "Fibonacci b-function identity in Q(zeta5)", 1.0):
        phi = builtins.golden()
        assert phi * phi == phi + 1
        assert validate_b(builtins.load_shipped("fib")).ok


def test_8_contraction_plan_independence():
    with criterion(8, "two contraction plans agree on 20 Fibonacci states", 5.0):
        B = builtins.load_shipped("fib")
        c = standard_h_triangulation(B.group, B).complex
        h = make_h_triangulation(c, hamiltonian_cycle(c), None, B.group, B)
        states = list(enumerate_states(h, B))
        picked = random.Random(8).sample(states, 20)
        for k, s in enumerate(picked):
            p1 = ContractionPlan.greedy(h, B, s)
            p2 = ContractionPlan(tuple(reversed(p1.faces)))
            p3 = ContractionPlan.shuffled(h, k)
            assert p1 != p2
            a = contract_state(h, B, s, plan=p1, fast=False)
            assert a == contract_state(h, B, s, plan=p2, fast=False)
            assert a == contract_state(h, B, s, plan=p3, fast=False)
