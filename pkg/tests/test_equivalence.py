import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modtv.decor import gauge_act, random_rep, torus_with_vertices
from modtv.equivalence import (
    Decoration,
    EquivalenceWord,
    Gauge,
    Restrict,
    evaluate_word,
    load_word,
    normal_form,
    normal_form_as_word,
    random_subset,
    random_word,
    word_to_json,
)
from modtv.errors import NotComposable
from modtv.gcore import GaugeFunction, cyclic_group, symmetric_group

TORUS = torus_with_vertices(3)
Z6 = cyclic_group(6)
S3 = symmetric_group(3)
ALL = frozenset(TORUS.vertices)


def _source(G, seed, base=ALL):
    return Decoration(frozenset(base), random_rep(TORUS, G, random.Random(seed)))


def test_identity_word():
    src = _source(S3, 0)
    w = EquivalenceWord(src, (Gauge(GaugeFunction.identity(S3, ALL)),))
    nf = normal_form(w)
    assert nf.phi.extend(nf.y2).is_identity()
    assert nf.y1 == nf.y2 == ALL
    assert nf.target.same(src)


def test_restrict_after_gauge():
    # R(Y1, Y2, rho) o J_phi with Y2 inside Y1
    G = S3
    src = _source(G, 1)
    phi = GaugeFunction.make(G, {"p": 1, "q1": 3, "q2": 4})
    y2 = frozenset(["p", "q1"])
    after = gauge_act(phi, src.ext)
    w = EquivalenceWord(src, (Restrict(ALL, y2, after), Gauge(phi)))
    nf = normal_form(w)
    assert nf.y1 == ALL and nf.y2 == y2
    assert nf.phi.extend(y2) == phi.restrict(y2).extend(y2)
    assert nf.target.same(evaluate_word(w))


def test_restrict_there_and_back():
    G = Z6
    src = _source(G, 2)
    y2 = frozenset(["p"])
    phi = GaugeFunction.make(G, {"p": 0, "q1": 2, "q2": 5})
    w = EquivalenceWord(src, (Restrict(y2, ALL, gauge_act(phi, src.ext)), Restrict(ALL, y2, src.ext)))
    nf = normal_form(w)
    assert nf.target.same(evaluate_word(w))


def test_not_composable():
    src = _source(Z6, 3, ["p"])
    bad = Restrict(ALL, frozenset(["p"]), src.ext)
    with pytest.raises(NotComposable):
        evaluate_word(EquivalenceWord(src, (bad,)))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([Z6, S3]), st.integers(1, 8))
def test_normal_form_matches_evaluation(seed, G, length):
    rng = random.Random(seed)
    src = Decoration(random_subset(rng, TORUS.vertices), random_rep(TORUS, G, rng))
    w = random_word(src, length, rng)
    nf = normal_form(w)
    assert nf.target.same(evaluate_word(w))
    # the normal form is itself a word with the same target, and is a fixed point
    again = normal_form(normal_form_as_word(nf))
    assert again.same(nf)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_word_json_roundtrip(seed):
    rng = random.Random(seed)
    src = Decoration(random_subset(rng, TORUS.vertices), random_rep(TORUS, S3, rng))
    w = random_word(src, 5, rng)
    back = load_word(word_to_json(w), TORUS, S3)
    assert normal_form(back).same(normal_form(w))
