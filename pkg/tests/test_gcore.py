import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from modtv.errors import SchemaError
from modtv.gcore import GaugeFunction, cyclic_group, gauge_compose, group_from_table, load_group, symmetric_group

S3 = symmetric_group(3)
Z6 = cyclic_group(6)


def test_z2_table():
    G = group_from_table([[0, 1], [1, 0]])
    assert G.order == 2 and G.identity == 0
    assert G.inv[1] == 1


def test_s3_nonabelian():
    assert S3.order == 6
    assert not S3.is_abelian()
    assert Z6.is_abelian()


@pytest.mark.parametrize("G", [Z6, S3, cyclic_group(5)])
def test_group_axioms(G):
    for a, b, c in itertools.product(G.elements, repeat=3):
        assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
    for a in G.elements:
        assert G.mul(a, G.inv[a]) == G.identity


def test_bad_tables():
    with pytest.raises(Exception):
        group_from_table([[0, 1], [0, 1]])
    with pytest.raises(SchemaError):
        load_group({"order": 3, "table": [[0, 1], [1, 0]]})


def test_load_builtin_and_names():
    G = load_group({"builtin": "s3"})
    assert G == S3
    for g in G.elements:
        assert G.index(G.name(g)) == g
    assert load_group(Z6.to_json()) == Z6


@given(st.dictionaries(st.sampled_from("pqr"), st.integers(0, 5), min_size=1),
       st.dictionaries(st.sampled_from("pqr"), st.integers(0, 5), min_size=1))
def test_gauge_compose_inverse(a, b):
    f = GaugeFunction.make(S3, a)
    assert gauge_compose(f, f.inverse()).is_identity()
    g = GaugeFunction.make(S3, b)
    # composing with the identity changes nothing on the common domain
    one = GaugeFunction.identity(S3, g.domain)
    assert gauge_compose(g, one).restrict(g.domain) == g
