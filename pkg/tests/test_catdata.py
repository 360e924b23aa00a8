import json

import pytest

from modtv import builtins
from modtv.catdata import (
    b_color,
    check_chromatic,
    dump_backend,
    extend_b_color,
    kirby_color,
    load_backend,
    validate_b,
    vec_group_backend,
)
from modtv.cyclotomic import CyclotomicField
from modtv.errors import BadBFunction, BadDegreeSample, NoValidH, SchemaError
from modtv.gcore import cyclic_group

F5 = CyclotomicField(5)


def test_fibonacci_b_uses_golden_identity(fib):
    phi = builtins.golden()
    assert phi * phi == phi + 1
    # b(1) + b(t) d(t) = (1 + phi^2) / (2 + phi) = 1 exactly
    assert fib.b[0] * fib.d[0] + fib.b[1] * fib.d[1] == 1
    assert validate_b(fib).ok


def test_fibonacci_data(fib):
    t = fib.index("t")
    assert fib.N(t, t, t) == 1 and fib.N(0, 0, t) == 0
    assert fib.gram(0, t, t) == fib.gram(t, t, 0) == ((builtins.golden(),),)
    assert fib.is_multiplicity_free()


def test_ising_data(ising):
    s = ising.index("s")
    r2 = ising.d[s]
    assert r2 * r2 == 2
    assert ising.N(s, s, s) == 0
    assert validate_b(ising).ok


@pytest.mark.parametrize("name", ["vec_z2", "vec_s3", "fib", "ising"])
def test_chromatic_on_shipped(name):
    B = builtins.load_shipped(name)
    for g in B.group.elements:
        assert check_chromatic(B, g).ok


def test_bad_b_fails_with_witness():
    B = load_backend(builtins.fib_bad_b())
    res = validate_b(B)
    assert not res.ok and "sum" in res.witness


def test_bad_d_fails_chromatic():
    B = load_backend(builtins.fib_bad_d())
    res = check_chromatic(B, 0)
    assert not res.ok and res.witness["simple"] == "t"


def test_vec_group_b_must_be_a_character():
    with pytest.raises(BadBFunction):
        vec_group_backend(cyclic_group(3), {0: 1, 1: 2, 2: 2})


def test_toy_z4_bad_set():
    B = builtins.toy_z4_backend()
    assert B.badset == {2}
    assert validate_b(B).ok
    with pytest.raises(BadDegreeSample):
        validate_b(B, samples=[(1, 1)])
    # degree 2 is bad, so its b-color needs a two-strand split avoiding 2
    c1, c2 = extend_b_color(B, 2)
    assert {B.degree[i] for i, _ in c1.terms} | {B.degree[i] for i, _ in c2.terms} <= {1, 3}
    with pytest.raises(NoValidH):
        extend_b_color(B, 2, h=2)


def test_colors(fib):
    assert b_color(fib, 0).weight(1) == fib.b[1]
    assert kirby_color(fib, 0).weight(1) == fib.d[1]


@pytest.mark.parametrize("make", [builtins.fibonacci_backend, builtins.ising_backend, builtins.vec_s3_backend])
def test_json_roundtrip(make):
    B = make()
    again = load_backend(json.loads(json.dumps(dump_backend(B))))
    assert again.d == B.d and again.b == B.b and again.n_table == B.n_table
    assert again.tet_plus == B.tet_plus and again.tet_minus == B.tet_minus


def test_schema_errors():
    with pytest.raises(SchemaError):
        load_backend([1, 2])
    doc = builtins.fib_bad_b()
    del doc["simples"]
    with pytest.raises(SchemaError):
        load_backend(doc)
