import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modtv import builtins
from modtv.catdata import FormalColor, load_backend
from modtv.errors import DegreeInBadSet, InadmissibleLabel, IndexOutOfRange
from modtv.graphval import (
    EVEN_PERMS,
    TetLabel,
    all_tet_labels,
    canonical_key,
    check_cancellation_12,
    check_cancellation_23,
    check_even_permutation,
    eval_tet,
    eval_tet_raw,
    eval_theta,
    eval_unknot,
    permute_label,
    theta_pairing,
)

SHIPPED = ["vec_z2", "vec_s3", "fib", "ising"]


def test_even_perms():
    assert len(EVEN_PERMS) == 12 and EVEN_PERMS[0] == (0, 1, 2, 3)


def test_fibonacci_frozen_values(fib):
    phi = builtins.golden()
    T = fib.index("t")
    assert eval_unknot(fib, T) == phi
    assert eval_theta(fib, (0, T, T), 0, 0) == phi
    assert eval_theta(fib, (T, T, T), 0, 0) == 1
    assert eval_tet(fib, TetLabel((T,) * 6)) == -1 / (phi * phi)
    assert eval_tet(fib, TetLabel((0,) * 6)) == 1
    # t star at vertex 0 and a t 4-cycle both give phi
    assert eval_tet(fib, TetLabel((T, T, T, 0, 0, 0))) == phi
    assert eval_tet(fib, TetLabel((T, 0, T, T, 0, T))) == phi
    assert eval_tet(fib, TetLabel((T, T, T, T, T, 0))) == 1


def test_ising_frozen_values(ising):
    P, S = ising.index("p"), ising.index("s")
    r2 = ising.d[S]
    assert eval_theta(ising, (P, S, S), 0, 0) == r2
    # s 4-cycle 01-13-23-02 with the two p edges 03 and 12
    assert eval_tet(ising, TetLabel((S, S, P, P, S, S))) == -r2
    assert eval_tet(ising, TetLabel((S, S, 0, 0, S, S))) == r2
    assert eval_tet(ising, TetLabel((P, P, P, 0, 0, 0))) == 1


def test_out_of_range(fib):
    with pytest.raises(IndexOutOfRange):
        eval_theta(fib, (0, 1, 1), 1, 0)
    with pytest.raises(InadmissibleLabel):
        eval_tet(fib, TetLabel((1, 0, 0, 0, 0, 0)))
    with pytest.raises(IndexOutOfRange):
        eval_tet(fib, TetLabel((0,) * 6, basis=(0, 0, 1, 0)))


@pytest.mark.parametrize("name", SHIPPED)
def test_identities_on_shipped(name):
    B = builtins.load_shipped(name)
    assert check_even_permutation(B).ok
    assert check_cancellation_23(B).ok
    for g in B.group.elements:
        assert check_cancellation_12(B, g).ok


def test_bad_tet_caught():
    B = load_backend(builtins.fib_bad_tet())
    res = check_even_permutation(B)
    assert not res.ok
    assert res.witness["permutation"] in [list(p) for p in EVEN_PERMS]


def test_bad_gram_caught():
    B = load_backend(builtins.fib_bad_gram())
    r23 = check_cancellation_23(B)
    assert not r23.ok and sorted(r23.witness["triple"]) == ["1", "t", "t"]
    assert not check_cancellation_12(B, 0).ok


def test_bad_d_caught_by_handle_cancellation():
    assert not check_cancellation_12(load_backend(builtins.fib_bad_d()), 0).ok


def test_cancellation_12_rejects_bad_degree():
    B = builtins.toy_z4_backend()
    with pytest.raises(DegreeInBadSet):
        check_cancellation_12(B, 2)
    assert check_cancellation_12(B, 1).ok


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["fib", "ising", "vec_s3"]), st.integers(0, 10**6), st.sampled_from(EVEN_PERMS))
def test_canonical_key_is_orbit_invariant(name, k, p):
    B = builtins.load_shipped(name)
    labels = list(all_tet_labels(B))
    lab = labels[k % len(labels)]
    other = permute_label(B, lab, p)
    assert canonical_key(B, other) == canonical_key(B, lab)
    assert eval_tet_raw(B, other) == eval_tet_raw(B, lab)


def test_permute_composes(ising):
    lab = TetLabel((2, 2, 1, 1, 2, 2))
    for p in EVEN_PERMS:
        for q in EVEN_PERMS:
            pq = tuple(p[q[m]] for m in range(4))
            assert permute_label(ising, permute_label(ising, lab, p), q) == permute_label(ising, lab, pq)


def test_theta_pairing(fib):
    T = fib.index("t")
    one_t = FormalColor.make(fib, {T: fib.field.one()})
    one_1 = FormalColor.make(fib, {0: fib.field.one()})
    assert theta_pairing(fib, (one_1, one_t, one_t)) == builtins.golden()
    assert theta_pairing(fib, (one_t, one_t, one_t)) == 1
