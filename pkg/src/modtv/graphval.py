"""Closed colored graphs consumed by the state sum, and identity checks on backend data.

Tetrahedra use the vertex order ``P0 < P1 < P2 < P3``; the six labels are the
colors of the forward edges ``01, 02, 03, 12, 13, 23`` and face ``m`` (the
face opposite ``Pm``) carries one basis index of the multiplicity space of
its boundary-oriented triple.  Because bases are fixed once per cyclic class,
an even reordering of the vertices only rotates each face triple, so basis
indices travel unchanged.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .catdata import (
    EDGE_PAIRS,
    CategoryBackend,
    CheckResult,
    FormalColor,
    canonical_rotation,
    edge_label,
    face_triples,
    identity_matrix,
    mat_mul,
    transpose,
)
from .cyclotomic import Scalar
from .errors import DegreeInBadSet, InadmissibleLabel, IndexOutOfRange

EVEN_PERMS = tuple(p for p in itertools.permutations(range(4))
                   if sum(p[i] > p[j] for i in range(4) for j in range(i + 1, 4)) % 2 == 0)


@dataclass(frozen=True)
class TetLabel:
    labels: tuple[int, ...]
    sign: int = 1
    basis: tuple[int, int, int, int] = (0, 0, 0, 0)
    order: tuple = (0, 1, 2, 3)  # names of the vertices, informational

    def faces(self, backend: CategoryBackend) -> list[tuple[int, int, int]]:
        return face_triples(self.labels, self.sign, backend.star)


def eval_unknot(backend: CategoryBackend, i: int) -> Scalar:
    return backend.d[i]


def eval_theta(backend: CategoryBackend, triple: Sequence[int], x: int, y: int) -> Scalar:
    i, j, k = triple
    n = backend.N(i, j, k)
    if not (0 <= x < n and 0 <= y < n):
        raise IndexOutOfRange(f"basis index out of range for N = {n}",
                              {"triple": backend.triple_names(triple), "x": x, "y": y})
    return backend.gram(i, j, k)[x][y]


def permute_label(backend: CategoryBackend, label: TetLabel, perm: Sequence[int]) -> TetLabel:
    """Relabel the tetrahedron so that its new vertex ``m`` is old vertex ``perm[m]``."""
    labels = tuple(edge_label(label.labels, perm[a], perm[b], backend.star) for a, b in EDGE_PAIRS)
    basis = tuple(label.basis[perm[m]] for m in range(4))
    order = tuple(label.order[perm[m]] for m in range(4))
    return TetLabel(labels, label.sign, basis, order)


def _check_admissible(backend: CategoryBackend, label: TetLabel) -> None:
    if len(label.labels) != 6 or label.sign not in (1, -1):
        raise InadmissibleLabel("a tet label needs six edge colors and a sign", list(label.labels))
    for m, f in enumerate(label.faces(backend)):
        n = backend.N(*f)
        if n == 0:
            raise InadmissibleLabel(f"face {m} has no multiplicity space",
                                    {"face": m, "triple": backend.triple_names(f)})
        if not 0 <= label.basis[m] < n:
            raise IndexOutOfRange(f"basis index {label.basis[m]} out of range on face {m}",
                                  {"face": m, "N": n})


def canonical_key(backend: CategoryBackend, label: TetLabel) -> tuple:
    keys = []
    for p in EVEN_PERMS:
        q = permute_label(backend, label, p)
        keys.append((q.labels, q.basis))
    return (label.sign,) + min(keys)


def _lookup(backend: CategoryBackend, label: TetLabel) -> Scalar:
    table = backend.tet_table(label.sign)
    try:
        return table[tuple(label.labels)][tuple(label.basis)]
    except KeyError:
        raise InadmissibleLabel("no tet entry stored for this label",
                                {"labels": backend.triple_names(label.labels), "sign": label.sign}) from None


def eval_tet(backend: CategoryBackend, label: TetLabel) -> Scalar:
    """Stored tetrahedral evaluation, memoized per even-permutation class.

    The memo is only sound when the backend passes :func:`check_even_permutation`;
    :func:`eval_tet_raw` bypasses it.
    """
    _check_admissible(backend, label)
    cache = backend._cache.setdefault("tet", {})
    key = canonical_key(backend, label)
    val = cache.get(key)
    if val is None:
        val = _lookup(backend, label)
        cache[key] = val
    return val


def eval_tet_raw(backend: CategoryBackend, label: TetLabel) -> Scalar:
    _check_admissible(backend, label)
    return _lookup(backend, label)


def _face_classes_match(backend: CategoryBackend, label: TetLabel, perm) -> bool:
    old = label.faces(backend)
    new = permute_label(backend, label, perm).faces(backend)
    # face m of the new tet is face perm[m] of the old one, as a rotation of the same triple
    return all(canonical_rotation(new[m]) == canonical_rotation(old[perm[m]]) for m in range(4))


def all_tet_labels(backend: CategoryBackend, signs: Iterable[int] = (1, -1)):
    for sign in signs:
        for labels, tensor in backend.tet_table(sign).items():
            for basis in tensor:
                yield TetLabel(tuple(labels), sign, tuple(basis))


def check_even_permutation(backend: CategoryBackend, label: TetLabel | None = None) -> CheckResult:
    """Invariance of the raw tet tables under the twelve even reorderings.

    With ``label=None`` every stored entry of both tables is scanned.
    """
    labels = [label] if label is not None else list(all_tet_labels(backend))
    for lab in labels:
        base = eval_tet_raw(backend, lab)
        for p in EVEN_PERMS[1:]:
            if not _face_classes_match(backend, lab, p):
                raise AssertionError("even permutation moved a face out of its cyclic class")
            other = permute_label(backend, lab, p)
            try:
                val = eval_tet_raw(backend, other)
            except InadmissibleLabel:
                val = None
            if val != base:
                return CheckResult(False, {
                    "labels": backend.triple_names(lab.labels), "sign": lab.sign, "basis": list(lab.basis),
                    "permutation": list(p), "value": str(base), "permuted_value": str(val),
                }, "tet evaluation is not invariant under an even reordering")
    return CheckResult(True)


def check_cancellation_12(backend: CategoryBackend, g: int) -> CheckResult:
    """Kirby-colored circle around a pair of strands, cut open with the copairing.

    For ``V`` of degree ``g`` and ``W`` of degree ``h`` (with ``h, gh``
    generic) fusing ``V (x) W`` through the ``gh`` Kirby color and closing up
    gives ``sum_i d(i) tr(C(V,W,i*) gram(V,W,i*))``, which must equal the
    value ``d(V) d(W)`` of the two parallel unknots.
    """
    B, G = backend, backend.group
    if g in B.badset:
        raise DegreeInBadSet(f"degree {G.name(g)} lies in the bad set", {"degree": G.name(g)})
    F = B.field
    for h in G.elements:
        gh = G.mul(g, h)
        if h in B.badset or gh in B.badset:
            continue
        for v in B.simples_of_degree(g):
            for w in B.simples_of_degree(h):
                total = F.zero()
                for i in B.simples_of_degree(gh):
                    t = (v, w, B.star[i])
                    n = B.N(*t)
                    if not n:
                        continue
                    C, M = B.copairing_matrix(*t), B.gram(*t)
                    for x in range(n):
                        for y in range(n):
                            total = total + B.d[i] * C[x][y] * M[y][x]
                want = B.d[v] * B.d[w]
                if total != want:
                    return CheckResult(False, {"degree": G.name(g), "V": B.simple_names[v], "W": B.simple_names[w],
                                               "value": str(total), "expected": str(want)},
                                       "handle pair does not cancel")
    return CheckResult(True)


def check_cancellation_23(backend: CategoryBackend, samples: Iterable[Sequence[int]] | None = None) -> CheckResult:
    """``sum_i t(f x^i) x_i = f`` on each sampled multiplicity space.

    In coordinates: ``gram . C`` is the identity and the copairing of the
    partner space is the transpose.
    """
    B = backend
    triples = [tuple(t) for t in samples] if samples is not None else B.admissible_triples()
    for t in triples:
        n = B.N(*t)
        if not n:
            continue
        C = B.copairing_matrix(*t)
        if mat_mul(B.gram(*t), C, B.field) != identity_matrix(n, B.field):
            return CheckResult(False, {"triple": B.triple_names(t)}, "copairing is not inverse to the pairing")
        if B.copairing_matrix(*B.partner(t)) != transpose(C):
            return CheckResult(False, {"triple": B.triple_names(t)}, "partner copairing is not the transpose")
    return CheckResult(True)


def theta_pairing(backend: CategoryBackend, colors: Sequence[FormalColor]) -> Scalar:
    """Theta graph with three formally colored strands, summed over the diagonal basis pairs.

    Used to compare two-strand colors: a tensor pair ``(c1, c2)`` closes up
    against a test color ``c3`` of the inverse total degree.
    """
    B = backend
    total = B.field.zero()
    c1, c2, c3 = colors
    for i, a in c1.terms:
        for j, b in c2.terms:
            for k, c in c3.terms:
                n = B.N(i, j, k)
                for x in range(n):
                    total = total + a * b * c * eval_theta(B, (i, j, k), x, x)
    return total
