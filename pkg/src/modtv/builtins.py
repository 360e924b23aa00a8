"""Builders for the shipped backends and their deliberately broken variants.

The JSON files under ``modtv/data`` are generated from these functions
(``python -m modtv.builtins`` rewrites them) and a test keeps the two in
sync.

Fibonacci data
--------------
Simples ``1`` and ``t`` (self-dual), ``t (x) t = 1 + t``.  In Q(zeta_5) the
golden ratio is ``phi = 1 + z + z^4``.  Trivalent vertices are normalized
so that the theta graphs are ``theta(1,1,1) = 1``, ``theta(1,t,t) = phi``
(the vertex with a unit leg is the plain cup) and ``theta(t,t,t) = 1``.
A tetrahedral network only depends on the set ``S`` of edges colored
``t``; the admissible shapes are:

* ``S`` empty: 1;
* three edges at a vertex, or a 4-cycle: the network is a single ``t``
  loop, value ``phi``;
* five edges: a theta graph, value 1;
* all six: ``-1/phi^2``, the 6j symbol ``F_tt = -1/phi`` times
  ``theta^2 / d_t``.

Ising data
----------
Simples ``1, p`` in degree 0 and ``s`` in degree 1 of Z/2, with
``s (x) s = 1 + p``, ``p (x) s = s`` and ``d(s) = sqrt2 = z - z^3`` in
Q(zeta_8).  Vertices are normalized so that
``theta(a,b,c) = sqrt(d(a) d(b) d(c))``, i.e. ``theta(p,s,s) = sqrt2``.
The ``s`` edges of an admissible tetrahedron are empty, a 4-cycle or a
star.  Without ``s`` edges the network is a union of ``p`` loops (value 1).
Otherwise it is an ``s`` loop decorated by at most two ``p`` chords; the
value is ``sqrt2`` except for the 4-cycle whose two remaining edges are
both ``p``, where the entry ``F_pp = -1/sqrt2`` gives ``-sqrt2``.
"""

from __future__ import annotations

import itertools
import json
from pathlib import Path

from .catdata import (
    CategoryBackend,
    canonical_rotation,
    check_structure,
    derive_minus_table,
    dump_backend,
    face_triples,
    load_backend,
    rotations,
    vec_group_backend,
)
from .cyclotomic import CyclotomicField
from .gcore import cyclic_group, symmetric_group

DATA_DIR = Path(__file__).with_name("data")


def _all_admissible_labels(n_simples: int, star, N):
    for labels in itertools.product(range(n_simples), repeat=6):
        if all(N(*f) for f in face_triples(labels, 1, star)):
            yield labels


def _finish(name, field_, group, names, degree, star, d, b, badset, unit, n_classes, gram, tet_value):
    n_table = {}
    for t, n in n_classes.items():
        for r in rotations(t):
            n_table[r] = n
    N = lambda i, j, k: n_table.get((i, j, k), 0)  # noqa: E731
    plus = {}
    for labels in _all_admissible_labels(len(names), star, N):
        plus[labels] = {(0, 0, 0, 0): tet_value(labels)}
    gram_table = {canonical_rotation(t): m for t, m in gram.items()}
    B = CategoryBackend(name, field_, group, tuple(names), tuple(degree), tuple(star), tuple(d), tuple(b),
                        frozenset(badset), unit, n_table, gram_table, {}, plus, derive_minus_table(plus, star))
    check_structure(B)
    return B


def golden(field_=None):
    F = field_ or CyclotomicField(5)
    return F.from_coeffs([1, 1, 0, 0, 1])


def fibonacci_backend() -> CategoryBackend:
    F = CyclotomicField(5)
    G = cyclic_group(1)
    phi = golden(F)
    one = F.one()
    D2 = phi + 2
    ONE, T = 0, 1

    def tet(labels):
        S = frozenset(k for k, x in enumerate(labels) if x == T)
        if not S:
            return one
        if len(S) == 6:
            return -(phi * phi).inverse()
        if len(S) == 5:
            return one
        return phi  # a single t loop: star or 4-cycle

    return _finish(
        "fib", F, G, ["1", "t"], [0, 0], [0, 1], [one, phi], [D2.inverse(), phi / D2], [], ONE,
        {(ONE, ONE, ONE): 1, (ONE, T, T): 1, (T, T, T): 1},
        {(ONE, ONE, ONE): ((one,),), (ONE, T, T): ((phi,),), (T, T, T): ((one,),)},
        tet,
    )


def ising_backend() -> CategoryBackend:
    F = CyclotomicField(8)
    G = cyclic_group(2)
    r2 = F.from_coeffs([0, 1, 0, -1])  # z - z^3 = sqrt 2
    one = F.one()
    ONE, P, S = 0, 1, 2
    d = [one, one, r2]
    n_classes = {(ONE, ONE, ONE): 1, (ONE, P, P): 1, (ONE, S, S): 1, (P, S, S): 1}
    gram = {(ONE, ONE, ONE): ((one,),), (ONE, P, P): ((one,),), (ONE, S, S): ((r2,),), (P, S, S): ((r2,),)}

    def tet(labels):
        s_edges = [k for k, x in enumerate(labels) if x == S]
        if not s_edges:
            return one  # 1/p networks are loops of p with d(p) = 1
        if len(s_edges) == 4:
            # the two edges off the s cycle are opposite: (01,23), (02,13) or (03,12)
            rest = [labels[k] for k in range(6) if k not in s_edges]
            if rest == [P, P]:
                return -r2
        return r2

    return _finish("ising", F, G, ["1", "p", "s"], [0, 0, 1], [0, 1, 2], d,
                   [x / 2 for x in d], [], ONE, n_classes, gram, tet)


def toy_z4_backend() -> CategoryBackend:
    """Vec_{Z/4} with b(k) = (-1)^k and bad set {2}, for the two-strand b-color."""
    G = cyclic_group(4)
    base = vec_group_backend(G, {k: (-1) ** k for k in range(4)}, name="toy_z4")
    B = CategoryBackend(base.name, base.field, G, base.simple_names, base.degree, base.star, base.d, base.b,
                        frozenset({2}), base.unit, base.n_table, base.gram_table, {}, base.tet_plus, base.tet_minus)
    check_structure(B)
    return B


# ---------------------------------------------------------------------------
# corrupted variants


def _doc(B: CategoryBackend) -> dict:
    return dump_backend(B)


def fib_bad_b() -> dict:
    """b := d."""
    doc = _doc(fibonacci_backend())
    doc["name"] = "fib_bad_b"
    for s in doc["simples"]:
        s["b"] = s["d"]
    return doc


def fib_bad_d() -> dict:
    """d(t) := 1."""
    doc = _doc(fibonacci_backend())
    doc["name"] = "fib_bad_d"
    for s in doc["simples"]:
        if s["name"] == "t":
            s["d"] = [1]
    return doc


def fib_bad_tet() -> dict:
    """One + entry altered (and its - image), breaking the even-permutation symmetry."""
    doc = _doc(fibonacci_backend())
    doc["name"] = "fib_bad_tet"
    for entry in doc["tet_plus"]:
        if entry["labels"] == ["t", "t", "t", "1", "1", "1"]:  # t star at vertex 0
            entry["value"] = [2]
    del doc["tet_minus"]  # regenerated from tet_plus on load
    return doc


def fib_bad_gram() -> dict:
    """Gram of (1,t,t) doubled while the copairing keeps its old value."""
    B = fibonacci_backend()
    doc = _doc(B)
    doc["name"] = "fib_bad_gram"
    phi = golden()
    for entry in doc["gram"]:
        if sorted(entry["triple"]) == ["1", "t", "t"]:
            entry["matrix"] = [[(phi * 2).to_json()]]
    doc["copairing"] = [{"triple": ["1", "t", "t"], "matrix": [[phi.inverse().to_json()]]}]
    return doc


def vec_z2_backend() -> CategoryBackend:
    return vec_group_backend(cyclic_group(2), name="vec_z2")


def vec_s3_backend() -> CategoryBackend:
    return vec_group_backend(symmetric_group(3), name="vec_s3")


def shipped_backend_docs() -> dict[str, dict]:
    return {
        "vec_z2": _doc(vec_z2_backend()),
        "vec_s3": _doc(vec_s3_backend()),
        "fib": _doc(fibonacci_backend()),
        "ising": _doc(ising_backend()),
        "fib_bad_b": fib_bad_b(),
        "fib_bad_d": fib_bad_d(),
        "fib_bad_tet": fib_bad_tet(),
        "fib_bad_gram": fib_bad_gram(),
    }


def backend_path(name: str) -> Path:
    return DATA_DIR / f"{name}.json"


def load_shipped(name: str) -> CategoryBackend:
    return load_backend(backend_path(name))


def write_data(directory: Path = DATA_DIR) -> list[Path]:
    from .tricomplex import shipped_triangulation_docs

    directory.mkdir(parents=True, exist_ok=True)
    out = []
    docs = dict(shipped_backend_docs())
    docs.update(shipped_triangulation_docs())
    for name, doc in docs.items():
        p = directory / f"{name}.json"
        p.write_text(json.dumps(doc, indent=1, sort_keys=False) + "\n", encoding="utf-8")
        out.append(p)
    return out


if __name__ == "__main__":
    for p in write_data():
        print(p)
