"""Graded spherical category data: simples, fusion, dimensions, pairings.

Multiplicity spaces
-------------------
``H(i, j, k)`` has one stored basis per cyclic class of ``(i, j, k)``; the
rotations ``(j, k, i)`` and ``(k, i, j)`` reuse it unchanged.  The
pairing ``H(i,j,k) x H(k*,j*,i*) -> K`` is ``gram(i,j,k)``, with rows
indexing the first space.  Swapping the two factors transposes it, so
``gram(k*,j*,i*) == gram(i,j,k)^T``.

The copairing ``Omega`` is stored as ``C = gram^-1``: with ``e_x`` the
basis of ``H(i,j,k)`` and ``f_y`` that of the partner space,
``Omega = sum_{x,y} C[y][x] e_x (x) f_y``.  A backend document may carry
explicit copairing matrices (handy for testing corrupted data); otherwise
they are computed from the Gram matrices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .cyclotomic import CyclotomicField, Scalar, scalar_from_json
from .errors import (
    BadBFunction,
    BadDegreeSample,
    DegreeInBadSet,
    InvariantViolation,
    NoValidH,
    SchemaError,
    SingularGram,
)
from .gcore import FiniteGroup, load_group

Matrix = tuple[tuple[Scalar, ...], ...]
Triple = tuple[int, int, int]


# ---------------------------------------------------------------------------
# exact small linear algebra


def mat_mul(a: Matrix, b: Matrix, field: CyclotomicField) -> Matrix:
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(m)), field.zero()) for j in range(p)) for i in range(n)
    )


def mat_inverse(a: Matrix, field: CyclotomicField) -> Matrix:
    n = len(a)
    rows = [list(a[i]) + [field.one() if i == j else field.zero() for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = rows[col][col].inverse()
        rows[col] = [x * inv for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return tuple(tuple(row[n:]) for row in rows)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def identity_matrix(n: int, field: CyclotomicField) -> Matrix:
    return tuple(tuple(field.one() if i == j else field.zero() for j in range(n)) for i in range(n))


def trace(a: Matrix, field: CyclotomicField) -> Scalar:
    return sum((a[i][i] for i in range(len(a))), field.zero())


# ---------------------------------------------------------------------------


def canonical_rotation(t: Triple) -> Triple:
    return min(t, t[1:] + t[:1], t[2:] + t[:2])


def rotations(t: Triple) -> list[Triple]:
    return [t, t[1:] + t[:1], t[2:] + t[:2]]


@dataclass(frozen=True)
class CheckResult:
    """Outcome of an identity check; truthy when it passed."""

    ok: bool
    witness: object = None
    detail: str = ""

    def __bool__(self):
        return self.ok


@dataclass(frozen=True, eq=False)
class CategoryBackend:
    name: str
    field: CyclotomicField
    group: FiniteGroup
    simple_names: tuple[str, ...]
    degree: tuple[int, ...]
    star: tuple[int, ...]
    d: tuple[Scalar, ...]
    b: tuple[Scalar, ...]
    badset: frozenset
    unit: int
    n_table: Mapping[Triple, int]
    gram_table: Mapping[Triple, Matrix]  # keyed by canonical rotation
    copairing_table: Mapping[Triple, Matrix]  # explicit overrides, canonical rotation keys
    tet_plus: Mapping[tuple, Mapping[tuple, Scalar]]
    tet_minus: Mapping[tuple, Mapping[tuple, Scalar]]
    _cache: dict = field(default_factory=dict, repr=False)

    # -- simples
    @property
    def n_simples(self) -> int:
        return len(self.simple_names)

    def index(self, name) -> int:
        if isinstance(name, int) and not isinstance(name, bool):
            if 0 <= name < self.n_simples:
                return name
            raise SchemaError(f"simple index {name} out of range", name)
        try:
            return self.simple_names.index(str(name))
        except ValueError:
            raise SchemaError(f"unknown simple {name!r}", name) from None

    def simples_of_degree(self, g: int) -> list[int]:
        if g in self.badset:
            raise DegreeInBadSet(f"degree {self.group.name(g)} lies in the bad set", {"degree": self.group.name(g)})
        by_deg = self._cache.get("by_degree")
        if by_deg is None:
            by_deg = {}
            for i, dg in enumerate(self.degree):
                by_deg.setdefault(dg, []).append(i)
            self._cache["by_degree"] = by_deg
        return list(by_deg.get(g, []))

    def generic_degrees(self) -> list[int]:
        return [g for g in self.group.elements if g not in self.badset]

    # -- multiplicities
    def N(self, i: int, j: int, k: int) -> int:
        return self.n_table.get((i, j, k), 0)

    def partner(self, t: Triple) -> Triple:
        i, j, k = t
        s = self.star
        return (s[k], s[j], s[i])

    def admissible_triples(self) -> list[Triple]:
        return sorted(t for t, n in self.n_table.items() if n > 0)

    def is_multiplicity_free(self) -> bool:
        return all(n <= 1 for n in self.n_table.values())

    def gram(self, i: int, j: int, k: int) -> Matrix:
        t = (i, j, k)
        n = self.N(*t)
        if n == 0:
            return ()
        c = canonical_rotation(t)
        if c in self.gram_table:
            return self.gram_table[c]
        p = canonical_rotation(self.partner(t))
        if p in self.gram_table:
            return transpose(self.gram_table[p])
        raise SchemaError(f"no Gram matrix for {self.triple_names(t)}", self.triple_names(t))

    def copairing_matrix(self, i: int, j: int, k: int) -> Matrix:
        t = (i, j, k)
        if self.N(*t) == 0:
            return ()
        key = ("cop", t)
        if key not in self._cache:
            c = canonical_rotation(t)
            p = canonical_rotation(self.partner(t))
            if c in self.copairing_table:
                m = self.copairing_table[c]
            elif p in self.copairing_table:
                m = transpose(self.copairing_table[p])
            else:
                try:
                    m = mat_inverse(self.gram(*t), self.field)
                except ZeroDivisionError:
                    raise SingularGram(f"Gram matrix of {self.triple_names(t)} is singular",
                                       self.triple_names(t)) from None
            self._cache[key] = m
        return self._cache[key]

    def triple_names(self, t: Sequence[int]) -> list[str]:
        return [self.simple_names[x] for x in t]

    # -- tets
    def tet_table(self, sign: int):
        return self.tet_plus if sign > 0 else self.tet_minus

    def scalar(self, value) -> Scalar:
        return self.field.coerce(value)

    def __repr__(self):
        return f"CategoryBackend({self.name!r}, simples={list(self.simple_names)})"


# ---------------------------------------------------------------------------
# tet face conventions (shared with graphval and statesum)

# local edge order for vertex order (P0, P1, P2, P3)
EDGE_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
PAIR_INDEX = {p: n for n, p in enumerate(EDGE_PAIRS)}

# faces opposite P0..P3 as oriented vertex triples (boundary orientation)
FACES_PLUS = ((1, 2, 3), (0, 3, 2), (0, 1, 3), (0, 2, 1))
FACES_MINUS = ((1, 3, 2), (0, 2, 3), (0, 3, 1), (0, 1, 2))


def edge_label(labels: Sequence[int], a: int, b: int, star: Sequence[int]) -> int:
    """Label of the local oriented edge Pa -> Pb given the six forward labels."""
    if a < b:
        return labels[PAIR_INDEX[(a, b)]]
    return star[labels[PAIR_INDEX[(b, a)]]]


def face_triples(labels: Sequence[int], sign: int, star: Sequence[int]) -> list[Triple]:
    faces = FACES_PLUS if sign > 0 else FACES_MINUS
    out = []
    for a, b, c in faces:
        out.append((edge_label(labels, a, b, star), edge_label(labels, b, c, star), edge_label(labels, c, a, star)))
    return out


def minus_from_plus_labels(labels: Sequence[int], star: Sequence[int]) -> tuple[int, ...]:
    """Labels of order (A,C,B,D) from those of (A,B,C,D)."""
    l01, l02, l03, l12, l13, l23 = labels
    return (l02, l01, l03, star[l12], l23, l13)


# face slot k of the - tet at ABCD is slot MINUS_SLOT[k] of the + tet at ACBD
MINUS_SLOT = (0, 2, 1, 3)


# ---------------------------------------------------------------------------
# loading


def _scalar(field, data, where):
    try:
        return scalar_from_json(field, data)
    except (ValueError, TypeError) as exc:
        raise SchemaError(f"bad scalar at {where}: {exc}", where) from None


def _matrix(field, data, where) -> Matrix:
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise SchemaError(f"matrix expected at {where}", where)
    return tuple(tuple(_scalar(field, x, where) for x in row) for row in data)


def _tensor(field, data, dims, where) -> dict:
    out = {}

    def walk(node, idx):
        if len(idx) == 4:
            out[tuple(idx)] = _scalar(field, node, where)
            return
        if not isinstance(node, list) or len(node) != dims[len(idx)]:
            raise SchemaError(f"tensor shape mismatch at {where}", where)
        for x, sub in enumerate(node):
            walk(sub, idx + [x])

    walk(data, [])
    return out


def load_backend(doc, name: str | None = None) -> CategoryBackend:
    """Build a backend from its JSON document and check the structural invariants.

    The identity checks (b-function, chromatic, cancellation, tet symmetry)
    are separate because they are what a user wants reported, not raised.
    """
    if isinstance(doc, (str, Path)):
        path = Path(doc)
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise SchemaError(f"cannot read backend {path}: {exc}", str(path)) from None
        name = name or path.stem
    if not isinstance(doc, dict):
        raise SchemaError("backend document must be an object", None)
    try:
        n = int(doc["conductor"])
        field_ = CyclotomicField(n)
        group = load_group(doc["group"])
        simples = doc["simples"]
        names = tuple(str(s["name"]) for s in simples)
        if len(set(names)) != len(names):
            raise SchemaError("duplicate simple names", None)
        idx = {s: i for i, s in enumerate(names)}
        degree = tuple(group.index(s["degree"]) for s in simples)
        star = tuple(idx[str(s["star"])] for s in simples)
        d = tuple(_scalar(field_, s["d"], f"d[{s['name']}]") for s in simples)
        b = tuple(_scalar(field_, s["b"], f"b[{s['name']}]") for s in simples)
        badset = frozenset(group.index(x) for x in doc.get("badset", []))
        unit = idx[str(doc.get("unit", names[0]))]
        n_table: dict[Triple, int] = {}
        for entry in doc["N"]:
            *trip, dim = entry
            t = tuple(idx[str(x)] for x in trip)
            if len(t) != 3 or not isinstance(dim, int) or dim < 0:
                raise SchemaError(f"bad N entry {entry}", entry)
            for r in rotations(t):
                if r in n_table and n_table[r] != dim:
                    raise InvariantViolation(f"N is not cyclically invariant at {list(trip)}", list(trip))
                n_table[r] = dim
        n_table = {t: v for t, v in n_table.items() if v}
        gram_table: dict[Triple, Matrix] = {}
        for entry in doc.get("gram", []):
            t = tuple(idx[str(x)] for x in entry["triple"])
            gram_table[canonical_rotation(t)] = _matrix(field_, entry["matrix"], f"gram{list(entry['triple'])}")
        cop_table: dict[Triple, Matrix] = {}
        for entry in doc.get("copairing", []):
            t = tuple(idx[str(x)] for x in entry["triple"])
            cop_table[canonical_rotation(t)] = _matrix(field_, entry["matrix"], f"copairing{list(entry['triple'])}")
        tets = {}
        for key in ("tet_plus", "tet_minus"):
            table = {}
            for entry in doc.get(key, []):
                labels = tuple(idx[str(x)] for x in entry["labels"])
                if len(labels) != 6:
                    raise SchemaError(f"{key} entry needs six labels", entry["labels"])
                faces = face_triples(labels, 1 if key == "tet_plus" else -1, star)
                dims = [n_table.get(f, 0) for f in faces]
                if "tensor" in entry:
                    table[labels] = _tensor(field_, entry["tensor"], dims, f"{key}{entry['labels']}")
                else:
                    if any(x != 1 for x in dims):
                        raise SchemaError(f"{key} entry {entry['labels']} needs a tensor", entry["labels"])
                    table[labels] = {(0, 0, 0, 0): _scalar(field_, entry["value"], f"{key}{entry['labels']}")}
            tets[key] = table
    except KeyError as exc:
        raise SchemaError(f"missing field or unknown name {exc}", str(exc)) from None
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"malformed backend: {exc}", None) from None

    if not tets["tet_minus"] and tets["tet_plus"]:
        tets["tet_minus"] = derive_minus_table(tets["tet_plus"], star)
    backend = CategoryBackend(
        name or str(doc.get("name", "backend")), field_, group, names, degree, star, d, b, badset, unit,
        n_table, gram_table, cop_table, tets["tet_plus"], tets["tet_minus"],
    )
    check_structure(backend)
    return backend


def derive_minus_table(plus: Mapping, star: Sequence[int]) -> dict:
    out = {}
    # - tet at ABCD equals + tet at ACBD; enumerate via the + keys
    for labels_acbd, tensor in plus.items():
        l01, l02, l03, l12, l13, l23 = labels_acbd  # order A C B D
        labels = (l02, l01, l03, star[l12], l23, l13)
        out[labels] = {tuple(x[MINUS_SLOT[k]] for k in range(4)): v for x, v in tensor.items()}
    return out


def check_structure(B: CategoryBackend) -> None:
    """Structural invariants; raise on the first failure with a witness."""
    G = B.group
    for i, s in enumerate(B.star):
        if B.star[s] != i:
            raise InvariantViolation("star is not an involution", {"simple": B.simple_names[i]})
        if B.degree[s] != G.inv[B.degree[i]]:
            raise InvariantViolation("deg(star(i)) differs from deg(i)^-1", {"simple": B.simple_names[i]})
        if B.d[i].is_zero():
            raise InvariantViolation("modified dimension is zero", {"simple": B.simple_names[i]})
        if B.d[s] != B.d[i]:
            raise InvariantViolation("d(star(i)) differs from d(i)", {"simple": B.simple_names[i]})
    if B.degree[B.unit] != G.identity or B.star[B.unit] != B.unit:
        raise InvariantViolation("unit simple must be self-dual of trivial degree", None)
    if frozenset(G.inv[x] for x in B.badset) != B.badset:
        raise InvariantViolation("bad set is not closed under inversion", sorted(B.badset))
    if B.badset:
        # G must not be covered by two translates of X
        for g in G.elements:
            cover = B.badset | {G.mul(g, x) for x in B.badset}
            if len(cover) == G.order:
                raise InvariantViolation("bad set too large: G = X u gX", {"g": G.name(g)})
    for g in B.generic_degrees():
        if not B.simples_of_degree(g):
            raise InvariantViolation(f"no simple of generic degree {G.name(g)}", {"degree": G.name(g)})
    for t, n in B.n_table.items():
        if G.prod(B.degree[x] for x in t) != G.identity:
            raise InvariantViolation("N > 0 on a triple whose degrees do not multiply to 1", B.triple_names(t))
        if B.n_table.get(B.partner(t), 0) != n:
            raise InvariantViolation("N differs on a triple and its dual", B.triple_names(t))
    for t in B.admissible_triples():
        g = B.gram(*t)
        n = B.N(*t)
        if len(g) != n or any(len(r) != n for r in g):
            raise InvariantViolation("Gram matrix has the wrong size", B.triple_names(t))
        try:
            mat_inverse(g, B.field)
        except ZeroDivisionError:
            raise SingularGram("singular Gram matrix", B.triple_names(t)) from None
        gp = B.gram(*B.partner(t))
        if gp != transpose(g):
            raise InvariantViolation("Gram matrices of dual triples are not transposes", B.triple_names(t))
    for key in ("tet_plus", "tet_minus"):
        sign = 1 if key == "tet_plus" else -1
        for labels in B.tet_table(sign):
            for f in face_triples(labels, sign, B.star):
                if B.N(*f) == 0:
                    raise InvariantViolation(f"{key} entry on an inadmissible face", B.triple_names(labels))
    derived = derive_minus_table(B.tet_plus, B.star)
    if B.tet_plus and derived != dict(B.tet_minus):
        bad = next((B.triple_names(k) for k in set(derived) | set(B.tet_minus)
                    if derived.get(k) != B.tet_minus.get(k)), None)
        raise InvariantViolation("tet_minus is not the relabeled tet_plus", bad)


def dump_backend(B: CategoryBackend) -> dict:
    nm = B.simple_names

    def sj(x: Scalar):
        return x.to_json()

    classes = []
    seen = set()
    for t in B.admissible_triples():
        c = canonical_rotation(t)
        if c in seen:
            continue
        seen.add(c)
        classes.append(c)
    gram_out, seen_pairs = [], set()
    for c in classes:
        p = canonical_rotation(B.partner(c))
        if p in seen_pairs:
            continue
        seen_pairs.add(c)
        gram_out.append({"triple": [nm[x] for x in c], "matrix": [[sj(v) for v in row] for row in B.gram(*c)]})

    def tet_out(table, sign):
        out = []
        for labels in sorted(table):
            tensor = table[labels]
            faces = face_triples(labels, sign, B.star)
            dims = [B.N(*f) for f in faces]
            entry = {"labels": [nm[x] for x in labels]}
            if dims == [1, 1, 1, 1]:
                entry["value"] = sj(tensor[(0, 0, 0, 0)])
            else:
                def nest(idx):
                    if len(idx) == 4:
                        return sj(tensor.get(tuple(idx), B.field.zero()))
                    return [nest(idx + [x]) for x in range(dims[len(idx)])]

                entry["tensor"] = nest([])
            out.append(entry)
        return out

    doc = {
        "name": B.name,
        "conductor": B.field.n,
        "group": B.group.to_json(),
        "unit": nm[B.unit],
        "simples": [
            {"name": nm[i], "degree": B.group.name(B.degree[i]), "star": nm[B.star[i]], "d": sj(B.d[i]), "b": sj(B.b[i])}
            for i in range(B.n_simples)
        ],
        "badset": [B.group.name(x) for x in sorted(B.badset)],
        "N": [[nm[x] for x in c] + [B.N(*c)] for c in classes],
        "gram": gram_out,
    }
    if B.copairing_table:
        doc["copairing"] = [{"triple": [nm[x] for x in t], "matrix": [[sj(v) for v in r] for r in m]}
                            for t, m in sorted(B.copairing_table.items())]
    doc["tet_plus"] = tet_out(B.tet_plus, 1)
    doc["tet_minus"] = tet_out(B.tet_minus, -1)
    return doc


# ---------------------------------------------------------------------------
# formal colors


@dataclass(frozen=True)
class FormalColor:
    """A scalar-weighted sum of simples, all of one degree."""

    degree: int
    terms: tuple[tuple[int, Scalar], ...]

    @classmethod
    def make(cls, backend: CategoryBackend, weights: Mapping[int, Scalar]) -> "FormalColor":
        terms = tuple(sorted((i, w) for i, w in weights.items() if not w.is_zero()))
        degs = {backend.degree[i] for i, _ in terms}
        if len(degs) > 1:
            raise InvariantViolation("formal color mixes degrees", sorted(degs))
        deg = degs.pop() if degs else backend.group.identity
        return cls(deg, terms)

    def weight(self, i: int):
        return dict(self.terms).get(i)

    def as_dict(self) -> dict:
        return dict(self.terms)

    def pretty(self, backend: CategoryBackend) -> str:
        return " + ".join(f"({w})*{backend.simple_names[i]}" for i, w in self.terms) or "0"


def b_color(backend: CategoryBackend, g: int) -> FormalColor:
    return FormalColor.make(backend, {i: backend.b[i] for i in backend.simples_of_degree(g)})


def kirby_color(backend: CategoryBackend, g: int) -> FormalColor:
    return FormalColor.make(backend, {i: backend.d[i] for i in backend.simples_of_degree(g)})


def extend_b_color(backend: CategoryBackend, g: int, h: int | None = None,
                   candidates: Iterable[int] | None = None) -> tuple[FormalColor, FormalColor]:
    """Two-strand replacement ``(b_h, b_{h^-1 g})`` for a degree ``g``.

    For generic ``g`` this is not needed; we still return ``(b_g, b_1)`` when
    the identity is generic so callers can treat every degree alike.
    """
    G = backend.group
    X = backend.badset
    if h is None:
        if g not in X and G.identity not in X:
            return b_color(backend, g), b_color(backend, G.identity)
        pool = list(candidates) if candidates is not None else list(G.elements)
        h = next((x for x in pool if x not in X and G.mul(G.inv[x], g) not in X), None)
        if h is None:
            raise NoValidH(f"no admissible splitting of degree {G.name(g)}", {"degree": G.name(g)})
    elif h in X or G.mul(G.inv[h], g) in X:
        raise NoValidH(f"{G.name(h)} does not split {G.name(g)} outside the bad set", {"h": G.name(h)})
    return b_color(backend, h), b_color(backend, G.mul(G.inv[h], g))


def copairing(backend: CategoryBackend, i: int, j: int, k: int) -> Matrix:
    """Coefficient matrix ``C`` of the copairing of ``H(i,j,k)`` (empty when N = 0)."""
    return backend.copairing_matrix(i, j, k)


# ---------------------------------------------------------------------------
# identity checks living on backend data alone


def validate_b(backend: CategoryBackend, samples: Iterable[tuple[int, int]] | None = None) -> CheckResult:
    """``b(V*) = b(V) = sum_{V1, V2} b(V1) b(V2) N(V*, V1, V2)`` for ``V`` in degree ``g1 g2``."""
    B, G = backend, backend.group
    for i in range(B.n_simples):
        if B.degree[i] not in B.badset and B.b[B.star[i]] != B.b[i]:
            return CheckResult(False, {"simple": B.simple_names[i]}, "b(V*) != b(V)")
    if samples is None:
        X = B.badset
        samples = [(g1, g2) for g1 in G.elements for g2 in G.elements
                   if g1 not in X and g2 not in X and G.mul(g1, g2) not in X]
    for g1, g2 in samples:
        g12 = G.mul(g1, g2)
        for g in (g1, g2, g12):
            if g in B.badset:
                raise BadDegreeSample(f"sampled degree {G.name(g)} lies in the bad set", {"degree": G.name(g)})
        for v in B.simples_of_degree(g12):
            total = B.field.zero()
            for v1 in B.simples_of_degree(g1):
                for v2 in B.simples_of_degree(g2):
                    n = B.N(B.star[v], v1, v2)
                    if n:
                        total = total + B.b[v1] * B.b[v2] * n
            if total != B.b[v]:
                return CheckResult(False, {"degrees": [G.name(g1), G.name(g2)], "simple": B.simple_names[v],
                                           "b": str(B.b[v]), "sum": str(total)}, "b identity fails")
    return CheckResult(True)


def check_chromatic(backend: CategoryBackend, g: int) -> CheckResult:
    """Semisimple chromatic identity in degree ``g``.

    With ``c = sum_i d(i) Id_i`` the identity closes a ``W_g`` strand
    through ``Lambda_{V (x) W_g*}``.  Only ``i = V`` contributes, through
    ``H(V, i*, 1)`` whose basis is the evaluation; its partial trace is
    ``Id_V`` and its copairing coefficient is ``C(V, i*, 1)``, so the
    contracted identity reads

        sum_{i in I_g} d(i) * tr C(V, i*, 1) == 1     for every V in I_g.
    """
    B = backend
    for v in B.simples_of_degree(g):
        total = B.field.zero()
        for i in B.simples_of_degree(g):
            t = (v, B.star[i], B.unit)
            if B.N(*t):
                total = total + B.d[i] * trace(B.copairing_matrix(*t), B.field)
        if total != B.field.one():
            return CheckResult(False, {"degree": B.group.name(g), "simple": B.simple_names[v], "value": str(total)},
                               "chromatic contraction is not the identity")
    return CheckResult(True)


def vec_group_backend(group: FiniteGroup, b: Mapping[int, object] | None = None, conductor: int = 1,
                      name: str | None = None) -> CategoryBackend:
    """Pointed category Vec_G with trivial associator: every structure constant is 1."""
    field_ = CyclotomicField(conductor)
    bvals = {}
    for g in group.elements:
        val = 1 if b is None else b[g]
        bvals[g] = val if isinstance(val, Scalar) else field_.coerce(val)
    for g in group.elements:
        if bvals[g] != bvals[group.inv[g]]:
            raise BadBFunction("b(g^-1) differs from b(g)", {"element": group.name(g)})
        for h in group.elements:
            if bvals[group.mul(g, h)] != bvals[g] * bvals[h]:
                raise BadBFunction("b is not multiplicative", {"pair": [group.name(g), group.name(h)]})
    names = tuple(f"v{group.name(g)}" for g in group.elements)
    one = field_.one()
    n_table, gram = {}, {}
    for g in group.elements:
        for h in group.elements:
            k = group.inv[group.mul(g, h)]
            n_table[(g, h, k)] = 1
    for t in n_table:
        gram[canonical_rotation(t)] = ((one,),)
    tet = {}
    for labels in _all_tet_labels(group):
        tet[labels] = {(0, 0, 0, 0): one}
    star = tuple(group.inv)
    backend = CategoryBackend(
        name or f"vec_{len(names)}", field_, group, names, tuple(group.elements), star,
        (one,) * group.order, tuple(bvals[g] for g in group.elements), frozenset(), group.identity,
        n_table, gram, {}, tet, derive_minus_table(tet, star),
    )
    check_structure(backend)
    return backend


def _all_tet_labels(group: FiniteGroup):
    # flat labelings: l01 l12 = l02 etc. (walking products), i.e. l_ab = x_a^-1 x_b
    G = group
    for x1 in G.elements:
        for x2 in G.elements:
            for x3 in G.elements:
                xs = (G.identity, x1, x2, x3)
                yield tuple(G.mul(G.inv[xs[a]], xs[b]) for a, b in EDGE_PAIRS)
