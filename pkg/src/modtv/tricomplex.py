"""Delta-complex triangulations of closed oriented 3-manifolds, H-triangulations and moves.

A complex is a list of tetrahedra, each with an ordered 4-tuple of vertex
names and an orientation sign, plus a face pairing: slot ``(t, m)`` is the
face of tet ``t`` opposite its local vertex ``m`` and is glued to a slot
``(t2, m2)`` by a permutation ``perm`` of local vertices (``perm[m] == m2``).
Edges and faces of the quotient are derived.  Vertex names must agree with
the identifications made by the gluing.

All moves go through :func:`_retriangulate`, which cuts out a cavity of
tetrahedra, fills it with new ones described by corner tokens, and carries
the H-data (the Hamiltonian edge set and the cocycle) across.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .catdata import EDGE_PAIRS, FACES_MINUS, FACES_PLUS, PAIR_INDEX, CategoryBackend
from .errors import (
    BadLink,
    CocycleViolation,
    GuardFailed,
    HamiltonicityLost,
    InadmissibleEdge,
    ModTVError,
    NotClosed,
    NotFound,
    NotHamiltonian,
    NotOrientable,
    NotQuasiRegular,
    SchemaError,
)
from .gcore import FiniteGroup

Slot = tuple[int, int]


def perm_sign(p: Sequence[int]) -> int:
    inv = sum(p[i] > p[j] for i in range(len(p)) for j in range(i + 1, len(p)))
    return -1 if inv % 2 else 1


class _UF:
    def __init__(self):
        self.parent: dict = {}
        self.par: dict = {}  # parity to parent

    def find(self, x):
        self.parent.setdefault(x, x)
        self.par.setdefault(x, 1)
        p = self.parent[x]
        if p == x:
            return x, 1
        root, s = self.find(p)
        self.parent[x] = root
        self.par[x] *= s
        return root, self.par[x]

    def union(self, x, y, parity: int = 1) -> bool:
        """Record ``x = parity * y``; False on a parity conflict."""
        rx, sx = self.find(x)
        ry, sy = self.find(y)
        if rx == ry:
            return sx == parity * sy
        self.parent[rx] = ry
        self.par[rx] = sx * parity * sy
        return True


@dataclass(frozen=True, eq=False)
class DeltaComplex3:
    tets: tuple[tuple, ...]
    signs: tuple[int, ...]
    glue: Mapping[Slot, tuple[int, int, tuple[int, ...]]]
    vertices: tuple
    edges: tuple[tuple, ...]  # (tail, head) names, canonical orientation
    tet_edges: tuple[tuple[tuple[int, int], ...], ...]  # per tet, per EDGE_PAIRS slot: (edge id, parity)
    faces: tuple[tuple[Slot, Slot], ...]
    slot_face: Mapping[Slot, int]

    @property
    def n_tets(self) -> int:
        return len(self.tets)

    def local_edge(self, t: int, a: int, b: int) -> tuple[int, int]:
        """Quotient edge and orientation of the local oriented edge ``Pa -> Pb`` of tet ``t``."""
        if a < b:
            return self.tet_edges[t][PAIR_INDEX[(a, b)]]
        e, s = self.tet_edges[t][PAIR_INDEX[(b, a)]]
        return e, -s

    def edge_reps(self, e: int) -> list[tuple[int, int, int]]:
        """Tet-local forward representatives ``(t, a, b)`` of edge ``e`` in its canonical direction."""
        out = []
        for t, row in enumerate(self.tet_edges):
            for k, (e2, s) in enumerate(row):
                if e2 == e:
                    a, b = EDGE_PAIRS[k]
                    out.append((t, a, b) if s > 0 else (t, b, a))
        return out

    def slot_triple(self, t: int, m: int) -> tuple[int, int, int]:
        """Local vertices of face ``m`` in its outward (boundary) orientation."""
        return (FACES_PLUS if self.signs[t] > 0 else FACES_MINUS)[m]

    def counts(self) -> dict:
        return {"vertices": len(self.vertices), "edges": len(self.edges), "faces": len(self.faces),
                "tets": self.n_tets}

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces) - self.n_tets

    def components(self) -> list[list[int]]:
        uf = _UF()
        for t in range(self.n_tets):
            uf.find(t)
        for (t, _), (t2, _, _) in self.glue.items():
            uf.union(t, t2)
        groups: dict = {}
        for t in range(self.n_tets):
            groups.setdefault(uf.find(t)[0], []).append(t)
        return sorted(groups.values())

    def vertex_edges(self, v) -> list[int]:
        return [e for e, (a, b) in enumerate(self.edges) if v in (a, b)]

    def gluing_list(self) -> list[list]:
        out = []
        for (t, m), (t2, m2, p) in sorted(self.glue.items()):
            if (t, m) <= (t2, m2):
                out.append([t, m, t2, list(p)])
        return out


def build_complex(tets: Sequence[Sequence], signs: Sequence[int], gluings) -> DeltaComplex3:
    """Validate gluing data and derive the quotient cells.

    ``gluings`` is either a mapping over all slots or an iterable of
    ``(t, m, t2, perm)`` entries listing each pair at least once.
    """
    tets = tuple(tuple(x) for x in tets)
    signs = tuple(int(s) for s in signs)
    n = len(tets)
    if n == 0 or len(signs) != n or any(len(x) != 4 for x in tets) or any(s not in (1, -1) for s in signs):
        raise SchemaError("tets must be 4-tuples with one orientation sign each", None)
    glue: dict[Slot, tuple[int, int, tuple[int, ...]]] = {}
    if isinstance(gluings, Mapping):
        items = [(t, m, t2, p) for (t, m), (t2, _, p) in gluings.items()]
    else:
        items = [(g[0], g[1], g[2], g[-1]) for g in gluings]
    for t, m, t2, p in items:
        try:
            t, m, t2, p = int(t), int(m), int(t2), tuple(int(x) for x in p)
        except (TypeError, ValueError):
            raise SchemaError("gluing entries are [t, m, t2, perm]", None) from None
        if not (0 <= t < n and 0 <= t2 < n and 0 <= m < 4) or sorted(p) != [0, 1, 2, 3]:
            raise SchemaError("gluing refers to a missing tet/face or has a bad permutation", [t, m, t2, list(p)])
        m2 = p[m]
        if (t, m) == (t2, m2):
            raise SchemaError("a face cannot be glued to itself", [t, m])
        inv = tuple(p.index(i) for i in range(4))
        for a, b in (((t, m), (t2, m2, p)), ((t2, m2), (t, m, inv))):
            if a in glue and glue[a] != b:
                raise SchemaError("face glued twice", list(a))
            glue[a] = b
    missing = [(t, m) for t in range(n) for m in range(4) if (t, m) not in glue]
    if missing:
        raise NotClosed(f"{len(missing)} faces are not glued", [list(x) for x in missing[:4]])

    # orientation
    for (t, m), (t2, m2, p) in glue.items():
        if signs[t] * signs[t2] * perm_sign(p) != -1:
            raise NotOrientable("gluing reverses the orientation", [t, m, t2, m2])

    # vertices
    vuf = _UF()
    for t in range(n):
        for i in range(4):
            vuf.find((t, i))
    for (t, m), (t2, _, p) in glue.items():
        for i in range(4):
            if i != m:
                vuf.union((t, i), (t2, p[i]))
    cls_name: dict = {}
    for t in range(n):
        for i in range(4):
            r = vuf.find((t, i))[0]
            if cls_name.setdefault(r, tets[t][i]) != tets[t][i]:
                raise SchemaError("vertex names disagree with the gluing", [t, i])
    if len(set(cls_name.values())) != len(cls_name):
        raise SchemaError("two unglued vertex classes share a name", None)

    # edges with orientation parity
    euf = _UF()
    for t in range(n):
        for k in range(6):
            euf.find((t, k))
    for (t, m), (t2, _, p) in glue.items():
        for k, (a, b) in enumerate(EDGE_PAIRS):
            if m in (a, b):
                continue
            pa, pb = p[a], p[b]
            k2 = PAIR_INDEX[(min(pa, pb), max(pa, pb))]
            if not euf.union((t, k), (t2, k2), 1 if pa < pb else -1):
                raise BadLink("an edge is identified with its own reverse", [t, a, b])
    members: dict = {}
    for t in range(n):
        for k in range(6):
            r, s = euf.find((t, k))
            members.setdefault(r, []).append((t, k, s))
    classes = sorted(members.values(), key=lambda ms: (ms[0][0], ms[0][1]))
    tet_edges = [[None] * 6 for _ in range(n)]
    edges = []
    for e, ms in enumerate(classes):
        t0, k0, s0 = ms[0]
        a, b = EDGE_PAIRS[k0]
        edges.append((tets[t0][a], tets[t0][b]))
        for t, k, s in ms:
            tet_edges[t][k] = (e, s * s0)

    # faces
    faces, slot_face = [], {}
    for slot in sorted(glue):
        if slot in slot_face:
            continue
        t2, m2, _ = glue[slot]
        slot_face[slot] = slot_face[(t2, m2)] = len(faces)
        faces.append((slot, (t2, m2)))

    # vertex links must be 2-spheres
    for v in sorted(set(cls_name.values()), key=repr):
        corners = sum(1 for t in range(n) for i in range(4) if tets[t][i] == v)
        ends = sum((a == v) + (b == v) for a, b in edges)
        chi = ends - 3 * corners // 2 + corners
        if chi != 2:
            raise BadLink(f"link of vertex {v!r} is not a sphere (chi = {chi})", {"vertex": v, "chi": chi})

    return DeltaComplex3(tets, signs, glue, tuple(sorted(set(cls_name.values()), key=repr)), tuple(edges),
                         tuple(tuple(r) for r in tet_edges), tuple(faces), slot_face)


def from_simplicial(tets: Sequence[Sequence], signs: Sequence[int]) -> DeltaComplex3:
    """Glue faces carrying the same three vertex names (each triple must occur exactly twice)."""
    by_triple: dict = {}
    for t, vs in enumerate(tets):
        for m in range(4):
            key = frozenset(vs[i] for i in range(4) if i != m)
            by_triple.setdefault(key, []).append((t, m))
    gluings = []
    for key, slots in by_triple.items():
        if len(slots) != 2:
            raise NotClosed("a face triple does not occur exactly twice", sorted(map(repr, key)))
        (t, m), (t2, m2) = slots
        p = [0] * 4
        p[m] = m2
        for i in range(4):
            if i != m:
                p[i] = list(tets[t2]).index(tets[t][i])
        gluings.append((t, m, t2, tuple(p)))
    return build_complex(tets, signs, gluings)


def validate_complex(data) -> DeltaComplex3:
    """Accept a triangulation document (or a complex) and return a validated complex."""
    if isinstance(data, DeltaComplex3):
        return build_complex(data.tets, data.signs, data.glue)
    if isinstance(data, (str, Path)):
        data = _read_json(data)
    if not isinstance(data, dict) or "tets" not in data:
        raise SchemaError("triangulation document needs 'tets'", None)
    tets = data["tets"]
    signs = data.get("orientations", [1] * len(tets))
    if "gluings" in data:
        return build_complex(tets, signs, data["gluings"])
    return from_simplicial(tets, signs)


def boundary_4simplex() -> DeltaComplex3:
    tets, signs = [], []
    for k in range(5):
        tets.append(tuple(v for v in range(5) if v != k))
        signs.append(-1 if k % 2 else 1)
    return from_simplicial(tets, signs)


def one_vertex_lens() -> DeltaComplex3:
    """A closed one-tetrahedron triangulation with a single vertex (every edge is a loop)."""
    return build_complex([(0, 0, 0, 0)], [1], [(0, 0, 0, (1, 0, 2, 3)), (0, 2, 0, (1, 2, 3, 0))])


def quasi_regular(c: DeltaComplex3) -> bool:
    return all(len(set(vs)) == 4 for vs in c.tets)


# ---------------------------------------------------------------------------
# H-triangulations


@dataclass(frozen=True, eq=False)
class HTriangulation:
    complex: DeltaComplex3
    group: FiniteGroup
    gamma: frozenset
    phi: tuple[int, ...]  # per quotient edge, canonical orientation
    badset: frozenset = frozenset()

    def phi_local(self, t: int, a: int, b: int) -> int:
        e, s = self.complex.local_edge(t, a, b)
        return self.phi[e] if s > 0 else self.group.inv[self.phi[e]]

    def phi_named(self) -> dict:
        return {f"{a}->{b}#{e}": self.group.name(self.phi[e]) for e, (a, b) in enumerate(self.complex.edges)}


def _coerce_phi(c: DeltaComplex3, group: FiniteGroup, phi) -> tuple[int, ...]:
    if phi is None:
        return (group.identity,) * len(c.edges)
    if isinstance(phi, Mapping):
        return tuple(group.index(phi.get(e, group.identity)) for e in range(len(c.edges)))
    vals = list(phi)
    if len(vals) != len(c.edges):
        raise SchemaError(f"phi needs {len(c.edges)} values", len(vals))
    return tuple(group.index(x) for x in vals)


def make_h_triangulation(c: DeltaComplex3, gamma: Iterable[int], phi, group: FiniteGroup,
                         backend: CategoryBackend | None = None, badset: Iterable[int] | None = None) -> HTriangulation:
    """Validate quasi-regularity, the Hamiltonian condition, the cocycle condition and admissibility."""
    if not quasi_regular(c):
        bad = next(t for t, vs in enumerate(c.tets) if len(set(vs)) < 4)
        raise NotQuasiRegular("a tetrahedron has repeated vertices", {"tet": bad, "vertices": list(c.tets[bad])})
    gamma = frozenset(int(e) for e in gamma)
    if any(not 0 <= e < len(c.edges) for e in gamma):
        raise SchemaError("gamma refers to a missing edge", sorted(gamma))
    touched = {v for e in gamma for v in c.edges[e]}
    lonely = [v for v in c.vertices if v not in touched]
    if lonely:
        raise NotHamiltonian("some vertices meet no edge of gamma", {"vertices": lonely})
    phi_t = _coerce_phi(c, group, phi)
    if badset is None:
        badset = backend.badset if backend is not None else frozenset()
    h = HTriangulation(c, group, gamma, phi_t, frozenset(badset))
    for t in range(c.n_tets):
        for m, (a, b, cc) in enumerate(FACES_PLUS):
            x = group.prod([h.phi_local(t, a, b), h.phi_local(t, b, cc), h.phi_local(t, cc, a)])
            if x != group.identity:
                raise CocycleViolation("product around a triangle is not the identity",
                                       {"tet": t, "face": m, "product": group.name(x)})
    for e, g in enumerate(phi_t):
        if g in h.badset:
            raise InadmissibleEdge(f"edge {e} carries a degree in the bad set",
                                   {"edge": e, "ends": list(c.edges[e]), "degree": group.name(g)})
    return h


def hamiltonian_cycle(c: DeltaComplex3) -> frozenset:
    """Backtracking search for a cycle of distinct edges through every vertex."""
    verts = list(c.vertices)
    adj: dict = {v: [] for v in verts}
    for e, (a, b) in enumerate(c.edges):
        if a != b:
            adj[a].append((e, b))
            adj[b].append((e, a))
    start = verts[0]
    n = len(verts)

    def search(path_v, path_e, seen):
        cur = path_v[-1]
        if len(path_v) == n:
            for e, w in adj[cur]:
                if w == start and e not in path_e:
                    return path_e + [e]
            return None
        for e, w in adj[cur]:
            if w not in seen:
                seen.add(w)
                r = search(path_v + [w], path_e + [e], seen)
                if r:
                    return r
                seen.discard(w)
        return None

    if n < 2 or not quasi_regular(c):
        raise NotFound("no Hamiltonian cycle (complex has fewer than two vertices or loop edges)", None)
    found = search([start], [], {start})
    if found is None:
        raise NotFound("no Hamiltonian cycle in the 1-skeleton", None)
    return frozenset(found)


def gauge_move_phi(h: HTriangulation, v, g: int) -> HTriangulation:
    """Gauge the cocycle at vertex ``v``: outgoing edges get ``g`` on the left, incoming ``g^-1`` on the right."""
    G = h.group
    phi = list(h.phi)
    for e, (a, b) in enumerate(h.complex.edges):
        if a == v:
            phi[e] = G.mul(g, phi[e])
        if b == v:
            phi[e] = G.mul(phi[e], G.inv[g])
    for e, x in enumerate(phi):
        if x in h.badset:
            raise InadmissibleEdge("gauge move lands in the bad set", {"edge": e, "degree": G.name(x)})
    return HTriangulation(h.complex, G, h.gamma, tuple(phi), h.badset)


# ---------------------------------------------------------------------------
# moves


def _retriangulate(h: HTriangulation, cavity: Sequence[int], internal: set, new_tets: Sequence[Sequence],
                   new_name=None, v_like=None, gamma_drop: Iterable[int] = (), gamma_add_old: Iterable[int] = (),
                   gamma_add_new: Iterable[tuple] = ()) -> HTriangulation:
    """Replace the cavity tets by ``new_tets``.

    New tets are given by corner references ``(t, i)`` of cavity tets or the
    string ``"v"`` for a new vertex named ``new_name``; corners glued across
    an ``internal`` slot denote the same point.  ``v_like`` is a corner
    reference whose cocycle potential the new vertex copies.
    """
    c, G = h.complex, h.group
    cav = list(cavity)
    cavset = set(cav)
    tok = _UF()
    for t in cav:
        for i in range(4):
            tok.find((t, i))
    for (t, m) in internal:
        t2, m2, p = c.glue[(t, m)]
        if (t2, m2) not in internal:
            raise GuardFailed("cavity faces are not glued among themselves", [t, m])
        for i in range(4):
            if i != m:
                tok.union((t, i), (t2, p[i]))

    def T(ref):
        return "v" if ref == "v" else tok.find(tuple(ref))[0]

    for t in cav:
        if len({T((t, i)) for i in range(4)}) != 4:
            raise GuardFailed("a cavity tetrahedron has two corners at the same point", {"tet": t})
    name_of = {T((t, i)): c.tets[t][i] for t in cav for i in range(4)}
    if new_name is not None:
        name_of["v"] = new_name
    ntoks = [tuple(T(r) for r in nt) for nt in new_tets]

    # match external cavity slots with new faces
    ext = [(t, m) for t in cav for m in range(4) if (t, m) not in internal]
    new_faces: dict = {}
    for j, nt in enumerate(ntoks):
        for m in range(4):
            new_faces.setdefault(frozenset(nt[i] for i in range(4) if i != m), []).append((j, m))
    ext_map: dict = {}
    used = set()
    for (t, m) in ext:
        key = frozenset(T((t, i)) for i in range(4) if i != m)
        cands = [f for f in new_faces.get(key, []) if f not in used]
        if len(cands) != 1:
            raise GuardFailed("cavity boundary does not match the new tetrahedra", {"slot": [t, m]})
        ext_map[(t, m)] = cands[0]
        used.add(cands[0])
    inner_pairs = []
    for key, fs in new_faces.items():
        rest = [f for f in fs if f not in used]
        if len(rest) == 2:
            inner_pairs.append(tuple(rest))
        elif rest:
            raise GuardFailed("new tetrahedra leave an unmatched face", sorted(map(repr, key)))

    # orientation of the new tets from the cavity boundary
    new_signs = [0] * len(ntoks)
    for (t, m), (j, mj) in ext_map.items():
        old = tuple(T((t, i)) for i in c.slot_triple(t, m))
        new = tuple(ntoks[j][i] for i in FACES_PLUS[mj])
        rots = {new, new[1:] + new[:1], new[2:] + new[:2]}
        s = 1 if old in rots else -1
        if new_signs[j] not in (0, s):
            raise GuardFailed("inconsistent orientation in the new tetrahedra", {"tet": j})
        new_signs[j] = s
    if 0 in new_signs:
        raise GuardFailed("a new tetrahedron does not touch the cavity boundary", None)

    # global renumbering
    keep = [t for t in range(c.n_tets) if t not in cavset]
    renum = {t: n for n, t in enumerate(keep)}
    off = len(keep)
    tets = [c.tets[t] for t in keep] + [tuple(name_of[x] for x in nt) for nt in ntoks]
    signs = [c.signs[t] for t in keep] + new_signs

    def corner_pos(t, i, j):
        return ntoks[j].index(T((t, i)))

    gl = []
    for (t, m), (t2, m2, p) in c.glue.items():
        if t in cavset and (t, m) in internal:
            continue
        if t in cavset:
            continue  # emitted from the other side or below
        a = (renum[t], m)
        if t2 not in cavset:
            gl.append((a[0], m, renum[t2], p))
            continue
        j, mj = ext_map[(t2, m2)]
        q = [0] * 4
        q[m] = mj
        for i in range(4):
            if i != m:
                q[i] = corner_pos(t2, p[i], j)
        gl.append((a[0], m, off + j, tuple(q)))
    for (t, m), (t2, m2, p) in c.glue.items():
        if t in cavset and t2 in cavset and (t, m) not in internal and (t, m) < (t2, m2):
            j, mj = ext_map[(t, m)]
            j2, mj2 = ext_map[(t2, m2)]
            q = [0] * 4
            q[mj] = mj2
            for i in range(4):
                if i != m:
                    q[corner_pos(t, i, j)] = corner_pos(t2, p[i], j2)
            gl.append((off + j, mj, off + j2, tuple(q)))
    for (j, mj), (j2, mj2) in inner_pairs:
        q = [0] * 4
        q[mj] = mj2
        for i in range(4):
            if i != mj:
                q[i] = ntoks[j2].index(ntoks[j][i])
        gl.append((off + j, mj, off + j2, tuple(q)))
    try:
        nc = build_complex(tets, signs, gl)
    except ModTVError as exc:
        raise GuardFailed(f"move produces an invalid complex: {exc.message}", exc.witness) from None

    # cocycle potential on the cavity points
    pot: dict = {}
    cav_edges = {}
    for t in cav:
        for a in range(4):
            for b in range(4):
                if a != b:
                    cav_edges[(T((t, a)), T((t, b)))] = (t, a, b)
    start = T((cav[0], 0))
    pot[start] = G.identity
    frontier = [start]
    while frontier:
        x = frontier.pop()
        for (p1, p2), (t, a, b) in cav_edges.items():
            if p1 == x and p2 not in pot:
                pot[p2] = G.mul(G.inv[h.phi_local(t, a, b)], pot[x])
                frontier.append(p2)
    if new_name is not None:
        pot["v"] = pot[T(v_like)]

    gamma_old = (set(h.gamma) - set(gamma_drop)) | set(gamma_add_old)
    add_new = {frozenset(T(r) for r in pair) for pair in gamma_add_new}
    phi = [None] * len(nc.edges)
    gamma = set()
    for e in range(len(nc.edges)):
        t, a, b = nc.edge_reps(e)[0]
        if t < off:
            oe, s = c.local_edge(keep[t], a, b)
            old = oe
        else:
            pa, pb = ntoks[t - off][a], ntoks[t - off][b]
            ref = cav_edges.get((pa, pb))
            old = None
            if ref is not None:
                oe, s = c.local_edge(*ref)
                old = oe
        if old is not None:
            phi[e] = h.phi[oe] if s > 0 else G.inv[h.phi[oe]]
            if old in gamma_old:
                gamma.add(e)
        else:
            phi[e] = G.mul(pot[pa], G.inv[pot[pb]])
            if frozenset((pa, pb)) in add_new:
                gamma.add(e)
    try:
        return make_h_triangulation(nc, gamma, phi, G, badset=h.badset)
    except HamiltonicityLost:
        raise
    except NotHamiltonian as exc:
        raise HamiltonicityLost(exc.message, exc.witness) from None
    except ModTVError as exc:
        raise GuardFailed(f"move breaks the H-triangulation: {exc.message}", exc.witness) from None


def pachner_23(h: HTriangulation, face: int) -> HTriangulation:
    c = h.complex
    (t1, m1), (t2, m2) = c.faces[face]
    if t1 == t2:
        raise GuardFailed("both sides of the face belong to the same tetrahedron", {"face": face})
    if c.tets[t1][m1] == c.tets[t2][m2]:
        raise GuardFailed("the two apexes are the same vertex", {"face": face})
    corners = [i for i in range(4) if i != m1]
    new = []
    for z in corners:
        x, y = [i for i in corners if i != z]
        new.append(((t1, x), (t1, y), (t1, m1), (t2, m2)))
    return _retriangulate(h, [t1, t2], {(t1, m1), (t2, m2)}, new)


def pachner_32(h: HTriangulation, edge: int) -> HTriangulation:
    c = h.complex
    if edge in h.gamma:
        raise GuardFailed("cannot remove an edge of gamma", {"edge": edge})
    reps = c.edge_reps(edge)
    if len(reps) != 3 or len({t for t, _, _ in reps}) != 3:
        raise GuardFailed("edge is not surrounded by three distinct tetrahedra", {"edge": edge, "valence": len(reps)})
    internal = set()
    for t, a, b in reps:
        for m in range(4):
            if m not in (a, b):
                internal.add((t, m))
    t0, a0, b0 = reps[0]
    others = [(t, i) for t, a, b in reps for i in range(4) if i not in (a, b)]
    names = {c.tets[t][i] for t, i in others}
    if len(names) != 3:
        raise GuardFailed("the link of the edge does not have three distinct vertices", {"edge": edge})
    # pick one corner per link vertex; all corners with equal names are the same point here
    pick = {}
    for t, i in others:
        pick.setdefault(c.tets[t][i], (t, i))
    cde = [pick[n] for n in sorted(pick, key=repr)]
    new = [((t0, a0),) + tuple(cde), ((t0, b0),) + tuple(cde)]
    return _retriangulate(h, [t for t, _, _ in reps], internal, new)


def pachner_14(h: HTriangulation, tet: int, reroute: int | tuple | None = None) -> HTriangulation:
    """Cone tet ``tet`` from a new interior vertex, rerouting the gamma edge ``reroute`` through it.

    ``reroute`` is a quotient edge id or a local pair ``(a, b)``; the new
    vertex copies the cocycle potential of the edge's head, so that the new
    edge from the tail carries the old label and the one into the head is
    the identity.
    """
    c = h.complex
    if reroute is None:
        raise HamiltonicityLost("the new vertex would meet no edge of gamma", {"tet": tet})
    if isinstance(reroute, tuple):
        a, b = reroute
    else:
        loc = [(a, b) for a in range(4) for b in range(4) if a != b and c.local_edge(tet, a, b) == (reroute, 1)]
        if not loc:
            raise GuardFailed("reroute edge is not an edge of the tetrahedron", {"tet": tet, "edge": reroute})
        a, b = loc[0]
    e, _ = c.local_edge(tet, a, b)
    if e not in h.gamma:
        raise GuardFailed("reroute edge is not in gamma", {"tet": tet, "edge": e})
    new = []
    for i in range(4):
        new.append(tuple("v" if k == i else (tet, k) for k in range(4)))
    name = _fresh_name(c)
    return _retriangulate(h, [tet], set(), new, new_name=name, v_like=(tet, b), gamma_drop=[e],
                          gamma_add_new=[((tet, a), "v"), ("v", (tet, b))])


def _fresh_name(c: DeltaComplex3):
    ints = [v for v in c.vertices if isinstance(v, int)]
    return max(ints) + 1 if ints else len(c.vertices)


def pachner_41(h: HTriangulation, v) -> HTriangulation:
    c = h.complex
    corners = [(t, i) for t in range(c.n_tets) for i in range(4) if c.tets[t][i] == v]
    if len(corners) != 4 or len({t for t, _ in corners}) != 4:
        raise GuardFailed("vertex is not surrounded by four distinct tetrahedra", {"vertex": v})
    internal = {(t, m) for t, i in corners for m in range(4) if m != i}
    # the link of v must be the boundary of a tetrahedron on the four edges at v
    spokes = {t: {c.local_edge(t, i, k)[0]: k for k in range(4) if k != i} for t, i in corners}
    edges_at_v = set().union(*spokes.values())
    if len(edges_at_v) != 4 or len({frozenset(sp) for sp in spokes.values()}) != 4:
        raise GuardFailed("the star of the vertex is not a subdivided tetrahedron", {"vertex": v})
    outer = {}
    for t, i in corners:
        for k in range(4):
            if k != i:
                outer.setdefault(c.tets[t][k], (t, k))
    if len(outer) != 4:
        raise GuardFailed("outer vertices of the star are not distinct", {"vertex": v})
    at_v = [e for e in h.gamma if e in edges_at_v]
    if len(at_v) != 2:
        raise GuardFailed("vertex must meet exactly two gamma edges", {"vertex": v, "gamma_edges": at_v})
    t = next(t for t, sp in spokes.items() if all(e in sp for e in at_v))
    xy, _ = c.local_edge(t, spokes[t][at_v[0]], spokes[t][at_v[1]])
    if xy in h.gamma:
        raise GuardFailed("outer edge is already in gamma", {"edge": xy})
    new = [tuple(outer[n] for n in sorted(outer, key=repr))]
    return _retriangulate(h, [t for t, _ in corners], internal, new, gamma_drop=at_v, gamma_add_old=[xy])


# ---------------------------------------------------------------------------
# relabeling-invariant signature (for inverse-move tests)


def canonical_signature(h: HTriangulation) -> tuple:
    """Code of the H-triangulation that is invariant under renumbering tets and vertices."""
    c = h.complex
    best = None
    for t0 in range(c.n_tets):
        for order0 in itertools.permutations(range(4)):
            code = _bfs_code(h, t0, order0)
            if best is None or code < best:
                best = code
    return best


def _bfs_code(h: HTriangulation, t0: int, order0) -> tuple:
    c, G = h.complex, h.group
    # order[t][new_pos] = old local vertex
    order = {t0: tuple(order0)}
    num = {t0: 0}
    queue = [t0]
    code = []
    vname: dict = {}
    while queue:
        t = queue.pop(0)
        o = order[t]
        sgn = c.signs[t] * perm_sign(o)
        verts = []
        for pos in range(4):
            verts.append(vname.setdefault(c.tets[t][o[pos]], len(vname)))
        edges = []
        for a, b in EDGE_PAIRS:
            e, _ = c.local_edge(t, o[a], o[b])
            edges.append((G.name(h.phi_local(t, o[a], o[b])), e in h.gamma))
        glue = []
        for pos in range(4):
            t2, m2, p = c.glue[(t, o[pos])]
            # orient t2 so that the glued corners line up with ours
            img = [p[o[k]] for k in range(4)]
            if t2 not in order:
                order[t2] = tuple(img)
                num[t2] = len(num)
                queue.append(t2)
            o_t2 = order[t2]
            glue.append((num[t2], o_t2.index(m2), tuple(o_t2.index(img[k]) for k in range(4))))
        code.append((sgn, tuple(verts), tuple(edges), tuple(glue)))
    return tuple(code)


# ---------------------------------------------------------------------------
# JSON


def _read_json(path):
    path = Path(path)
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read {path}: {exc}", str(path)) from None


def triangulation_to_json(h_or_c, name: str = "triangulation") -> dict:
    """Serialize with tet-local edge references ``[t, a, b]`` for gamma and phi."""
    h = h_or_c if isinstance(h_or_c, HTriangulation) else None
    c = h.complex if h else h_or_c
    doc = {"name": name, "tets": [list(x) for x in c.tets], "orientations": list(c.signs),
           "gluings": c.gluing_list()}
    if h is not None:
        reps = [c.edge_reps(e)[0] for e in range(len(c.edges))]
        doc["gamma"] = [list(reps[e]) for e in sorted(h.gamma)]
        doc["phi"] = [list(reps[e]) + [h.group.name(h.phi[e])] for e in range(len(c.edges))
                      if h.phi[e] != h.group.identity]
    return doc


def load_h_triangulation(doc, group: FiniteGroup, backend: CategoryBackend | None = None) -> HTriangulation:
    if isinstance(doc, (str, Path)):
        doc = _read_json(doc)
    c = validate_complex(doc)
    try:
        if "gamma" in doc:
            gamma = set()
            for t, a, b in doc["gamma"]:
                gamma.add(c.local_edge(int(t), int(a), int(b))[0])
        else:
            gamma = hamiltonian_cycle(c)
        phi: dict[int, int] = {}
        for entry in doc.get("phi", []):
            t, a, b, val = entry
            e, s = c.local_edge(int(t), int(a), int(b))
            g = group.index(val)
            g = g if s > 0 else group.inv[g]
            if phi.setdefault(e, g) != g:
                raise SchemaError("conflicting phi values on one edge", entry)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise SchemaError(f"malformed gamma/phi data: {exc}", None) from None
    return make_h_triangulation(c, gamma, phi, group, backend)


def standard_h_triangulation(group: FiniteGroup, backend: CategoryBackend | None = None) -> HTriangulation:
    """Boundary of the 4-simplex with a Hamiltonian 5-cycle and the trivial cocycle."""
    c = boundary_4simplex()
    return make_h_triangulation(c, hamiltonian_cycle(c), None, group, backend)


def shipped_triangulation_docs() -> dict[str, dict]:
    from .gcore import cyclic_group

    G = cyclic_group(1)
    h = standard_h_triangulation(G)
    moved = pachner_23(h, 0)
    g_edge = min(moved.gamma)
    t, a, b = moved.complex.edge_reps(g_edge)[0]
    moved = pachner_14(moved, t, (a, b))
    return {
        "s3_boundary4simplex": triangulation_to_json(h, "s3_boundary4simplex"),
        "s3_pachner": triangulation_to_json(moved, "s3_pachner"),
        "lens_one_vertex": triangulation_to_json(one_vertex_lens(), "lens_one_vertex"),
    }
