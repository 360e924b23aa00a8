"""Ideally triangulated surfaces and G-representations of their groupoids.

Conventions
-----------
An oriented edge is a pair ``(k, s)`` with ``k`` an edge index and
``s = +1`` (the stored direction) or ``s = -1``.  Every edge stores a
``start`` and an ``end`` vertex: walking along ``(k, +1)`` goes from
``start`` to ``end``.  Path values multiply in walking order, so the path
``e1`` then ``e2`` is sent to ``rho(e1) * rho(e2)`` and the boundary of a
triangle ``(e1, e2, e3)`` must multiply to the identity.

A gauge function ``phi`` acts by ``rho(e) -> phi(start) rho(e) phi(end)^-1``.
Read as a groupoid morphism the walk ``start -> end`` goes *to* ``start``
*from* ``end``, which is the same formula written with the target first.

Triangles list their boundary counterclockwise for the surface
orientation, so each edge occurs once with each sign.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import (
    CocycleViolation,
    DomainMismatch,
    EmptyComponent,
    InvariantViolation,
    NotAPath,
    ReversalViolation,
    SchemaError,
    SurfaceMismatch,
)
from .gcore import FiniteGroup, GaugeFunction

OEdge = tuple[int, int]
Path = tuple[OEdge, ...]


def rev(oe: OEdge) -> OEdge:
    return (oe[0], -oe[1])


def reverse_path(path: Sequence[OEdge]) -> Path:
    return tuple(rev(e) for e in reversed(path))


@dataclass(frozen=True)
class Edge:
    name: str
    start: Hashable
    end: Hashable


@dataclass(frozen=True, eq=False)
class IdealSurfaceTriangulation:
    """A closed oriented surface cut into triangles whose corners are the base points.

    ``image`` and ``lift`` relate a triangulation obtained by contracting
    edges back to the triangulation it came from (its ``root``):
    ``image[k]`` is where root edge ``k`` went (``None`` once contracted)
    and ``lift[v]`` is a root path from the surviving vertex that absorbed
    ``v`` to ``v`` itself.  For a root triangulation both are trivial.
    """

    vertices: tuple[Hashable, ...]
    edges: tuple[Edge, ...]
    triangles: tuple[tuple[OEdge, OEdge, OEdge], ...]
    kind: str = "ideal"
    root_ref: "IdealSurfaceTriangulation | None" = None
    image: tuple[OEdge | None, ...] | None = None
    absorbed_by: tuple[tuple[Hashable, Hashable], ...] | None = None
    lift: tuple[tuple[Hashable, Path], ...] | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    # -- basic structure
    @property
    def root(self) -> "IdealSurfaceTriangulation":
        return self if self.root_ref is None else self.root_ref

    def start(self, oe: OEdge) -> Hashable:
        e = self.edges[oe[0]]
        return e.start if oe[1] > 0 else e.end

    def end(self, oe: OEdge) -> Hashable:
        e = self.edges[oe[0]]
        return e.end if oe[1] > 0 else e.start

    def oriented_edges(self) -> list[OEdge]:
        return [(k, s) for k in range(len(self.edges)) for s in (1, -1)]

    def edge_index(self, name: str) -> int:
        idx = self._cache.get("names")
        if idx is None:
            idx = {e.name: k for k, e in enumerate(self.edges)}
            self._cache["names"] = idx
        try:
            return idx[name]
        except KeyError:
            raise SchemaError(f"unknown edge {name!r}", name) from None

    def parse_oedge(self, token) -> OEdge:
        if isinstance(token, (tuple, list)) and len(token) == 2:
            k, s = token
            return (int(k), 1 if s > 0 else -1)
        token = str(token)
        if token.startswith("-"):
            return (self.edge_index(token[1:]), -1)
        return (self.edge_index(token), 1)

    def oedge_name(self, oe: OEdge) -> str:
        return ("" if oe[1] > 0 else "-") + self.edges[oe[0]].name

    def triangle_of(self, oe: OEdge) -> int:
        """Index of the triangle having ``oe`` on its boundary (to its left when walking)."""
        tab = self._cache.get("tri_of")
        if tab is None:
            tab = {}
            for t, tri in enumerate(self.triangles):
                for oe2 in tri:
                    tab[oe2] = t
            self._cache["tri_of"] = tab
        return tab[oe]

    def components(self) -> list[frozenset]:
        comps = self._cache.get("components")
        if comps is None:
            parent = {v: v for v in self.vertices}

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for e in self.edges:
                a, b = find(e.start), find(e.end)
                if a != b:
                    parent[a] = b
            groups: dict = {}
            for v in self.vertices:
                groups.setdefault(find(v), []).append(v)
            comps = [frozenset(g) for g in groups.values()]
            comps.sort(key=lambda c: self.vertices.index(min(c, key=self.vertices.index)))
            self._cache["components"] = comps
        return comps

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.triangles)

    def adjacency(self) -> dict:
        adj = self._cache.get("adj")
        if adj is None:
            adj = {v: [] for v in self.vertices}
            for k, e in enumerate(self.edges):
                adj[e.start].append((k, 1))
                if e.end != e.start:
                    adj[e.end].append((k, -1))
                else:
                    adj[e.end].append((k, -1))
            self._cache["adj"] = adj
        return adj

    def path_between(self, a: Hashable, b: Hashable) -> Path:
        """Shortest edge path from ``a`` to ``b`` (BFS, lowest edge index first)."""
        if a == b:
            return ()
        adj = self.adjacency()
        prev = {a: None}
        queue = deque([a])
        while queue:
            x = queue.popleft()
            for oe in sorted(adj[x]):
                y = self.end(oe)
                if y not in prev:
                    prev[y] = (x, oe)
                    if y == b:
                        out = []
                        while prev[y] is not None:
                            x0, e0 = prev[y]
                            out.append(e0)
                            y = x0
                        return tuple(reversed(out))
                    queue.append(y)
        raise NotAPath(f"no path from {a!r} to {b!r}", [a, b])

    def check_path(self, path: Sequence[OEdge]) -> None:
        for i in range(len(path) - 1):
            if self.end(path[i]) != self.start(path[i + 1]):
                raise NotAPath(f"step {i} ends at {self.end(path[i])!r} but step {i + 1} starts at "
                               f"{self.start(path[i + 1])!r}", {"position": i})

    # -- root bookkeeping
    def image_of(self, k: int) -> OEdge | None:
        return (k, 1) if self.image is None else self.image[k]

    def absorber(self, v: Hashable) -> Hashable:
        if self.absorbed_by is None:
            return v
        return dict(self.absorbed_by)[v]

    def vertex_lift(self, v: Hashable) -> Path:
        if self.lift is None:
            return ()
        return dict(self.lift).get(v, ())

    def push_root_path(self, path: Sequence[OEdge]) -> Path:
        """Map a root path to a path in this triangulation (contracted edges vanish)."""
        out = []
        for k, s in path:
            im = self.image_of(k)
            if im is not None:
                out.append((im[0], im[1] * s))
        return tuple(out)

    def lift_edge(self, oe: OEdge) -> Path:
        """A root path representing ``oe``, running between the surviving endpoint vertices."""
        if self.root_ref is None:
            return (oe,)
        # edges of a contracted triangulation keep their root index
        rk = self._cache.get("root_index")
        if rk is None:
            rk = {}
            for k0, im in enumerate(self.image):
                if im is not None and im[1] == 1 and im[0] not in rk:
                    rk[im[0]] = k0
            self._cache["root_index"] = rk
        k0 = rk[oe[0]]
        root = self.root
        e0 = root.edges[k0]
        forward = (k0, 1)
        body = self.vertex_lift(e0.start) + (forward,) + reverse_path(self.vertex_lift(e0.end))
        return body if oe[1] > 0 else reverse_path(body)

    def __repr__(self):
        return (f"IdealSurfaceTriangulation(V={len(self.vertices)}, E={len(self.edges)}, "
                f"F={len(self.triangles)}, kind={self.kind!r})")


def make_surface(vertices: Sequence[Hashable], edges: Sequence, triangles: Sequence, kind: str = "ideal") -> IdealSurfaceTriangulation:
    """Build and validate a surface triangulation.

    ``edges`` is a list of ``(name, start, end)`` triples and each triangle a
    triple of oriented edge tokens: an edge name, or ``"-name"`` for the
    reversed edge.
    """
    verts = tuple(vertices)
    if len(set(verts)) != len(verts):
        raise SchemaError("duplicate vertex", None)
    es = []
    for item in edges:
        if isinstance(item, Edge):
            es.append(item)
        else:
            name, a, b = item
            es.append(Edge(str(name), a, b))
    if len({e.name for e in es}) != len(es):
        raise SchemaError("duplicate edge name", None)
    for e in es:
        if e.start not in verts or e.end not in verts:
            raise SchemaError(f"edge {e.name} has an unknown endpoint", e.name)
        if e.name.startswith("-"):
            raise SchemaError("edge names may not start with '-'", e.name)
    tri = IdealSurfaceTriangulation(verts, tuple(es), (), kind)
    tris = tuple(tuple(tri.parse_oedge(t) for t in triangle) for triangle in triangles)
    out = IdealSurfaceTriangulation(verts, tuple(es), tris, kind)
    validate_surface(out)
    return out


def validate_surface(tri: IdealSurfaceTriangulation) -> None:
    """Check closed-path boundaries, two corners per edge and connected vertex links."""
    for t, (a, b, c) in enumerate(tri.triangles):
        for x, y in ((a, b), (b, c), (c, a)):
            if tri.end(x) != tri.start(y):
                raise InvariantViolation(f"triangle {t} is not a closed path", {"triangle": t})
    if tri.kind == "sphere":
        if tri.triangles or len(tri.vertices) > 2 or len(tri.edges) != max(0, len(tri.vertices) - 1):
            raise InvariantViolation("sphere models have one or two vertices and a single arc at most", None)
        return
    seen: dict = {}
    for t, triangle in enumerate(tri.triangles):
        for oe in triangle:
            if oe in seen:
                raise InvariantViolation(f"oriented edge {tri.oedge_name(oe)} bounds two triangles "
                                         "(surface not coherently oriented)", {"edge": tri.oedge_name(oe)})
            seen[oe] = t
    for k in range(len(tri.edges)):
        for s in (1, -1):
            if (k, s) not in seen:
                raise InvariantViolation(f"edge {tri.edges[k].name} is not shared by two triangle corners",
                                         {"edge": tri.edges[k].name})
    # vertex links: corners around each vertex form one cycle
    nxt = {}
    for triangle in tri.triangles:
        for i in range(3):
            e_in, e_out = triangle[i], triangle[(i + 1) % 3]
            nxt[e_out] = rev(e_in)  # rotate around start(e_out)
    for v in tri.vertices:
        outgoing = [oe for oe in tri.oriented_edges() if tri.start(oe) == v]
        if not outgoing:
            raise InvariantViolation(f"vertex {v!r} is isolated", {"vertex": v})
        orbit, x = set(), outgoing[0]
        while x not in orbit:
            orbit.add(x)
            x = nxt[x]
        if len(orbit) != len(outgoing):
            raise InvariantViolation(f"link of vertex {v!r} is not a circle", {"vertex": v})
    for comp in tri.components():
        chi = (len(comp) - sum(1 for e in tri.edges if e.start in comp)
               + sum(1 for t in tri.triangles if tri.start(t[0]) in comp))
        if chi > 2 or chi % 2:
            raise InvariantViolation(f"component has Euler characteristic {chi}", {"chi": chi})


# ---------------------------------------------------------------------------
# standard triangulations


def torus_one_vertex() -> IdealSurfaceTriangulation:
    """Square with opposite sides glued: loops a, b and diagonal c, with c = ab."""
    return make_surface(
        ["p"],
        [("a", "p", "p"), ("b", "p", "p"), ("c", "p", "p")],
        [("a", "b", "-c"), ("c", "-a", "-b")],
    )


def genus2_one_vertex() -> IdealSurfaceTriangulation:
    """Octagon a b a^-1 b^-1 c d c^-1 d^-1 fanned from one corner."""
    edges = [(n, "p", "p") for n in ("a", "b", "c", "d", "x2", "x3", "x4", "x5", "x6")]
    tris = [
        ("a", "b", "-x2"),
        ("x2", "-a", "-x3"),
        ("x3", "-b", "-x4"),
        ("x4", "c", "-x5"),
        ("x5", "d", "-x6"),
        ("x6", "-c", "-d"),
    ]
    return make_surface(["p"], edges, tris)


def stellar_subdivide(tri: IdealSurfaceTriangulation, t: int, new_vertex: Hashable) -> IdealSurfaceTriangulation:
    """Cone triangle ``t`` off to a new interior vertex (three new edges)."""
    if tri.root_ref is not None:
        raise SchemaError("subdivide a root triangulation only", None)
    e1, e2, e3 = tri.triangles[t]
    A, B, C = tri.start(e1), tri.start(e2), tri.start(e3)
    base = len(tri.edges)
    names = {e.name for e in tri.edges}
    stem = str(new_vertex)
    new_edges = []
    for tag, frm in (("A", A), ("B", B), ("C", C)):
        name = f"{stem}{tag}"
        while name in names:
            name += "'"
        names.add(name)
        new_edges.append(Edge(name, frm, new_vertex))
    uA, uB, uC = (base, 1), (base + 1, 1), (base + 2, 1)
    tris = list(tri.triangles[:t]) + list(tri.triangles[t + 1:])
    tris += [(e1, uB, rev(uA)), (e2, uC, rev(uB)), (e3, uA, rev(uC))]
    out = IdealSurfaceTriangulation(tri.vertices + (new_vertex,), tri.edges + tuple(new_edges), tuple(tris))
    validate_surface(out)
    return out


def torus_two_vertex() -> IdealSurfaceTriangulation:
    return stellar_subdivide(torus_one_vertex(), 0, "q")


def genus2_two_vertex() -> IdealSurfaceTriangulation:
    return stellar_subdivide(genus2_one_vertex(), 0, "q")


def torus_with_vertices(count: int) -> IdealSurfaceTriangulation:
    """One-vertex torus with ``count - 1`` further vertices coned into triangles."""
    tri = torus_one_vertex()
    for i in range(count - 1):
        tri = stellar_subdivide(tri, i % len(tri.triangles), f"q{i + 1}")
    return tri


def sphere_tetrahedron() -> IdealSurfaceTriangulation:
    """Boundary of a tetrahedron on base points 0..3."""
    edges = [("e01", 0, 1), ("e02", 0, 2), ("e03", 0, 3), ("e12", 1, 2), ("e13", 1, 3), ("e23", 2, 3)]
    tris = [("e01", "e13", "-e03"), ("e12", "e23", "-e13"), ("e02", "-e12", "-e01"), ("e03", "-e23", "-e02")]
    return make_surface([0, 1, 2, 3], edges, tris)


def sphere_bigon(p: Hashable = "p", q: Hashable = "q") -> IdealSurfaceTriangulation:
    """Sphere with two base points; its groupoid is the pair groupoid on one arc."""
    return make_surface([p, q], [("arc", p, q)], [], kind="sphere")


def sphere_monogon(p: Hashable = "p") -> IdealSurfaceTriangulation:
    return make_surface([p], [], [], kind="sphere")


def load_surface(doc) -> IdealSurfaceTriangulation:
    """Parse a surface document: ``vertices``, ``edges`` [{name,start,end}], ``triangles``."""
    try:
        verts = doc["vertices"]
        edges = [(e["name"], e["start"], e["end"]) for e in doc["edges"]]
        tris = doc.get("triangles", [])
        kind = doc.get("kind", "ideal")
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed surface document: {exc}", None) from None
    return make_surface(verts, edges, tris, kind)


def surface_to_json(tri: IdealSurfaceTriangulation) -> dict:
    return {
        "vertices": list(tri.vertices),
        "edges": [{"name": e.name, "start": e.start, "end": e.end} for e in tri.edges],
        "triangles": [[tri.oedge_name(oe) for oe in t] for t in tri.triangles],
        "kind": tri.kind,
    }


# ---------------------------------------------------------------------------
# representations


@dataclass(frozen=True, eq=False)
class GroupoidRep:
    """A G-valued 1-cocycle: one group element per edge, read in the stored direction."""

    tri: IdealSurfaceTriangulation
    group: FiniteGroup
    labels: tuple[int, ...]

    def __call__(self, oe: OEdge) -> int:
        g = self.labels[oe[0]]
        return g if oe[1] > 0 else self.group.inv[g]

    def path_value(self, path: Sequence[OEdge]) -> int:
        self.tri.check_path(path)
        out = self.group.identity
        for oe in path:
            out = self.group.mul(out, self(oe))
        return out

    def root_path_value(self, path: Sequence[OEdge]) -> int:
        """Value on a path of the root triangulation whose endpoints survive here."""
        return self.path_value(self.tri.push_root_path(path))

    @property
    def base_points(self) -> tuple:
        return self.tri.vertices

    def named_labels(self) -> dict:
        return {e.name: self.group.name(g) for e, g in zip(self.tri.edges, self.labels)}

    def __eq__(self, other):
        return (isinstance(other, GroupoidRep) and self.tri is other.tri
                and self.group == other.group and self.labels == other.labels)

    def __hash__(self):
        return hash((id(self.tri), self.labels))

    def __repr__(self):
        return f"GroupoidRep({self.named_labels()})"


def validate_rep(tri: IdealSurfaceTriangulation, labels, group: FiniteGroup) -> GroupoidRep:
    """Check reversal coherence and the triangle relations, returning the representation.

    ``labels`` maps edge names, edge indices, or oriented edges ``(k, s)``
    to group elements (indices or element names).
    """
    forward: dict[int, int] = {}
    if isinstance(labels, Mapping):
        items = list(labels.items())
    else:
        items = list(enumerate(labels))
    for key, val in items:
        g = group.index(val)
        if isinstance(key, tuple):
            k, s = key
        elif isinstance(key, int) and not isinstance(key, bool):
            k, s = key, 1
        else:
            k, s = tri.parse_oedge(key)
        if not 0 <= k < len(tri.edges):
            raise SchemaError(f"edge index {k} out of range", k)
        g_fwd = g if s > 0 else group.inv[g]
        if k in forward and forward[k] != g_fwd:
            raise ReversalViolation(
                f"labels of {tri.edges[k].name} and its reverse are not inverse",
                {"edge": tri.edges[k].name},
            )
        forward[k] = g_fwd
    missing = [tri.edges[k].name for k in range(len(tri.edges)) if k not in forward]
    if missing:
        raise SchemaError(f"labels missing for edges {missing}", missing)
    rep = GroupoidRep(tri, group, tuple(forward[k] for k in range(len(tri.edges))))
    for t, triangle in enumerate(tri.triangles):
        if group.prod(rep(oe) for oe in triangle) != group.identity:
            raise CocycleViolation(
                f"triangle {t} ({', '.join(tri.oedge_name(o) for o in triangle)}) is not flat",
                {"triangle": t, "edges": [tri.oedge_name(o) for o in triangle]},
            )
    return rep


def trivial_rep(tri: IdealSurfaceTriangulation, group: FiniteGroup) -> GroupoidRep:
    return GroupoidRep(tri, group, (group.identity,) * len(tri.edges))


def gauge_act(phi: GaugeFunction, rho: GroupoidRep) -> GroupoidRep:
    """Left gauge action; ``phi`` must be defined on every base point of ``rho``."""
    if phi.group != rho.group:
        raise DomainMismatch("gauge function and representation use different groups", None)
    if phi.domain != frozenset(rho.tri.vertices):
        raise DomainMismatch(
            "gauge domain differs from the base points",
            {"domain": sorted(map(repr, phi.domain)), "base_points": sorted(map(repr, rho.tri.vertices))},
        )
    G, d = rho.group, phi.as_dict()
    out = tuple(G.mul(G.mul(d[e.start], g), G.inv[d[e.end]]) for e, g in zip(rho.tri.edges, rho.labels))
    return GroupoidRep(rho.tri, G, out)


def random_rep(tri: IdealSurfaceTriangulation, group: FiniteGroup, rng: random.Random,
               max_tries: int = 10_000) -> GroupoidRep:
    """Sample a representation by propagating the triangle relations (rejection on conflict)."""
    G = group
    n_edges = len(tri.edges)
    for _ in range(max_tries):
        lab: dict[int, int] = {}
        ok = True
        order = list(range(n_edges))
        while ok and len(lab) < n_edges:
            k = next(k for k in order if k not in lab)
            lab[k] = rng.randrange(G.order)
            changed = True
            while changed and ok:
                changed = False
                for triangle in tri.triangles:
                    unknown = [oe for oe in triangle if oe[0] not in lab]
                    if len({oe[0] for oe in unknown}) == 1 and len(unknown) == 1:
                        # solve rho(e_i) from the other two
                        i = triangle.index(unknown[0])
                        a, b = triangle[(i + 1) % 3], triangle[(i + 2) % 3]
                        va = lab[a[0]] if a[1] > 0 else G.inv[lab[a[0]]]
                        vb = lab[b[0]] if b[1] > 0 else G.inv[lab[b[0]]]
                        x = G.inv[G.mul(va, vb)]
                        k2, s2 = unknown[0]
                        lab[k2] = x if s2 > 0 else G.inv[x]
                        changed = True
                    elif not unknown:
                        vals = [lab[k3] if s3 > 0 else G.inv[lab[k3]] for k3, s3 in triangle]
                        if G.prod(vals) != G.identity:
                            ok = False
                            break
        if ok:
            return validate_rep(tri, lab, G)
    raise RuntimeError("could not sample a representation")


def rep_from_root(rho_root: GroupoidRep, tri: IdealSurfaceTriangulation) -> GroupoidRep:
    """Express a root representation on a contracted triangulation of the same root."""
    if tri.root is not rho_root.tri:
        raise SurfaceMismatch("triangulation does not descend from this representation's surface", None)
    return GroupoidRep(tri, rho_root.group,
                       tuple(rho_root.path_value(tri.lift_edge((k, 1))) for k in range(len(tri.edges))))


# ---------------------------------------------------------------------------
# restriction by tree contraction


def restrict_rep(rho: GroupoidRep, keep: Iterable[Hashable]) -> GroupoidRep:
    """Forget the base points outside ``keep``.

    Dropped vertices are contracted one edge at a time, always along the
    lowest-index edge joining a dropped vertex to a kept one (or, failing
    that, to another dropped vertex).  Before contracting an edge the
    dropped end is gauged so that the edge carries the identity, so values
    on paths between kept points are untouched.
    """
    tri, G = rho.tri, rho.group
    keep = set(keep)
    if not keep <= set(tri.vertices):
        raise DomainMismatch("keep set is not a subset of the base points",
                             sorted(map(repr, keep - set(tri.vertices))))
    for comp in tri.components():
        if not comp & keep:
            raise EmptyComponent("a component would lose all of its base points",
                                 sorted(map(repr, comp)))
    if keep == set(tri.vertices):
        return rho
    root = tri.root
    # mutable working copies
    verts = list(tri.vertices)
    edges = {k: [e.name, e.start, e.end] for k, e in enumerate(tri.edges)}
    labels = dict(enumerate(rho.labels))
    tris = [list(t) for t in tri.triangles]
    image = [tri.image_of(k) for k in range(len(root.edges))]
    absorbed = {v: tri.absorber(v) for v in root.vertices}
    lift = {v: tri.vertex_lift(v) for v in root.vertices}
    root_index = {}
    for k0, im in enumerate(image):
        if im is not None and im[1] == 1 and im[0] not in root_index:
            root_index[im[0]] = k0

    def value(oe):
        g = labels[oe[0]]
        return g if oe[1] > 0 else G.inv[g]

    def start(oe):
        e = edges[oe[0]]
        return e[1] if oe[1] > 0 else e[2]

    def end(oe):
        e = edges[oe[0]]
        return e[2] if oe[1] > 0 else e[1]

    def remap_edge(k_old, target: OEdge | None):
        # every root edge mapped to k_old follows it to target
        for k0, im in enumerate(image):
            if im is not None and im[0] == k_old:
                image[k0] = None if target is None else (target[0], target[1] * im[1])
        for t in tris:
            for i, oe in enumerate(t):
                if oe[0] == k_old and target is not None:
                    t[i] = (target[0], target[1] * oe[1])

    while True:
        dropped = [v for v in verts if v not in keep]
        if not dropped:
            break
        cand = None
        for prefer_kept in (True, False):
            for k in sorted(edges):
                _, a, b = edges[k]
                if a == b:
                    continue
                if prefer_kept and ((a in keep) == (b in keep)):
                    continue
                if not prefer_kept and (a in keep or b in keep):
                    continue
                cand = k
                break
            if cand is not None:
                break
        if cand is None:
            raise EmptyComponent("cannot reach a kept base point", sorted(map(repr, dropped)))
        _, a, b = edges[cand]
        if b in keep or (a not in keep and b not in keep and verts.index(b) < verts.index(a)):
            stay, gone, t_dir = b, a, (cand, -1)
        else:
            stay, gone, t_dir = a, b, (cand, 1)
        # t_dir walks stay -> gone.  Gauge at gone so that it carries 1.
        g_gone = value(t_dir)
        for k, (_, s0, e0) in edges.items():
            if s0 == gone and e0 == gone:
                labels[k] = G.conj(g_gone, labels[k])
            elif s0 == gone:
                labels[k] = G.mul(g_gone, labels[k])
            elif e0 == gone:
                labels[k] = G.mul(labels[k], G.inv[g_gone])
        # bookkeeping for lifts: root path from stay to each vertex absorbed by gone
        k0 = root_index[cand]
        e_root = root.edges[k0]
        fwd_root = (k0, 1)
        stay_root, gone_root = (e_root.start, e_root.end) if t_dir[1] > 0 else (e_root.end, e_root.start)
        step = fwd_root if t_dir[1] > 0 else (k0, -1)
        bridge = lift[stay_root] + (step,) + reverse_path(lift[gone_root])
        for v in root.vertices:
            if absorbed[v] == gone:
                lift[v] = bridge + lift[v]
                absorbed[v] = stay
        # contract: rename gone -> stay
        for k in edges:
            if edges[k][1] == gone:
                edges[k][1] = stay
            if edges[k][2] == gone:
                edges[k][2] = stay
        verts.remove(gone)
        null = deque([cand])
        while null:
            kn = null.popleft()
            if kn not in edges:
                continue
            del edges[kn]
            del labels[kn]
            remap_edge(kn, None)
            keep_tris = []
            pending = []
            for t in tris:
                if any(oe[0] == kn for oe in t):
                    pending.append(t)
                else:
                    keep_tris.append(t)
            tris = keep_tris
            for t in pending:
                i = next(i for i, oe in enumerate(t) if oe[0] == kn)
                e2, e3 = t[(i + 1) % 3], t[(i + 2) % 3]
                n2, n3 = e2[0] == kn or e2[0] not in edges, e3[0] == kn or e3[0] not in edges
                if n2 and n3:
                    continue
                if n2 or n3:
                    null.append(e3[0] if n2 else e2[0])
                    continue
                if e2[0] == e3[0]:
                    continue
                # e2 e3 = 1 now, so e3 is the reverse of e2; fold e3 into e2
                if G.mul(value(e2), value(e3)) != G.identity:
                    raise InvariantViolation("contraction produced an inconsistent fold", None)
                keep_k, drop_k = min(e2[0], e3[0]), max(e2[0], e3[0])
                if keep_k == e2[0]:
                    target = (e2[0], -e2[1] * e3[1])  # drop edge e3 as -e2
                else:
                    target = (e3[0], -e3[1] * e2[1])
                del edges[drop_k]
                del labels[drop_k]
                remap_edge(drop_k, target)
                for t2 in pending:
                    for j, oe in enumerate(t2):
                        if oe[0] == drop_k:
                            t2[j] = (target[0], target[1] * oe[1])
    # renumber
    order = sorted(edges)
    new_index = {k: i for i, k in enumerate(order)}
    new_edges = tuple(Edge(*edges[k]) for k in order)
    new_labels = tuple(labels[k] for k in order)
    new_tris = tuple(tuple((new_index[oe[0]], oe[1]) for oe in t) for t in tris)
    new_image = tuple(None if im is None else (new_index[im[0]], im[1]) for im in image)
    kind = "ideal" if new_tris else "sphere"
    out_tri = IdealSurfaceTriangulation(
        tuple(verts), new_edges, new_tris, kind, root, new_image,
        tuple((v, absorbed[v]) for v in root.vertices),
        tuple((v, lift[v]) for v in root.vertices),
    )
    if kind == "ideal":
        validate_surface(out_tri)
    return validate_rep(out_tri, dict(enumerate(new_labels)), G)


def _restricted_tri_cache(root: IdealSurfaceTriangulation, keep: frozenset) -> IdealSurfaceTriangulation:
    cache = root._cache.setdefault("restricted", {})
    if keep not in cache:
        probe = trivial_rep(root, _TRIVIAL_GROUP)
        cache[keep] = restrict_rep(probe, keep).tri
    return cache[keep]


def _make_trivial_group() -> FiniteGroup:
    from .gcore import cyclic_group

    return cyclic_group(1)


_TRIVIAL_GROUP = _make_trivial_group()


def canonical_restriction(rho_root: GroupoidRep, keep: Iterable[Hashable]) -> GroupoidRep:
    """Restriction of a root representation, on the canonical contracted triangulation.

    The contracted triangulation depends only on the root surface and the
    kept set, so two restrictions to the same set compare label by label.
    """
    keep = frozenset(keep)
    tri = rho_root.tri
    if tri.root_ref is not None:
        raise SurfaceMismatch("expected a representation on a root triangulation", None)
    if keep == frozenset(tri.vertices):
        return rho_root
    ctri = _restricted_tri_cache(tri, keep)
    return rep_from_root(rho_root, ctri)


# ---------------------------------------------------------------------------
# equivalence of decorated surfaces


def _loops_at(tri: IdealSurfaceTriangulation, v: Hashable, comp: frozenset) -> list[Path]:
    """Generators of the fundamental group at ``v`` as root paths, one per non-tree edge."""
    tree_path = {}
    for w in comp:
        tree_path[w] = tri.path_between(v, w)
    tree_edges = {oe[0] for p in tree_path.values() for oe in p}
    loops = []
    for k, e in enumerate(tri.edges):
        if e.start in comp and k not in tree_edges:
            body = tree_path[e.start] + ((k, 1),) + reverse_path(tree_path[e.end])
            loops.append(body)
    return loops


def reps_equal_up_to_equivalence(a: GroupoidRep, b: GroupoidRep) -> bool:
    """True iff the two decorations restrict to the same class of pi_1-representations.

    Per component a root is chosen among ``a``'s base points; the loop
    values of ``a`` and ``b`` there are compared up to a common conjugation,
    searching all of G.
    """
    if a.tri.root is not b.tri.root:
        raise SurfaceMismatch("decorations live on different surfaces", None)
    if a.group != b.group:
        raise SurfaceMismatch("decorations use different groups", None)
    G = a.group
    root = a.tri.root
    for comp in root.components():
        ra = next((v for v in a.tri.vertices if v in comp), None)
        rb = next((v for v in b.tri.vertices if v in comp), None)
        if ra is None or rb is None:
            # empty base-point set on this component: compare nothing we can see
            if (ra is None) != (rb is None):
                raise SurfaceMismatch("one decoration has no base point on a component", None)
            continue
        loops = _loops_at(root, ra, comp)
        delta = root.path_between(rb, ra)
        va = [a.root_path_value(lp) for lp in loops]
        vb = [b.root_path_value(delta + lp + reverse_path(delta)) for lp in loops]
        if not any(all(G.conj(g, x) == y for x, y in zip(va, vb)) for g in G.elements):
            return False
    return True
