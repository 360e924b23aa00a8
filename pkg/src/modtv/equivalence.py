"""Words in the equivalence groupoid of decorated surfaces and their normal forms.

A decoration ``(Y, rho)`` is stored as a representation of the full root
triangulation (every vertex a base point) together with the subset ``Y``
that is actually visible; two decorations are equal when their
restrictions to ``Y`` agree edge for edge on the canonical contracted
triangulation.

Generators are listed in composition order, so ``[Restrict(...), Gauge(phi)]``
applies the gauge first.  Every equivalence has the normal form
``J_phi o R(Y1, Y2, rho)`` with ``phi`` supported on ``Y1 & Y2``.

Besides rewriting, an equivalence between connected decorated surfaces is
pinned down by its *transport*: the value of the cylinder representation
on a path that starts at a source base point at the bottom and ends at a
target base point at the top.  For ``J_phi`` on ``(Y, sigma)`` a path
``y -> y'`` is sent to ``sigma(path) * phi(y')^-1``; for a restriction
cylinder it is sent to ``rho(path)``.  Transports of a composite multiply
along a path that passes through a base point of each intermediate surface.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence, Union

from .decor import (
    GroupoidRep,
    canonical_restriction,
    gauge_act,
)
from .errors import DomainMismatch, NotComposable, SchemaError, SurfaceMismatch
from .gcore import FiniteGroup, GaugeFunction


def _key(ys: Iterable[Hashable]) -> frozenset:
    return frozenset(ys)


def same_on(a: GroupoidRep, b: GroupoidRep, ys: Iterable[Hashable]) -> bool:
    """Do two root representations restrict to the same representation on ``ys``?"""
    ys = _key(ys)
    return canonical_restriction(a, ys).labels == canonical_restriction(b, ys).labels


def extend_gauge(phi: GaugeFunction, rho: GroupoidRep) -> GaugeFunction:
    return phi.extend(rho.tri.vertices) if phi.domain != frozenset(rho.tri.vertices) else phi


def gauge_root(phi: GaugeFunction, rho: GroupoidRep) -> GroupoidRep:
    """Act on a root representation by ``phi`` extended by the identity."""
    return gauge_act(extend_gauge(phi, rho), rho)


@dataclass(frozen=True)
class Decoration:
    base: frozenset
    ext: GroupoidRep

    def __post_init__(self):
        if not self.base <= frozenset(self.ext.tri.vertices):
            raise DomainMismatch("base points not on the surface", sorted(map(repr, self.base)))
        if self.ext.tri.root_ref is not None:
            raise SurfaceMismatch("decorations are stored on root triangulations", None)

    def restricted(self) -> GroupoidRep:
        return canonical_restriction(self.ext, self.base)

    def same(self, other: "Decoration") -> bool:
        return (self.base == other.base and self.ext.tri is other.ext.tri
                and same_on(self.ext, other.ext, self.base))


@dataclass(frozen=True)
class Gauge:
    phi: GaugeFunction


@dataclass(frozen=True)
class Restrict:
    y1: frozenset
    y2: frozenset
    rho: GroupoidRep  # root representation; only its restriction to y1 | y2 matters


Generator = Union[Gauge, Restrict]


@dataclass(frozen=True)
class NormalForm:
    """``J_phi o R(y1, y2, rho)``: restrict, then gauge by ``phi`` on ``y2``."""

    phi: GaugeFunction
    y1: frozenset
    y2: frozenset
    rho: GroupoidRep

    @property
    def source(self) -> Decoration:
        return Decoration(self.y1, self.rho)

    @property
    def target(self) -> Decoration:
        return Decoration(self.y2, gauge_root(self.phi, self.rho))

    def same(self, other: "NormalForm") -> bool:
        return (self.y1 == other.y1 and self.y2 == other.y2
                and self.phi.extend(self.y2) == other.phi.extend(other.y2)
                and same_on(self.rho, other.rho, self.y1 | self.y2))

    def transport(self, path) -> int:
        """Transport along a root path from a point of ``y1`` to a point of ``y2``."""
        G = self.rho.group
        end = self.rho.tri.end(path[-1]) if path else None
        if end is None:
            raise SchemaError("transport needs a nonempty path; use a constant path helper", None)
        return G.mul(self.rho.path_value(path), G.inv[self.phi.get(end)])


@dataclass(frozen=True)
class EquivalenceWord:
    source: Decoration
    generators: tuple  # composition order: the last entry acts first

    def steps(self) -> list:
        return list(reversed(self.generators))


# ---------------------------------------------------------------------------
# single generators


def _check_support(phi: GaugeFunction, allowed: frozenset) -> None:
    if not phi.support() <= allowed:
        raise DomainMismatch("gauge support leaves the allowed set",
                             sorted(map(repr, phi.support() - allowed)))


def generator_normal_form(gen: Generator, current: Decoration, position: int) -> NormalForm:
    G = current.ext.group
    if isinstance(gen, Gauge):
        if gen.phi.domain != current.base:
            raise NotComposable(f"gauge at position {position} is defined on the wrong base points",
                                {"position": position})
        return NormalForm(gen.phi, current.base, current.base, current.ext)
    if isinstance(gen, Restrict):
        if gen.y1 != current.base or not same_on(gen.rho, current.ext, gen.y1):
            raise NotComposable(f"restriction at position {position} does not start at the current decoration",
                                {"position": position})
        return NormalForm(GaugeFunction.identity(G, gen.y2), gen.y1, gen.y2, gen.rho)
    raise SchemaError(f"unknown generator {gen!r}", position)


def apply_generator(gen: Generator, current: Decoration) -> Decoration:
    """The target decoration of a generator (its action as a map of decorations)."""
    if isinstance(gen, Gauge):
        return Decoration(current.base, gauge_root(gen.phi, current.ext))
    return Decoration(gen.y2, gen.rho)


def evaluate_word(w: EquivalenceWord) -> Decoration:
    """Run the word generator by generator and return the final decoration."""
    cur = w.source
    for pos, gen in enumerate(w.steps()):
        generator_normal_form(gen, cur, pos)  # composability
        cur = apply_generator(gen, cur)
    return cur


# ---------------------------------------------------------------------------
# composing normal forms


def _anchor_paths(rho: GroupoidRep, targets: frozenset) -> dict:
    """For every root vertex, a path to some point of ``targets`` in its component."""
    tri = rho.tri
    out = {}
    for comp in tri.components():
        anchors = [v for v in tri.vertices if v in comp and v in targets]
        if not anchors:
            raise DomainMismatch("an intermediate surface has no base point on a component", None)
        a = anchors[0]
        for v in comp:
            out[v] = tri.path_between(v, a)
    return out


def compose(second: NormalForm, first: NormalForm) -> NormalForm:
    """Normal form of ``second o first``.

    ``J_b R(Y2,Y3,r') o J_a R(Y1,Y2,r)``: push ``J_a`` left through the
    restriction (``r' -> a^-1 . r'``), merge gauges, then amalgamate the two
    restrictions over ``Y2`` and move gauge support outside ``Y1`` into
    the restriction data.
    """
    if first.y2 != second.y1:
        raise NotComposable("intermediate base points differ", None)
    rho, rho2 = first.rho, second.rho
    if rho.tri is not rho2.tri:
        raise SurfaceMismatch("normal forms live on different surfaces", None)
    G = rho.group
    verts = rho.tri.vertices
    y1, y2, y3 = first.y1, first.y2, second.y2
    a = first.phi.extend(verts)
    rho_pp = gauge_act(a.inverse(), rho2)
    if not same_on(rho_pp, rho, y2):
        raise NotComposable("target of the first factor is not the source of the second", None)
    # psi with psi = 1 on Y2 and rho_pp = psi . rho (on the root)
    anchor = _anchor_paths(rho, y2)
    psi = {v: G.mul(rho_pp.path_value(p), G.inv[rho.path_value(p)]) if p else G.identity
           for v, p in anchor.items()}
    chi = {y: psi[y] for y in y1 & y3}
    psi_out = GaugeFunction.make(G, {v: (psi[v] if (v in y3 and v not in y1) else G.identity) for v in verts})
    rho_bar = gauge_act(psi_out, rho)
    b = second.phi.extend(y3)
    total = {y: G.mul(G.mul(b(y), a(y)), chi.get(y, G.identity)) for y in y3}
    phi1 = GaugeFunction.make(G, {y: (g if y in y1 else G.identity) for y, g in total.items()})
    phi2 = GaugeFunction.make(G, {v: (total[v] if (v in y3 and v not in y1) else G.identity) for v in verts})
    return NormalForm(phi1, y1, y3, gauge_act(phi2, rho_bar))


def normal_form(w: EquivalenceWord, order: str = "left") -> NormalForm:
    """Reduce a composable word to ``J_phi o R(Y1, Y2, rho)``.

    ``order`` picks how the pairwise compositions are associated
    (``"left"`` folds from the first-applied generator, ``"right"`` from
    the last); both give the same normal form.
    """
    cur = w.source
    pieces = []
    for pos, gen in enumerate(w.steps()):
        pieces.append(generator_normal_form(gen, cur, pos))
        cur = apply_generator(gen, cur)
    if not pieces:
        G = w.source.ext.group
        return NormalForm(GaugeFunction.identity(G, w.source.base), w.source.base, w.source.base, w.source.ext)
    if order == "left":
        acc = pieces[0]
        for p in pieces[1:]:
            acc = compose(p, acc)
    elif order == "right":
        acc = pieces[-1]
        for p in reversed(pieces[:-1]):
            acc = compose(acc, p)
    else:
        raise ValueError(order)
    return acc


def normal_form_as_word(nf: NormalForm) -> EquivalenceWord:
    gens = (Gauge(nf.phi.extend(nf.y2)), Restrict(nf.y1, nf.y2, nf.rho))
    return EquivalenceWord(nf.source, gens)


# ---------------------------------------------------------------------------
# transport oracle


def _pick(ys: frozenset, verts: Sequence) -> Hashable:
    return next(v for v in verts if v in ys)


def word_transport(w: EquivalenceWord, start: Hashable, end: Hashable, rng: random.Random | None = None):
    """Transport of the whole word along a path ``start -> ... -> end`` through each middle surface.

    Returns ``(path, value)``.  The path visits one base point of each
    intermediate surface (the first one, or a random one when ``rng`` is
    given) and the value is the product of the generator transports.
    """
    tri = w.source.ext.tri
    G = w.source.ext.group
    verts = tri.vertices
    cur = w.source
    segs_end = []
    decs = [cur]
    for gen in w.steps():
        cur = apply_generator(gen, cur)
        decs.append(cur)
    stops = [start]
    for d in decs[1:-1]:
        ys = sorted(d.base, key=verts.index)
        stops.append(rng.choice(ys) if rng else ys[0])
    stops.append(end)
    path = ()
    value = G.identity
    for gen, src, a, b in zip(w.steps(), decs, stops[:-1], stops[1:]):
        seg = tri.path_between(a, b)
        path += seg
        if isinstance(gen, Gauge):
            t = G.mul(src.ext.path_value(seg) if seg else G.identity, G.inv[gen.phi(b)])
        else:
            t = gen.rho.path_value(seg) if seg else G.identity
        value = G.mul(value, t)
        segs_end.append(b)
    return path, value


def normal_form_transport(nf: NormalForm, path, start: Hashable, end: Hashable) -> int:
    G = nf.rho.group
    v = nf.rho.path_value(path) if path else G.identity
    return G.mul(v, G.inv[nf.phi.get(end)])


# ---------------------------------------------------------------------------
# random words


def random_subset(rng: random.Random, verts: Sequence) -> frozenset:
    while True:
        s = frozenset(v for v in verts if rng.random() < 0.5)
        if s:
            return s


def random_word(source: Decoration, length: int, rng: random.Random, p_gauge: float = 0.5) -> EquivalenceWord:
    """A random composable word of the given length starting at ``source``."""
    G = source.ext.group
    verts = source.ext.tri.vertices
    cur = source
    steps = []
    for _ in range(length):
        if rng.random() < p_gauge:
            phi = GaugeFunction.make(G, {y: rng.randrange(G.order) for y in cur.base})
            gen: Generator = Gauge(phi)
        else:
            y2 = random_subset(rng, verts)
            # any extension of the current data to the new points: gauge away from cur.base
            shift = GaugeFunction.make(G, {v: (G.identity if v in cur.base else rng.randrange(G.order)) for v in verts})
            gen = Restrict(cur.base, y2, gauge_act(shift, cur.ext))
        steps.append(gen)
        cur = apply_generator(gen, cur)
    return EquivalenceWord(source, tuple(reversed(steps)))


# ---------------------------------------------------------------------------
# JSON


def _gauge_from_json(G: FiniteGroup, doc) -> GaugeFunction:
    if not isinstance(doc, dict):
        raise SchemaError("gauge must map base points to group elements", doc)
    return GaugeFunction.make(G, {k: G.index(v) for k, v in doc.items()})


def load_word(doc, tri, group: FiniteGroup) -> EquivalenceWord:
    """Parse ``{"source": {"base": [...], "labels": {...}}, "word": [...]}``.

    Each word entry is ``{"gauge": {y: g}}`` or
    ``{"restrict": {"from": [...], "to": [...], "labels": {...}}}`` and the
    list is in composition order (last entry applied first).  Vertex names
    in JSON are strings and are matched against the surface vertices.
    """
    from .decor import validate_rep

    names = {str(v): v for v in tri.vertices}

    def verts(xs):
        try:
            return frozenset(names[str(x)] for x in xs)
        except KeyError as exc:
            raise SchemaError(f"unknown base point {exc}", None) from None

    try:
        src = doc["source"]
        source = Decoration(verts(src["base"]), validate_rep(tri, src["labels"], group))
        gens = []
        for item in doc["word"]:
            if "gauge" in item:
                phi = _gauge_from_json(group, {names[str(k)]: v for k, v in item["gauge"].items()})
                gens.append(Gauge(phi))
            elif "restrict" in item:
                r = item["restrict"]
                gens.append(Restrict(verts(r["from"]), verts(r["to"]), validate_rep(tri, r["labels"], group)))
            else:
                raise SchemaError(f"unknown generator {item!r}", item)
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed word document: {exc!r}", None) from None
    return EquivalenceWord(source, tuple(gens))


def normal_form_to_json(nf: NormalForm) -> dict:
    G = nf.rho.group
    return {
        "gauge": {str(y): G.name(g) for y, g in sorted(nf.phi.extend(nf.y2).as_dict().items(), key=lambda kv: repr(kv[0]))},
        "restrict_from": sorted(map(str, nf.y1)),
        "restrict_to": sorted(map(str, nf.y2)),
        "labels": canonical_restriction(nf.rho, nf.y1 | nf.y2).named_labels(),
    }


def word_to_json(w: EquivalenceWord) -> dict:
    """Inverse of :func:`load_word` (surface and group are stored separately)."""
    G = w.source.ext.group
    items = []
    for gen in w.generators:
        if isinstance(gen, Gauge):
            items.append({"gauge": {str(y): G.name(g) for y, g in gen.phi.values}})
        else:
            items.append({"restrict": {"from": sorted(map(str, gen.y1)), "to": sorted(map(str, gen.y2)),
                                       "labels": gen.rho.named_labels()}})
    return {"source": {"base": sorted(map(str, w.source.base)), "labels": w.source.ext.named_labels()},
            "word": items}
