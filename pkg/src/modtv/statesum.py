"""State sums over H-triangulations.

Two evaluation routes compute the same exact scalar:

* ``states``: enumerate states, weight each by ``b``/``d`` factors and contract
  its tetrahedral tensors against one copairing per face along a
  :class:`ContractionPlan`;
* ``eliminate``: treat edge colors and face basis indices alike as summation
  variables of one factor graph and eliminate them greedily.  This is the
  default; it never materialises the state list.

Face contraction convention: slot ``(t, m)`` with boundary triple ``f`` and
the opposite slot with triple ``f'`` (the partner of ``f``) are joined by
``C(f)[x'][x]`` where ``C = gram(f)^-1`` and ``x``, ``x'`` are the basis
indices on the two sides.  Swapping the roles of the slots gives the same
number because ``C(f') = C(f)^T``.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .catdata import EDGE_PAIRS, CategoryBackend
from .cyclotomic import Scalar
from .errors import (
    DegreeInBadSet,
    GuardFailed,
    HamiltonicityLost,
    InadmissibleEdge,
    InadmissibleState,
    UnsupportedDecoration,
)
from .graphval import TetLabel, check_even_permutation, eval_tet, eval_tet_raw
from .tricomplex import HTriangulation, gauge_move_phi, pachner_14, pachner_23, pachner_32, pachner_41

State = tuple[int, ...]  # simple index per quotient edge, canonical orientation


@dataclass
class Stats:
    states: int = 0
    tet_lookups: int = 0
    cache_hits: int = 0
    seconds: float = 0.0

    def as_dict(self) -> dict:
        return {"states": self.states, "tet_lookups": self.tet_lookups, "cache_hits": self.cache_hits,
                "seconds": round(self.seconds, 4)}


# ---------------------------------------------------------------------------
# states


def edge_domains(h: HTriangulation, backend: CategoryBackend) -> list[list[int]]:
    out = []
    for e, g in enumerate(h.phi):
        if g in backend.badset:
            raise DegreeInBadSet(f"edge {e} carries a degree in the bad set",
                                 {"edge": e, "ends": list(h.complex.edges[e]), "degree": backend.group.name(g)})
        out.append(backend.simples_of_degree(g))
    return out


def local_color(h: HTriangulation, backend: CategoryBackend, state: Sequence[int], t: int, a: int, b: int) -> int:
    e, s = h.complex.local_edge(t, a, b)
    return state[e] if s > 0 else backend.star[state[e]]


def tet_labels(h: HTriangulation, backend: CategoryBackend, state: Sequence[int], t: int) -> tuple[int, ...]:
    return tuple(local_color(h, backend, state, t, a, b) for a, b in EDGE_PAIRS)


def slot_triple(h: HTriangulation, backend: CategoryBackend, state: Sequence[int], t: int, m: int):
    a, b, c = h.complex.slot_triple(t, m)
    return (local_color(h, backend, state, t, a, b), local_color(h, backend, state, t, b, c),
            local_color(h, backend, state, t, c, a))


def _face_edges(h: HTriangulation) -> list[tuple[int, ...]]:
    c = h.complex
    out = []
    for (t, m), _ in c.faces:
        a, b, cc = c.slot_triple(t, m)
        out.append(tuple(c.local_edge(t, x, y)[0] for x, y in ((a, b), (b, cc), (cc, a))))
    return out


def enumerate_states(h: HTriangulation, backend: CategoryBackend) -> Iterator[State]:
    """Backtracking over edges in index order, pruning faces with no multiplicity space."""
    doms = edge_domains(h, backend)
    n = len(doms)
    faces = _face_edges(h)
    # faces become checkable once their largest edge index is assigned
    check_at: list[list[int]] = [[] for _ in range(n)]
    for f, es in enumerate(faces):
        check_at[max(es)].append(f)
    slots = [h.complex.faces[f][0] for f in range(len(faces))]
    cur = [0] * n

    def ok(f):
        return backend.N(*slot_triple(h, backend, cur, *slots[f])) > 0

    def rec(k):
        if k == n:
            yield tuple(cur)
            return
        for x in doms[k]:
            cur[k] = x
            if all(ok(f) for f in check_at[k]):
                yield from rec(k + 1)

    yield from rec(0)


def state_weight(h: HTriangulation, backend: CategoryBackend, state: Sequence[int]) -> Scalar:
    w = backend.field.one()
    for e, x in enumerate(state):
        w = w * (backend.b[x] if e in h.gamma else backend.d[x])
    return w


# ---------------------------------------------------------------------------
# factor elimination


class Factor:
    __slots__ = ("vars", "table")

    def __init__(self, vars_: tuple, table: dict):
        self.vars = vars_
        self.table = table


def _multiply(f: Factor, g: Factor) -> Factor:
    shared = [v for v in f.vars if v in g.vars]
    extra = [v for v in g.vars if v not in f.vars]
    gi_shared = [g.vars.index(v) for v in shared]
    gi_extra = [g.vars.index(v) for v in extra]
    fi_shared = [f.vars.index(v) for v in shared]
    index: dict = {}
    for key, val in g.table.items():
        index.setdefault(tuple(key[i] for i in gi_shared), []).append((tuple(key[i] for i in gi_extra), val))
    out = {}
    for key, val in f.table.items():
        for ext, v2 in index.get(tuple(key[i] for i in fi_shared), ()):
            out[key + ext] = val * v2
    return Factor(f.vars + tuple(extra), out)


def _sum_out(f: Factor, var) -> Factor:
    i = f.vars.index(var)
    out: dict = {}
    for key, val in f.table.items():
        k2 = key[:i] + key[i + 1:]
        out[k2] = out[k2] + val if k2 in out else val
    return Factor(f.vars[:i] + f.vars[i + 1:], {k: v for k, v in out.items() if _nonzero(v)})


def _nonzero(v) -> bool:
    return not v.is_zero() if isinstance(v, Scalar) else v != 0


def greedy_order(factors: Sequence[Factor], domain_size: dict) -> list:
    """Min-size elimination order: repeatedly remove the variable whose merged scope is smallest."""
    scopes = [set(f.vars) for f in factors]
    remaining = set().union(*scopes) if scopes else set()
    order = []
    while remaining:
        best, best_cost = None, None
        for v in sorted(remaining, key=repr):
            merged = set().union(*(s for s in scopes if v in s))
            cost = 1
            for u in merged:
                cost *= domain_size.get(u, 1)
            if best_cost is None or cost < best_cost:
                best, best_cost = v, cost
        merged = set().union(*(s for s in scopes if best in s)) - {best}
        scopes = [s for s in scopes if best not in s] + [merged]
        remaining.discard(best)
        order.append(best)
    return order


def eliminate(factors: Sequence[Factor], order: Sequence, one: Scalar) -> Scalar:
    pool = list(factors)
    for v in order:
        hit = [f for f in pool if v in f.vars]
        if not hit:
            continue
        pool = [f for f in pool if v not in f.vars]
        prod = hit[0]
        for f in hit[1:]:
            prod = _multiply(prod, f)
        pool.append(_sum_out(prod, v))
    total = one
    for f in pool:
        if f.vars:
            raise RuntimeError("elimination order missed a variable")
        total = total * f.table.get((), one - one)  # an emptied table means zero
    return total


# ---------------------------------------------------------------------------
# per-state contraction


@dataclass(frozen=True)
class ContractionPlan:
    """Order in which faces are contracted (each face joins its two slot indices)."""

    faces: tuple[int, ...]

    @classmethod
    def greedy(cls, h: HTriangulation, backend: CategoryBackend, state: Sequence[int]) -> "ContractionPlan":
        dims = [backend.N(*slot_triple(h, backend, state, *slot)) for slot, _ in h.complex.faces]
        return cls(tuple(sorted(range(len(dims)), key=lambda f: (dims[f], f))))

    @classmethod
    def shuffled(cls, h: HTriangulation, seed: int) -> "ContractionPlan":
        order = list(range(len(h.complex.faces)))
        random.Random(seed).shuffle(order)
        return cls(tuple(order))

    def check(self, h: HTriangulation) -> None:
        if sorted(self.faces) != list(range(len(h.complex.faces))):
            raise ValueError("a contraction plan must consume every face exactly once")


def _tet_value(h, backend, state, t, basis, stats: Stats | None) -> Scalar:
    return _tet_value_labels(backend, tet_labels(h, backend, state, t), h.complex.signs[t], basis, stats)


def _tet_value_labels(backend, labels, sign, basis, stats):
    """Tet entry through the symmetry memo, or raw when the tables lack the even-permutation symmetry."""
    ok = backend._cache.get("even_ok")
    if ok is None:
        ok = backend._cache["even_ok"] = bool(check_even_permutation(backend))
    label = TetLabel(labels, sign, tuple(basis))
    if not ok:
        if stats is not None:
            stats.tet_lookups += 1
        return eval_tet_raw(backend, label)
    before = len(backend._cache.get("tet", ()))
    val = eval_tet(backend, label)
    if stats is not None:
        stats.tet_lookups += 1
        if before == len(backend._cache["tet"]):
            stats.cache_hits += 1
    return val


def contract_state(h: HTriangulation, backend: CategoryBackend, state: Sequence[int],
                   plan: ContractionPlan | None = None, stats: Stats | None = None,
                   fast: bool = True) -> Scalar:
    """Pair the tetrahedral tensors of one state through the face copairings."""
    c, F = h.complex, backend.field
    triples = {}
    for t in range(c.n_tets):
        for m in range(4):
            tr = slot_triple(h, backend, state, t, m)
            if backend.N(*tr) == 0:
                raise InadmissibleState("a face of the state has no multiplicity space",
                                        {"tet": t, "face": m, "triple": backend.triple_names(tr)})
            triples[(t, m)] = tr
    if fast and all(backend.N(*tr) == 1 for tr in triples.values()):
        val = F.one()
        for t in range(c.n_tets):
            val = val * _tet_value(h, backend, state, t, (0, 0, 0, 0), stats)
        for s1, _ in c.faces:
            val = val * backend.copairing_matrix(*triples[s1])[0][0]
        return val

    plan = plan or ContractionPlan.greedy(h, backend, state)
    plan.check(h)
    factors = []
    for t in range(c.n_tets):
        dims = [backend.N(*triples[(t, m)]) for m in range(4)]
        table = {}
        for basis in _grid(dims):
            v = _tet_value(h, backend, state, t, basis, stats)
            if not v.is_zero():
                table[basis] = v
        factors.append(Factor(tuple(("s", t, m) for m in range(4)), table))
    for s1, s2 in c.faces:
        C = backend.copairing_matrix(*triples[s1])
        n = len(C)
        table = {(x1, x2): C[x2][x1] for x1 in range(n) for x2 in range(n) if not C[x2][x1].is_zero()}
        factors.append(Factor((("s",) + s1, ("s",) + s2), table))
    order = []
    for f in plan.faces:
        s1, s2 = c.faces[f]
        order += [("s",) + s1, ("s",) + s2]
    return eliminate(factors, order, F.one())


def _grid(dims):
    if not dims:
        yield ()
        return
    for rest in _grid(dims[1:]):
        for x in range(dims[0]):
            yield (x,) + rest


# ---------------------------------------------------------------------------
# the invariant


def _network(h: HTriangulation, backend: CategoryBackend, stats: Stats | None):
    """Factor graph over edge colors and face basis indices."""
    c = h.complex
    doms = edge_domains(h, backend)
    mfree = backend.is_multiplicity_free()
    factors, size = [], {}
    for e, dom in enumerate(doms):
        size[("e", e)] = len(dom)
        w = backend.b if e in h.gamma else backend.d
        factors.append(Factor((("e", e),), {(x,): w[x] for x in dom}))
    maxn = max((backend.N(*t) for t in backend.n_table), default=1)
    for t in range(c.n_tets):
        es = [c.local_edge(t, a, b) for a, b in EDGE_PAIRS]
        evars = tuple(("e", e) for e, _ in es)
        svars = () if mfree else tuple(("s", t, m) for m in range(4))
        table = {}
        for choice in _product([doms[e] for e, _ in es]):
            labels = tuple(x if s > 0 else backend.star[x] for (e, s), x in zip(es, choice))
            lab = TetLabel(labels, c.signs[t])
            faces = lab.faces(backend)
            dims = [backend.N(*f) for f in faces]
            if 0 in dims:
                continue
            for basis in (_grid(dims) if not mfree else [(0, 0, 0, 0)]):
                v = _tet_value_labels(backend, labels, c.signs[t], basis, stats)
                if not v.is_zero():
                    table[choice + (basis if not mfree else ())] = v
        factors.append(Factor(evars + svars, table))
        for sv in svars:
            size[sv] = maxn
    for s1, s2 in c.faces:
        t, m = s1
        a, b, cc = c.slot_triple(t, m)
        es = [c.local_edge(t, x, y) for x, y in ((a, b), (b, cc), (cc, a))]
        evars = tuple(("e", e) for e, _ in es)
        table = {}
        for choice in _product([doms[e] for e, _ in es]):
            tr = tuple(x if s > 0 else backend.star[x] for (e, s), x in zip(es, choice))
            n = backend.N(*tr)
            if not n:
                continue
            C = backend.copairing_matrix(*tr)
            if mfree:
                table[choice] = C[0][0]
            else:
                for x1 in range(n):
                    for x2 in range(n):
                        if not C[x2][x1].is_zero():
                            table[choice + (x1, x2)] = C[x2][x1]
        svars = () if mfree else (("s",) + s1, ("s",) + s2)
        factors.append(Factor(*_dedupe(evars + svars, table)))
    return factors, size


def _dedupe(vars_, table):
    """Merge repeated variables in a factor scope (a face may see one edge twice in odd complexes)."""
    if len(set(vars_)) == len(vars_):
        return vars_, table
    keep = []
    for v in vars_:
        if v not in keep:
            keep.append(v)
    out = {}
    for key, val in table.items():
        seen = {}
        if all(seen.setdefault(v, x) == x for v, x in zip(vars_, key)):
            out[tuple(seen[v] for v in keep)] = val
    return tuple(keep), out


def _product(doms):
    if not doms:
        yield ()
        return
    for x in doms[0]:
        for rest in _product(doms[1:]):
            yield (x,) + rest


def count_states(h: HTriangulation, backend: CategoryBackend) -> int:
    """Number of admissible states, by eliminating the 0/1 admissibility network."""
    doms = edge_domains(h, backend)
    factors = [Factor((("e", e),), {(x,): 1 for x in dom}) for e, dom in enumerate(doms)]
    c = h.complex
    for (t, m), _ in c.faces:
        a, b, cc = c.slot_triple(t, m)
        es = [c.local_edge(t, x, y) for x, y in ((a, b), (b, cc), (cc, a))]
        table = {}
        for choice in _product([doms[e] for e, _ in es]):
            if backend.N(*(x if sg > 0 else backend.star[x] for (_, sg), x in zip(es, choice))):
                table[choice] = 1
        factors.append(Factor(*_dedupe(tuple(("e", e) for e, _ in es), table)))
    size = {("e", e): len(d) for e, d in enumerate(doms)}
    return eliminate(factors, greedy_order(factors, size), 1)


def _check_components(h: HTriangulation) -> None:
    c = h.complex
    for comp in c.components():
        verts = {v for t in comp for v in c.tets[t]}
        if not any(set(c.edges[e]) <= verts for e in h.gamma):
            raise UnsupportedDecoration("a component carries no edge of gamma", {"tets": comp})


def tv_invariant(h: HTriangulation, backend: CategoryBackend, method: str = "eliminate",
                 stats: Stats | None = None, jobs: int = 1) -> Scalar:
    """Exact value of the state sum.

    ``method="eliminate"`` contracts the whole network at once;
    ``method="states"`` sums ``state_weight * contract_state`` over the
    enumerated states (optionally across ``jobs`` worker processes, reduced
    in enumeration order).
    """
    t0 = time.perf_counter()
    _check_components(h)
    if h.group is not backend.group and h.group.table != backend.group.table:
        raise UnsupportedDecoration("triangulation cocycle lives in a different group", None)
    if method == "eliminate":
        factors, size = _network(h, backend, stats)
        value = eliminate(factors, greedy_order(factors, size), backend.field.one())
        if stats is not None:
            stats.states = count_states(h, backend)
    elif method == "states":
        states = list(enumerate_states(h, backend))
        if stats is not None:
            stats.states = len(states)
        if jobs > 1 and len(states) > 64:
            chunks = [states[i::jobs] for i in range(jobs)]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                parts = list(pool.map(_partial_sum, [(h, backend, ch) for ch in chunks]))
            value = backend.field.zero()
            for p, st in parts:
                value = value + p
                if stats is not None:
                    stats.tet_lookups += st.tet_lookups
                    stats.cache_hits += st.cache_hits
        else:
            value = backend.field.zero()
            for s in states:
                value = value + state_weight(h, backend, s) * contract_state(h, backend, s, stats=stats)
    else:
        raise ValueError(f"unknown method {method!r}")
    if stats is not None:
        stats.seconds = time.perf_counter() - t0
    return value


def _partial_sum(args):
    h, backend, states = args
    st = Stats()
    total = backend.field.zero()
    for s in states:
        total = total + state_weight(h, backend, s) * contract_state(h, backend, s, stats=st)
    return total, st


def default_jobs() -> int:
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# invariance fuzzing


@dataclass
class FuzzReport:
    ok: bool
    baseline: Scalar
    log: list = field(default_factory=list)
    rejected: int = 0
    first_bad: int | None = None

    def kinds(self) -> set:
        return {entry["move"] for entry in self.log}

    def as_dict(self) -> dict:
        return {"ok": self.ok, "baseline": self.baseline.to_json(), "baseline_text": str(self.baseline),
                "moves": self.log, "rejected": self.rejected, "first_bad": self.first_bad}


def random_move(h: HTriangulation, rng: random.Random, max_tets: int = 10, gauge: bool = True):
    """Pick and apply one guarded move; returns ``(new_h, log_entry)`` or raises a guard error."""
    c = h.complex
    # soft cap: past max_tets shrinking moves dominate, but growth stays possible so
    # the walk cannot stall on a complex with no valence-3 edge or degree-4 vertex
    big = c.n_tets >= max_tets
    # vertices are hard to remove again, so no 1-4 moves past the cap
    kinds = ["32", "41"] * 3 + ["23"] if big else ["32", "41", "23", "14", "23", "14"]
    if gauge:
        kinds.append("gauge")
    kind = rng.choice(kinds)
    if big and kind == "23" and rng.random() < 0.8:
        # a shrinking move is usually available somewhere; look before growing
        if any(e not in h.gamma and len(c.edge_reps(e)) == 3 for e in range(len(c.edges))):
            kind = "32"
    if kind == "23":
        cands = [f for f, ((t1, m1), (t2, m2)) in enumerate(c.faces)
                 if t1 != t2 and c.tets[t1][m1] != c.tets[t2][m2]]
        if big:
            # prefer faces through a valence-4 edge outside gamma: the move drops it to
            # valence 3, so a 3-2 can follow (a 4-4 move) instead of pure growth
            val4 = {e for e in range(len(c.edges)) if e not in h.gamma and len(c.edge_reps(e)) == 4}
            through = [f for f in cands if any(c.local_edge(t1, x, y)[0] in val4
                                               for (t1, m1), _ in [c.faces[f]]
                                               for x in range(4) for y in range(x + 1, 4) if m1 not in (x, y))]
            cands = through or cands
        f = rng.choice(cands)
        return pachner_23(h, f), {"move": "2-3", "face": f}
    if kind == "32":
        cands = [e for e in range(len(c.edges)) if e not in h.gamma and len(c.edge_reps(e)) == 3]
        if not cands:
            raise GuardFailed("no valence-three edge outside gamma", None)
        e = rng.choice(cands)
        return pachner_32(h, e), {"move": "3-2", "edge": e}
    if kind == "14":
        cands = [(t, e) for t in range(c.n_tets) for e in {c.tet_edges[t][k][0] for k in range(6)} if e in h.gamma]
        t, e = rng.choice(sorted(cands))
        a, b = next((a, b) for a in range(4) for b in range(4) if a != b and c.local_edge(t, a, b) == (e, 1))
        if rng.random() < 0.5:
            a, b = b, a
        return pachner_14(h, t, (a, b)), {"move": "1-4", "tet": t, "reroute": [a, b]}
    if kind == "41":
        cands = [v for v in c.vertices if sum(vs.count(v) for vs in c.tets) == 4]
        if not cands:
            raise GuardFailed("no vertex of degree four", None)
        v = rng.choice(cands)
        return pachner_41(h, v), {"move": "4-1", "vertex": v}
    v = rng.choice(list(c.vertices))
    g = rng.choice(list(h.group.elements))
    return gauge_move_phi(h, v, g), {"move": "gauge", "vertex": v, "g": h.group.name(g)}


def fuzz_invariance(h: HTriangulation, backend: CategoryBackend, n_moves: int, seed: int = 0,
                    gauge: bool = True, max_tets: int = 10, method: str = "eliminate") -> FuzzReport:
    """Apply ``n_moves`` random guarded moves and compare the invariant after each one."""
    rng = random.Random(seed)
    base = tv_invariant(h, backend, method=method)
    report = FuzzReport(True, base)
    cur = h
    attempts = 0
    while len(report.log) < n_moves:
        attempts += 1
        if attempts > 50 * (n_moves + 1):
            raise GuardFailed("too many rejected moves", {"applied": len(report.log)})
        try:
            nxt, entry = random_move(cur, rng, max_tets, gauge)
        except (GuardFailed, HamiltonicityLost, InadmissibleEdge, IndexError):
            report.rejected += 1
            continue
        val = tv_invariant(nxt, backend, method=method)
        entry["tets"] = nxt.complex.n_tets
        entry["value"] = str(val)
        report.log.append(entry)
        cur = nxt
        if val != base:
            report.ok = False
            report.first_bad = len(report.log) - 1
            break
    return report
