"""Finite groups from Cayley tables, gauge functions, and the scalar field.

The scalar type itself lives in :mod:`modtv.cyclotomic`; it is re-exported
here because every other module reaches for groups and scalars together.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

from .cyclotomic import CyclotomicField, Scalar, scalar_from_json
from .errors import DomainMismatch, NotAGroup, SchemaError

__all__ = [
    "FiniteGroup",
    "GaugeFunction",
    "group_from_table",
    "gauge_compose",
    "cyclic_group",
    "symmetric_group",
    "load_group",
    "CyclotomicField",
    "Scalar",
    "scalar_from_json",
]


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group on the index set ``range(order)``."""

    table: tuple[tuple[int, ...], ...]
    identity: int
    inv: tuple[int, ...]
    names: tuple[str, ...]

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(len(self.table))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def prod(self, xs: Iterable[int]) -> int:
        out = self.identity
        for x in xs:
            out = self.table[out][x]
        return out

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.table[self.table[g][x]][self.inv[g]]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv[a], -k
        out = self.identity
        for _ in range(k):
            out = self.table[out][a]
        return out

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(a + 1, n))

    def index(self, name: str | int) -> int:
        if isinstance(name, int) and not isinstance(name, bool):
            if 0 <= name < self.order:
                return name
            raise SchemaError(f"group element {name} out of range", name)
        try:
            return self.names.index(name)
        except ValueError:
            raise SchemaError(f"unknown group element {name!r}", name) from None

    def name(self, a: int) -> str:
        return self.names[a]

    def to_json(self) -> dict:
        return {"order": self.order, "table": [list(r) for r in self.table], "element_names": list(self.names)}

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


def group_from_table(table: Sequence[Sequence[int]], names: Sequence[str] | None = None) -> FiniteGroup:
    """Validate a Cayley table and return the group it defines.

    Raises :class:`NotAGroup` naming the first failing axiom.
    """
    n = len(table)
    if n == 0:
        raise NotAGroup("empty table", None)
    rows = []
    for r, row in enumerate(table):
        if len(row) != n:
            raise NotAGroup(f"row {r} has length {len(row)}, expected {n}", {"row": r})
        for c, x in enumerate(row):
            if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < n:
                raise NotAGroup(f"entry ({r},{c}) = {x!r} is not an element index", {"row": r, "col": c})
        rows.append(tuple(row))
    rows = tuple(rows)

    ident = None
    for e in range(n):
        if all(rows[e][x] == x and rows[x][e] == x for x in range(n)):
            ident = e
            break
    if ident is None:
        raise NotAGroup("no two-sided identity", None)

    inv = []
    for x in range(n):
        cands = [y for y in range(n) if rows[y][x] == ident and rows[x][y] == ident]
        if not cands:
            raise NotAGroup(f"element {x} has no inverse", {"element": x})
        inv.append(cands[0])

    for a, b, c in itertools.product(range(n), repeat=3):
        if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
            raise NotAGroup(f"associativity fails at ({a},{b},{c})", {"triple": [a, b, c]})

    if names is None:
        names = [str(i) for i in range(n)]
    names = tuple(str(s) for s in names)
    if len(names) != n or len(set(names)) != n:
        raise NotAGroup("element_names must be distinct and match the order", None)
    return FiniteGroup(rows, ident, tuple(inv), names)


def cyclic_group(n: int) -> FiniteGroup:
    return group_from_table([[(a + b) % n for b in range(n)] for a in range(n)])


def _perm_name(p: tuple[int, ...]) -> str:
    seen, cycles = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            seen.add(i)
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(str(j + 1))
            j = p[j]
        cycles.append("(" + "".join(cyc) + ")")
    return "".join(cycles) or "e"


def symmetric_group(k: int) -> FiniteGroup:
    """S_k acting on {1..k}; products compose right to left, (pq)(i) = p(q(i))."""
    perms = sorted(itertools.permutations(range(k)))
    idx = {p: i for i, p in enumerate(perms)}
    table = [[idx[tuple(p[q[i]] for i in range(k))] for q in perms] for p in perms]
    return group_from_table(table, [_perm_name(p) for p in perms])


def load_group(doc) -> FiniteGroup:
    """Build a group from its JSON form (``order``, ``table``, optional ``element_names``)."""
    if isinstance(doc, dict) and "builtin" in doc:
        key = str(doc["builtin"]).lower()
        if key.startswith("z") and key[1:].isdigit():
            return cyclic_group(int(key[1:]))
        if key.startswith("s") and key[1:].isdigit():
            return symmetric_group(int(key[1:]))
        raise SchemaError(f"unknown builtin group {key!r}", key)
    if not isinstance(doc, dict) or "table" not in doc:
        raise SchemaError("group document needs a 'table'", None)
    table = doc["table"]
    if "order" in doc and doc["order"] != len(table):
        raise SchemaError(f"order {doc['order']} disagrees with table size {len(table)}", None)
    return group_from_table(table, doc.get("element_names"))


@dataclass(frozen=True)
class GaugeFunction:
    """A map from a finite base-point set to group elements."""

    group: FiniteGroup
    values: tuple[tuple[Hashable, int], ...] = field(default=())

    @classmethod
    def make(cls, group: FiniteGroup, values: Mapping[Hashable, int]) -> "GaugeFunction":
        return cls(group, tuple(sorted(values.items(), key=lambda kv: repr(kv[0]))))

    @classmethod
    def identity(cls, group: FiniteGroup, domain: Iterable[Hashable]) -> "GaugeFunction":
        return cls.make(group, {y: group.identity for y in domain})

    @property
    def domain(self) -> frozenset:
        return frozenset(y for y, _ in self.values)

    def as_dict(self) -> dict:
        return dict(self.values)

    def __call__(self, y) -> int:
        for k, v in self.values:
            if k == y:
                return v
        raise DomainMismatch(f"{y!r} is not in the gauge domain", y)

    def get(self, y, default: int | None = None) -> int:
        d = self.as_dict()
        return d.get(y, self.group.identity if default is None else default)

    def support(self) -> frozenset:
        return frozenset(y for y, g in self.values if g != self.group.identity)

    def inverse(self) -> "GaugeFunction":
        return GaugeFunction.make(self.group, {y: self.group.inv[g] for y, g in self.values})

    def restrict(self, keep: Iterable[Hashable]) -> "GaugeFunction":
        keep = set(keep)
        return GaugeFunction.make(self.group, {y: g for y, g in self.values if y in keep})

    def extend(self, domain: Iterable[Hashable]) -> "GaugeFunction":
        """Extend by the identity to a larger domain (values outside ``domain`` are dropped)."""
        d = self.as_dict()
        return GaugeFunction.make(self.group, {y: d.get(y, self.group.identity) for y in domain})

    def is_identity(self) -> bool:
        return not self.support()


def gauge_compose(f: GaugeFunction, g: GaugeFunction) -> GaugeFunction:
    """Pointwise product (f.g)(y) = f(y) g(y)."""
    if f.group != g.group:
        raise DomainMismatch("gauge functions over different groups", None)
    if f.domain != g.domain:
        raise DomainMismatch(
            "gauge functions on different domains",
            {"left_only": sorted(map(repr, f.domain - g.domain)), "right_only": sorted(map(repr, g.domain - f.domain))},
        )
    gd = g.as_dict()
    return GaugeFunction.make(f.group, {y: f.group.mul(a, gd[y]) for y, a in f.values})
