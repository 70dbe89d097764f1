"""Exact finite-group algebra: multiplication tables, subgroups, cosets, homs.

Elements are indices 0..order-1 with 0 the identity; tables that put the
identity elsewhere are relabeled on ingestion. All values are immutable and
canonical, so structural equality doubles as mathematical equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .errors import (
    EmbeddingNotHom,
    EmbeddingNotInjective,
    NoIdentity,
    NoInverse,
    NotAHomomorphism,
    NotAssociative,
)

DEFAULT_ORDER_CAP = 64


@dataclass(frozen=True)
class FiniteGroup:
    order: int
    table: tuple[tuple[int, ...], ...]
    inverse: tuple[int, ...]
    labels: tuple[str, ...]

    def __hash__(self):
        # cached: groups are hashed constantly as dictionary keys
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.order, self.table))
            self.__dict__["_hash"] = h
        return h

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, g: int, h: int) -> int:
        """g * h * g^-1."""
        return self.table[self.table[g][h]][self.inverse[g]]

    def elements(self) -> range:
        return range(self.order)

    def label(self, a: int) -> str:
        return self.labels[a]

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(self.order))

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"


@dataclass(frozen=True)
class Subgroup:
    group: FiniteGroup
    elements: tuple[int, ...]

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.elements, hash(self.group)))
            self.__dict__["_hash"] = h
        return h

    @cached_property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def __contains__(self, g: int) -> bool:
        return g in self.member_set

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_normal(self) -> bool:
        G = self.group
        return all(G.conj(g, h) in self.member_set for g in G.elements() for h in self.elements)

    def label(self) -> str:
        return "{" + ",".join(self.group.label(g) for g in self.elements) + "}"

    def __repr__(self) -> str:
        return f"Subgroup({self.elements})"


@dataclass(frozen=True)
class Coset:
    """Left coset a*K in canonical form: representative = min of the coset."""

    subgroup: Subgroup
    representative: int

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.representative, hash(self.subgroup)))
            self.__dict__["_hash"] = h
        return h

    def members(self) -> tuple[int, ...]:
        G = self.subgroup.group
        return tuple(sorted(G.mul(self.representative, k) for k in self.subgroup.elements))

    def label(self) -> str:
        return self.subgroup.group.label(self.representative) + "·" + self.subgroup.label()

    def __repr__(self) -> str:
        return f"Coset(rep={self.representative}, K={self.subgroup.elements})"


@dataclass(frozen=True)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    mapping: tuple[int, ...]

    def __call__(self, g: int) -> int:
        return self.mapping[g]

    @cached_property
    def is_injective(self) -> bool:
        return len(set(self.mapping)) == self.source.order

    def __repr__(self) -> str:
        return f"GroupHom({self.source.order}->{self.target.order})"


def group_from_table(order, table, labels=None, *, max_order=DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Validate a multiplication table and return the group.

    Rejects non-groups with NoIdentity / NoInverse(element) /
    NotAssociative(triple). If the two-sided identity is not element 0, the
    table is relabeled so that it is.
    """
    if order <= 0:
        raise ValueError(f"order must be positive, got {order}")
    if order > max_order:
        raise ValueError(f"order {order} exceeds cap {max_order}")
    if len(table) != order or any(len(row) != order for row in table):
        raise ValueError("table must be an order x order matrix")
    rows = [tuple(int(x) for x in row) for row in table]
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            if not 0 <= x < order:
                raise ValueError(f"table entry {x} at ({i},{j}) out of range")

    identity = None
    for e in range(order):
        if all(rows[e][x] == x and rows[x][e] == x for x in range(order)):
            identity = e
            break
    if identity is None:
        raise NoIdentity("table has no two-sided identity element")

    if labels is not None:
        if len(labels) != order:
            raise ValueError("labels length must match order")
        labels = [str(x) for x in labels]
    else:
        labels = [f"g{i}" for i in range(order)]

    if identity != 0:
        # relabel by swapping 0 <-> identity
        perm = list(range(order))
        perm[0], perm[identity] = identity, 0
        rows = [
            tuple(perm.index(rows[perm[i]][perm[j]]) for j in range(order))
            for i in range(order)
        ]
        labels = [labels[perm[i]] for i in range(order)]

    for a in range(order):
        for b in range(order):
            ab = rows[a][b]
            for c in range(order):
                if rows[ab][c] != rows[a][rows[b][c]]:
                    raise NotAssociative((a, b, c))

    inverse = []
    for a in range(order):
        inv = next((b for b in range(order) if rows[a][b] == 0 and rows[b][a] == 0), None)
        if inv is None:
            raise NoInverse(a)
        inverse.append(inv)

    return FiniteGroup(order, tuple(rows), tuple(inverse), tuple(labels))


def cyclic_group(n: int, labels=None) -> FiniteGroup:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return group_from_table(n, table, labels)


def symmetric_group(n: int) -> FiniteGroup:
    """S_n on {0..n-1}; elements are permutations in lexicographic order."""
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(p[q[k]] for k in range(n))] for q in perms]
        for p in perms
    ]
    labels = ["".join(str(x) for x in p) for p in perms]
    return group_from_table(len(perms), table, labels)


def trivial_group() -> FiniteGroup:
    return group_from_table(1, [[0]], ["e"])


def subgroup(G: FiniteGroup, elements) -> Subgroup:
    """Canonical subgroup from an element collection; verifies the axioms."""
    elems = tuple(sorted(set(int(x) for x in elements)))
    if not elems or elems[0] != 0:
        raise ValueError("a subgroup must contain the identity 0")
    member = set(elems)
    for a in elems:
        if not 0 <= a < G.order:
            raise ValueError(f"element {a} out of range")
        if G.inverse[a] not in member:
            raise ValueError(f"subgroup not closed under inversion at {a}")
        for b in elems:
            if G.table[a][b] not in member:
                raise ValueError(f"subgroup not closed under multiplication at ({a},{b})")
    return Subgroup(G, elems)


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (0,))


def full_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)))


def generated_subgroup(G: FiniteGroup, gens) -> Subgroup:
    closure = {0}
    frontier = [0] + [int(g) for g in gens]
    closure.update(frontier)
    while frontier:
        new = []
        for a in list(closure):
            for b in frontier:
                c = G.table[a][b]
                if c not in closure:
                    closure.add(c)
                    new.append(c)
        frontier = new
    return Subgroup(G, tuple(sorted(closure)))


@lru_cache(maxsize=None)
def list_subgroups(G: FiniteGroup) -> tuple[Subgroup, ...]:
    """All subgroups, each exactly once, sorted by (order, element tuple).

    Every subgroup is reached by repeatedly adjoining one element to a smaller
    subgroup and closing, starting from the trivial one.
    """
    seen = {(0,)}
    frontier = [(0,)]
    while frontier:
        new = []
        for elems in frontier:
            current = set(elems)
            for g in G.elements():
                if g in current:
                    continue
                bigger = generated_subgroup(G, elems + (g,)).elements
                if bigger not in seen:
                    seen.add(bigger)
                    new.append(bigger)
        frontier = new
    return tuple(Subgroup(G, e) for e in sorted(seen, key=lambda e: (len(e), e)))


def conjugate_subgroup(g: int, H: Subgroup) -> Subgroup:
    G = H.group
    return Subgroup(G, tuple(sorted(G.conj(g, h) for h in H.elements)))


def canonical_coset(alpha: int, K: Subgroup) -> Coset:
    G = K.group
    rep = min(G.mul(alpha, k) for k in K.elements)
    return Coset(K, rep)


def left_cosets(K: Subgroup) -> tuple[Coset, ...]:
    """All left cosets of K, sorted by canonical representative."""
    G = K.group
    reps = sorted({canonical_coset(a, K).representative for a in G.elements()})
    return tuple(Coset(K, r) for r in reps)


def group_hom(source: FiniteGroup, target: FiniteGroup, mapping) -> GroupHom:
    m = tuple(int(x) for x in mapping)
    if len(m) != source.order:
        raise ValueError("mapping must cover every source element")
    for x in m:
        if not 0 <= x < target.order:
            raise ValueError(f"mapping value {x} out of range")
    for a in source.elements():
        for b in source.elements():
            if m[source.table[a][b]] != target.table[m[a]][m[b]]:
                raise NotAHomomorphism((a, b))
    return GroupHom(source, target, m)


def identity_hom(G: FiniteGroup) -> GroupHom:
    return GroupHom(G, G, tuple(G.elements()))


def hom_image(phi: GroupHom, H: Subgroup) -> Subgroup:
    if H.group is not phi.source and H.group != phi.source:
        raise ValueError("subgroup does not live in the hom's source group")
    return Subgroup(phi.target, tuple(sorted({phi.mapping[h] for h in H.elements})))


def embedding_hom(source: FiniteGroup, target: FiniteGroup, mapping) -> GroupHom:
    """A verified injective homomorphism (used for induced spaces)."""
    try:
        phi = group_hom(source, target, mapping)
    except NotAHomomorphism as exc:
        raise EmbeddingNotHom(str(exc)) from exc
    if not phi.is_injective:
        raise EmbeddingNotInjective("embedding identifies distinct elements")
    return phi


def quotient_group(G: FiniteGroup, N: Subgroup):
    """(G/N, projection hom, coset list). N must be normal (caller checks)."""
    cosets = left_cosets(N)
    rep_index = {c.representative: i for i, c in enumerate(cosets)}
    proj = []
    for g in G.elements():
        proj.append(rep_index[canonical_coset(g, N).representative])
    table = [
        [proj[G.mul(a.representative, b.representative)] for b in cosets]
        for a in cosets
    ]
    labels = ["[" + G.label(c.representative) + "]" for c in cosets]
    Q = group_from_table(len(cosets), table, labels)
    return Q, GroupHom(G, Q, tuple(proj)), cosets
