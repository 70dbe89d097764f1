"""Homotopy classes of graph paths as reduced dart words.

On a graph the word problem is exact: every path class rel endpoints has a
unique reduced representative, vertex groups are free, and a spanning tree
turns loops into free-group words. Trees are BFS from the smallest vertex of
the component, exploring darts in index order, so every normal form is
reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from . import wordcore
from .errors import (
    EndpointMismatch,
    MalformedPath,
    NotALoop,
    VertexNotInComponent,
    WrongBasepoint,
)
from .ggraph import SerreGraph, connected_components


@dataclass(frozen=True, eq=False)
class EdgePath:
    graph: SerreGraph = field(repr=False)
    start: int
    darts: tuple[int, ...]

    @property
    def end(self) -> int:
        if not self.darts:
            return self.start
        return self.graph.target(self.darts[-1])

    def __len__(self) -> int:
        return len(self.darts)

    def __eq__(self, other):
        if not isinstance(other, EdgePath):
            return NotImplemented
        return (self.start == other.start and self.darts == other.darts
                and (self.graph is other.graph or self.graph == other.graph))

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.start, self.darts))
            self.__dict__["_hash"] = h
        return h

    def __repr__(self):
        word = ",".join(self.graph.dart_label(d) for d in self.darts)
        return f"Path({self.graph.vertex_label(self.start)};{word})"


class ReducedPath(EdgePath):
    """An EdgePath with no adjacent (d, involute d) pair: the normal form."""


def edge_path(graph: SerreGraph, start: int, darts) -> EdgePath:
    darts = tuple(int(d) for d in darts)
    if not 0 <= start < graph.vertex_count:
        raise MalformedPath(0, f"start vertex {start} out of range")
    at = start
    for i, d in enumerate(darts):
        if not 0 <= d < graph.dart_count:
            raise MalformedPath(i, f"dart {d} out of range")
        if graph.dart_sources[d] != at:
            raise MalformedPath(i, f"dart {d} does not start at vertex {at}")
        at = graph.target(d)
    return EdgePath(graph, start, darts)


def _raw_reduced(graph: SerreGraph, start: int, darts: tuple[int, ...]) -> ReducedPath:
    # internal fast path: darts already known reduced and composable
    return ReducedPath(graph, start, darts)


def reduce_path(p: EdgePath) -> ReducedPath:
    """Delete adjacent (d, involute d) pairs until none remain.

    The result is independent of deletion order and keeps the endpoints.
    """
    word = wordcore.reduce_word(p.darts, p.graph.invol_buffer)
    return _raw_reduced(p.graph, p.start, word)


def constant_path(graph: SerreGraph, v: int) -> ReducedPath:
    if not 0 <= v < graph.vertex_count:
        raise MalformedPath(0, f"vertex {v} out of range")
    return _raw_reduced(graph, v, ())


def compose(p: ReducedPath, q: ReducedPath) -> ReducedPath:
    if p.end != q.start:
        raise EndpointMismatch(f"cannot compose: path ends at {p.end}, next starts at {q.start}")
    word = wordcore.concat_reduce(p.darts, q.darts, p.graph.invol_buffer)
    return _raw_reduced(p.graph, p.start, word)


def invert(p: ReducedPath) -> ReducedPath:
    invol = p.graph.involution
    return _raw_reduced(p.graph, p.end, tuple(invol[d] for d in reversed(p.darts)))


def is_reduced(p: EdgePath) -> bool:
    return wordcore.is_reduced(p.darts, p.graph.invol_buffer)


# -- spanning trees and free bases -------------------------------------------

@dataclass(frozen=True)
class Pi1Basis:
    """Free basis of the vertex group at ``basepoint`` of one component.

    ``generators[i]`` is the positively oriented non-tree dart of edge pair i
    (the dart with lexicographically minimal (source, index)); words are
    tuples of nonzero ints, ``k`` meaning generator k-1, ``-k`` its inverse.
    """

    graph: SerreGraph = field(repr=False)
    component: tuple[int, ...]
    basepoint: int
    root: int
    parent_dart: dict = field(repr=False)      # vertex -> tree dart (parent -> vertex)
    tree_darts: frozenset[int]
    generators: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.generators)

    @cached_property
    def _gen_of_dart(self) -> dict:
        out = {}
        for i, d in enumerate(self.generators):
            out[d] = i + 1
            out[self.graph.involution[d]] = -(i + 1)
        return out

    @cached_property
    def _root_paths(self) -> dict:
        """vertex -> dart tuple of the tree path root -> vertex."""
        out = {self.root: ()}
        pending = [v for v in self.component if v != self.root]
        # parent_dart chains terminate at the root; resolve by walking up
        def resolve(v):
            if v in out:
                return out[v]
            d = self.parent_dart[v]
            up = resolve(self.graph.dart_sources[d])
            out[v] = up + (d,)
            return out[v]
        for v in pending:
            resolve(v)
        return out

    def tree_path(self, x: int, y: int) -> ReducedPath:
        """The unique reduced path from x to y inside the spanning tree."""
        for v in (x, y):
            if v not in self._root_paths:
                raise VertexNotInComponent(f"vertex {v} not in this component")
        invol = self.graph.involution
        up = tuple(invol[d] for d in reversed(self._root_paths[x]))
        word = wordcore.concat_reduce(up, self._root_paths[y], self.graph.invol_buffer)
        return _raw_reduced(self.graph, x, word)

    def generator_loop(self, i: int, at: int | None = None) -> ReducedPath:
        """Loop representing generator i, based at ``at`` (default basepoint)."""
        at = self.basepoint if at is None else at
        d = self.generators[i]
        u, w = self.graph.dart_sources[d], self.graph.target(d)
        loop = compose(compose(self.tree_path(at, u), _raw_reduced(self.graph, u, (d,))),
                       self.tree_path(w, at))
        return loop

    def loop_to_word(self, loop: ReducedPath) -> tuple[int, ...]:
        """Express a reduced loop at the basepoint as a reduced generator word."""
        if loop.start != self.basepoint:
            raise WrongBasepoint(f"loop starts at {loop.start}, basis based at {self.basepoint}")
        if loop.end != loop.start:
            raise NotALoop(f"path ends at {loop.end}, not at its start")
        word = []
        gen = self._gen_of_dart
        for d in loop.darts:
            if d in gen:
                word.append(gen[d])
            elif d not in self.tree_darts:
                raise VertexNotInComponent(f"dart {d} is outside this component")
        # a reduced loop projects to a reduced word (tree segments between a
        # generator dart and its inverse would be nonempty reduced tree loops)
        assert _word_is_reduced(tuple(word))
        return tuple(word)

    def word_to_loop(self, word, at: int | None = None) -> ReducedPath:
        at = self.basepoint if at is None else at
        loop = constant_path(self.graph, at)
        for k in word:
            if k == 0 or abs(k) > len(self.generators):
                raise ValueError(f"word letter {k} out of range")
            d = self.generators[abs(k) - 1]
            if k < 0:
                d = self.graph.involution[d]
            u, w = self.graph.dart_sources[d], self.graph.target(d)
            seg = compose(compose(self.tree_path(loop.end, u),
                                  _raw_reduced(self.graph, u, (d,))),
                          self.tree_path(w, at))
            loop = compose(loop, seg)
        return loop


def _word_is_reduced(word: tuple[int, ...]) -> bool:
    return all(word[i] != -word[i + 1] for i in range(len(word) - 1))


def word_reduce(word) -> tuple[int, ...]:
    """Free reduction of a signed generator word."""
    out = []
    for k in word:
        if out and out[-1] == -k:
            out.pop()
        else:
            out.append(k)
    return tuple(out)


def pi1_basis(graph: SerreGraph, basepoint: int, *, component=None,
              allowed_darts=None) -> Pi1Basis:
    """Deterministic spanning tree + free basis for the component of basepoint.

    The tree is BFS from the smallest vertex of the component, exploring darts
    in index order. ``allowed_darts`` restricts to a subgraph (fixed darts).
    """
    if component is None:
        for comp in connected_components(graph, allowed_darts=allowed_darts):
            if basepoint in comp:
                component = comp
                break
    else:
        component = tuple(sorted(component))
        if basepoint not in component:
            raise VertexNotInComponent(f"basepoint {basepoint} not in the given component")
    root = component[0]
    parent_dart: dict[int, int] = {}
    visited = {root}
    queue = [root]
    tree: set[int] = set()
    while queue:
        v = queue.pop(0)
        for d in graph.darts_at[v]:
            if allowed_darts is not None and d not in allowed_darts:
                continue
            w = graph.target(d)
            if w not in visited:
                visited.add(w)
                parent_dart[w] = d
                tree.add(d)
                tree.add(graph.involution[d])
                queue.append(w)
    if set(component) != visited:
        raise VertexNotInComponent(
            f"given component is not the BFS component of vertex {root}")
    gens = []
    seen_pairs = set()
    for d in sorted(set(range(graph.dart_count)) if allowed_darts is None
                    else sorted(allowed_darts)):
        if d in tree or graph.dart_sources[d] not in visited:
            continue
        pair = frozenset((d, graph.involution[d]))
        if pair in seen_pairs:
            continue
        seen_pairs.add(pair)
        e = graph.involution[d]
        # positive orientation: lexicographically minimal (source, index)
        gens.append(min(d, e, key=lambda x: (graph.dart_sources[x], x)))
    return Pi1Basis(graph, component, basepoint, root, parent_dart,
                    frozenset(tree), tuple(gens))


def path_between(graph: SerreGraph, x: int, y: int, *,
                 allowed_darts=None) -> ReducedPath | None:
    """The deterministic tree path x -> y, or None in different components."""
    for comp in connected_components(graph, allowed_darts=allowed_darts):
        if x in comp:
            if y not in comp:
                return None
            basis = pi1_basis(graph, x, component=comp, allowed_darts=allowed_darts)
            return basis.tree_path(x, y)
    return None


def reduced_words(rank: int, max_len: int):
    """All reduced words of length <= max_len over a free basis, short first."""
    yield ()
    letters = [k for i in range(1, rank + 1) for k in (i, -i)]
    current = [()]
    for _ in range(max_len):
        nxt = []
        for w in current:
            for k in letters:
                if w and w[-1] == -k:
                    continue
                w2 = w + (k,)
                nxt.append(w2)
                yield w2
        current = nxt


# -- Stallings folding --------------------------------------------------------

def folded_subgroup_rank(words) -> int:
    """Rank of the subgroup of a free group generated by the given words.

    Builds the wedge of loops and folds it: repeatedly identify two edges with
    the same label leaving the same vertex. The rank of the folded core is
    E - V + 1. Used as an exact injectivity certificate: a homomorphism of
    free groups F_n -> F_m sending a basis to ``words`` is injective iff the
    folded rank equals n (free groups are Hopfian).
    """
    words = [word_reduce(w) for w in words]
    parent = [0]

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
        return ra

    def new_vertex():
        parent.append(len(parent))
        return len(parent) - 1

    edges = set()  # (u, label, v) with label > 0; traversable both ways
    for w in words:
        at = 0
        for i, k in enumerate(w):
            nxt = 0 if i == len(w) - 1 else new_vertex()
            if k > 0:
                edges.add((at, k, nxt))
            else:
                edges.add((nxt, -k, at))
            at = nxt

    changed = True
    while changed:
        changed = False
        edges = {(find(u), l, find(v)) for (u, l, v) in edges}
        out: dict[tuple[int, int], int] = {}
        inc: dict[tuple[int, int], int] = {}
        for (u, l, v) in edges:
            key = (u, l)
            if key in out and out[key] != v:
                union(out[key], v)
                changed = True
                break
            out[key] = v
            key = (v, l)
            if key in inc and inc[key] != u:
                union(inc[key], u)
                changed = True
                break
            inc[key] = u
    vertices = {find(u) for (u, l, v) in edges} | {find(v) for (u, l, v) in edges} | {find(0)}
    return len(edges) - len(vertices) + 1
