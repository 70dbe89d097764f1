"""Finite Serre graphs with group actions without inversion.

Graphs are dart-based: each edge is a pair of mutually inverse darts, so
quotients and fixed subgraphs stay honest graphs (loops and multi-edges
included). Spaces here are deliberately 1-dimensional stand-ins for the
G-spaces of equivariant topology; that modeling choice is package-wide.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    EdgeInversion,
    InversionInQuotient,
    NotAnAction,
    NotEquivariant,
    NotEquivariantInvolution,
    NotFree,
    NotNormal,
)
from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    embedding_hom,
    hom_image,
    quotient_group,
    subgroup,
)

COLLAPSE = -1  # dart_map entries < 0 encode "collapse to vertex -(value+1)"


@dataclass(frozen=True)
class SerreGraph:
    vertex_count: int
    dart_sources: tuple[int, ...]
    involution: tuple[int, ...]
    vertex_labels: tuple[str, ...] | None = None
    dart_labels: tuple[str, ...] | None = None

    @property
    def dart_count(self) -> int:
        return len(self.dart_sources)

    def source(self, d: int) -> int:
        return self.dart_sources[d]

    def target(self, d: int) -> int:
        return self.dart_sources[self.involution[d]]

    @cached_property
    def invol_buffer(self):
        # contiguous int buffer consumed by the compiled word kernel
        return array("i", self.involution)

    @cached_property
    def darts_at(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for d, v in enumerate(self.dart_sources):
            out[v].append(d)
        return tuple(tuple(ds) for ds in out)

    def vertex_label(self, v: int) -> str:
        return self.vertex_labels[v] if self.vertex_labels else str(v)

    def dart_label(self, d: int) -> str:
        return self.dart_labels[d] if self.dart_labels else str(d)

    def __repr__(self) -> str:
        return f"SerreGraph(vertices={self.vertex_count}, darts={self.dart_count})"


def serre_graph(vertex_count, dart_sources, involution,
                vertex_labels=None, dart_labels=None) -> SerreGraph:
    sources = tuple(int(x) for x in dart_sources)
    invol = tuple(int(x) for x in involution)
    if len(sources) != len(invol):
        raise ValueError("dart_sources and involution must have equal length")
    for d, v in enumerate(sources):
        if not 0 <= v < vertex_count:
            raise ValueError(f"dart {d} has out-of-range source {v}")
    for d, e in enumerate(invol):
        if not 0 <= e < len(invol):
            raise ValueError(f"involution value {e} out of range at dart {d}")
        if e == d:
            raise ValueError(f"involution fixes dart {d}; each edge needs two darts")
        if invol[e] != d:
            raise ValueError(f"involution is not an involution at dart {d}")
    if vertex_labels is not None:
        vertex_labels = tuple(str(x) for x in vertex_labels)
        if len(vertex_labels) != vertex_count:
            raise ValueError("vertex_labels length mismatch")
    if dart_labels is not None:
        dart_labels = tuple(str(x) for x in dart_labels)
        if len(dart_labels) != len(sources):
            raise ValueError("dart_labels length mismatch")
    return SerreGraph(vertex_count, sources, invol, vertex_labels, dart_labels)


def connected_components(S: SerreGraph, *, vertices=None, allowed_darts=None):
    """Partition of the vertex set into components, each sorted, ordered by min.

    ``vertices``/``allowed_darts`` restrict to a subgraph (used for fixed
    subgraphs); by default the whole graph is used.
    """
    verts = list(range(S.vertex_count)) if vertices is None else sorted(vertices)
    vert_set = set(verts)
    seen: set[int] = set()
    comps = []
    for v0 in verts:
        if v0 in seen:
            continue
        comp = [v0]
        seen.add(v0)
        queue = [v0]
        while queue:
            v = queue.pop(0)
            for d in S.darts_at[v]:
                if allowed_darts is not None and d not in allowed_darts:
                    continue
                w = S.target(d)
                if w in vert_set and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


@dataclass(frozen=True)
class GGraph:
    """A finite group acting on a Serre graph without inversion."""

    group: FiniteGroup
    graph: SerreGraph
    vertex_action: tuple[tuple[int, ...], ...]
    dart_action: tuple[tuple[int, ...], ...]

    def act_vertex(self, g: int, v: int) -> int:
        return self.vertex_action[g][v]

    def act_dart(self, g: int, d: int) -> int:
        return self.dart_action[g][d]

    def stabilizer(self, v: int) -> Subgroup:
        return subgroup(self.group, [g for g in self.group.elements()
                                     if self.vertex_action[g][v] == v])

    def vertex_orbit(self, v: int) -> tuple[int, ...]:
        return tuple(sorted({self.vertex_action[g][v] for g in self.group.elements()}))

    def dart_orbit(self, d: int) -> tuple[int, ...]:
        return tuple(sorted({self.dart_action[g][d] for g in self.group.elements()}))

    def __repr__(self) -> str:
        return (f"GGraph(group order {self.group.order}, "
                f"{self.graph.vertex_count} vertices, {self.graph.dart_count} darts)")


def validate_ggraph(group: FiniteGroup, graph: SerreGraph,
                    vertex_action, dart_action) -> GGraph:
    """Exhaustively verify the action axioms and the no-inversion condition."""
    va = tuple(tuple(int(x) for x in row) for row in vertex_action)
    da = tuple(tuple(int(x) for x in row) for row in dart_action)
    n, nv, nd = group.order, graph.vertex_count, graph.dart_count
    if len(va) != n or any(len(r) != nv for r in va):
        raise NotAnAction("vertex action must map every element to a full vertex row")
    if len(da) != n or any(len(r) != nd for r in da):
        raise NotAnAction("dart action must map every element to a full dart row")
    for g in range(n):
        if sorted(va[g]) != list(range(nv)):
            raise NotAnAction(f"element {g} does not permute the vertices")
        if sorted(da[g]) != list(range(nd)):
            raise NotAnAction(f"element {g} does not permute the darts")
    if va[0] != tuple(range(nv)) or da[0] != tuple(range(nd)):
        raise NotAnAction("identity element must act trivially")
    for g in range(n):
        for h in range(n):
            gh = group.table[g][h]
            if any(va[gh][v] != va[g][va[h][v]] for v in range(nv)):
                raise NotAnAction(f"vertex action violates (g*h)x = g(hx) at ({g},{h})")
            if any(da[gh][d] != da[g][da[h][d]] for d in range(nd)):
                raise NotAnAction(f"dart action violates (g*h)d = g(hd) at ({g},{h})")
    for g in range(n):
        for d in range(nd):
            if da[g][graph.involution[d]] != graph.involution[da[g][d]]:
                raise NotEquivariantInvolution(
                    f"element {g} does not commute with the involution at dart {d}")
            if graph.dart_sources[da[g][d]] != va[g][graph.dart_sources[d]]:
                raise NotEquivariantInvolution(
                    f"element {g} does not respect dart sources at dart {d}")
    for g in range(1, n):
        for d in range(nd):
            if da[g][d] == graph.involution[d]:
                raise EdgeInversion(group.label(g), graph.dart_label(d))
    return GGraph(group, graph, va, da)


def trivial_action_ggraph(graph: SerreGraph) -> GGraph:
    from .groups import trivial_group
    G = trivial_group()
    return validate_ggraph(G, graph,
                           (tuple(range(graph.vertex_count)),),
                           (tuple(range(graph.dart_count)),))


# -- fixed subgraphs ---------------------------------------------------------

@dataclass(frozen=True)
class FixedSubgraph:
    """The subgraph of vertices and darts fixed pointwise by every h in H."""

    space: GGraph
    subgroup: Subgroup
    graph: SerreGraph
    vertex_embedding: tuple[int, ...]  # subgraph vertex -> ambient vertex
    dart_embedding: tuple[int, ...]

    @cached_property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertex_embedding)

    @cached_property
    def dart_set(self) -> frozenset[int]:
        return frozenset(self.dart_embedding)


def fixed_subgraph(X: GGraph, H: Subgroup) -> FixedSubgraph:
    if H.group != X.group:
        raise ValueError("subgroup does not belong to the acting group")
    g = X.graph
    fixed_v = [v for v in range(g.vertex_count)
               if all(X.vertex_action[h][v] == v for h in H.elements)]
    fixed_d = [d for d in range(g.dart_count)
               if all(X.dart_action[h][d] == d for h in H.elements)]
    v_index = {v: i for i, v in enumerate(fixed_v)}
    d_index = {d: i for i, d in enumerate(fixed_d)}
    sub = serre_graph(
        len(fixed_v),
        [v_index[g.dart_sources[d]] for d in fixed_d],
        [d_index[g.involution[d]] for d in fixed_d],
        [g.vertex_label(v) for v in fixed_v] if fixed_v else None,
        [g.dart_label(d) for d in fixed_d] if fixed_d else None,
    )
    return FixedSubgraph(X, H, sub, tuple(fixed_v), tuple(fixed_d))


# -- equivariant maps --------------------------------------------------------

@dataclass(frozen=True)
class EquivariantGraphMap:
    """A map of G-graphs over a group homomorphism phi: f(gx) = phi(g) f(x).

    ``dart_map[d]`` is either a target dart index, or ``-(v+1)`` meaning the
    dart collapses to target vertex v.
    """

    phi: GroupHom
    source_space: GGraph
    target_space: GGraph
    vertex_map: tuple[int, ...]
    dart_map: tuple[int, ...]

    def map_vertex(self, v: int) -> int:
        return self.vertex_map[v]

    def dart_image(self, d: int):
        """('dart', index) or ('collapse', vertex)."""
        e = self.dart_map[d]
        if e >= 0:
            return ("dart", e)
        return ("collapse", -e - 1)

    def map_darts(self, darts):
        """Image dart word with collapsed darts dropped (not yet reduced)."""
        out = []
        for d in darts:
            e = self.dart_map[d]
            if e >= 0:
                out.append(e)
        return out


def collapse_entry(vertex: int) -> int:
    return -(vertex + 1)


def equivariant_map(phi: GroupHom, source: GGraph, target: GGraph,
                    vertex_map, dart_map) -> EquivariantGraphMap:
    vm = tuple(int(x) for x in vertex_map)
    dm = tuple(int(x) for x in dart_map)
    sg, tg = source.graph, target.graph
    if phi.source != source.group or phi.target != target.group:
        raise NotEquivariant("homomorphism endpoints do not match the spaces")
    if len(vm) != sg.vertex_count or len(dm) != sg.dart_count:
        raise NotEquivariant("vertex_map/dart_map must be total")
    for v in vm:
        if not 0 <= v < tg.vertex_count:
            raise NotEquivariant(f"vertex image {v} out of range")
    for d, e in enumerate(dm):
        if e >= 0:
            if e >= tg.dart_count:
                raise NotEquivariant(f"dart image {e} out of range")
            if tg.dart_sources[e] != vm[sg.dart_sources[d]]:
                raise NotEquivariant(f"dart {d}: image source disagrees with vertex map")
            if tg.target(e) != vm[sg.target(d)]:
                raise NotEquivariant(f"dart {d}: image target disagrees with vertex map")
            if dm[sg.involution[d]] != tg.involution[e]:
                raise NotEquivariant(f"dart {d}: involute is not sent to the reverse image")
        else:
            w = -e - 1
            if not 0 <= w < tg.vertex_count:
                raise NotEquivariant(f"collapse vertex {w} out of range")
            if vm[sg.dart_sources[d]] != w or vm[sg.target(d)] != w:
                raise NotEquivariant(f"dart {d}: collapse target must be the image of both endpoints")
            if dm[sg.involution[d]] != e:
                raise NotEquivariant(f"dart {d}: involute must collapse to the same vertex")
    for g in source.group.elements():
        pg = phi.mapping[g]
        for v in range(sg.vertex_count):
            if vm[source.vertex_action[g][v]] != target.vertex_action[pg][vm[v]]:
                raise NotEquivariant(f"vertex equivariance fails at (g={g}, v={v})")
        for d in range(sg.dart_count):
            e = dm[d]
            ge = dm[source.dart_action[g][d]]
            if e >= 0:
                if ge != target.dart_action[pg][e]:
                    raise NotEquivariant(f"dart equivariance fails at (g={g}, d={d})")
            else:
                if ge != collapse_entry(target.vertex_action[pg][-e - 1]):
                    raise NotEquivariant(f"collapse equivariance fails at (g={g}, d={d})")
    return EquivariantGraphMap(phi, source, target, vm, dm)


def identity_map(X: GGraph) -> EquivariantGraphMap:
    from .groups import identity_hom
    return equivariant_map(identity_hom(X.group), X, X,
                           tuple(range(X.graph.vertex_count)),
                           tuple(range(X.graph.dart_count)))


def compose_maps(m1: EquivariantGraphMap, m2: EquivariantGraphMap) -> EquivariantGraphMap:
    """m2 after m1 (source of m2 = target of m1)."""
    if m1.target_space != m2.source_space:
        raise NotEquivariant("maps are not composable")
    phi = GroupHom(m1.phi.source, m2.phi.target,
                   tuple(m2.phi.mapping[x] for x in m1.phi.mapping))
    vm = tuple(m2.vertex_map[v] for v in m1.vertex_map)
    dm = []
    for e in m1.dart_map:
        if e >= 0:
            dm.append(m2.dart_map[e])
        else:
            dm.append(collapse_entry(m2.vertex_map[-e - 1]))
    return equivariant_map(phi, m1.source_space, m2.target_space, vm, tuple(dm))


# -- quotient by a free normal subgroup --------------------------------------

@dataclass(frozen=True)
class QuotientResult:
    space: GGraph                     # G/N acting on X/N
    projection: EquivariantGraphMap   # X -> X/N over G -> G/N
    vertex_orbits: tuple[tuple[int, ...], ...]
    dart_orbits: tuple[tuple[int, ...], ...]


def quotient_graph(X: GGraph, N: Subgroup) -> QuotientResult:
    """Quotient by a normal subgroup acting freely on vertices and darts."""
    if N.group != X.group:
        raise ValueError("subgroup does not belong to the acting group")
    if not N.is_normal():
        raise NotNormal(f"subgroup {N.elements} is not normal")
    g = X.graph
    for n in N.elements:
        if n == 0:
            continue
        for v in range(g.vertex_count):
            if X.vertex_action[n][v] == v:
                raise NotFree(g.vertex_label(v), "vertex")
        for d in range(g.dart_count):
            if X.dart_action[n][d] == d:
                raise NotFree(g.dart_label(d), "dart")

    def orbits(count, action):
        seen = set()
        out = []
        for x in range(count):
            if x in seen:
                continue
            orb = tuple(sorted({action[n][x] for n in N.elements}))
            seen.update(orb)
            out.append(orb)
        return tuple(out)

    v_orbits = orbits(g.vertex_count, X.vertex_action)
    d_orbits = orbits(g.dart_count, X.dart_action)
    v_class = {}
    for i, orb in enumerate(v_orbits):
        for v in orb:
            v_class[v] = i
    d_class = {}
    for i, orb in enumerate(d_orbits):
        for d in orb:
            d_class[d] = i

    qgraph = serre_graph(
        len(v_orbits),
        [v_class[g.dart_sources[orb[0]]] for orb in d_orbits],
        [d_class[g.involution[orb[0]]] for orb in d_orbits],
        ["{" + "|".join(g.vertex_label(v) for v in orb) + "}" for orb in v_orbits],
        ["{" + "|".join(g.dart_label(d) for d in orb) + "}" for orb in d_orbits],
    )
    Q, proj_hom, cosets = quotient_group(X.group, N)
    qva = tuple(
        tuple(v_class[X.vertex_action[c.representative][orb[0]]] for orb in v_orbits)
        for c in cosets
    )
    qda = tuple(
        tuple(d_class[X.dart_action[c.representative][orb[0]]] for orb in d_orbits)
        for c in cosets
    )
    try:
        qspace = validate_ggraph(Q, qgraph, qva, qda)
    except EdgeInversion as exc:
        raise InversionInQuotient(str(exc)) from exc
    projection = equivariant_map(
        proj_hom, X, qspace,
        tuple(v_class[v] for v in range(g.vertex_count)),
        tuple(d_class[d] for d in range(g.dart_count)),
    )
    return QuotientResult(qspace, projection, v_orbits, d_orbits)


# -- induced spaces G x_L X --------------------------------------------------

@dataclass(frozen=True)
class InducedResult:
    space: GGraph                    # G acting on G x_L X
    inclusion: EquivariantGraphMap   # X -> G x_L X over the embedding
    embedding: GroupHom              # L -> G
    coset_reps: tuple[int, ...]      # canonical reps of G/embedded-L, reps[0] = 0
    source_space: GGraph

    def decode_vertex(self, w: int) -> tuple[int, int]:
        """Induced vertex index -> (coset position, source vertex)."""
        nv = self.source_space.graph.vertex_count
        return divmod(w, nv)

    def decode_dart(self, e: int) -> tuple[int, int]:
        nd = self.source_space.graph.dart_count
        return divmod(e, nd)


def induced_graph(X: GGraph, embedding: GroupHom) -> InducedResult:
    """G x_L X with canonical representatives [min coset rep, translated point].

    X is an L-space; ``embedding`` is a verified injective hom L -> G. The
    class of (g, x) is stored at (c, l·x) where c = min(gL) and l = c^{-1} g.
    """
    L, G = embedding.source, embedding.target
    if X.group != L:
        raise ValueError("embedding source must be the acting group of X")
    embedding = embedding_hom(L, G, embedding.mapping)  # re-verify
    emb_of = embedding.mapping
    emb_inv = {emb_of[l]: l for l in L.elements()}
    emb_set = set(emb_inv)

    # canonical coset data for the embedded copy of L in G
    L_in_G = subgroup(G, sorted(emb_set))
    from .groups import canonical_coset as _coset
    reps = sorted({_coset(a, L_in_G).representative for a in G.elements()})
    rep_pos = {r: i for i, r in enumerate(reps)}

    g0 = X.graph
    nv, nd = g0.vertex_count, g0.dart_count
    n_cosets = len(reps)

    def locate(a: int, x: int, table) -> int:
        """Index of the class [a, x] (table selects vertex or dart action)."""
        rep = _coset(a, L_in_G).representative
        l_in_G = G.mul(G.inverse[rep], a)
        l = emb_inv[l_in_G]
        return rep_pos[rep] * (nv if table is X.vertex_action else nd) + table[l][x]

    sources = []
    invol = []
    vlabels = []
    dlabels = []
    for ci, r in enumerate(reps):
        for v in range(nv):
            vlabels.append(f"[{G.label(r)},{g0.vertex_label(v)}]")
    for ci, r in enumerate(reps):
        for d in range(nd):
            sources.append(ci * nv + g0.dart_sources[d])
            invol.append(ci * nd + g0.involution[d])
            dlabels.append(f"[{G.label(r)},{g0.dart_label(d)}]")
    igraph = serre_graph(n_cosets * nv, sources, invol, vlabels, dlabels)

    iva = []
    ida = []
    for g in G.elements():
        vrow = []
        drow = []
        for ci, r in enumerate(reps):
            a = G.mul(g, r)
            for v in range(nv):
                vrow.append(locate(a, v, X.vertex_action))
            for d in range(nd):
                drow.append(locate(a, d, X.dart_action))
        iva.append(tuple(vrow))
        ida.append(tuple(drow))
    ispace = validate_ggraph(G, igraph, tuple(iva), tuple(ida))

    # x -> [e, x]; the identity coset is reps[0] = 0 since 0 is in L's image
    assert reps[0] == 0
    inclusion = equivariant_map(
        embedding, X, ispace,
        tuple(range(nv)),
        tuple(range(nd)),
    )
    return InducedResult(ispace, inclusion, embedding, tuple(reps), X)


# -- subdivision -------------------------------------------------------------

def barycentric_subdivision(X: GGraph) -> GGraph:
    """Insert a midpoint vertex on every edge; removes all edge inversions."""
    g = X.graph
    pairs = [(d, g.involution[d]) for d in range(g.dart_count) if d < g.involution[d]]
    pair_index = {}
    for i, (d, e) in enumerate(pairs):
        pair_index[d] = i
        pair_index[e] = i
    nv = g.vertex_count
    # each old dart d: u -> v becomes (outer dart u -> mid, inner dart mid -> v)
    # outer dart of d has index 2d, its reverse (mid -> u) is 2*invol(d)+1
    sources = []
    invol = []
    dlabels = []
    for d in range(g.dart_count):
        sources.append(g.dart_sources[d])            # 2d: u -> mid
        sources.append(nv + pair_index[d])           # 2d+1: mid -> u
        invol.append(2 * d + 1)
        invol.append(2 * d)
        dlabels.append(g.dart_label(d) + ".out")
        dlabels.append(g.dart_label(d) + ".in")
    vlabels = [g.vertex_label(v) for v in range(nv)]
    vlabels += ["mid(" + g.dart_label(d) + ")" for d, _ in pairs]
    sgraph = serre_graph(nv + len(pairs), sources, invol, vlabels, dlabels)
    va = []
    da = []
    for gg in X.group.elements():
        vrow = list(X.vertex_action[gg][:nv])
        vrow += [nv + pair_index[X.dart_action[gg][d]] for d, _ in pairs]
        drow = []
        for d in range(g.dart_count):
            img = X.dart_action[gg][d]
            drow.append(2 * img)
            drow.append(2 * img + 1)
        va.append(tuple(vrow))
        da.append(tuple(drow))
    return validate_ggraph(X.group, sgraph, tuple(va), tuple(da))
