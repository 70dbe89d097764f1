"""Equivariant maps between translation-groupoid models and the functors they
induce on equivariant fundamental categories, including the two generating
Morita moves (free quotient, induction) and natural transformations.

Spaces are finite Serre graphs throughout (the package-wide desk-scale model
of G-spaces); continuity of a transformation degenerates to local constancy,
which makes every induced transformation strict.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .errors import NotComposable, NotLocallyConstant, NotNatural, VertexNotFixed
from .ggraph import (
    EquivariantGraphMap,
    GGraph,
    InducedResult,
    QuotientResult,
    collapse_entry,
    equivariant_map,
    induced_graph,
    quotient_graph,
)
from .groups import GroupHom, Subgroup, canonical_coset, group_hom, hom_image
from .orbit import OrbitArrow, arrows_between, identity_arrow, orbit_functor
from .paths import reduce_path, edge_path
from .pi import PiArrow, PiCategory, PiObject


@dataclass(frozen=True)
class GeneralMap:
    kind: str = "general"


@dataclass(frozen=True)
class QuotientMove:
    subgroup: Subgroup
    result: QuotientResult = field(repr=False)
    kind: str = "quotient"


@dataclass(frozen=True)
class InductionMove:
    result: InducedResult = field(repr=False)
    kind: str = "induction"


Provenance = Union[GeneralMap, QuotientMove, InductionMove]


class InducedFunctor:
    """Pi(phi, f): objects (G/H, x) -> (G/phi(H), f(x)); arrows map their
    orbit part through the orbit functor and their path through f."""

    def __init__(self, gmap: EquivariantGraphMap,
                 source_cat: PiCategory | None = None,
                 target_cat: PiCategory | None = None,
                 provenance: Provenance = GeneralMap(),
                 verify: bool = True):
        self.map = gmap
        self.phi = gmap.phi
        self.source = source_cat or PiCategory(gmap.source_space)
        self.target = target_cat or PiCategory(gmap.target_space)
        self.orbit = orbit_functor(gmap.phi, verify=False)
        self.provenance = provenance
        if verify:
            self._spot_verify()

    def apply_object(self, a: PiObject) -> PiObject:
        H2 = self.orbit.apply_object(a.subgroup)
        x2 = self.map.vertex_map[a.vertex]
        # image of a fixed point is fixed by the image subgroup
        if x2 not in self.target.fiber(H2).vertex_set:
            raise VertexNotFixed(f"f({a.vertex}) is not fixed by the image subgroup")
        return PiObject(H2, x2)

    def apply_arrow(self, f: PiArrow) -> PiArrow:
        src = self.apply_object(f.source)
        tgt = self.apply_object(f.target)
        alpha = self.orbit.apply_arrow(f.alpha)
        word = self.map.map_darts(f.path.darts)
        raw = edge_path(self.target.space.graph, src.vertex, word)
        return self.target.arrow(src, tgt, alpha, reduce_path(raw))

    def _spot_verify(self):
        for a in self.source.objects():
            img = self.apply_arrow(self.source.identity(a))
            if not img.is_identity():
                raise AssertionError("functor does not preserve an identity arrow")
        gens = generator_arrows(self.source)
        by_source: dict[PiObject, list[PiArrow]] = {}
        for g in gens:
            by_source.setdefault(g.source, []).append(g)
        checked = 0
        for f in gens:
            for g in by_source.get(f.target, ()):
                comp = self.source.compose(f, g)
                if self.apply_arrow(comp) != self.target.compose(
                        self.apply_arrow(f), self.apply_arrow(g)):
                    raise AssertionError("functor does not preserve a composite")
                checked += 1
                if checked >= 4000:
                    return


def generator_arrows(cat: PiCategory) -> list[PiArrow]:
    """A finite generating set: single-dart fiber arrows plus constant-path
    arrows over every orbit arrow. Every arrow factors as fiber-then-constant.
    """
    from .paths import constant_path
    out = []
    graph = cat.space.graph
    for H in cat.subgroups:
        fib = cat.fiber(H)
        ida = identity_arrow(H)
        for d in sorted(fib.dart_set):
            u, w = graph.dart_sources[d], graph.target(d)
            out.append(cat.arrow(PiObject(H, u), PiObject(H, w), ida,
                                 reduce_path(edge_path(graph, u, (d,)))))
    for H in cat.subgroups:
        for K in cat.subgroups:
            for alpha in arrows_between(cat.group, H, K):
                for y in cat.fiber(K).vertices:
                    z = cat.fiber_action_vertex(alpha, y)
                    out.append(cat.arrow(PiObject(H, z), PiObject(K, y), alpha,
                                         constant_path(graph, z)))
    return out


def induced_functor(m: EquivariantGraphMap, *, source_cat=None, target_cat=None,
                    provenance: Provenance = GeneralMap(), verify=True) -> InducedFunctor:
    return InducedFunctor(m, source_cat, target_cat, provenance, verify)


@dataclass(frozen=True)
class MoveResult:
    map: EquivariantGraphMap
    functor: InducedFunctor = field(repr=False)


def quotient_move(X: GGraph, N: Subgroup) -> MoveResult:
    """The free-quotient Morita move: G acting on X descends to G/N on X/N."""
    qr = quotient_graph(X, N)
    functor = InducedFunctor(qr.projection, provenance=QuotientMove(N, qr))
    return MoveResult(qr.projection, functor)


def induction_move(X: GGraph, embedding: GroupHom) -> MoveResult:
    """The induction Morita move: an L-space X includes into G x_L X."""
    ir = induced_graph(X, embedding)
    functor = InducedFunctor(ir.inclusion, provenance=InductionMove(ir))
    return MoveResult(ir.inclusion, functor)


def collapse_map(X: GGraph) -> EquivariantGraphMap:
    """The constant map onto a point over the trivial group (never a move;
    the standard negative control for the equivalence checker)."""
    from .ggraph import serre_graph, trivial_action_ggraph
    point = trivial_action_ggraph(serre_graph(1, [], [], ["pt"], None))
    phi = group_hom(X.group, point.group, [0] * X.group.order)
    return equivariant_map(phi, X, point,
                           [0] * X.graph.vertex_count,
                           [collapse_entry(0)] * X.graph.dart_count)


# -- natural transformations --------------------------------------------------

@dataclass(frozen=True)
class NatTrans:
    """A vertex-indexed family r of target-group elements between two maps.

    Continuity is modeled as local constancy: r is constant along darts, so
    the induced transformation of fundamental categories is strict.
    """

    components: tuple[int, ...]


@dataclass(frozen=True)
class PiNatTrans:
    source_functor: InducedFunctor = field(repr=False)
    target_functor: InducedFunctor = field(repr=False)
    components: dict = field(repr=False)  # PiObject -> PiArrow

    def component(self, a: PiObject) -> PiArrow:
        return self.components[a]


def induced_nat_trans(r: NatTrans, F1: InducedFunctor, F2: InducedFunctor) -> PiNatTrans:
    """The strict transformation Pi(F1) => Pi(F2) induced by r.

    Validates that r is arrow-valued (r_x f1(x) = f2(x)), natural
    (r_{gx} phi1(g) = phi2(g) r_x), and locally constant; each component is
    (coset r_x^-1 phi2(H), constant path at f1(x)), using the conjugation
    identity phi1(H) = r_x^-1 phi2(H) r_x, and strict naturality is verified
    on a generating set of arrows.
    """
    m1, m2 = F1.map, F2.map
    if m1.source_space != m2.source_space or m1.target_space != m2.target_space:
        raise NotComposable("the two maps must share source and target spaces")
    X1 = m1.source_space
    G1, G2 = X1.group, m1.target_space.group
    comps = tuple(int(x) for x in r.components)
    if len(comps) != X1.graph.vertex_count:
        raise ValueError("r must assign an element to every source vertex")
    tgt = m1.target_space
    for x, rx in enumerate(comps):
        if tgt.act_vertex(rx, m1.vertex_map[x]) != m2.vertex_map[x]:
            raise NotNatural(G2.label(rx), X1.graph.vertex_label(x),
                             "r_x f1(x) != f2(x): r is not arrow-valued")
    for g in G1.elements():
        for x in range(X1.graph.vertex_count):
            gx = X1.vertex_action[g][x]
            if G2.mul(comps[gx], m1.phi.mapping[g]) != G2.mul(m2.phi.mapping[g], comps[x]):
                raise NotNatural(G1.label(g), X1.graph.vertex_label(x))
    for d in range(X1.graph.dart_count):
        u, w = X1.graph.dart_sources[d], X1.graph.target(d)
        if comps[u] != comps[w]:
            raise NotLocallyConstant(X1.graph.dart_label(d))

    target_cat = F1.target
    components: dict[PiObject, PiArrow] = {}
    from .paths import constant_path
    for a in F1.source.objects():
        H = a.subgroup
        x = a.vertex
        rx = comps[x]
        H1 = hom_image(m1.phi, H)
        H2 = hom_image(m2.phi, H)
        rxi = G2.inverse[rx]
        # phi1(H) = r_x^-1 phi2(H) r_x
        conj = tuple(sorted(G2.mul(G2.mul(rxi, h), rx) for h in H2.elements))
        assert conj == H1.elements, "conjugation identity for fixed points failed"
        alpha = OrbitArrow(H1, H2, canonical_coset(rxi, H2))
        components[a] = target_cat.arrow(
            F1.apply_object(a), F2.apply_object(a), alpha,
            constant_path(target_cat.space.graph, m1.vertex_map[x]))

    for h in generator_arrows(F1.source):
        left = target_cat.compose(components[h.source], F2.apply_arrow(h))
        right = target_cat.compose(F1.apply_arrow(h), components[h.target])
        if left != right:
            raise NotNatural("<generator>", h.source.label(),
                             "induced transformation is not strictly natural")
    return PiNatTrans(F1, F2, components)
