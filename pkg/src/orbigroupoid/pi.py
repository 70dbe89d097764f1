"""The equivariant fundamental category of a finite group acting on a graph.

Objects are pairs (G/H, x) with x a vertex of the fixed subgraph X^H; an
arrow (a, [p]): (G/H, x) -> (G/K, y) is an orbit-category arrow a together
with the reduced path p: x -> a*y inside X^H. Hom-sets are infinite but each
is a finite union of torsors over free vertex groups, so everything is stored
as (representative, basis) pairs and never enumerated.

This is the category-of-elements construction applied to H |-> Pi(X^H) over
the orbit category; ``as_elements_category`` exposes that instantiation
literally. For a finite group all 2-cells are identities, and the discrete
quotient returns the category unchanged. Spaces are finite Serre graphs, the
package-wide desk-scale model of G-spaces.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NotComposable, NotInvertible, VertexNotFixed
from .ggraph import FixedSubgraph, GGraph, connected_components, fixed_subgraph
from .grothendieck import ElementsCategory
from .groups import Subgroup, list_subgroups
from .orbit import (
    OrbitArrow,
    arrows_between,
    compose_arrows,
    identity_arrow,
    invert_arrow,
    is_invertible,
)
from .paths import (
    Pi1Basis,
    ReducedPath,
    compose as compose_paths,
    constant_path,
    invert as invert_path,
    is_reduced,
    pi1_basis,
)

two_cells_trivial = True


@dataclass(frozen=True)
class PiObject:
    subgroup: Subgroup
    vertex: int

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.subgroup, self.vertex))
            self.__dict__["_hash"] = h
        return h

    def label(self) -> str:
        return f"(G/{self.subgroup.label()}, {self.vertex})"


@dataclass(frozen=True)
class PiArrow:
    source: PiObject
    target: PiObject
    alpha: OrbitArrow
    path: ReducedPath

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.source, self.target, self.alpha, self.path))
            self.__dict__["_hash"] = h
        return h

    def is_identity(self) -> bool:
        return self.source == self.target and self.alpha.is_identity() and not self.path.darts


@dataclass(frozen=True)
class TorsorShape:
    """The nonempty arrow set {representative . loop} for one orbit arrow."""

    representative: PiArrow
    basis: Pi1Basis = field(repr=False)

    @property
    def rank(self) -> int:
        return self.basis.rank


@dataclass(frozen=True)
class HomShape:
    """Finite description of hom(a, b): per orbit arrow, Empty or a torsor."""

    source: PiObject
    target: PiObject
    parts: tuple[tuple[OrbitArrow, TorsorShape | None], ...]

    def nonempty(self) -> bool:
        return any(t is not None for _, t in self.parts)

    def torsors(self):
        return tuple((a, t) for a, t in self.parts if t is not None)


@dataclass(frozen=True)
class AutGroup:
    """Automorphisms of a Pi-object with an exact word-problem oracle.

    Every automorphism is uniquely (coset part, reduced path); equivalently
    (coset part, reduced word in the fiber basis). Generators are the fiber
    basis loops plus one twist per nontrivial admissible invertible coset.
    """

    obj: PiObject
    loop_generators: tuple[PiArrow, ...]
    twist_generators: tuple[PiArrow, ...]
    admissible: tuple[OrbitArrow, ...]   # invertible cosets keeping the component
    basis: Pi1Basis = field(repr=False)
    category: "PiCategory" = field(repr=False, compare=False)

    @property
    def generators(self) -> tuple[PiArrow, ...]:
        return self.loop_generators + self.twist_generators

    def normal_form(self, f: PiArrow) -> tuple[OrbitArrow, tuple[int, ...]]:
        """(coset part, loop word) with f = loop-word followed by the twist."""
        if f.source != self.obj or f.target != self.obj:
            raise NotComposable("arrow is not an endomorphism of this object")
        tw = self._twist_path(f.alpha)
        loop = compose_paths(f.path, invert_path(tw))
        word = self._word_at_object(loop)
        return f.alpha, word

    def element(self, alpha: OrbitArrow, word) -> PiArrow:
        loop = self._loop_at_object(word)
        gamma = compose_paths(loop, self._twist_path(alpha))
        return self.category.arrow(self.obj, self.obj, alpha, gamma)

    def enumerate_elements(self, max_word: int):
        from .paths import reduced_words
        for alpha in self.admissible:
            for word in reduced_words(self.basis.rank, max_word):
                yield self.element(alpha, word)

    def _twist_path(self, alpha: OrbitArrow) -> ReducedPath:
        x = self.obj.vertex
        fiber = self.category.fiber(self.obj.subgroup)
        return fiber.tree_path(x, self.category.fiber_action_vertex(alpha, x))

    def _word_at_object(self, loop: ReducedPath) -> tuple[int, ...]:
        x = self.obj.vertex
        if x == self.basis.basepoint:
            return self.basis.loop_to_word(loop)
        t = self.basis.tree_path(self.basis.basepoint, x)
        moved = compose_paths(compose_paths(t, loop), invert_path(t))
        return self.basis.loop_to_word(moved)

    def _loop_at_object(self, word) -> ReducedPath:
        return self.basis.word_to_loop(word, at=self.obj.vertex)


@dataclass(frozen=True)
class TwoCell:
    """A 2-cell between parallel arrows; for finite groups only identities."""

    left: PiArrow
    right: PiArrow
    witness: str = "identity"


def two_cell(f: PiArrow, g: PiArrow) -> TwoCell | None:
    """The unique 2-cell f => g if one exists (iff f = g), else None."""
    if f.source != g.source or f.target != g.target:
        raise NotComposable("2-cells only connect parallel arrows")
    return TwoCell(f, g) if f == g else None


@dataclass(frozen=True)
class SkeletonClass:
    representative: PiObject
    members: tuple[PiObject, ...]


@dataclass(frozen=True)
class Skeleton:
    classes: tuple[SkeletonClass, ...]
    hom_summary: dict = field(repr=False)
    # hom_summary[(i, j)] = tuple of (OrbitArrow, rank | None)


class _FiberContext:
    """Pi(X^H): components, bases, and tree paths of one fixed subgraph."""

    def __init__(self, space: GGraph, H: Subgroup):
        self.space = space
        self.subgroup = H
        self.fixed: FixedSubgraph = fixed_subgraph(space, H)
        self.vertices = self.fixed.vertex_embedding
        self.vertex_set = self.fixed.vertex_set
        self.dart_set = self.fixed.dart_set
        self.components = connected_components(
            space.graph, vertices=self.vertices, allowed_darts=self.dart_set)
        self.component_of = {}
        for i, comp in enumerate(self.components):
            for v in comp:
                self.component_of[v] = i
        self._bases: dict[int, Pi1Basis] = {}

    def basis_at(self, v: int) -> Pi1Basis:
        ci = self.component_of[v]
        if ci not in self._bases:
            comp = self.components[ci]
            self._bases[ci] = pi1_basis(self.space.graph, comp[0],
                                        component=comp, allowed_darts=self.dart_set)
        return self._bases[ci]

    def tree_path(self, x: int, y: int) -> ReducedPath:
        return self.basis_at(x).tree_path(x, y)

    def same_component(self, x: int, y: int) -> bool:
        return self.component_of.get(x) is not None and \
            self.component_of.get(x) == self.component_of.get(y)


class PiCategory:
    """The equivariant fundamental category of a validated G-graph."""

    def __init__(self, space: GGraph):
        self.space = space
        self.group = space.group
        self.subgroups = list_subgroups(self.group)
        self._fibers = {H: _FiberContext(space, H) for H in self.subgroups}
        self._orbit_comp: dict = {}

    # -- structure ----------------------------------------------------------

    def fiber(self, H: Subgroup) -> _FiberContext:
        return self._fibers[H]

    def objects(self) -> tuple[PiObject, ...]:
        out = []
        for H in self.subgroups:
            for v in self._fibers[H].vertices:
                out.append(PiObject(H, v))
        return tuple(out)

    def arrow(self, source: PiObject, target: PiObject,
              alpha: OrbitArrow, path: ReducedPath) -> PiArrow:
        """Validated arrow constructor; the path must live in X^H."""
        fib = self.fiber(source.subgroup)
        if source.vertex not in fib.vertex_set:
            raise VertexNotFixed(f"vertex {source.vertex} is not fixed by {source.subgroup.elements}")
        if target.vertex not in self.fiber(target.subgroup).vertex_set:
            raise VertexNotFixed(f"vertex {target.vertex} is not fixed by {target.subgroup.elements}")
        if alpha.source != source.subgroup or alpha.target != target.subgroup:
            raise NotComposable("orbit arrow endpoints do not match the objects")
        if path.start != source.vertex:
            raise NotComposable("path does not start at the source vertex")
        if any(d not in fib.dart_set for d in path.darts):
            raise VertexNotFixed("path leaves the fixed subgraph of the source subgroup")
        end = self.fiber_action_vertex(alpha, target.vertex)
        if path.end != end:
            raise NotComposable(f"path ends at {path.end}, expected alpha*target = {end}")
        return PiArrow(source, target, alpha, path)

    def identity(self, a: PiObject) -> PiArrow:
        return PiArrow(a, a, identity_arrow(a.subgroup),
                       constant_path(self.space.graph, a.vertex))

    def compose(self, f: PiArrow, g: PiArrow) -> PiArrow:
        """f then g: orbit parts multiply left to right, paths concatenate
        with the second path translated by the first orbit arrow."""
        if f.target != g.source:
            raise NotComposable("arrows are not composable")
        key = (f.alpha, g.alpha)
        alpha = self._orbit_comp.get(key)
        if alpha is None:
            alpha = compose_arrows(f.alpha, g.alpha)
            self._orbit_comp[key] = alpha
        path = compose_paths(f.path, self.fiber_action_path(f.alpha, g.path))
        return PiArrow(f.source, g.target, alpha, path)

    def is_invertible(self, f: PiArrow) -> bool:
        return is_invertible(f.alpha)

    def inverse(self, f: PiArrow) -> PiArrow:
        if not self.is_invertible(f):
            raise NotInvertible("arrow is invertible only when its orbit part is")
        alpha_inv = invert_arrow(f.alpha)
        path = self.fiber_action_path(alpha_inv, invert_path(f.path))
        return self.arrow(f.target, f.source, alpha_inv, path)

    # -- fiber actions --------------------------------------------------------

    def fiber_action_vertex(self, alpha: OrbitArrow, y: int) -> int:
        """alpha * y for alpha: G/H -> G/K and y a vertex of X^K."""
        if y not in self.fiber(alpha.target).vertex_set:
            raise VertexNotFixed(f"vertex {y} is not fixed by {alpha.target.elements}")
        z = self.space.act_vertex(alpha.representative, y)
        if z not in self.fiber(alpha.source).vertex_set:
            raise VertexNotFixed(f"alpha*{y} = {z} escaped the source fixed subgraph")
        return z

    def fiber_action_path(self, alpha: OrbitArrow, p: ReducedPath) -> ReducedPath:
        rep = alpha.representative
        if rep == 0:
            return p
        act = self.space.dart_action[rep]
        moved = ReducedPath(self.space.graph,
                            self.space.act_vertex(rep, p.start),
                            tuple(map(act.__getitem__, p.darts)))
        # graph automorphisms preserve reducedness
        assert is_reduced(moved)
        return moved

    # -- hom shapes, skeleton, automorphisms ---------------------------------

    def hom_shape(self, a: PiObject, b: PiObject) -> HomShape:
        fib = self.fiber(a.subgroup)
        parts = []
        for alpha in arrows_between(self.group, a.subgroup, b.subgroup):
            z = self.fiber_action_vertex(alpha, b.vertex)
            if fib.same_component(a.vertex, z):
                rep = self.arrow(a, b, alpha, fib.tree_path(a.vertex, z))
                parts.append((alpha, TorsorShape(rep, fib.basis_at(a.vertex))))
            else:
                parts.append((alpha, None))
        return HomShape(a, b, tuple(parts))

    def connecting_iso(self, a: PiObject, b: PiObject) -> PiArrow | None:
        """An invertible arrow a -> b, or None if the objects are not isomorphic."""
        fib = self.fiber(a.subgroup)
        for alpha in arrows_between(self.group, a.subgroup, b.subgroup):
            if not is_invertible(alpha):
                continue
            z = self.fiber_action_vertex(alpha, b.vertex)
            if fib.same_component(a.vertex, z):
                return self.arrow(a, b, alpha, fib.tree_path(a.vertex, z))
        return None

    def are_isomorphic(self, a: PiObject, b: PiObject) -> bool:
        return self.connecting_iso(a, b) is not None

    def skeleton(self) -> Skeleton:
        objs = self.objects()
        reps: list[PiObject] = []
        members: list[list[PiObject]] = []
        for o in objs:
            for i, r in enumerate(reps):
                if self.are_isomorphic(r, o):
                    members[i].append(o)
                    break
            else:
                reps.append(o)
                members.append([o])
        classes = tuple(SkeletonClass(r, tuple(m)) for r, m in zip(reps, members))
        summary = {}
        for i, ci in enumerate(classes):
            for j, cj in enumerate(classes):
                shape = self.hom_shape(ci.representative, cj.representative)
                summary[(i, j)] = tuple(
                    (alpha, None if t is None else t.rank) for alpha, t in shape.parts)
        return Skeleton(classes, summary)

    def aut_group(self, a: PiObject) -> AutGroup:
        fib = self.fiber(a.subgroup)
        basis = fib.basis_at(a.vertex)
        loops = tuple(
            self.arrow(a, a, identity_arrow(a.subgroup),
                       basis.generator_loop(i, at=a.vertex))
            for i in range(basis.rank))
        admissible = []
        twists = []
        for alpha in arrows_between(self.group, a.subgroup, a.subgroup):
            if not is_invertible(alpha):
                continue
            z = self.fiber_action_vertex(alpha, a.vertex)
            if not fib.same_component(a.vertex, z):
                continue
            admissible.append(alpha)
            if not alpha.is_identity():
                twists.append(self.arrow(a, a, alpha, fib.tree_path(a.vertex, z)))
        return AutGroup(a, loops, tuple(twists), tuple(admissible), basis, self)

    def enumerate_arrows(self, a: PiObject, b: PiObject, max_word: int):
        """All arrows a -> b whose fiber word has length <= max_word."""
        from .paths import reduced_words
        out = []
        for alpha, torsor in self.hom_shape(a, b).parts:
            if torsor is None:
                continue
            rep = torsor.representative
            basis = torsor.basis
            for word in reduced_words(basis.rank, max_word):
                loop = basis.word_to_loop(word, at=a.vertex)
                out.append(PiArrow(a, b, alpha, compose_paths(loop, rep.path)))
        return out

    def discrete_quotient(self) -> "DiscreteQuotient":
        return DiscreteQuotient(self)

    # -- generic construction adapter -----------------------------------------

    def as_elements_category(self) -> ElementsCategory:
        """This category as a literal instance of the generic construction."""
        cat = self

        class _Base:
            def objects(self):
                return list(cat.subgroups)

            def arrows(self, H, K):
                return list(arrows_between(cat.group, H, K))

            def identity(self, H):
                return identity_arrow(H)

            def compose(self, f, g):
                return compose_arrows(f, g)

            def source(self, f):
                return f.source

            def target(self, f):
                return f.target

        class _Fiber:
            def __init__(self, H):
                self.H = H

            def objects(self):
                return list(cat.fiber(self.H).vertices)

            def identity(self, x):
                return constant_path(cat.space.graph, x)

            def compose(self, p, q):
                return compose_paths(p, q)

            def source(self, p):
                return p.start

            def target(self, p):
                return p.end

        class _Restrict:
            def __init__(self, alpha):
                self.alpha = alpha

            def apply_object(self, y):
                return cat.fiber_action_vertex(self.alpha, y)

            def apply_arrow(self, p):
                return cat.fiber_action_path(self.alpha, p)

        return ElementsCategory(_Base(), lambda H: _Fiber(H), lambda a: _Restrict(a))


@dataclass(frozen=True)
class DiscreteQuotient:
    """The quotient by 2-cells; equal to the category itself for finite groups.

    Exists so downstream reports can speak of the discrete fundamental
    category; the provenance note records why nothing changes.
    """

    category: PiCategory
    two_cells_trivial: bool = True
    note: str = ("finite acting group: hom-spaces of orbits are discrete, "
                 "all 2-cells are identities, the quotient is the identity")

    def skeleton(self) -> Skeleton:
        return self.category.skeleton()


# -- module-level operation names ------------------------------------------

def pi_objects(X: GGraph) -> tuple[PiObject, ...]:
    return PiCategory(X).objects()


def compose_pi(cat: PiCategory, f: PiArrow, g: PiArrow) -> PiArrow:
    return cat.compose(f, g)


def hom_shape(cat: PiCategory, a: PiObject, b: PiObject) -> HomShape:
    return cat.hom_shape(a, b)


def is_invertible_pi(cat: PiCategory, f: PiArrow) -> bool:
    return cat.is_invertible(f)


def inverse_pi(cat: PiCategory, f: PiArrow) -> PiArrow:
    return cat.inverse(f)


def skeleton(X: GGraph) -> Skeleton:
    return PiCategory(X).skeleton()


def aut_group(cat: PiCategory, a: PiObject) -> AutGroup:
    return cat.aut_group(a)


def discrete_quotient(X: GGraph) -> DiscreteQuotient:
    return PiCategory(X).discrete_quotient()


def fiber_action(cat: PiCategory, alpha: OrbitArrow, y: int) -> int:
    return cat.fiber_action_vertex(alpha, y)
