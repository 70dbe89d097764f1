"""Generic category of elements of a contravariant functor into Cat.

Parameterized over a finite base category and an assignment of fiber
categories with decidable arrow equality (normal forms), this builds the
total category: objects are pairs (C, x) with x in F(C); an arrow
(g, psi): (C, x) -> (C', x') has g: C -> C' in the base and psi: x -> F(g)(x')
in F(C); composition is (g then g', F(g)(psi') after psi).

The equivariant fundamental category is the instantiation at the orbit
category with fixed-set fundamental groupoids as fibers; the construction is
kept independent of that instance so it can be tested on its own.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .errors import NotComposable


@dataclass(frozen=True)
class ElObject:
    base: Any
    fiber: Any


@dataclass(frozen=True)
class ElArrow:
    source: ElObject
    target: ElObject
    base_arrow: Any
    fiber_arrow: Any


class ElementsCategory:
    """Total category of a contravariant functor given by callbacks.

    base: has objects(), arrows(a, b), identity(c), compose(f, g),
          source(f), target(f)
    fiber_of(c): has objects(), identity(x), compose(p, q), source(p), target(p)
    restrict(g): has apply_object(x), apply_arrow(p)  -- the functor
          F(g): fiber(target g) -> fiber(source g)
    """

    def __init__(self, base, fiber_of, restrict):
        self.base = base
        self.fiber_of = fiber_of
        self.restrict = restrict

    def objects(self) -> list[ElObject]:
        out = []
        for c in self.base.objects():
            for x in self.fiber_of(c).objects():
                out.append(ElObject(c, x))
        return out

    def arrow(self, source: ElObject, target: ElObject,
              base_arrow, fiber_arrow) -> ElArrow:
        if self.base.source(base_arrow) != source.base:
            raise NotComposable("base arrow does not start at the source object")
        if self.base.target(base_arrow) != target.base:
            raise NotComposable("base arrow does not end at the target object")
        fib = self.fiber_of(source.base)
        if fib.source(fiber_arrow) != source.fiber:
            raise NotComposable("fiber arrow does not start at the source point")
        pulled = self.restrict(base_arrow).apply_object(target.fiber)
        if fib.target(fiber_arrow) != pulled:
            raise NotComposable("fiber arrow does not end at the pulled-back point")
        return ElArrow(source, target, base_arrow, fiber_arrow)

    def identity(self, obj: ElObject) -> ElArrow:
        return ElArrow(obj, obj, self.base.identity(obj.base),
                       self.fiber_of(obj.base).identity(obj.fiber))

    def compose(self, f: ElArrow, g: ElArrow) -> ElArrow:
        """f then g."""
        if f.target != g.source:
            raise NotComposable("arrows are not composable")
        base = self.base.compose(f.base_arrow, g.base_arrow)
        fib = self.fiber_of(f.source.base)
        pulled = self.restrict(f.base_arrow).apply_arrow(g.fiber_arrow)
        return ElArrow(f.source, g.target, base, fib.compose(f.fiber_arrow, pulled))

    def project(self, arrow: ElArrow):
        """The projection functor to the base category, on arrows."""
        return arrow.base_arrow
