"""The generic category-of-elements on a small hand-built instance."""

import itertools

import pytest

from orbigroupoid.errors import NotComposable
from orbigroupoid.grothendieck import ElementsCategory, ElObject


class ArrowBase:
    """Base category: objects 'A', 'B'; one non-identity arrow u: A -> B."""

    ARROWS = {("A", "A"): ["idA"], ("B", "B"): ["idB"], ("A", "B"): ["u"],
              ("B", "A"): []}
    ENDS = {"idA": ("A", "A"), "idB": ("B", "B"), "u": ("A", "B")}

    def objects(self):
        return ["A", "B"]

    def arrows(self, a, b):
        return list(self.ARROWS[(a, b)])

    def identity(self, c):
        return "id" + c

    def compose(self, f, g):
        if self.ENDS[f][1] != self.ENDS[g][0]:
            raise NotComposable(f"{f};{g}")
        if f.startswith("id"):
            return g
        if g.startswith("id"):
            return f
        raise NotComposable("no composable non-identity pairs in this base")

    def source(self, f):
        return self.ENDS[f][0]

    def target(self, f):
        return self.ENDS[f][1]


class CyclicFiber:
    """The one-object groupoid of Z/n: arrows are ints mod n."""

    def __init__(self, n):
        self.n = n

    def objects(self):
        return ["*"]

    def identity(self, x):
        return 0

    def compose(self, p, q):
        return (p + q) % self.n

    def source(self, p):
        return "*"

    def target(self, p):
        return "*"


def build():
    # contravariant: fiber(A) = Z/4, fiber(B) = Z/2, F(u): Z/2 -> Z/4 doubles
    fibers = {"A": CyclicFiber(4), "B": CyclicFiber(2)}

    class Restrict:
        def __init__(self, arrow):
            self.arrow = arrow

        def apply_object(self, x):
            return "*"

        def apply_arrow(self, p):
            if self.arrow == "u":
                return (2 * p) % 4
            return p

    return ElementsCategory(ArrowBase(), lambda c: fibers[c], Restrict)


def all_arrows(cat):
    out = []
    base = cat.base
    for src in cat.objects():
        for tgt in cat.objects():
            for g in base.arrows(src.base, tgt.base):
                fib = cat.fiber_of(src.base)
                for psi in range(fib.n):
                    out.append(cat.arrow(src, tgt, g, psi))
    return out


def test_objects():
    cat = build()
    assert cat.objects() == [ElObject("A", "*"), ElObject("B", "*")]


def test_arrow_counts():
    cat = build()
    arrows = all_arrows(cat)
    a, b = cat.objects()
    assert sum(1 for f in arrows if f.source == a and f.target == a) == 4
    assert sum(1 for f in arrows if f.source == b and f.target == b) == 2
    assert sum(1 for f in arrows if f.source == a and f.target == b) == 4
    assert sum(1 for f in arrows if f.source == b and f.target == a) == 0


def test_identity_laws():
    cat = build()
    for f in all_arrows(cat):
        assert cat.compose(cat.identity(f.source), f) == f
        assert cat.compose(f, cat.identity(f.target)) == f


def test_associativity_exhaustive():
    cat = build()
    arrows = all_arrows(cat)
    triples = 0
    for f, g, h in itertools.product(arrows, repeat=3):
        if f.target != g.source or g.target != h.source:
            continue
        assert cat.compose(cat.compose(f, g), h) == cat.compose(f, cat.compose(g, h))
        triples += 1
    assert triples == 184  # every composable triple of the instance


def test_composition_uses_the_pulled_back_fiber_arrow():
    cat = build()
    a, b = cat.objects()
    f = cat.arrow(a, b, "u", 1)          # psi = 1 in Z/4
    v = cat.arrow(b, b, "idB", 1)        # fiber arrow 1 in Z/2
    comp = cat.compose(f, v)
    # F(u)(1 in Z/2) = 2 in Z/4, composed with psi = 1 gives 3
    assert comp.base_arrow == "u" and comp.fiber_arrow == 3


def test_projection_functor():
    cat = build()
    for f in all_arrows(cat):
        assert cat.project(f) == f.base_arrow
    ids = [cat.identity(o) for o in cat.objects()]
    assert [cat.project(i) for i in ids] == ["idA", "idB"]


def test_arrow_validation():
    cat = build()
    a, b = cat.objects()
    with pytest.raises(NotComposable):
        cat.arrow(a, b, "idA", 0)   # base arrow ends at the wrong object
    with pytest.raises(NotComposable):
        cat.compose(cat.arrow(a, b, "u", 0), cat.arrow(a, a, "idA", 0))
