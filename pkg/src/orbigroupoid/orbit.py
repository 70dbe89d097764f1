"""The orbit category of a finite group.

Objects are canonical orbits G/H (represented by their Subgroup); an arrow
G/H -> G/K is a coset aK with a^-1 H a <= K, and composition multiplies
representatives left to right: (aK: H->K) then (bM: K->M) is (ab)M.

For a finite group the hom-sets carry no topology, so the 2-categorical
structure collapses; this module exposes the honest 1-category.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotComposable, NotInvertible
from .groups import (
    Coset,
    FiniteGroup,
    GroupHom,
    Subgroup,
    canonical_coset,
    conjugate_subgroup,
    hom_image,
    left_cosets,
    list_subgroups,
)

# hom-spaces (G/K)^H of a finite group are discrete: every 2-cell is an identity
two_cells_are_trivial = True


@dataclass(frozen=True)
class OrbitObject:
    subgroup: Subgroup

    def label(self) -> str:
        return "G/" + self.subgroup.label()


@dataclass(frozen=True)
class OrbitArrow:
    source: Subgroup
    target: Subgroup
    coset: Coset

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.source, self.target, self.coset))
            self.__dict__["_hash"] = h
        return h

    @property
    def representative(self) -> int:
        return self.coset.representative

    def is_identity(self) -> bool:
        return self.source == self.target and self.coset.representative in self.target

    def label(self) -> str:
        return self.coset.label()

    def __repr__(self) -> str:
        return f"OrbitArrow({self.source.elements}->{self.target.elements}, rep={self.representative})"


def orbit_objects(G: FiniteGroup) -> tuple[OrbitObject, ...]:
    return tuple(OrbitObject(H) for H in list_subgroups(G))


def _admissible(G: FiniteGroup, alpha: int, H: Subgroup, K: Subgroup) -> bool:
    # a^-1 H a <= K; invariant under replacing a within its coset aK
    ai = G.inverse[alpha]
    return all(G.mul(G.mul(ai, h), alpha) in K.member_set for h in H.elements)


def arrows_between(G: FiniteGroup, H: Subgroup, K: Subgroup) -> tuple[OrbitArrow, ...]:
    """All arrows G/H -> G/K, one per admissible coset, sorted by representative."""
    out = []
    for coset in left_cosets(K):
        if _admissible(G, coset.representative, H, K):
            out.append(OrbitArrow(H, K, coset))
    return tuple(out)


def arrow_from_element(G: FiniteGroup, alpha: int, H: Subgroup, K: Subgroup) -> OrbitArrow:
    if not _admissible(G, alpha, H, K):
        raise ValueError(f"element {alpha} does not define an arrow: a^-1 H a is not inside K")
    return OrbitArrow(H, K, canonical_coset(alpha, K))


def identity_arrow(H: Subgroup) -> OrbitArrow:
    return OrbitArrow(H, H, canonical_coset(0, H))


def compose_arrows(f: OrbitArrow, g: OrbitArrow) -> OrbitArrow:
    """f then g: (aK: H->K) ; (bM: K->M) = (a*b)M : H->M."""
    if f.target != g.source:
        raise NotComposable("target of the first arrow differs from source of the second")
    G = f.source.group
    ab = G.mul(f.representative, g.representative)
    return OrbitArrow(f.source, g.target, canonical_coset(ab, g.target))


def is_invertible(f: OrbitArrow) -> bool:
    return conjugate_subgroup(f.source.group.inverse[f.representative], f.source) == f.target


def invert_arrow(f: OrbitArrow) -> OrbitArrow:
    if not is_invertible(f):
        raise NotInvertible("arrow is invertible only when a^-1 H a = K")
    G = f.source.group
    return OrbitArrow(f.target, f.source, canonical_coset(G.inverse[f.representative], f.source))


@dataclass(frozen=True)
class OrbitFunctor:
    """The functor between orbit categories induced by a group homomorphism."""

    phi: GroupHom

    def apply_object(self, H: Subgroup) -> Subgroup:
        return hom_image(self.phi, H)

    def apply_arrow(self, f: OrbitArrow) -> OrbitArrow:
        H2 = self.apply_object(f.source)
        K2 = self.apply_object(f.target)
        return OrbitArrow(H2, K2, canonical_coset(self.phi.mapping[f.representative], K2))


def orbit_functor(phi: GroupHom, *, verify: bool = True) -> OrbitFunctor:
    """Build the induced functor; functoriality is checked on the finite data.

    Verification is exhaustive over all composable arrow pairs; skipped for
    groups past a small size guard (the fixtures are all far below it).
    """
    F = OrbitFunctor(phi)
    if verify and phi.source.order <= 12:
        G = phi.source
        subs = list_subgroups(G)
        for H in subs:
            if not F.apply_arrow(identity_arrow(H)).is_identity():
                raise AssertionError("functor does not preserve an identity arrow")
        for H in subs:
            # well-definedness: phi(H) <= phi(a) phi(K) phi(a)^-1 re-checked
            for K in subs:
                for f in arrows_between(G, H, K):
                    img = F.apply_arrow(f)
                    if not _admissible(phi.target, img.representative, img.source, img.target):
                        raise AssertionError("image coset is not an admissible arrow")
                for M in subs:
                    for f in arrows_between(G, H, K):
                        for g in arrows_between(G, K, M):
                            if F.apply_arrow(compose_arrows(f, g)) != compose_arrows(
                                    F.apply_arrow(f), F.apply_arrow(g)):
                                raise AssertionError("functor does not preserve composition")
    return F
