import pytest

from orbigroupoid.errors import NotComposable, NotInvertible
from orbigroupoid.groups import (
    cyclic_group,
    full_subgroup,
    group_hom,
    identity_hom,
    list_subgroups,
    subgroup,
    symmetric_group,
    trivial_subgroup,
)
from orbigroupoid.orbit import (
    arrow_from_element,
    arrows_between,
    compose_arrows,
    identity_arrow,
    invert_arrow,
    is_invertible,
    orbit_functor,
    orbit_objects,
    two_cells_are_trivial,
)


def test_two_cells_flag():
    assert two_cells_are_trivial is True


def test_z2_arrow_counts():
    G = cyclic_group(2)
    e, full = trivial_subgroup(G), full_subgroup(G)
    assert len(arrows_between(G, e, e)) == 2
    assert len(arrows_between(G, e, full)) == 1
    assert len(arrows_between(G, full, e)) == 0
    assert len(arrows_between(G, full, full)) == 1


def test_single_arrow_to_full_orbit():
    for G in (cyclic_group(4), symmetric_group(3)):
        for H in list_subgroups(G):
            assert len(arrows_between(G, H, full_subgroup(G))) == 1


def test_identity_always_present():
    G = symmetric_group(3)
    for H in list_subgroups(G):
        arrows = arrows_between(G, H, H)
        assert identity_arrow(H) in arrows


def test_no_duplicate_cosets():
    for G in (cyclic_group(4), symmetric_group(3)):
        for H in list_subgroups(G):
            for K in list_subgroups(G):
                arrows = arrows_between(G, H, K)
                cosets = [a.coset for a in arrows]
                assert len(set(cosets)) == len(cosets)
                assert [a.representative for a in arrows] == sorted(
                    a.representative for a in arrows)


def test_compose_identity_neutral():
    G = cyclic_group(2)
    e = trivial_subgroup(G)
    f = arrows_between(G, e, e)[1]
    assert compose_arrows(identity_arrow(e), f) == f
    assert compose_arrows(f, identity_arrow(e)) == f


def test_compose_z2_involution():
    G = cyclic_group(2)
    e = trivial_subgroup(G)
    tau = arrows_between(G, e, e)[1]
    assert compose_arrows(tau, tau) == identity_arrow(e)


def test_free_orbit_endos_reproduce_group_table():
    for G in (cyclic_group(2), cyclic_group(4), symmetric_group(3)):
        e = trivial_subgroup(G)
        arrows = arrows_between(G, e, e)
        assert len(arrows) == G.order
        by_rep = {a.representative: a for a in arrows}
        for a in G.elements():
            for b in G.elements():
                got = compose_arrows(by_rep[a], by_rep[b])
                assert got.representative == G.mul(a, b)


def test_not_composable():
    G = cyclic_group(2)
    f = arrows_between(G, trivial_subgroup(G), full_subgroup(G))[0]
    with pytest.raises(NotComposable):
        compose_arrows(f, f)


def test_invertibility():
    G = cyclic_group(2)
    e, full = trivial_subgroup(G), full_subgroup(G)
    assert is_invertible(identity_arrow(e))
    up = arrows_between(G, e, full)[0]
    assert not is_invertible(up)
    with pytest.raises(NotInvertible):
        invert_arrow(up)
    tau = arrows_between(G, e, e)[1]
    assert compose_arrows(tau, invert_arrow(tau)) == identity_arrow(e)


def test_invertible_between_conjugate_subgroups():
    G = symmetric_group(3)
    order2 = [H for H in list_subgroups(G) if H.order == 2]
    threecycle = next(g for g in G.elements()
                      if g != 0 and G.mul(g, G.mul(g, g)) == 0)
    from orbigroupoid.groups import conjugate_subgroup
    H = order2[0]
    K = conjugate_subgroup(G.inv(threecycle), H)
    f = arrow_from_element(G, threecycle, H, K)
    assert is_invertible(f)
    assert compose_arrows(f, invert_arrow(f)) == identity_arrow(H)


def test_orbit_functor_identity():
    G = cyclic_group(4)
    F = orbit_functor(identity_hom(G))
    for H in list_subgroups(G):
        assert F.apply_object(H) == H
        for f in arrows_between(G, H, H):
            assert F.apply_arrow(f) == f


def test_orbit_functor_projection_z4_to_z2():
    z4, z2 = cyclic_group(4), cyclic_group(2)
    proj = group_hom(z4, z2, [0, 1, 0, 1])
    F = orbit_functor(proj)
    e4 = trivial_subgroup(z4)
    f = arrow_from_element(z4, 1, e4, e4)
    img = F.apply_arrow(f)
    assert img.source.elements == (0,)
    assert img.representative == 1  # the nonidentity endo of the free orbit


def test_orbit_functor_inclusion():
    z4 = cyclic_group(4)
    z2 = cyclic_group(2)
    incl = group_hom(z2, z4, [0, 2])
    F = orbit_functor(incl)
    assert F.apply_object(trivial_subgroup(z2)).elements == (0,)
    assert F.apply_object(full_subgroup(z2)).elements == (0, 2)


def test_orbit_functor_composition_exhaustive_small_groups():
    # orders <= 8: constructor verification is exhaustive; re-run explicitly
    z4, z2 = cyclic_group(4), cyclic_group(2)
    s3 = symmetric_group(3)
    for G, phi in ((z4, group_hom(z4, z2, [0, 1, 0, 1])),
                   (s3, identity_hom(s3))):
        F = orbit_functor(phi)
        subs = list_subgroups(G)
        for H in subs:
            for K in subs:
                for M in subs:
                    for f in arrows_between(G, H, K):
                        for g in arrows_between(G, K, M):
                            assert F.apply_arrow(compose_arrows(f, g)) == \
                                compose_arrows(F.apply_arrow(f), F.apply_arrow(g))


def test_orbit_objects_listing():
    G = cyclic_group(4)
    objs = orbit_objects(G)
    assert [o.subgroup.elements for o in objs] == [(0,), (0, 2), (0, 1, 2, 3)]
