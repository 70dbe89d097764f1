import pytest

from orbigroupoid.errors import NoInverse, NotAHomomorphism, NotAssociative
from orbigroupoid.groups import (
    canonical_coset,
    conjugate_subgroup,
    cyclic_group,
    full_subgroup,
    group_from_table,
    group_hom,
    hom_image,
    identity_hom,
    left_cosets,
    list_subgroups,
    quotient_group,
    subgroup,
    symmetric_group,
    trivial_group,
    trivial_subgroup,
)

from oracles import brute_force_subgroups

# a latin square with identity 0 that is not associative: (1*1)*2 != 1*(1*2)
NONASSOC = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 3, 4, 0, 1],
    [3, 4, 1, 2, 0],
    [4, 2, 0, 1, 3],
]


def test_trivial_group():
    G = group_from_table(1, [[0]])
    assert G.order == 1 and G.inverse == (0,)


def test_z2_table():
    G = group_from_table(2, [[0, 1], [1, 0]])
    assert G.mul(1, 1) == 0 and G.inv(1) == 1


def test_no_inverse():
    with pytest.raises(NoInverse) as exc:
        group_from_table(2, [[0, 1], [1, 1]])
    assert exc.value.element == 1


def test_not_associative_names_triple():
    with pytest.raises(NotAssociative) as exc:
        group_from_table(5, NONASSOC)
    a, b, c = exc.value.triple
    t = NONASSOC
    assert t[t[a][b]][c] != t[a][t[b][c]]


def test_identity_relabeled_to_zero():
    # Z/2 written with the identity at index 1
    G = group_from_table(2, [[1, 0], [0, 1]], labels=["x", "id"])
    assert G.mul(0, 0) == 0
    assert G.labels == ("id", "x")
    assert G.mul(1, 1) == 0


def test_order_cap():
    with pytest.raises(ValueError):
        group_from_table(65, [[0] * 65] * 65)
    table = [[(i + j) % 65 for j in range(65)] for i in range(65)]
    G = group_from_table(65, table, max_order=128)
    assert G.order == 65


@pytest.mark.parametrize("G,expected", [
    (cyclic_group(2), [(0,), (0, 1)]),
    (cyclic_group(4), [(0,), (0, 2), (0, 1, 2, 3)]),
])
def test_list_subgroups_small(G, expected):
    assert [H.elements for H in list_subgroups(G)] == expected


def test_list_subgroups_s3_matches_oracle():
    G = symmetric_group(3)
    got = [H.elements for H in list_subgroups(G)]
    assert got == brute_force_subgroups(G.table)
    sizes = sorted(len(e) for e in got)
    assert sizes == [1, 2, 2, 2, 3, 6]


def test_list_subgroups_matches_oracle_on_fixture_groups():
    for G in (cyclic_group(2), cyclic_group(4), cyclic_group(6), symmetric_group(3)):
        assert [H.elements for H in list_subgroups(G)] == brute_force_subgroups(G.table)


def test_conjugate_identity_and_abelian():
    G = cyclic_group(4)
    H = subgroup(G, [0, 2])
    assert conjugate_subgroup(0, H) == H
    for g in G.elements():
        assert conjugate_subgroup(g, H) == H


def test_conjugate_moves_subgroups_in_s3():
    G = symmetric_group(3)
    order2 = [H for H in list_subgroups(G) if H.order == 2]
    threecycle = next(g for g in G.elements()
                      if g != 0 and G.mul(g, G.mul(g, g)) == 0)
    H = order2[0]
    K = conjugate_subgroup(threecycle, H)
    assert K != H and K.order == 2


def test_conjugation_composes():
    G = symmetric_group(3)
    for H in list_subgroups(G):
        for g in G.elements():
            for h in G.elements():
                lhs = conjugate_subgroup(G.mul(g, h), H)
                rhs = conjugate_subgroup(g, conjugate_subgroup(h, H))
                assert lhs == rhs


def test_canonical_coset_examples():
    G = cyclic_group(4)
    K = subgroup(G, [0, 2])
    assert canonical_coset(3, K).representative == 1
    assert canonical_coset(0, K).representative == 0
    assert canonical_coset(2, K).representative == 0  # member of K itself
    G2 = cyclic_group(2)
    assert canonical_coset(1, trivial_subgroup(G2)).representative == 1


def test_canonical_coset_iff_property_exhaustive():
    for G in (cyclic_group(12), symmetric_group(3)):
        for K in list_subgroups(G):
            for a in G.elements():
                for b in G.elements():
                    same = canonical_coset(a, K) == canonical_coset(b, K)
                    in_k = G.mul(G.inv(a), b) in K.member_set
                    assert same == in_k


def test_left_cosets_partition():
    G = symmetric_group(3)
    for K in list_subgroups(G):
        cosets = left_cosets(K)
        seen = []
        for c in cosets:
            seen.extend(c.members())
        assert sorted(seen) == list(G.elements())


def test_hom_validation_and_image():
    z4, z2 = cyclic_group(4), cyclic_group(2)
    proj = group_hom(z4, z2, [0, 1, 0, 1])
    assert hom_image(proj, subgroup(z4, [0, 2])).elements == (0,)
    incl = group_hom(z2, z4, [0, 2])
    assert hom_image(incl, full_subgroup(z2)).elements == (0, 2)
    ident = identity_hom(z4)
    for H in list_subgroups(z4):
        assert hom_image(ident, H) == H
    with pytest.raises(NotAHomomorphism):
        group_hom(z4, z2, [0, 1, 1, 0])


def test_quotient_group():
    G = cyclic_group(4)
    N = subgroup(G, [0, 2])
    Q, proj, cosets = quotient_group(G, N)
    assert Q.order == 2
    assert proj.mapping == (0, 1, 0, 1)
    assert [c.representative for c in cosets] == [0, 1]


def test_trivial_and_symmetric_builders():
    assert trivial_group().order == 1
    assert symmetric_group(3).order == 6
    assert not symmetric_group(3).is_abelian
    assert cyclic_group(4).is_abelian
