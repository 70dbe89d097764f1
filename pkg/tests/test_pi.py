import pytest

from orbigroupoid.errors import NotComposable, NotInvertible, VertexNotFixed
from orbigroupoid.fixtures import c4refl, hex6
from orbigroupoid.ggraph import validate_ggraph
from orbigroupoid.groups import full_subgroup, trivial_subgroup
from orbigroupoid.orbit import arrows_between, identity_arrow
from orbigroupoid.paths import edge_path, reduce_path
from orbigroupoid.pi import PiCategory, PiObject, two_cell

from oracles import reduced_dart_paths


@pytest.fixture(scope="module")
def f1():
    return PiCategory(c4refl())


@pytest.fixture(scope="module")
def f2():
    return PiCategory(hex6())


def test_pi_objects_f1(f1):
    objs = f1.objects()
    assert [(o.subgroup.elements, o.vertex) for o in objs] == [
        ((0,), 0), ((0,), 1), ((0,), 2), ((0,), 3),
        ((0, 1), 0), ((0, 1), 2),
    ]


def test_pi_objects_f2(f2):
    objs = f2.objects()
    assert len(objs) == 6
    assert all(o.subgroup.order == 1 for o in objs)


def test_pi_objects_single_vertex():
    from orbigroupoid.ggraph import serre_graph, trivial_action_ggraph
    X = trivial_action_ggraph(serre_graph(1, [], []))
    assert len(PiCategory(X).objects()) == 1


def test_fiber_action_examples(f1):
    G = f1.group
    e = trivial_subgroup(G)
    full = full_subgroup(G)
    ident = identity_arrow(e)
    assert f1.fiber_action_vertex(ident, 1) == 1
    tau = arrows_between(G, e, e)[1]
    assert f1.fiber_action_vertex(tau, 1) == 3   # N -> S
    up = arrows_between(G, e, full)[0]
    assert f1.fiber_action_vertex(up, 0) == 0    # E is fixed
    with pytest.raises(VertexNotFixed):
        f1.fiber_action_vertex(arrows_between(G, full, full)[0], 1)


def test_compose_with_identity(f1):
    a = PiObject(trivial_subgroup(f1.group), 1)
    aut = f1.aut_group(a)
    for g in aut.generators:
        assert f1.compose(f1.identity(a), g) == g
        assert f1.compose(g, f1.identity(a)) == g


def test_reflection_twist_squares_to_identity_at_north(f1):
    # the arrow (reflection, N->E->S) composed with itself collapses
    G = f1.group
    e = trivial_subgroup(G)
    tau = arrows_between(G, e, e)[1]
    n = PiObject(e, 1)
    path = reduce_path(edge_path(f1.space.graph, 1, (1, 7)))  # N->E then E->S
    b = f1.arrow(n, n, tau, path)
    assert f1.compose(b, b) == f1.identity(n)


def test_winding_addition(f1):
    a = PiObject(trivial_subgroup(f1.group), 0)
    aut = f1.aut_group(a)
    loop = aut.loop_generators[0]
    lhs = f1.compose(loop, f1.compose(loop, loop))
    assert aut.normal_form(lhs)[1] == (1, 1, 1)
    inv = f1.inverse(loop)
    assert aut.normal_form(f1.compose(lhs, inv))[1] == (1, 1)


def test_hom_shape_f1(f1):
    G = f1.group
    e, full = trivial_subgroup(G), full_subgroup(G)
    n = PiObject(e, 1)
    east = PiObject(full, 0)
    west = PiObject(full, 2)
    hs = f1.hom_shape(n, east)
    assert len(hs.parts) == 1
    assert hs.parts[0][1].rank == 1
    assert f1.hom_shape(east, west).parts[0][1] is None
    auto = f1.hom_shape(n, n)
    assert [t.rank for _, t in auto.parts] == [1, 1]
    assert f1.hom_shape(east, n).parts == ()


def test_invertibility(f1):
    G = f1.group
    e, full = trivial_subgroup(G), full_subgroup(G)
    n = PiObject(e, 1)
    east = PiObject(full, 0)
    up = f1.hom_shape(n, east).parts[0][1].representative
    assert not f1.is_invertible(up)
    with pytest.raises(NotInvertible):
        f1.inverse(up)
    a = f1.aut_group(n)
    for g in a.generators:
        assert f1.is_invertible(g)
        assert f1.compose(g, f1.inverse(g)) == f1.identity(n)
        assert f1.compose(f1.inverse(g), g) == f1.identity(n)


def test_skeleton_f1(f1):
    sk = f1.skeleton()
    assert len(sk.classes) == 3
    assert [len(c.members) for c in sk.classes] == [4, 1, 1]
    free = sk.classes[0].representative
    assert free.subgroup.order == 1
    # two rank-1 torsors at the free class (the dihedral shape)
    assert [r for _, r in sk.hom_summary[(0, 0)]] == [1, 1]
    assert [r for _, r in sk.hom_summary[(0, 1)]] == [1]
    assert [r for _, r in sk.hom_summary[(0, 2)]] == [1]
    assert [r for _, r in sk.hom_summary[(1, 2)]] == [None]
    assert [r for _, r in sk.hom_summary[(2, 1)]] == [None]
    assert sk.hom_summary[(1, 0)] == ()


def test_skeleton_f2(f2):
    sk = f2.skeleton()
    assert len(sk.classes) == 1
    assert len(sk.classes[0].members) == 6
    assert [r for _, r in sk.hom_summary[(0, 0)]] == [1, 1]


def test_skeleton_trivial_space():
    from orbigroupoid.ggraph import serre_graph, trivial_action_ggraph
    X = trivial_action_ggraph(serre_graph(1, [], []))
    sk = PiCategory(X).skeleton()
    assert len(sk.classes) == 1
    assert [r for _, r in sk.hom_summary[(0, 0)]] == [0]


def test_aut_group_dihedral_relations(f1):
    n = PiObject(trivial_subgroup(f1.group), 1)
    aut = f1.aut_group(n)
    assert len(aut.loop_generators) == 1 and len(aut.twist_generators) == 1
    a, b = aut.loop_generators[0], aut.twist_generators[0]
    # b is the half path N -> E -> S over the reflection coset
    assert b.path.darts == (1, 7)
    assert f1.compose(b, b) == f1.identity(n)
    conj = f1.compose(f1.compose(b, a), b)
    assert conj == f1.inverse(a)


def test_aut_group_fixed_point_trivial(f1):
    east = PiObject(full_subgroup(f1.group), 0)
    aut = f1.aut_group(east)
    assert aut.generators == ()
    assert aut.basis.rank == 0
    assert len(aut.admissible) == 1


def test_aut_group_hex_is_infinite_cyclic(f2):
    o = PiObject(trivial_subgroup(f2.group), 0)
    aut = f2.aut_group(o)
    a = aut.loop_generators[0]
    b = aut.twist_generators[0]
    assert b.path.darts == (0, 2, 4)  # half hexagon 0 -> 3
    assert f2.compose(b, b) == a      # b^2 is the full hexagon


def test_normal_forms_roundtrip(f1):
    n = PiObject(trivial_subgroup(f1.group), 1)
    aut = f1.aut_group(n)
    count = 0
    for el in aut.enumerate_elements(3):
        alpha, word = aut.normal_form(el)
        assert aut.element(alpha, word) == el
        count += 1
    assert count == (2 * 3 + 1) * 2  # words of length <= 3 in rank 1, two cosets


def test_discrete_quotient_unchanged(f1):
    dq = f1.discrete_quotient()
    assert dq.two_cells_trivial
    sk1, sk2 = f1.skeleton(), dq.skeleton()
    assert len(sk1.classes) == len(sk2.classes)
    assert sk1.hom_summary == sk2.hom_summary


def test_two_cells(f1):
    n = PiObject(trivial_subgroup(f1.group), 1)
    aut = f1.aut_group(n)
    a = aut.loop_generators[0]
    assert two_cell(a, a) is not None
    assert two_cell(a, f1.inverse(a)) is None
    east = PiObject(full_subgroup(f1.group), 0)
    with pytest.raises(NotComposable):
        two_cell(a, f1.identity(east))


def test_associativity_exhaustive_word_length_two(f1):
    objs = f1.objects()
    arrows = {}
    for x in objs:
        for y in objs:
            arrows[(x, y)] = f1.enumerate_arrows(x, y, 2)
    checked = 0
    pair_cache = {}
    for a in objs:
        for b in objs:
            for c in objs:
                for d in objs:
                    for f in arrows[(a, b)]:
                        for g in arrows[(b, c)]:
                            fg = pair_cache.get((f, g))
                            if fg is None:
                                fg = f1.compose(f, g)
                                pair_cache[(f, g)] = fg
                            for h in arrows[(c, d)]:
                                gh = pair_cache.get((g, h))
                                if gh is None:
                                    gh = f1.compose(g, h)
                                    pair_cache[(g, h)] = gh
                                assert f1.compose(fg, h) == f1.compose(f, gh)
                                checked += 1
    assert checked > 200


def test_fibred_in_groupoids(f1):
    # every arrow with invertible orbit part has a two-sided inverse
    objs = f1.objects()
    for x in objs:
        for y in objs:
            for f in f1.enumerate_arrows(x, y, 2):
                if f1.is_invertible(f):
                    inv = f1.inverse(f)
                    assert f1.compose(f, inv) == f1.identity(x)
                    assert f1.compose(inv, f) == f1.identity(y)


def test_projection_functor(f1, rng):
    objs = f1.objects()
    arrows = []
    for x in objs:
        for y in objs:
            arrows.extend(f1.enumerate_arrows(x, y, 2))
    for o in objs:
        assert f1.identity(o).alpha == identity_arrow(o.subgroup)
    from orbigroupoid.orbit import compose_arrows
    count = 0
    while count < 200:
        f = rng.choice(arrows)
        candidates = [g for g in arrows if g.source == f.target]
        g = rng.choice(candidates)
        comp = f1.compose(f, g)
        assert comp.alpha == compose_arrows(f.alpha, g.alpha)
        count += 1


def test_torsor_ranks_match_brute_force_enumeration(f1):
    graph = f1.space.graph
    max_len = 4
    for x in f1.objects():
        fib = f1.fiber(x.subgroup)
        oracle = reduced_dart_paths(graph.dart_sources, graph.involution,
                                    x.vertex, max_len, allowed=fib.dart_set)
        for y in f1.objects():
            shape = f1.hom_shape(x, y)
            for alpha, torsor in shape.parts:
                z = f1.fiber_action_vertex(alpha, y.vertex)
                oracle_paths = {darts for darts, end in oracle if end == z}
                if torsor is None:
                    assert not oracle_paths
                    continue
                lib = set()
                word_bound = max_len + len(torsor.representative.path.darts)
                for f in f1.enumerate_arrows(x, y, word_bound):
                    if f.alpha == alpha and len(f.path.darts) <= max_len:
                        lib.add(f.path.darts)
                assert lib == oracle_paths


def test_skeleton_stable_under_vertex_relabeling():
    # rebuild c4refl with vertices listed in a different order
    X = c4refl()
    perm = (2, 0, 3, 1)  # new index of old vertex i
    inv = tuple(perm.index(i) for i in range(4))
    g = X.graph
    relabeled = validate_ggraph(
        X.group,
        type(g)(g.vertex_count,
                tuple(perm[v] for v in g.dart_sources),
                g.involution,
                tuple(g.vertex_label(inv[i]) for i in range(4)),
                g.dart_labels),
        tuple(tuple(perm[row[inv[i]]] for i in range(4)) for row in X.vertex_action),
        X.dart_action,
    )
    sk1 = PiCategory(X).skeleton()
    sk2 = PiCategory(relabeled).skeleton()
    assert len(sk1.classes) == len(sk2.classes)
    assert sorted(len(c.members) for c in sk1.classes) == \
        sorted(len(c.members) for c in sk2.classes)
    def profile(sk):
        return sorted(tuple(-1 if r is None else r for _, r in sk.hom_summary[k])
                      for k in sk.hom_summary)
    assert profile(sk1) == profile(sk2)


def test_matches_generic_elements_category(f1):
    el = f1.as_elements_category()
    objs = f1.objects()
    arrows = []
    for x in objs:
        for y in objs:
            arrows.extend(f1.enumerate_arrows(x, y, 1))
    from orbigroupoid.grothendieck import ElObject
    def to_el(f):
        return el.arrow(ElObject(f.source.subgroup, f.source.vertex),
                        ElObject(f.target.subgroup, f.target.vertex),
                        f.alpha, f.path)
    for f in arrows:
        for g in arrows:
            if f.target != g.source:
                continue
            ours = f1.compose(f, g)
            generic = el.compose(to_el(f), to_el(g))
            assert generic.base_arrow == ours.alpha
            assert generic.fiber_arrow == ours.path
