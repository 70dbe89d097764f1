"""Built-in example spaces: the reflection square, the free hexagon, the
induction scenario into Z/4, and a nonabelian action used by error tests.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ggraph import GGraph, barycentric_subdivision, serre_graph, validate_ggraph
from .groups import (
    FiniteGroup,
    GroupHom,
    cyclic_group,
    embedding_hom,
    symmetric_group,
    trivial_group,
)

FIXTURE_NAMES = ("c4refl", "hex6", "ind-z4")


def cycle_graph(n: int, vertex_labels=None):
    """The n-cycle: darts 2i (i -> i+1) and 2i+1 (i+1 -> i)."""
    sources = []
    invol = []
    dlabels = []
    for i in range(n):
        sources.append(i)
        sources.append((i + 1) % n)
        invol.append(2 * i + 1)
        invol.append(2 * i)
        dlabels.append(f"e{i}")
        dlabels.append(f"e{i}~")
    return serre_graph(n, sources, invol, vertex_labels, dlabels)


def c4refl() -> GGraph:
    """4-cycle E-N-W-S with Z/2 reflecting through the E-W axis."""
    graph = cycle_graph(4, ["E", "N", "W", "S"])
    z2 = cyclic_group(2, ["e", "t"])
    # t fixes E(0), W(2); swaps N(1) <-> S(3)
    tv = (0, 3, 2, 1)
    # forward darts: e0: E->N, e1: N->W, e2: W->S, e3: S->E
    # t e0 = E->S = e3~, t e1 = S->W = e2~, t e2 = W->N = e1~, t e3 = N->E = e0~
    td = (7, 6, 5, 4, 3, 2, 1, 0)
    return validate_ggraph(z2, graph,
                           (tuple(range(4)), tv),
                           (tuple(range(8)), td))


def hex6() -> GGraph:
    """6-cycle with Z/2 acting freely by the half rotation i -> i+3."""
    graph = cycle_graph(6, [f"v{i}" for i in range(6)])
    z2 = cyclic_group(2, ["e", "r"])
    rv = tuple((i + 3) % 6 for i in range(6))
    rd = []
    for i in range(6):
        j = (i + 3) % 6
        rd.append(2 * j)
        rd.append(2 * j + 1)
    return validate_ggraph(z2, graph,
                           (tuple(range(6)), rv),
                           (tuple(range(12)), tuple(rd)))


@dataclass(frozen=True)
class InductionScenario:
    source: GGraph          # c4refl over Z/2
    big_group: FiniteGroup  # Z/4
    embedding: GroupHom     # Z/2 -> Z/4, 1 |-> 2


def ind_z4() -> InductionScenario:
    """The c4refl reflection embedded as {0,2} inside Z/4."""
    source = c4refl()
    z4 = cyclic_group(4)
    emb = embedding_hom(source.group, z4, (0, 2))
    return InductionScenario(source, z4, emb)


def c4_trivial() -> GGraph:
    """The 4-cycle with the trivial group (negative-control source)."""
    graph = cycle_graph(4, ["E", "N", "W", "S"])
    return validate_ggraph(trivial_group(), graph,
                           (tuple(range(4)),), (tuple(range(8)),))


def s3_hexagon() -> GGraph:
    """S3 on the barycentric subdivision of the triangle.

    The raw dihedral action on the 3-cycle inverts an edge; the subdivision
    removes that, giving an order-6 nonabelian fixture.
    """
    s3 = symmetric_group(3)
    graph = cycle_graph(3, ["a", "b", "c"])
    # element = permutation of {0,1,2} in lexicographic order
    import itertools
    perms = list(itertools.permutations(range(3)))
    va = []
    da = []
    for p in perms:
        va.append(tuple(p))
        row = []
        for i in range(3):
            # dart 2i runs i -> i+1; its image runs p(i) -> p(i+1)
            u, w = p[i], p[(i + 1) % 3]
            if (u + 1) % 3 == w:
                row.extend((2 * u, 2 * u + 1))
            else:
                # reversed: image is the involute of the forward dart at w
                row.extend((2 * w + 1, 2 * w))
        da.append(tuple(row))
    # the raw action inverts edges for odd permutations; subdivide first
    raw = GGraph(s3, graph, tuple(va), tuple(da))
    return barycentric_subdivision(raw)


def parallel_edges_inversion() -> tuple:
    """(group, graph, vertex_action, dart_action) whose validation must fail
    with EdgeInversion: Z/2 swaps the two darts of one edge of a 2-cycle."""
    graph = serre_graph(2, [0, 1, 0, 1], [1, 0, 3, 2], ["u", "v"],
                        ["p", "p~", "q", "q~"])
    z2 = cyclic_group(2, ["e", "t"])
    va = (tuple(range(2)), (1, 0))
    da = (tuple(range(4)), (1, 0, 3, 2))  # t sends p to p~: an inversion
    return z2, graph, va, da
