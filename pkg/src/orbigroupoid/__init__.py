"""Equivariant fundamental categories of finite group actions on graphs."""

from .groups import (
    Coset,
    FiniteGroup,
    GroupHom,
    Subgroup,
    canonical_coset,
    conjugate_subgroup,
    cyclic_group,
    embedding_hom,
    group_from_table,
    group_hom,
    hom_image,
    list_subgroups,
    subgroup,
    symmetric_group,
    trivial_group,
)
from .ggraph import (
    EquivariantGraphMap,
    GGraph,
    SerreGraph,
    barycentric_subdivision,
    connected_components,
    equivariant_map,
    fixed_subgraph,
    induced_graph,
    quotient_graph,
    serre_graph,
    validate_ggraph,
)
from .paths import (
    EdgePath,
    Pi1Basis,
    ReducedPath,
    compose,
    edge_path,
    invert,
    path_between,
    pi1_basis,
    reduce_path,
)
from .orbit import (
    OrbitArrow,
    OrbitObject,
    arrows_between,
    compose_arrows,
    identity_arrow,
    invert_arrow,
    is_invertible,
    orbit_functor,
)
from .pi import (
    AutGroup,
    HomShape,
    PiArrow,
    PiCategory,
    PiObject,
    Skeleton,
    TwoCell,
    aut_group,
    compose_pi,
    discrete_quotient,
    fiber_action,
    hom_shape,
    inverse_pi,
    is_invertible_pi,
    pi_objects,
    skeleton,
    two_cell,
)
from .morita import (
    InducedFunctor,
    NatTrans,
    collapse_map,
    induced_functor,
    induced_nat_trans,
    induction_move,
    quotient_move,
)
from .equivalence import (
    CERTIFIED,
    GENERIC,
    Equivalent,
    KernelElement,
    MissedArrow,
    MissedObject,
    NotEquivalent,
    SearchBounds,
    Unknown,
    Witness,
    check_ess_surjective,
    check_full_faithful,
    path_lift,
    straighten,
    weak_equivalence,
)
from .wordcore import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"
