"""Exact combinatorics of the resolution calculus for equivariant open
Gromov-Witten invariants of ``(CP^2m, RP^2m)``."""

from .errors import InvariantViolation, SpecError
from .spec_core import (
    Kind,
    Label,
    ModuliSpec,
    PreModuliSpec,
    SplitKind,
    basic_spec,
    classify,
    combined,
    dim_moduli,
    is_basic,
    is_orientable,
    is_stable,
    node_in,
    node_out,
    plain,
    split_boundary,
)
from .trees import (
    LabeledTree,
    contract_edge,
    enumerate_trees,
    is_odd_even,
    is_sorted_odd_even,
    max_resolution_depth,
    smoothing_sequence,
    sorting_permutation,
    sym_act,
)
from .boundary import BoundaryComponent, Tag, boundary_components, sturdy_boundary_as_trees, wobbly_involution
from .signs import perm_sign, shuffle_sign, theta, w_factor, xi, xi_check, zeta
from .cohomology import EquivariantPolynomial, normal_form, parse_poly, relation_poly, restrict_weights
from .invariants import (
    ConstraintTuple,
    invariant_degree_closed,
    invariant_degree_direct,
    is_trivially_zero,
    resolution_ledger,
)

__version__ = "0.1.0"
