"""Exact rational geometry: LP, Fourier-Motzkin, hulls, V/H conversion."""
from .linear import (
    GeometryError,
    LinearConstraint,
    Vector,
    add,
    dot,
    fmt,
    neg,
    norm_inf,
    q,
    scale,
    sub,
    unit,
    vec,
    zero,
)
from .lp import LPResult, feasible_point, lp_feasible, solve_lp
from .fourier_motzkin import fm_feasible, project
from .polytope import (
    HPolyhedron,
    Hyperplane,
    VPolytope,
    canonical_vertices,
    caratheodory_decompose,
    convert_representation,
    h_to_v,
    hull_membership,
    hyperplane_through,
    minkowski_sum_v,
    rank_of,
    remove_redundant,
    separates,
    separating_direction,
    split_scaled_hull,
    v_to_h,
)
