"""Exact g-, h- and relative g-polynomials of convex polytopes."""

from .geometry import (
    Framework,
    Polytope,
    cross_polytope,
    cube,
    face_lattice_of,
    facet_enumeration,
    framework_of,
    join,
    n_union,
    point,
    polygon,
    prism,
    pyramid,
    random_perturbed,
    simplex,
    subframework,
)
from .gpoly import (
    FlagIndex,
    GPolynomial,
    decomposition_residual,
    flag_number,
    g_poly,
    g_relative,
    g_relative_by_inversion,
    gbar_poly,
    h_poly,
    kalai_deficit,
    relative_flag_number,
    stanley_identity_residual,
)
from .lattice import (
    Face,
    FaceLattice,
    interval,
    is_isomorphic,
    join_of_faces,
    lattice_from_vertex_facet_incidence,
    lattice_join,
    lattice_product,
    opposite,
    validate,
)
from .stress import affine_dependence_dim, g1_geometric, g2_geometric, stress_dim, stress_matrix

__version__ = "0.1.0"
