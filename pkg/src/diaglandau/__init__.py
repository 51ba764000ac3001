"""Landau varieties of complete diagonals of Laurent expansions of rational functions."""

from .elimination import (
    MonomialOrder,
    PolynomialIdeal,
    ResourceLimitError,
    eliminate,
    groebner,
    is_trivial,
    saturate_by_monomial,
)
from .landau import (
    DiagonalProblem,
    LandauReport,
    check_nondegenerate,
    crosscheck,
    landau_component,
    landau_direct,
    landau_variety,
    sigma_faces,
    transform,
)
from .lattice import (
    IntegerMatrix,
    extend_to_unimodular,
    inverse_unimodular,
    is_saturated,
    smith_normal_form,
)
from .laurent import LaurentPolynomial, log_derivative, monomial_substitute, parse, truncate_to_face
from .polytope import all_faces, face_of_direction, newton_polytope
from .series import (
    VertexExpansion,
    diagonal_coefficients,
    radius_estimate,
    vertex_expansion_coefficients,
)

__version__ = "0.1.0"
