"""Toric evaluation codes, their duals, and asymmetric CSS codes built from them."""

__version__ = "0.1.0"

from toricq.codes import (  # noqa: E402
    ExponentSet,
    LinearCode,
    build_code,
    code_from_polytope,
    dual_code,
    dual_exponent_set,
    predicted_params,
)
from toricq.css import AsymmetricCssCode, build_css, build_family_code, check_nesting  # noqa: E402
from toricq.distance import DistanceResult, min_weight, relative_min_weight, weight_distribution  # noqa: E402
from toricq.field import GF, field_new  # noqa: E402
from toricq.geometry import LatticePolytope, box_polytope, lattice_points  # noqa: E402

__all__ = [
    "AsymmetricCssCode",
    "DistanceResult",
    "ExponentSet",
    "GF",
    "LatticePolytope",
    "LinearCode",
    "box_polytope",
    "build_code",
    "build_css",
    "build_family_code",
    "check_nesting",
    "code_from_polytope",
    "dual_code",
    "dual_exponent_set",
    "field_new",
    "lattice_points",
    "min_weight",
    "predicted_params",
    "relative_min_weight",
    "weight_distribution",
]
