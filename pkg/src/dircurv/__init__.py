"""Directional curvature of implicitly defined convex bodies.

A body is the solid region {f <= 0} of a C^2 field f with the origin
interior.  At a validated boundary point the library computes the curvature
of two-dimensional normal sections in any tangent direction u:

* ``gamma_directional`` / ``kappa_directional`` -- the second-order
  coefficients of the local boundary parabola, gauge-relative and
  normal-relative;
* ``extrema`` -- the extreme kappa_hat over the tangent hyperplane;
* the ``goldman`` module -- the same quantity recomputed through an
  intersection-curve pipeline (cutting planes, generalized cross product),
  both in general determinant form and in a closed two-index form;
* the ``oracle`` module -- derivative-free estimates from boundary sampling
  (modulus of strict convexity, quadratic drop quotients, containment radii)
  used to cross-validate the formulas.

The ``dircurv`` command line exposes report / extrema / goldman / verify /
gauge over a JSON body description.
"""

from .body import (
    BoundaryPoint,
    ImplicitBody,
    TangentFrame,
    body_from_dict,
    in_tangent_hyperplane,
    minkowski_gauge,
    tangent_frame,
    validate_point,
)
from .curvature import (
    CurvatureExtrema,
    DirectionalCurvature,
    curvature_radius,
    extrema,
    gamma_directional,
    kappa_directional,
    translate_body,
)
from .errors import DircurvError, InputError, NumericalError
from .goldman import (
    PlaneSystem,
    goldman_curvature_closed,
    goldman_curvature_general,
    goldman_tangent,
    plane_system,
)
from .oracle import (
    GammaEstimate,
    ModulusSample,
    gamma_estimate,
    modulus_bruteforce,
    radius_containment,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "ImplicitBody", "BoundaryPoint", "TangentFrame",
    "body_from_dict", "validate_point", "tangent_frame",
    "in_tangent_hyperplane", "minkowski_gauge",
    "DirectionalCurvature", "CurvatureExtrema",
    "gamma_directional", "kappa_directional", "curvature_radius",
    "extrema", "translate_body",
    "PlaneSystem", "plane_system", "goldman_tangent",
    "goldman_curvature_general", "goldman_curvature_closed",
    "ModulusSample", "GammaEstimate",
    "modulus_bruteforce", "gamma_estimate", "radius_containment",
    "DircurvError", "InputError", "NumericalError",
]
