"""Exact arithmetic and geometry of low-degree hypersurfaces over finite fields."""

__version__ = "0.1.0"

from .gf import GF, construct_field, parse_field_literal  # noqa: E402
from .kernels import BACKEND  # noqa: E402
from .mpoly import HomogeneousPoly, parse_poly  # noqa: E402
from .points import ProjPoint  # noqa: E402
from .projvar import Hypersurface, count_points, enumerate_points  # noqa: E402
from .rcmap import RationalCurveMap  # noqa: E402

__all__ = [
    "__version__", "BACKEND", "GF", "construct_field", "parse_field_literal",
    "HomogeneousPoly", "parse_poly", "ProjPoint", "Hypersurface", "count_points",
    "enumerate_points", "RationalCurveMap",
]
