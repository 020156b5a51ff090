"""Exact verification engine for a 3x3 Hermite-type matrix weight, its
orthogonal polynomials and its algebra of differential operators."""

__version__ = "0.1.0"

from .scalar import Params, Scalar  # noqa: E402
from .matpoly import MatPoly, Poly  # noqa: E402
from .expfun import ExpPoly  # noqa: E402
from .diffop import DiffOp  # noqa: E402
from .weight import WeightSpec, make_weight  # noqa: E402

__all__ = ["Params", "Scalar", "Poly", "MatPoly", "ExpPoly", "DiffOp", "WeightSpec", "make_weight",
           "__version__"]
