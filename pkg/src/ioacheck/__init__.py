"""Exact verification of the S3 symmetry of the Jacobi identity on small intertwining operator algebras."""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("artifact")
except PackageNotFoundError:
    __version__ = "0.1.0"

from .gfunction import GFunction
from .jacobi import basis_decompose, extract_FGH, jacobi_check, transform_swap12, transform_swap23, verify_s3
from .model import (
    IOASpec,
    ModelError,
    OperatorClassLabel,
    OperatorLabel,
    abelian_model,
    load_model,
    model_from_json,
    synthetic_model,
    validate_spec,
)
from .moore_seiberg import IsoMatrix, build_braiding, build_fusing, build_omega_tilde, check_relations
from .scalars import Approx, Cyclotomic, root_of_unity
from .series import RationalFn, Series

__all__ = [
    "Approx",
    "Cyclotomic",
    "GFunction",
    "IOASpec",
    "IsoMatrix",
    "ModelError",
    "OperatorClassLabel",
    "OperatorLabel",
    "RationalFn",
    "Series",
    "__version__",
    "abelian_model",
    "basis_decompose",
    "build_braiding",
    "build_fusing",
    "build_omega_tilde",
    "check_relations",
    "extract_FGH",
    "jacobi_check",
    "load_model",
    "model_from_json",
    "root_of_unity",
    "synthetic_model",
    "transform_swap12",
    "transform_swap23",
    "validate_spec",
    "verify_s3",
]
