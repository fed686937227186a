"""Finite linear and projective spaces, their Grassmann spaces, and maps between them."""

from .gf import FieldElement, FieldSpec, field
from .grassmann import GrassmannSpace, grassmannian
from .linspace import LinearSpace, PointMap, classify_map
from .projspace import ProjectiveSpace, ProjSubspace, SemilinearMap, build_pg

__version__ = "0.1.0"

__all__ = [
    "FieldElement",
    "FieldSpec",
    "field",
    "GrassmannSpace",
    "grassmannian",
    "LinearSpace",
    "PointMap",
    "classify_map",
    "ProjectiveSpace",
    "ProjSubspace",
    "SemilinearMap",
    "build_pg",
]
