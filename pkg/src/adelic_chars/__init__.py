"""Characters of groups L ⋉ U of rational points, computed exactly over Q."""

from .adelic import INF, AdeleCharacter, coadjoint, eval_character, line_trivial
from .catalog import (
    CatalogFixture,
    abelian_radical_system,
    catalog_fixture,
    free_nilpotent_system,
    heisenberg_system,
)
from .chars import (
    ClassificationReport,
    QuasiOrbitKey,
    classify,
    compute_k,
    compute_p,
    duality_check,
    fixed_center_of_quotient,
    in_L_lambda,
    make_character,
    orbit_direction_V,
    quasi_orbit_key,
    same_quasi_orbit,
)
from .group import GroupElement, LeviElement, LeviSystem, direct_sum, validate_system
from .nilpotent import LieAlgebra, LieVector, bch
from .qmod1 import CharValue, Phase
from .ratlinalg import RatMatrix, Subspace
from .traces import TildeCentralCharacter, TraceFunction, gram_matrix, psd_check, tensor

__version__ = "0.1.0"

__all__ = [
    "abelian_radical_system",
    "AdeleCharacter",
    "bch",
    "catalog_fixture",
    "CatalogFixture",
    "CharValue",
    "ClassificationReport",
    "classify",
    "coadjoint",
    "compute_k",
    "compute_p",
    "direct_sum",
    "duality_check",
    "eval_character",
    "fixed_center_of_quotient",
    "free_nilpotent_system",
    "gram_matrix",
    "GroupElement",
    "heisenberg_system",
    "in_L_lambda",
    "INF",
    "LeviElement",
    "LeviSystem",
    "LieAlgebra",
    "LieVector",
    "line_trivial",
    "make_character",
    "orbit_direction_V",
    "Phase",
    "psd_check",
    "quasi_orbit_key",
    "QuasiOrbitKey",
    "RatMatrix",
    "same_quasi_orbit",
    "Subspace",
    "tensor",
    "TildeCentralCharacter",
    "TraceFunction",
    "validate_system",
]
