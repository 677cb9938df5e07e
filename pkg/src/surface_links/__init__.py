"""Link diagrams on closed orientable surfaces, virtual diagrams, checkerboard forms and flypes."""
from .diagram import (
    CombMap,
    FaceStructure,
    IsoFlags,
    canonical_form,
    checkerboard_coloring,
    faces,
    genus,
    is_alternating,
    isomorphic,
    writhe,
)
from .errors import (
    GaussParseError,
    InvariantViolation,
    MissingOrientationError,
    NotColorableError,
    SiteError,
    StructuralError,
    SurfaceLinkError,
)
from .gauss import GaussCode, canonical_gauss, connect_sum, format_gauss, gauss_to_surface, parse_gauss
from .goeritz import (
    GoeritzForm,
    Spine,
    SpineCycle,
    alternating_by_definiteness,
    goeritz,
    is_definite,
    pairing,
    sigma_invariant,
    spine,
)
from .curves import CurveDiagram, lk
from .moves import (
    FlypeSite,
    apply_flype,
    find_flypes,
    flype_equivalent,
    flype_orbit,
    reidemeister,
    removable_nugatory,
)
from .structure import StructureReport, classify, classify_virtual
from .virtual import Lasso, VirtualDiagram, find_lasso, gauss_of, surface_to_virtual

__version__ = "0.1.0"

__all__ = [
    "CombMap",
    "FaceStructure",
    "IsoFlags",
    "canonical_form",
    "checkerboard_coloring",
    "faces",
    "genus",
    "is_alternating",
    "isomorphic",
    "writhe",
    "GaussParseError",
    "InvariantViolation",
    "MissingOrientationError",
    "NotColorableError",
    "SiteError",
    "StructuralError",
    "SurfaceLinkError",
    "GaussCode",
    "canonical_gauss",
    "connect_sum",
    "format_gauss",
    "gauss_to_surface",
    "parse_gauss",
    "GoeritzForm",
    "Spine",
    "SpineCycle",
    "alternating_by_definiteness",
    "goeritz",
    "is_definite",
    "pairing",
    "sigma_invariant",
    "spine",
    "CurveDiagram",
    "lk",
    "FlypeSite",
    "apply_flype",
    "find_flypes",
    "flype_equivalent",
    "flype_orbit",
    "reidemeister",
    "removable_nugatory",
    "StructureReport",
    "classify",
    "classify_virtual",
    "Lasso",
    "VirtualDiagram",
    "find_lasso",
    "gauss_of",
    "surface_to_virtual",
]
