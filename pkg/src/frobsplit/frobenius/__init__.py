"""Frobenius-splitting decisions for del Pezzo surface models."""

from .fedder import (
    DegreeError,
    FedderWitness,
    GfrSearchResult,
    fedder_fpure,
    fedder_residue,
    gfr_bounded_search,
    pair_fsplit,
    survives_direct,
    survives_iterate,
    test_elements,
)
from .models import (
    Blowup,
    CompleteIntersection,
    ModelError,
    SurfaceModel,
    WeightedHypersurface,
    fermat_model,
    model_from_dict,
)
from .theorems import (
    FSPLIT_EXCEPTIONS,
    GFR_EXCEPTIONS_CANONICAL,
    GFR_EXCEPTIONS_SMOOTH,
    CellStatus,
    exceptional_cells,
    fsplit_verdict,
    theorem_verdict,
)
from .verdict import (
    SCHEMA_VERSION,
    GfrStatus,
    NoCertificate,
    Verdict,
    VerdictRefused,
    fsplit_anticanonical_model,
)
