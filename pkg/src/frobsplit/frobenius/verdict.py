"""Verdict records and the decision routine for anticanonical models."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum

from ..gfpoly import DEFAULT_TERM_CAP, singular_point_scan
from .fedder import FedderWitness, fedder_fpure, gfr_bounded_search
from .models import CompleteIntersection, ModelError, SurfaceModel, WeightedHypersurface
from .theorems import CellStatus, theorem_verdict

SCHEMA_VERSION = 1


class GfrStatus(str, Enum):
    GUARANTEED = "guaranteed"
    COUNTEREXAMPLE_POSSIBLE_CELL = "counterexample_possible_cell"
    ESTABLISHED_BY_SEARCH = "established_by_search"
    UNKNOWN_AT_BOUND = "unknown_at_bound"
    NOT_GFR = "not_gfr"


class VerdictRefused(RuntimeError):
    """The model violates a hypothesis needed for a verdict."""


@dataclass(frozen=True)
class NoCertificate:
    reason: str

    def to_dict(self) -> dict:
        return {"type": "none", "reason": self.reason}


@dataclass
class Verdict:
    model_hash: str
    p: int
    K2: int
    f_pure: bool | None
    f_split: bool | None
    gfr: GfrStatus
    certificate: object = None
    diagnostics: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.f_split is True and self.f_pure is False:
            raise ValueError("an F-split model cannot fail F-purity")
        if self.gfr is GfrStatus.ESTABLISHED_BY_SEARCH and self.f_split is not True:
            raise ValueError("search-established regularity requires F-splitting")

    def to_dict(self, include_timings: bool = False) -> dict:
        def tri(v):
            return "unknown" if v is None else v

        out = {
            "schema": SCHEMA_VERSION,
            "model_hash": self.model_hash,
            "p": self.p,
            "K2": self.K2,
            "f_pure": tri(self.f_pure),
            "f_split": tri(self.f_split),
            "gfr": self.gfr.value,
            "witness": self.certificate.to_dict() if self.certificate is not None else None,
            "diagnostics": self.diagnostics,
        }
        if include_timings:
            out["timings"] = self.timings
        return out


def check_gorenstein_locus(model: WeightedHypersurface) -> list[tuple[int, ...]]:
    """Ambient singular points lying on the hypersurface."""
    from ..gfpoly import evaluate

    return [pt for pt in model.ambient.singular_points if evaluate(model.f, pt) == 0]


def fsplit_anticanonical_model(
    model: SurfaceModel,
    e_max: int = 0,
    k_max: int = 0,
    cap: int = DEFAULT_TERM_CAP,
) -> Verdict:
    """Decide F-splitting of a hypersurface or complete-intersection model.

    X is F-split iff its anticanonical section ring is F-pure at the vertex,
    which is Fedder's criterion on the cone.  ``f_pure`` reports that cone
    F-purity.  With ``e_max > 0`` an F-split model is also probed by the
    bounded strong F-regularity search; ``k_max > 0`` adds a singular-point
    screen to the diagnostics.
    """
    if not isinstance(model, (WeightedHypersurface, CompleteIntersection)):
        raise ModelError("Fedder route needs a hypersurface or complete intersection")
    timings = {}
    diag: dict = {}
    if isinstance(model, WeightedHypersurface):
        hits = check_gorenstein_locus(model)
        if hits:
            raise VerdictRefused(
                f"X passes through the ambient singular point(s) {hits} of {model.ambient.name}"
            )
    cell = theorem_verdict(model.K2, model.p)
    diag["cell"] = cell.value
    if k_max > 0:
        t0 = time.perf_counter()
        scan = singular_point_scan(model.forms, k_max=k_max)
        timings["scan"] = time.perf_counter() - t0
        diag["smooth_screened"] = scan.smooth_screened
        diag["singular_points"] = [{"k": k, "coords": list(c)} for k, c in scan.singular_points]

    t0 = time.perf_counter()
    ok, witness = fedder_fpure(model.forms, cap=cap)
    timings["fedder"] = time.perf_counter() - t0

    if ok:
        gfr = GfrStatus.UNKNOWN_AT_BOUND
        if e_max > 0:
            t0 = time.perf_counter()
            res = gfr_bounded_search(model.forms, e_max=e_max, cap=cap)
            timings["gfr_search"] = time.perf_counter() - t0
            diag["gfr_search"] = res.to_dict()
            if res.status == "established_by_search":
                gfr = GfrStatus.ESTABLISHED_BY_SEARCH
        cert = witness
    else:
        # globally F-regular implies F-split, so this model is not GFR
        gfr = (
            GfrStatus.COUNTEREXAMPLE_POSSIBLE_CELL
            if cell is CellStatus.EXCEPTIONAL
            else GfrStatus.NOT_GFR
        )
        cert = NoCertificate("(prod f)^(p-1) lies in the Frobenius power of the maximal ideal")
    return Verdict(
        model_hash=model.model_hash,
        p=model.p,
        K2=model.K2,
        f_pure=ok,
        f_split=ok,
        gfr=gfr,
        certificate=cert,
        diagnostics=diag,
        timings=timings,
    )


__all__ = [
    "FedderWitness",
    "GfrStatus",
    "NoCertificate",
    "SCHEMA_VERSION",
    "Verdict",
    "VerdictRefused",
    "check_gorenstein_locus",
    "fsplit_anticanonical_model",
]
