"""One entry point for every model type: Fedder on cones, certificates on blowups."""

from __future__ import annotations

import time

from .frobenius import (
    Blowup,
    GfrStatus,
    NoCertificate,
    Verdict,
    VerdictRefused,
    fsplit_anticanonical_model,
)
from .frobenius.theorems import theorem_verdict
from .geometry import (
    MAX_CERT_NODES,
    find_boundary_certificate,
    find_p1xp1_certificate,
    root_diagnosis,
    to_p2_tree,
    verify_certificate,
    weak_dp_check,
)
from .lattice import classification_verdict


def check_blowup(model: Blowup, retries: int = 8, seed: int = 0) -> Verdict:
    """F-splitting of a blowup through a boundary certificate.

    F-purity has no cone equation here and is reported as unknown.  A failed
    search leaves f_split unknown: it is never evidence of non-splitting.
    """
    tree = model.tree
    timings = {}
    t0 = time.perf_counter()
    if not weak_dp_check(tree):
        raise VerdictRefused("the blowup is not a weak del Pezzo surface (-K is not nef and big)")
    diag = root_diagnosis(tree)
    timings["lattice"] = time.perf_counter() - t0
    p2 = to_p2_tree(tree) if tree.base == "P1xP1" else tree
    info = {
        "cell": theorem_verdict(model.K2, model.p).value,
        "weak_dp": True,
        "singularities": diag.label,
        "rank": diag.rank,
        "rho": len(p2) + 1 - diag.rank,
    }
    t0 = time.perf_counter()
    cert = None
    if tree.base == "P1xP1" and len(tree) <= 4:
        cert = find_p1xp1_certificate(tree, retries=retries, seed=seed, check_weak_dp=False)
    if cert is None and len(p2) <= MAX_CERT_NODES:
        cert = find_boundary_certificate(p2, retries=retries, seed=seed, check_weak_dp=False)
    timings["certificate"] = time.perf_counter() - t0
    if cert is not None:
        if not verify_certificate(cert.tree if cert.base == "P2" else tree, cert):
            raise RuntimeError("certificate failed its own re-check")
        f_split = True
    else:
        f_split = None
        reason = (
            f"certificate search covers at most {MAX_CERT_NODES} nodes"
            if len(p2) > MAX_CERT_NODES
            else f"no certificate after {retries} retries"
        )
        cert = NoCertificate(reason)
    gfr = classification_verdict(model.K2, model.p, diag, f_split)
    return Verdict(
        model_hash=model.model_hash,
        p=model.p,
        K2=model.K2,
        f_pure=None,
        f_split=f_split,
        gfr=gfr,
        certificate=cert,
        diagnostics=info,
        timings=timings,
    )


def check_model(model, e_max: int = 0, k_max: int = 0, retries: int = 8, seed: int = 0) -> Verdict:
    if isinstance(model, Blowup):
        return check_blowup(model, retries=retries, seed=seed)
    return fsplit_anticanonical_model(model, e_max=e_max, k_max=k_max)


__all__ = ["GfrStatus", "check_blowup", "check_model"]
