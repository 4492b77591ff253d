"""Random anticanonical models per (K^2, p) cell, smooth screening and F-split counts."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .frobenius import (
    CellStatus,
    CompleteIntersection,
    VerdictRefused,
    WeightedHypersurface,
    fermat_model,
    fsplit_anticanonical_model,
    fsplit_verdict,
)
from .frobenius.models import ANTICANONICAL_HYPERSURFACES
from .gfpoly import P4, P1123, Poly, random_form, ring, singular_point_scan, to_string
from .gfpoly.poly import _seed_int

AMBIENT_OF_DEGREE = {K2: amb for amb, K2 in ANTICANONICAL_HYPERSURFACES.values()}
FAMILIES = ("generic", "normal-form")


def random_model(K2: int, p: int, seed, family: str = "generic"):
    """A random anticanonical model of degree K2 over F_p.

    ``generic`` draws every coefficient uniformly.  ``normal-form`` (K2 = 1
    only) draws w^2 - z^3 - a(x,y) z - b(x,y) with a of 0..2 terms and b of
    1..3 terms: sparse b is where non-F-split smooth surfaces live.
    """
    if family == "normal-form":
        if K2 != 1:
            raise ValueError("the normal-form family is only defined for K^2 = 1")
        return _normal_form(p, seed)
    if family != "generic":
        raise ValueError(f"unknown family {family!r}; known: {FAMILIES}")
    if K2 == 4:
        return CompleteIntersection(
            random_form(P4, 2, (seed, "f"), p=p), random_form(P4, 2, (seed, "g"), p=p)
        )
    amb = AMBIENT_OF_DEGREE.get(K2)
    if amb is None:
        raise ValueError(f"K^2 must be in 1..4 for sampling, got {K2}")
    return WeightedHypersurface(amb, random_form(amb, sum(amb.weights) - 1, seed, p=p))


def _binary_terms(R, deg: int, k: int, rng: random.Random) -> Poly:
    monos = rng.sample(range(deg + 1), k)
    return Poly(R, {(i, deg - i, 0, 0): rng.randrange(1, R.field.q) for i in monos})


def _normal_form(p: int, seed) -> WeightedHypersurface:
    rng = random.Random(_seed_int((seed, "normal-form")))
    R = ring(p, P1123)
    x, y, z, w = R.gens()
    a = _binary_terms(R, 4, rng.randint(0, 2), rng)
    b = _binary_terms(R, 6, rng.randint(1, 3), rng)
    return WeightedHypersurface(P1123, w**2 - z**3 - a * z - b)


@dataclass
class SampleSummary:
    K2: int
    p: int
    family: str
    seed: int
    k_max: int
    n_target: int
    target: str
    n_drawn: int = 0
    n_refused: int = 0
    n_smooth_screened: int = 0
    n_fsplit: int = 0
    counterexamples: list = field(default_factory=list)
    cell: str = ""

    @property
    def exhausted(self) -> bool:
        return self.target == "screened" and self.n_smooth_screened < self.n_target

    def to_dict(self) -> dict:
        return {
            "K2": self.K2,
            "p": self.p,
            "cell": self.cell,
            "family": self.family,
            "seed": self.seed,
            "k_max": self.k_max,
            "target": {"kind": self.target, "n": self.n_target},
            "n_drawn": self.n_drawn,
            "n_refused": self.n_refused,
            "n_smooth_screened": self.n_smooth_screened,
            "n_fsplit": self.n_fsplit,
            "budget_exhausted": self.exhausted,
            "counterexamples": self.counterexamples,
        }


def _record(trial: int, model, screened: bool, sentinel: bool = False) -> dict:
    return {
        "trial": trial,
        "model": model.to_dict(),
        "model_hash": model.model_hash,
        "smooth_screened": screened,
        "sentinel": sentinel,
    }


def sample_cell(
    K2: int,
    p: int,
    n: int,
    seed: int = 0,
    k_max: int = 1,
    family: str = "generic",
    target: str = "draws",
    max_draws: int | None = None,
    sentinel: bool = True,
    stop_at_first: bool = False,
) -> SampleSummary:
    """Draw models, keep those with no singular point over F_{p^k}, k <= k_max,
    and count the F-split ones.

    ``target="draws"`` makes exactly n draws; ``target="screened"`` draws
    until n models pass the screen or ``max_draws`` (default 10 n) is hit.
    In cells where non-F-split surfaces exist the Fermat model is trial 0.
    Non-F-split screened models are reported in trial order.
    """
    if target not in ("draws", "screened"):
        raise ValueError("target must be 'draws' or 'screened'")
    cell = fsplit_verdict(K2, p)
    out = SampleSummary(K2, p, family, seed, k_max, n, target, cell=cell.value)
    limit = n if target == "draws" else (max_draws or 10 * n)
    trial = 0
    if sentinel and cell is CellStatus.EXCEPTIONAL:
        model = fermat_model(K2, p)
        screened = singular_point_scan(model.forms, k_max=k_max).smooth_screened
        v = fsplit_anticanonical_model(model)
        if not v.f_split:
            out.counterexamples.append(_record(0, model, screened, sentinel=True))
        out.n_drawn += 1
        if screened:
            out.n_smooth_screened += 1
            out.n_fsplit += bool(v.f_split)
        trial = 1
    while out.n_drawn < limit:
        if target == "screened" and out.n_smooth_screened >= n:
            break
        model = random_model(K2, p, f"{seed}:{K2}:{p}:{trial}", family)
        out.n_drawn += 1
        try:
            if not singular_point_scan(model.forms, k_max=k_max).smooth_screened:
                continue
            v = fsplit_anticanonical_model(model)
        except VerdictRefused:
            out.n_refused += 1
            continue
        finally:
            trial += 1
        out.n_smooth_screened += 1
        if v.f_split:
            out.n_fsplit += 1
        else:
            out.counterexamples.append(_record(trial - 1, model, True))
            if stop_at_first:
                break
    return out


def search_counterexample(K2: int, p: int, n: int = 500, seed: int = 0, k_max: int = 2) -> SampleSummary:
    """Look for a smooth-screened non-F-split model in at most n draws."""
    family = "normal-form" if K2 == 1 else "generic"
    return sample_cell(
        K2, p, n, seed=seed, k_max=k_max, family=family, sentinel=False, stop_at_first=True
    )


def model_text(model) -> str:
    return "; ".join(to_string(f) for f in model.forms)
