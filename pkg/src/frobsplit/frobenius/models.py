"""Surface models: weighted hypersurfaces, complete intersections of two
quadrics, and blowups of P^2 (or P1xP1, F_1) along a point tree."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from math import prod

from ..gfpoly import P3, P4, P1112, P1123, Poly, WeightedAmbient, get_ambient, ring, to_string

# anticanonical models of canonical del Pezzo surfaces of degree 1..3
ANTICANONICAL_HYPERSURFACES = {
    P1123.name: (P1123, 1),
    P1112.name: (P1112, 2),
    P3.name: (P3, 3),
}
MAX_BLOWUP_POINTS = {"P2": 8, "F1": 8, "P1xP1": 7}


class ModelError(ValueError):
    """A model violates the degree or size bookkeeping."""


class SurfaceModel:
    """Common interface; concrete models are the three dataclasses below."""

    kind: str = ""

    @property
    def p(self) -> int:
        raise NotImplementedError

    @property
    def K2(self) -> int:
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError

    @property
    def model_hash(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _degree(f: Poly) -> int:
    degs = {f.ring.ambient.weighted_degree(m) for m in f.terms}
    if len(degs) != 1:
        raise ModelError("defining form must be non-zero and weighted homogeneous")
    return degs.pop()


@dataclass(frozen=True)
class WeightedHypersurface(SurfaceModel):
    ambient: WeightedAmbient
    f: Poly
    kind = "hypersurface"

    def __post_init__(self):
        if self.ambient.name not in ANTICANONICAL_HYPERSURFACES:
            raise ModelError(
                f"{self.ambient.name} is not one of {sorted(ANTICANONICAL_HYPERSURFACES)}"
            )
        if self.f.ring.ambient.weights != self.ambient.weights:
            raise ModelError("form does not live on the stated ambient")
        if self.f.field.k != 1:
            raise ModelError("defining forms must have prime-field coefficients")
        need = sum(self.ambient.weights) - 1
        d = _degree(self.f)
        if d != need:
            raise ModelError(f"degree {d} on {self.ambient.name}; anticanonical degree is {need}")

    @property
    def forms(self) -> list[Poly]:
        return [self.f]

    @property
    def p(self) -> int:
        return self.f.field.p

    @property
    def K2(self) -> int:
        # (-K)^2 = O(1)^2 = d / prod(weights) for X_d in P(w)
        k2 = Fraction(_degree(self.f), prod(self.ambient.weights))
        return int(k2)

    def to_dict(self) -> dict:
        return {
            "type": "hypersurface",
            "ambient": self.ambient.name,
            "p": self.p,
            "f": to_string(self.f),
        }


@dataclass(frozen=True)
class CompleteIntersection(SurfaceModel):
    f: Poly
    g: Poly
    kind = "complete_intersection"

    def __post_init__(self):
        for h in (self.f, self.g):
            if h.ring.nvars != 5 or h.ring.ambient.weights != (1,) * 5:
                raise ModelError("complete intersection forms live on P^4")
            if _degree(h) != 2:
                raise ModelError("complete intersection forms must be quadrics")
            if h.field.k != 1:
                raise ModelError("defining forms must have prime-field coefficients")
        if self.f.field.p != self.g.field.p:
            raise ModelError("forms over different fields")

    @property
    def ambient(self) -> WeightedAmbient:
        return P4

    @property
    def forms(self) -> list[Poly]:
        return [self.f, self.g]

    @property
    def p(self) -> int:
        return self.f.field.p

    @property
    def K2(self) -> int:
        return 4

    def to_dict(self) -> dict:
        return {
            "type": "complete_intersection",
            "p": self.p,
            "f": to_string(self.f),
            "g": to_string(self.g),
        }


@dataclass(frozen=True)
class Blowup(SurfaceModel):
    """Blowup of ``base`` along ``tree``.

    For base ``F1`` the first root of the tree is the point of P^2 whose
    blowup is F_1, so the model is again a blowup of P^2.
    """

    base: str
    tree: object  # geometry.PointTree
    kind = "blowup"

    def __post_init__(self):
        if self.base not in MAX_BLOWUP_POINTS:
            raise ModelError(f"unsupported blowup base {self.base!r}")
        n = len(self.tree)
        if not 1 <= n <= MAX_BLOWUP_POINTS[self.base]:
            raise ModelError(
                f"{n} points on {self.base}; allowed 1..{MAX_BLOWUP_POINTS[self.base]}"
            )
        if self.tree.base != ("P1xP1" if self.base == "P1xP1" else "P2"):
            raise ModelError("point tree does not live on the stated base")

    @property
    def p(self) -> int:
        return self.tree.field.p

    @property
    def K2(self) -> int:
        return (8 if self.base == "P1xP1" else 9) - len(self.tree)

    def to_dict(self) -> dict:
        return {"type": "blowup", "base": self.base, "tree": self.tree.to_dict()}


def fermat_model(K2: int, p: int) -> SurfaceModel:
    """The Fermat-type anticanonical model of degree K2 (1..4)."""
    if K2 == 4:
        R = ring(p, P4)
        x = R.gens()
        f = sum((xi**2 for xi in x[1:]), x[0] ** 2)
        g = x[0] ** 2 + 2 * x[1] ** 2 + 3 * x[2] ** 2 + 4 * x[3] ** 2 + 5 * x[4] ** 2
        return CompleteIntersection(f, g)
    amb = {1: P1123, 2: P1112, 3: P3}.get(K2)
    if amb is None:
        raise ModelError(f"no Fermat model for K^2 = {K2}")
    d = sum(amb.weights) - 1
    R = ring(p, amb)
    f = R.zero()
    for i, w in enumerate(amb.weights):
        f = f + R.gen(i) ** (d // w)
    return WeightedHypersurface(amb, f)


def model_from_dict(data: dict) -> SurfaceModel:
    """Build a model from the TOML/JSON schema (see README)."""
    kind = data.get("type")
    if kind == "hypersurface":
        amb = get_ambient(str(data["ambient"]))
        R = ring(int(data["p"]), amb)
        return WeightedHypersurface(amb, R.parse(str(data["f"])))
    if kind == "complete_intersection":
        R = ring(int(data["p"]), P4)
        return CompleteIntersection(R.parse(str(data["f"])), R.parse(str(data["g"])))
    if kind == "blowup":
        from ..geometry.tree import PointTree

        base = str(data.get("base", "P2"))
        tree_data = dict(data.get("tree", data))
        tree_data.setdefault("base", "P1xP1" if base == "P1xP1" else "P2")
        return Blowup(base, PointTree.from_dict(tree_data))
    raise ModelError(f"unknown model type {kind!r}")
