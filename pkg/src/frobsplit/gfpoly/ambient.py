"""Weighted (and multi-graded) ambient spaces that carry polynomial rings."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd


@dataclass(frozen=True)
class WeightedAmbient:
    """Variables with positive integer (multi-)degrees.

    ``degrees[i]`` is the degree vector of variable i; for an ordinary weighted
    projective space every vector has length one.  ``singular_points`` lists the
    torus-fixed singular points as exponent-free coordinate patterns (0/1
    tuples), which for the spaces used here is the whole singular locus.
    """

    name: str
    names: tuple[str, ...]
    degrees: tuple[tuple[int, ...], ...]
    singular_points: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        if len(self.names) != len(self.degrees):
            raise ValueError("one degree vector per variable required")
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be distinct")
        width = {len(d) for d in self.degrees}
        if len(width) != 1:
            raise ValueError("degree vectors must share a length")
        for comp in range(self.grading_rank):
            col = [d[comp] for d in self.degrees]
            if any(c < 0 for c in col) or not any(col):
                raise ValueError("degrees must be non-negative and non-trivial")
        if self.grading_rank == 1 and gcd(*self.weights) != 1:
            raise ValueError(f"weights {self.weights} are not well-formed (gcd != 1)")

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def dimension(self) -> int:
        return self.nvars - self.grading_rank

    @property
    def grading_rank(self) -> int:
        return len(self.degrees[0])

    @property
    def weights(self) -> tuple[int, ...]:
        """Total weight of each variable (sum over grading components)."""
        return tuple(sum(d) for d in self.degrees)

    def degree_of(self, exps) -> tuple[int, ...]:
        out = [0] * self.grading_rank
        for e, d in zip(exps, self.degrees):
            if e:
                for c in range(self.grading_rank):
                    out[c] += e * d[c]
        return tuple(out)

    def weighted_degree(self, exps) -> int:
        return sum(e * w for e, w in zip(exps, self.weights))

    @property
    def anticanonical_degree(self) -> tuple[int, ...]:
        return tuple(sum(d[c] for d in self.degrees) for c in range(self.grading_rank))

    def monomials(self, degree) -> list[tuple[int, ...]]:
        """All exponent vectors of the given (multi-)degree, canonical order."""
        if isinstance(degree, int):
            if self.grading_rank != 1:
                raise ValueError(f"{self.name} needs a degree vector")
            degree = (degree,)
        return list(_monomials(self.degrees, tuple(degree)))

    def with_names(self, names) -> "WeightedAmbient":
        return WeightedAmbient(self.name, tuple(names), self.degrees, self.singular_points)


@lru_cache(maxsize=None)
def _monomials(degrees, target) -> tuple[tuple[int, ...], ...]:
    n = len(degrees)
    rank = len(target)
    out: list[tuple[int, ...]] = []

    def rec(i, remaining, acc):
        if i == n:
            if not any(remaining):
                out.append(tuple(acc))
            return
        d = degrees[i]
        if not any(d):
            raise ValueError("variable of degree zero")
        cap = min(remaining[c] // d[c] for c in range(rank) if d[c])
        for e in range(cap, -1, -1):
            rec(i + 1, tuple(remaining[c] - e * d[c] for c in range(rank)), acc + [e])

    if any(t < 0 for t in target):
        return ()
    rec(0, target, [])
    return tuple(out)


def weighted_projective(weights, names=None, name=None) -> WeightedAmbient:
    weights = tuple(int(w) for w in weights)
    if names is None:
        names = _default_names(len(weights))
    sing = []
    for i, w in enumerate(weights):
        if w > 1:
            # the coordinate point e_i is a quotient singularity of type 1/w
            sing.append(tuple(1 if j == i else 0 for j in range(len(weights))))
    if name is None:
        name = "P(" + ",".join(map(str, weights)) + ")"
    return WeightedAmbient(name, tuple(names), tuple((w,) for w in weights), tuple(sing))


def _default_names(n: int) -> tuple[str, ...]:
    if n <= 4:
        return ("x", "y", "z", "w")[:n]
    return tuple(f"x{i}" for i in range(n))


P1 = weighted_projective((1, 1), ("x", "y"), "P1")
P2 = weighted_projective((1, 1, 1), ("x", "y", "z"), "P2")
P3 = weighted_projective((1, 1, 1, 1), ("x", "y", "z", "w"), "P3")
P4 = weighted_projective((1, 1, 1, 1, 1), ("x0", "x1", "x2", "x3", "x4"), "P4")
P1112 = weighted_projective((1, 1, 1, 2), ("x", "y", "z", "w"), "P(1,1,1,2)")
P1123 = weighted_projective((1, 1, 2, 3), ("x", "y", "z", "w"), "P(1,1,2,3)")
P1xP1 = WeightedAmbient(
    "P1xP1", ("x0", "x1", "y0", "y1"), ((1, 0), (1, 0), (0, 1), (0, 1))
)

AMBIENTS = {a.name: a for a in (P1, P2, P3, P4, P1112, P1123, P1xP1)}
AMBIENTS["P^3"] = P3
AMBIENTS["P^4"] = P4
AMBIENTS["P^2"] = P2
AMBIENTS["P^1"] = P1


def get_ambient(name: str) -> WeightedAmbient:
    key = name.replace(" ", "")
    if key in AMBIENTS:
        return AMBIENTS[key]
    raise KeyError(f"unknown ambient {name!r}; known: {sorted(AMBIENTS)}")
