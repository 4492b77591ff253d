"""Bounded search for singular points of hypersurfaces and complete intersections.

This is a finite scan over the points with coordinates in F_{p^k}, k <= k_max.
Finding nothing is *not* a proof of smoothness over the algebraic closure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .field import GF
from .poly import Poly, derivative, evaluate

DEFAULT_POINT_BUDGET = 10**7
CHUNK = 1 << 18


class ScanBudgetError(RuntimeError):
    """Enumeration would exceed the configured point budget."""


@dataclass
class ScanResult:
    k_max: int
    singular_points: list[tuple[int, tuple[int, ...]]] = field(default_factory=list)
    ambient_singular_hits: list[tuple[int, ...]] = field(default_factory=list)
    points_checked: int = 0

    @property
    def smooth_screened(self) -> bool:
        return not self.singular_points and not self.ambient_singular_hits

    def to_dict(self) -> dict:
        return {
            "k_max": self.k_max,
            "singular_points": [{"k": k, "coords": list(c)} for k, c in self.singular_points],
            "ambient_singular_hits": [list(c) for c in self.ambient_singular_hits],
            "points_checked": self.points_checked,
        }


def _orbit_reps(fld: GF, w: int) -> list[int]:
    """Coset representatives of F_q^* modulo w-th powers (as element codes)."""
    if w == 1:
        return [1]
    exp = fld.exp_table
    from math import gcd

    g = gcd(w, fld.q - 1)
    return [int(exp[i]) for i in range(g)]


def point_count(weights, q: int) -> int:
    total = 0
    n = len(weights)
    from math import gcd

    for i, w in enumerate(weights):
        reps = 1 if w == 1 else gcd(w, q - 1)
        total += reps * q ** (n - 1 - i)
    return total


def iter_points(weights, fld: GF, chunk: int = CHUNK):
    """Yield arrays (m, n) of representatives of points of P(weights)(F_q).

    Each stratum fixes the first non-zero coordinate to a coset representative
    of F_q^* / (F_q^*)^w; points stabilised by roots of unity can repeat.
    """
    q = fld.q
    n = len(weights)
    for i, w in enumerate(weights):
        free = n - 1 - i
        total = q**free
        for rep in _orbit_reps(fld, w):
            for start in range(0, total, chunk):
                idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
                pts = np.zeros((len(idx), n), dtype=np.int64)
                pts[:, i] = rep
                rem = idx.copy()
                for j in range(n - 1, i, -1):
                    pts[:, j] = rem % q
                    rem //= q
                yield pts


def veval(f: Poly, pts: np.ndarray, fld: GF) -> np.ndarray:
    """Evaluate f (coefficients in the prime field of fld) at many points."""
    out = np.zeros(len(pts), dtype=np.int64)
    if not f.terms:
        return out
    if fld.k == 1:
        p = fld.p
        powers: dict[tuple[int, int], np.ndarray] = {}
        for m, c in f.terms.items():
            v = np.full(len(pts), c, dtype=np.int64)
            for j, e in enumerate(m):
                if e:
                    key = (j, e)
                    if key not in powers:
                        powers[key] = fld.vpow(pts[:, j], e)
                    v = v * powers[key] % p
            out = (out + v) % p
        return out
    log, exp = fld.log_table, fld.exp_table
    zero = pts == 0
    logs = log[np.where(zero, 1, pts)]
    qm1 = fld.q - 1
    for m, c in f.terms.items():
        mv = np.array(m, dtype=np.int64)
        s = (logs @ mv + log[c]) % qm1
        used = mv > 0
        z = zero[:, used].any(axis=1) if used.any() else np.zeros(len(pts), dtype=bool)
        out = fld.vadd(out, np.where(z, 0, exp[s]))
    return out


def _canonical(pt: tuple[int, ...], weights, fld: GF) -> tuple[int, ...]:
    """Smallest representative of the weighted scaling orbit of pt."""
    best = None
    for lam in range(1, fld.q):
        cand = tuple(fld.mul(fld.pow(lam, w), x) for x, w in zip(pt, weights))
        if best is None or cand < best:
            best = cand
    return best


def singular_point_scan(forms, k_max: int = 2, budget: int = DEFAULT_POINT_BUDGET) -> ScanResult:
    """Singular points of V(forms) over F_{p^k}, k = 1..k_max.

    ``forms`` is one weighted-homogeneous form (hypersurface) or two forms of
    a complete intersection, all over a prime field.  A point is singular when
    all forms vanish and the Jacobian matrix has rank below the number of
    forms.  Also reports which ambient singular points lie on the variety.
    """
    forms = list(getattr(forms, "forms", forms))
    if not forms or len(forms) > 2:
        raise ValueError("expected one or two defining forms")
    ring = forms[0].ring
    if ring.field.k != 1:
        raise ValueError("defining forms must have prime-field coefficients")
    amb = ring.ambient
    if amb.grading_rank != 1:
        raise ValueError("singular scan needs a singly graded ambient")
    weights = amb.weights
    n = amb.nvars
    result = ScanResult(k_max=k_max)

    for pt in amb.singular_points:
        if all(evaluate(f, pt) == 0 for f in forms):
            result.ambient_singular_hits.append(tuple(pt))

    total = sum(point_count(weights, ring.field.p**k) for k in range(1, k_max + 1))
    if total > budget:
        raise ScanBudgetError(
            f"scan of {amb.name} up to k={k_max} needs {total} points (budget {budget})"
        )

    partials = [[derivative(f, j) for j in range(n)] for f in forms]
    sing_coords = {i for i, w in enumerate(weights) if w > 1}
    seen: set[tuple[int, ...]] = set()
    for k in range(1, k_max + 1):
        fld = GF(ring.field.p, k)
        for pts in iter_points(weights, fld):
            result.points_checked += len(pts)
            mask = np.ones(len(pts), dtype=bool)
            for f in forms:
                mask &= veval(f, pts, fld) == 0
                if not mask.any():
                    break
            if not mask.any():
                continue
            cand = pts[mask]
            if len(forms) == 1:
                ok = np.ones(len(cand), dtype=bool)
                for d in partials[0]:
                    ok &= veval(d, cand, fld) == 0
            else:
                jac = [[veval(d, cand, fld) for d in row] for row in partials]
                ok = np.ones(len(cand), dtype=bool)
                for a, b in combinations(range(n), 2):
                    minor = fld.vadd(
                        fld.vmul(jac[0][a], jac[1][b]),
                        fld.vneg(fld.vmul(jac[0][b], jac[1][a])),
                    )
                    ok &= minor == 0
            for row in cand[ok]:
                pt = tuple(int(x) for x in row)
                # ambient singular points are reported separately
                support = {j for j, x in enumerate(pt) if x}
                if support and support <= sing_coords and len(support) == 1:
                    continue
                key = pt if all(w == 1 for w in weights) else _canonical(pt, weights, fld)
                if k > 1 and all(x < fld.p for x in key):
                    # defined over the prime field, already reported at k = 1
                    continue
                if (k, key) in seen:
                    continue
                seen.add((k, key))
                result.singular_points.append((k, key))
    return result
