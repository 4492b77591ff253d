"""Line-bundle cohomology on Hirzebruch surfaces and the inversion-of-adjunction
F-splitting check on P^2, P1xP1 and F_a.

F_a has fan rays v1=(1,0), v2=(0,1), v3=(-1,a), v4=(0,-1).  With D_i the
torus-invariant divisors, C0 = D2 (self-intersection -a), F = D1 = D3 and
D4 = C0 + aF.  Classes are written b*C0 + c*F.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

import numpy as np

from ..frobenius.fedder import pair_fsplit
from ..gfpoly import P1, P2, P1xP1, Poly, WeightedAmbient, ring, substitute
from .curves import nullspace


def h1_p1(m: int) -> int:
    return max(0, -m - 1)


def h0_p1(m: int) -> int:
    return max(0, m + 1)


def h1_hirzebruch(a: int, b: int, c: int) -> int:
    """h^1(F_a, O(b*C0 + c*F)) by pushing forward to P^1."""
    if a < 0:
        raise ValueError("a must be non-negative")
    if b >= 0:
        # pi_* O(bC0 + cF) = sum_{k=0}^{b} O(c - a k), no higher direct image
        return sum(h1_p1(c - a * k) for k in range(b + 1))
    if b == -1:
        return 0
    # Serre duality with K = -2 C0 - (a + 2) F
    return h1_hirzebruch(a, -2 - b, -(a + 2) - c)


# ------------------------------------------------------------ Cech oracle

RAYS = lambda a: ((1, 0), (0, 1), (-1, a), (0, -1))  # noqa: E731
CONES = ((0, 1), (1, 2), (2, 3), (3, 0))


@lru_cache(maxsize=None)
def _pattern_h(bad: frozenset) -> tuple[int, int, int]:
    """(h0, h1, h2) of the Cech complex of one character whose failing rays are ``bad``.

    A character is a section over the chart of a set of cones iff it passes
    every ray common to all of them; disjoint cones meet in the torus.
    """

    def allowed(idx) -> bool:
        common = set(CONES[idx[0]])
        for i in idx[1:]:
            common &= set(CONES[i])
        return not (common & bad)

    levels = []
    for r in range(1, 5):
        levels.append([I for I in combinations(range(4), r) if allowed(I)])

    def diff(src, dst):
        mat = np.zeros((len(dst), len(src)), dtype=float)
        pos = {I: j for j, I in enumerate(dst)}
        for j, I in enumerate(src):
            for extra in range(4):
                if extra in I:
                    continue
                J = tuple(sorted(I + (extra,)))
                if J in pos:
                    sign = (-1) ** sum(1 for x in I if x < extra)
                    mat[pos[J], j] = sign
        return mat

    ranks = []
    for lo, hi in zip(levels, levels[1:]):
        m = diff(lo, hi)
        ranks.append(int(np.linalg.matrix_rank(m)) if m.size else 0)
    dims = [len(l) for l in levels]
    h0 = dims[0] - ranks[0]
    h1 = dims[1] - ranks[0] - ranks[1]
    h2 = dims[2] - ranks[1] - ranks[2]
    return h0, h1, h2


def cech_cohomology(a: int, b: int, c: int, box: int | None = None) -> tuple[int, int, int]:
    """(h0, h1, h2) of O(b*C0 + c*F) on F_a by the Cech complex of the four
    torus charts, summed over characters in a box."""
    coeff = (c, b, 0, 0)  # D1 = F, D2 = C0
    rays = RAYS(a)
    if box is None:
        box = 4 * (abs(b) + abs(c) + a + 3) + a * abs(b)
    rng = np.arange(-box, box + 1)
    mx, my = np.meshgrid(rng, rng, indexing="ij")
    code = np.zeros(mx.shape, dtype=np.int64)
    for i, (v, av) in enumerate(zip(rays, coeff)):
        bad = (mx * v[0] + my * v[1]) < -av
        code |= bad.astype(np.int64) << i
    counts = np.bincount(code.ravel(), minlength=16)
    tot = [0, 0, 0]
    for pat, cnt in enumerate(counts):
        if not cnt:
            continue
        h = _pattern_h(frozenset(i for i in range(4) if pat >> i & 1))
        for j in range(3):
            tot[j] += int(cnt) * h[j]
    return tuple(tot)


def cech_h1(a: int, b: int, c: int) -> int:
    return cech_cohomology(a, b, c)[1]


# --------------------------------------------------- inversion of adjunction


def hirzebruch_ambient(a: int) -> WeightedAmbient:
    """Cox ring of F_a; degree vectors are (C0, F) coefficients."""
    return WeightedAmbient(
        f"F{a}", ("x1", "x2", "x3", "x4"), ((0, 1), (1, 0), (0, 1), (1, a))
    )


def _base_info(base: str):
    """(ambient, a) with a = None for P^2."""
    if base == "P2":
        return P2, None
    if base == "P1xP1":
        return P1xP1, 0
    if base.startswith("F") and base[1:].isdigit():
        a = int(base[1:])
        if a > 2:
            raise ValueError("F_a supported for a <= 2")
        return hirzebruch_ambient(a), a
    raise ValueError(f"unsupported base {base!r}")


def _class(base: str, f: Poly) -> tuple[int, ...]:
    degs = {f.ring.ambient.degree_of(m) for m in f.terms}
    if len(degs) != 1:
        raise ValueError("divisors must be given by non-zero homogeneous forms")
    d = degs.pop()
    if base == "P1xP1":
        # bidegree (d1, d2) -> b*C0 + c*F on F_0 with C0 = {y = const}, F = {x = const}
        return (d[1], d[0])
    return d


def _canonical(base: str, a):
    if base == "P2":
        return (-3,)
    return (-2, -(a + 2))


def _point_of(fld, coeffs):
    """Kernel vector of a single linear functional."""
    basis = nullspace([list(coeffs)], len(coeffs), fld)
    if len(basis) != len(coeffs) - 1:
        raise ValueError("degenerate linear form")
    return basis


def restriction_map(base: str, S: Poly):
    """Images of the Cox variables on S = P^1, as forms in (s, t)."""
    amb, a = _base_info(base)
    fld = S.field
    R1 = ring(fld, P1)
    s, t = R1.gens()
    cls = _class(base, S)
    n = amb.nvars

    def const(c):
        return R1.const(c)

    def lin(m):
        (e,) = [i for i in range(n) if m[i]]
        return e

    if base == "P2":
        if cls != (1,):
            raise ValueError("S must be a line on P^2")
        coeffs = [0, 0, 0]
        for m, c in S.terms.items():
            coeffs[lin(m)] = c
        P, Q = _point_of(fld, coeffs)
        return [s * const(P[i]) + t * const(Q[i]) for i in range(3)]
    # Cox variables: (x1, x2, x3, x4) on F_a, (x0, x1, y0, y1) on P1xP1
    if base == "P1xP1":
        fib, sec = (0, 1), (2, 3)  # x-pair cuts fibres of class F
    else:
        fib, sec = (0, 2), (1, 3)
    if cls == (0, 1):
        coeffs = [S.terms.get(tuple(1 if j == i else 0 for j in range(n)), 0) for i in fib]
        (pt,) = _point_of(fld, coeffs)
        img = [None] * n
        img[fib[0]], img[fib[1]] = const(pt[0]), const(pt[1])
        img[sec[0]], img[sec[1]] = s, t
        return img
    if cls == (1, 0) and (a == 0 or base == "P1xP1"):
        coeffs = [S.terms.get(tuple(1 if j == i else 0 for j in range(n)), 0) for i in sec]
        (pt,) = _point_of(fld, coeffs)
        img = [None] * n
        img[sec[0]], img[sec[1]] = const(pt[0]), const(pt[1])
        img[fib[0]], img[fib[1]] = s, t
        return img
    if cls == (1, 0):
        # only x2 has class C0 when a > 0
        img = [s, R1.zero(), t, R1.one()]
        return img
    if cls == (1, a) and base != "P1xP1":
        # S = kappa*x4 + x2*g(x1, x3): solve for x4 on the chart x2 = 1
        x4 = (0, 0, 0, 1)
        kappa = S.terms.get(x4, 0)
        if not kappa or any(m[3] and m != x4 for m in S.terms):
            raise ValueError("sections of class C0 + aF must be kappa*x4 + x2*g")
        inv = fld.neg(fld.inv(kappa))
        g_img = R1.zero()
        for m, c in S.terms.items():
            if m == x4:
                continue
            g_img = g_img + R1.monomial((m[0], m[2]), fld.mul(c, inv))
        return [s, R1.one(), t, g_img]
    raise ValueError(f"unsupported curve class {cls} for S on {base}")


def ioa_fsplit_check(base: str, S: Poly, B, e: int = 1, detail: bool = False):
    """(S, B|_S) F-split and h^1(-S - (p^e - 1)(K + S + B)) = 0."""
    B = list(B)
    _base_info(base)
    p = S.field.p
    img = restriction_map(base, S)
    restricted = []
    for g in B:
        r = substitute(g, img)
        if r.is_zero():
            raise ValueError("S lies in the support of B")
        if any(sum(m) for m in r.terms):
            restricted.append(r)
    pair_ok, witness = _p1_pair(restricted)
    cls = [_class(base, S)] + [_class(base, g) for g in B]
    K = _canonical(base, _base_info(base)[1])
    total = tuple(sum(v) for v in zip(K, *cls))
    L = tuple(-s_ - (p**e - 1) * t_ for s_, t_ in zip(cls[0], total))
    if base == "P2":
        h1 = 0
    else:
        a = _base_info(base)[1]
        h1 = h1_hirzebruch(a, L[0], L[1])
    ok = pair_ok and h1 == 0
    if detail:
        return {"ok": ok, "restriction_fsplit": pair_ok, "h1": h1, "class": list(L)}
    return ok


def _p1_pair(forms) -> tuple[bool, object]:
    """(P^1, sum of forms), padding with extra points when the degree is < 2."""
    deg = sum(next(iter({sum(m) for m in f.terms})) for f in forms)
    if deg > 2:
        return False, None
    if deg == 2:
        return pair_fsplit("P1", forms)
    R1 = forms[0].ring if forms else None
    if R1 is None:
        return True, None
    s, t = R1.gens()
    fld = R1.field
    pads = [s, t] + [s + t * R1.const(c) for c in range(1, fld.q)]
    for extra in _pad_choices(pads, 2 - deg):
        ok, wit = pair_fsplit("P1", forms + list(extra))
        if ok:
            return ok, wit
    return False, None


def _pad_choices(pads, k):
    return combinations(pads, k)
