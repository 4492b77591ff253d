"""Blowups of P1xP1 at distinct points: reduction to P^2 and fibre certificates.

Blowing up Q_1 on P1xP1 is the blowup of P^2 at two points A = [1:0:0],
B = [0:1:0] (the line AB is the contracted curve).  After moving Q_1 to
([1:0], [1:0]) the map is ([x0:x1], [y0:y1]) -> [x0*y1 : x1*y0 : x1*y1];
points on the two fibres through Q_1 become infinitely near to A or B.
"""

from __future__ import annotations

import random
from itertools import product as iproduct

from ..frobenius.fedder import pair_fsplit
from ..gfpoly import GF, P1xP1, Poly, ring
from .tree import Node, PointTree, TreeError, normalise_direction, normalise_point


def _normalise_p1(fld: GF, a) -> tuple[int, int]:
    a0, a1 = (int(c) for c in a)
    if a1:
        inv = fld.inv(a1)
        return (fld.mul(inv, a0), 1)
    if a0:
        return (1, 0)
    raise TreeError("the zero vector is not a point of P^1")


def p1xp1_tree(fld: GF, points, names=None) -> PointTree:
    names = list(names) if names is not None else [f"Q{i + 1}" for i in range(len(points))]
    nodes = []
    for name, (xa, ya) in zip(names, points):
        x = _normalise_p1(fld, xa)
        y = _normalise_p1(fld, ya)
        nodes.append(Node(name, None, x + y, None))
    return PointTree(fld, tuple(nodes), "P1xP1")


def _to_infinity(fld: GF, a):
    """Linear map of P^1 sending a to [1:0], as a function on coordinates."""
    a0, a1 = a

    def f(x):
        x0, x1 = x
        l1 = fld.sub(fld.mul(a1, x0), fld.mul(a0, x1))
        l0 = x0 if a0 else x1
        return (l0, l1)

    return f


def to_p2_tree(tree: PointTree) -> PointTree:
    """The equivalent P^2 tree (one more node) of a P1xP1 tree."""
    if tree.base != "P1xP1":
        raise TreeError("not a P1xP1 tree")
    fld = tree.field
    q1 = tree.nodes[0]
    fx = _to_infinity(fld, q1.point[:2])
    fy = _to_infinity(fld, q1.point[2:])
    nodes = [
        Node(q1.name + "_a", None, (1, 0, 0), None),
        Node(q1.name + "_b", None, (0, 1, 0), None),
    ]
    for n in tree.nodes[1:]:
        X0, X1 = fx(n.point[:2])
        Y0, Y1 = fy(n.point[2:])
        if X1 and Y1:
            pt = (fld.mul(X0, Y1), fld.mul(X1, Y0), fld.mul(X1, Y1))
            nodes.append(Node(n.name, None, normalise_point(fld, pt), None))
        elif Y1:
            # on the fibre x = infinity: near A in direction [y : 1]
            nodes.append(Node(n.name, 0, None, normalise_direction(fld, (Y0, Y1))))
        elif X1:
            nodes.append(Node(n.name, 1, None, normalise_direction(fld, (X0, X1))))
        else:
            raise TreeError("repeated point on P1xP1")
    return PointTree(fld, tuple(nodes), "P2")


def _fibre(R, which: int, a) -> Poly:
    """Form of the fibre {x = a} (which=0) or {y = a} (which=1)."""
    a0, a1 = a
    g = R.gens()
    u0, u1 = (g[0], g[1]) if which == 0 else (g[2], g[3])
    return _lin(R, u0, u1, a1, R.field.neg(a0))


def _lin(R, u0, u1, c0, c1) -> Poly:
    out = {}
    for u, c in ((u0, c0), (u1, c1)):
        if c:
            (m,) = u.terms
            out[m] = c
    return Poly(R, out)


def _evaluate_on(g: Poly, point) -> int:
    from ..gfpoly import evaluate

    return evaluate(g, point)


def p1xp1_discrepancy(tree: PointTree, forms) -> list[int]:
    """a_i = #(boundary components through Q_i) - 1 for distinct points."""
    return [sum(_evaluate_on(g, n.point) == 0 for g in forms) - 1 for n in tree.nodes]


def find_p1xp1_certificate(tree: PointTree, retries: int = 8, seed: int = 0, check_weak_dp=True):
    """Two fibres of each ruling containing all the points, as a certificate."""
    from .certificate import BoundaryCertificate, _field_ladder
    from .curves import weak_dp_check

    if tree.base != "P1xP1":
        raise TreeError("not a P1xP1 tree")
    if len(tree) > 4:
        raise TreeError("fibre certificates need at most 4 points")
    if check_weak_dp and not weak_dp_check(tree):
        return None
    for fld in _field_ladder(tree.field):
        t = tree.over(fld)
        R = ring(fld, P1xP1)
        pts = [n.point for n in t.nodes]
        for r in range(retries):
            rng = random.Random(f"{seed}:{fld.k}:{r}")
            for choice in iproduct((0, 1), repeat=len(pts)):
                xs = sorted({p[:2] for p, c in zip(pts, choice) if c == 0})
                ys = sorted({p[2:] for p, c in zip(pts, choice) if c == 1})
                if len(xs) > 2 or len(ys) > 2:
                    continue
                xs, ys = _fill(fld, xs, rng), _fill(fld, ys, rng)
                if xs is None or ys is None:
                    continue
                forms = [_fibre(R, 0, a) for a in xs] + [_fibre(R, 1, b) for b in ys]
                a = p1xp1_discrepancy(t, forms)
                if any(v < 0 for v in a):
                    continue
                ok, wit = pair_fsplit("P1xP1", forms)
                if not ok:
                    continue
                return BoundaryCertificate(
                    field=fld,
                    forms=forms,
                    node_sets=[
                        tuple(n.name for n in t.nodes if _evaluate_on(g, n.point) == 0)
                        for g in forms
                    ],
                    tags=["fibre x", "fibre x", "fibre y", "fibre y"],
                    discrepancies=a,
                    witness=wit,
                    template="four fibres",
                    tree=t,
                    base="P1xP1",
                )
    return None


def _fill(fld: GF, vals, rng):
    vals = list(vals)
    opts = [(t, 1) for t in range(fld.q)] + [(1, 0)]
    free = [o for o in opts if o not in vals]
    rng.shuffle(free)
    while len(vals) < 2 and free:
        vals.append(free.pop())
    return vals if len(vals) == 2 else None


def verify_p1xp1_certificate(tree: PointTree, cert) -> bool:
    t = tree.over(cert.field) if tree.field is not cert.field else tree
    if any(v < 0 for v in p1xp1_discrepancy(t, cert.forms)):
        return False
    ok, wit = pair_fsplit("P1xP1", cert.forms)
    return ok and wit is not None
