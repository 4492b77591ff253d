"""Linear systems with assigned (infinitely near) base points, weak del Pezzo
detection, effective roots and discrepancies of boundary divisors."""

from __future__ import annotations

from ..gfpoly import GF, P2, Poly, ring
from ..lattice import (
    LatticeError,
    PicClass,
    RootDiagnosis,
    classify_root_subsystem,
    enumerate_classes,
    enumerate_roots,
)
from .tree import MAX_NODES, PointTree, TreeError, multiplicity


def nullspace(rows: list[list[int]], ncols: int, fld: GF) -> list[list[int]]:
    """Basis of {x : row . x = 0 for every row} over fld."""
    mat = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = fld.inv(mat[r][c])
        mat[r] = [fld.mul(inv, v) for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [fld.sub(a, fld.mul(f, b)) for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [0] * ncols
        x[fc] = 1
        for i, pc in enumerate(pivots):
            x[pc] = fld.neg(mat[i][fc])
        basis.append(x)
    return basis


class LinearSystems:
    """Memoised linear systems |d H - sum m_i e_i| on the blowup along a tree."""

    def __init__(self, tree: PointTree):
        if tree.base != "P2":
            raise TreeError("linear systems are computed on P^2 trees")
        self.tree = tree
        self.ring = ring(tree.field, P2)
        self._exp: dict = {}
        self._kernels: dict = {}

    def requirement(self, m) -> list[int]:
        V = self.tree.V
        return [sum(mi * V[k][i] for i, mi in enumerate(m)) for k in range(len(m))]

    def _expansion(self, mono, k, trunc) -> dict:
        key = (mono, k, trunc)
        if key not in self._exp:
            g = self.ring.monomial(mono)
            self._exp[key] = self.tree.local_equation(g, k, trunc)
        return self._exp[key]

    def kernel(self, d: int, m) -> list[list[int]]:
        """Coefficient vectors (on P2.monomials(d)) of the forms in the system."""
        m = tuple(m)
        if len(m) != len(self.tree):
            raise LatticeError("multiplicity vector does not match the tree")
        key = (d, m)
        if key in self._kernels:
            return self._kernels[key]
        if d < 0:
            basis: list = []
        else:
            req = self.requirement(m)
            monos = P2.monomials(d)
            rows = []
            for k, r in enumerate(req):
                if r <= 0:
                    continue
                cols = [self._expansion(mono, k, r) for mono in monos]
                for a in range(r):
                    for b in range(r - a):
                        rows.append([col.get((a, b), 0) for col in cols])
            basis = nullspace(rows, len(monos), self.tree.field)
        self._kernels[key] = basis
        return basis

    def dimension(self, d: int, m) -> int:
        return len(self.kernel(d, m))

    def is_effective(self, c: PicClass) -> bool:
        return self.dimension(c.d, c.m) > 0

    def form(self, d: int, coeffs) -> Poly:
        return Poly(self.ring, dict(zip(P2.monomials(d), coeffs)))

    def random_member(self, d: int, m, rng) -> Poly | None:
        basis = self.kernel(d, m)
        if not basis:
            return None
        fld = self.tree.field
        for _ in range(64):
            lam = [rng.randrange(fld.q) for _ in basis]
            if not any(lam):
                continue
            vec = [0] * len(basis[0])
            for l, b in zip(lam, basis):
                if l:
                    vec = [fld.add(x, fld.mul(l, y)) for x, y in zip(vec, b)]
            if any(vec):
                return self.form(d, vec)
        return None


def _check_size(tree: PointTree) -> None:
    if len(tree) > MAX_NODES:
        raise TreeError(f"{len(tree)} nodes; at most {MAX_NODES} allowed")


def negative_curve_candidates(n: int) -> list[PicClass]:
    """Classes with p_a = 0 and -(n+1) <= C^2 <= -3 (so K.C >= 1), d >= 0."""
    out = []
    for s in range(3, n + 2):
        out.extend(c for c in enumerate_classes(n, -s, s - 2) if c.d >= 0)
    return out


def weak_dp_check(tree: PointTree, systems: LinearSystems | None = None) -> bool:
    """-K nef and big on the blowup along the tree."""
    _check_size(tree)
    if tree.base == "P1xP1":
        from .quadric import to_p2_tree

        return weak_dp_check(to_p2_tree(tree))
    n = len(tree)
    if 9 - n <= 0:
        return False
    ls = systems or LinearSystems(tree)
    return not any(ls.is_effective(c) for c in negative_curve_candidates(n))


def effective_roots(tree: PointTree, systems: LinearSystems | None = None) -> list[PicClass]:
    """Root classes (C^2 = -2, K.C = 0) represented by effective divisors.

    The linear conditions are defined over the tree's field, so the answer
    does not change under field extension.
    """
    _check_size(tree)
    if tree.base == "P1xP1":
        from .quadric import to_p2_tree

        return effective_roots(to_p2_tree(tree))
    n = len(tree)
    if n < 2:
        return []
    ls = systems or LinearSystems(tree)
    return [c for c in enumerate_roots(n) if c.d >= 0 and ls.is_effective(c)]


def root_diagnosis(tree: PointTree) -> RootDiagnosis:
    return classify_root_subsystem(effective_roots(tree))


def discrepancy(tree: PointTree, boundary_forms) -> list[int]:
    """Coefficients a_k of the exceptional curves in Delta, K_X + Delta = f^*(K + B).

    a_k = ord_{E_k}(f^* B) - sum_{i != k} ord_{E_k}(E_i total) - 1.
    """
    forms = list(boundary_forms)
    if tree.base != "P2":
        raise TreeError("discrepancy is computed on P^2 trees")
    total = 0
    for g in forms:
        degs = {sum(m) for m in g.terms}
        if len(degs) != 1:
            raise TreeError("boundary forms must be non-zero and homogeneous")
        total += degs.pop()
    if total != 3:
        raise TreeError(f"boundary has degree {total}; anticanonical degree on P^2 is 3")
    V = tree.V
    out = []
    for k in range(len(tree)):
        ordk = sum(tree.order(g, k) for g in forms)
        out.append(ordk - sum(V[k][i] for i in range(len(tree)) if i != k) - 1)
    return out


def curve_multiplicity(tree: PointTree, g: Poly, k: int) -> int:
    """Multiplicity of the strict transform of g at node k."""
    V = tree.V
    total = multiplicity(tree.local_equation(g, k))
    # subtract the exceptional part: ord_{E_k} f^*g = sum_i mult_i V[k][i]
    rest = total
    for i in tree.ancestors(k):
        rest -= curve_multiplicity(tree, g, i) * V[k][i]
    return rest
