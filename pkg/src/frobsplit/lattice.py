"""Picard lattice Z^{1,n} of a blowup of P^2: exceptional classes, roots,
ADE labelling of root subsystems and singularity thresholds."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from math import factorial, isqrt

import networkx as nx

MAX_N = 8


class LatticeError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class PicClass:
    """d*e0 - sum m_i*e_i."""

    d: int
    m: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.m)

    def __add__(self, other: "PicClass") -> "PicClass":
        _same_n(self, other)
        return PicClass(self.d + other.d, tuple(a + b for a, b in zip(self.m, other.m)))

    def __neg__(self) -> "PicClass":
        return PicClass(-self.d, tuple(-a for a in self.m))

    def __sub__(self, other: "PicClass") -> "PicClass":
        return self + (-other)

    def __mul__(self, k: int) -> "PicClass":
        return PicClass(k * self.d, tuple(k * a for a in self.m))

    __rmul__ = __mul__

    @property
    def square(self) -> int:
        return inner(self, self)

    @property
    def k_dot(self) -> int:
        return inner(canonical_class(self.n), self)

    @property
    def arithmetic_genus(self) -> int:
        # C^2 + K.C = 2 p_a - 2
        return (self.square + self.k_dot) // 2 + 1

    def key(self) -> tuple[int, ...]:
        return (self.d,) + self.m

    def __str__(self) -> str:
        return f"({self.d};{','.join(map(str, self.m))})"

    @classmethod
    def parse(cls, text: str) -> "PicClass":
        body = text.strip().strip("()")
        d, _, rest = body.partition(";")
        m = tuple(int(t) for t in rest.split(",") if t.strip()) if rest else ()
        return cls(int(d), m)


def _same_n(a: PicClass, b: PicClass) -> None:
    if a.n != b.n:
        raise LatticeError(f"classes live in Z^(1,{a.n}) and Z^(1,{b.n})")


def inner(a: PicClass, b: PicClass) -> int:
    _same_n(a, b)
    return a.d * b.d - sum(x * y for x, y in zip(a.m, b.m))


def canonical_class(n: int) -> PicClass:
    return PicClass(-3, (-1,) * n)


def exceptional(n: int, i: int) -> PicClass:
    """The class e_i (1-based)."""
    return PicClass(0, tuple(-1 if j == i - 1 else 0 for j in range(n)))


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_N:
        raise LatticeError(f"n must be in 1..{MAX_N}, got {n}")


# --------------------------------------------------------------- enumeration


def degree_range(n: int, square: int, k_dot: int) -> range:
    """Degrees allowed by Cauchy-Schwarz for C^2 = square, K.C = k_dot.

    With s = sum m = k_dot + 3d and Q = sum m^2 = d^2 - square, we need
    s^2 <= n*Q, i.e. (9 - n) d^2 + 6 k_dot d + k_dot^2 + n*square <= 0.
    """
    a, b, c = 9 - n, 6 * k_dot, k_dot * k_dot + n * square
    if a <= 0:
        raise LatticeError("Cauchy-Schwarz bound needs n <= 8")
    disc = b * b - 4 * a * c
    if disc < 0:
        return range(0)
    r = isqrt(disc)
    lo = (-b - r) // (2 * a) - 1
    hi = (-b + r) // (2 * a) + 1
    return range(lo, hi + 1)


def _vectors(n: int, total: int, sumsq: int):
    """All integer n-vectors with given sum and sum of squares."""
    out: list[tuple[int, ...]] = []
    acc: list[int] = []

    def rec(k, s, q):
        if k == 0:
            if s == 0 and q == 0:
                out.append(tuple(acc))
            return
        # the remaining k entries need s^2 <= k*q
        if s * s > k * q:
            return
        b = isqrt(q)
        for v in range(-b, b + 1):
            acc.append(v)
            rec(k - 1, s - v, q - v * v)
            acc.pop()

    rec(n, total, sumsq)
    return out


def enumerate_classes(n: int, square: int, k_dot: int, degrees=None) -> list[PicClass]:
    """All classes with the given C^2 and K.C, sorted."""
    if n < 0 or n > MAX_N:
        raise LatticeError(f"n must be in 0..{MAX_N}")
    degs = degree_range(n, square, k_dot) if degrees is None else degrees
    out = []
    for d in degs:
        q = d * d - square
        if q < 0:
            continue
        for m in _vectors(n, k_dot + 3 * d, q):
            out.append(PicClass(d, m))
    return sorted(out)


def enumerate_minus1(n: int) -> list[PicClass]:
    _check_n(n)
    return enumerate_classes(n, -1, -1)


def enumerate_roots(n: int) -> list[PicClass]:
    _check_n(n)
    return enumerate_classes(n, -2, 0)


def enumerate_by_multisets(n: int, square: int, k_dot: int, d_bound: int = 12) -> list[PicClass]:
    """Independent oracle: sorted multisets of multiplicities, then permutations.

    Bounds come from |m_i| <= sqrt(d^2 - square) alone, scanning |d| <= d_bound.
    """
    found: set[PicClass] = set()
    for d in range(-d_bound, d_bound + 1):
        q = d * d - square
        if q < 0:
            continue
        b = isqrt(q)

        def rec(k, prev, s, qq, acc):
            if k == 0:
                if s == k_dot + 3 * d and qq == q:
                    for perm in set(permutations(acc)):
                        found.add(PicClass(d, perm))
                return
            for v in range(prev, -b - 1, -1):
                if qq + v * v > q:
                    continue
                acc.append(v)
                rec(k - 1, v, s + v, qq + v * v, acc)
                acc.pop()

        rec(n, b, 0, 0, [])
    return sorted(found)


def count_by_multisets(n: int, square: int, k_dot: int, d_bound: int = 12) -> int:
    """Same search, counting permutations by multinomial coefficients."""
    total = 0
    for d in range(-d_bound, d_bound + 1):
        q = d * d - square
        if q < 0:
            continue
        b = isqrt(q)

        def rec(k, prev, s, qq, acc):
            nonlocal total
            if k == 0:
                if s == k_dot + 3 * d and qq == q:
                    c = factorial(n)
                    for v in set(acc):
                        c //= factorial(acc.count(v))
                    total += c
                return
            for v in range(prev, -b - 1, -1):
                if qq + v * v > q:
                    continue
                acc.append(v)
                rec(k - 1, v, s + v, qq + v * v, acc)
                acc.pop()

        rec(n, b, 0, 0, [])
    return total


def to_csv(classes) -> str:
    classes = list(classes)
    n = classes[0].n if classes else 0
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["d"] + [f"m{i}" for i in range(1, n + 1)])
    for c in classes:
        w.writerow([c.d, *c.m])
    return buf.getvalue()


# ------------------------------------------------------------- root systems


def is_root(c: PicClass) -> bool:
    return c.square == -2 and c.k_dot == 0


def is_positive(c: PicClass) -> bool:
    """Positivity for the lexicographic functional on (d, m_1, ..., m_n)."""
    for v in c.key():
        if v:
            return v > 0
    return False


def reflect(x: PicClass, alpha: PicClass) -> PicClass:
    # alpha^2 = -2, so s_alpha(x) = x + (x.alpha) alpha
    return x + alpha * inner(x, alpha)


def root_closure(roots) -> set[PicClass]:
    """Smallest reflection-closed set containing the roots (and negatives)."""
    todo = list(roots)
    closed: set[PicClass] = set()
    for r in todo:
        closed.add(r)
        closed.add(-r)
    frontier = list(closed)
    while frontier:
        new = []
        base = list(closed)
        for a in frontier:
            for b in base:
                c = reflect(b, a)
                if c not in closed:
                    closed.add(c)
                    new.append(c)
                c = reflect(a, b)
                if c not in closed:
                    closed.add(c)
                    new.append(c)
        frontier = new
    return closed


def simple_roots(system) -> list[PicClass]:
    pos = sorted(r for r in system if is_positive(r))
    pos_set = set(pos)
    simple = []
    for r in pos:
        if not any((r - a) in pos_set for a in pos if a != r):
            simple.append(r)
    return simple


def label_component(g: nx.Graph) -> str:
    """ADE label of a connected simply-laced Dynkin graph, from its arm lengths."""
    k = g.number_of_nodes()
    if g.number_of_edges() != k - 1 or not nx.is_connected(g):
        raise LatticeError("Dynkin graph component is not a tree")
    degs = dict(g.degree())
    if max(degs.values(), default=0) <= 2:
        return f"A{k}"
    branch = [v for v, d in degs.items() if d >= 3]
    if len(branch) != 1 or degs[branch[0]] != 3:
        raise LatticeError("not an ADE diagram")
    c = branch[0]
    h = g.copy()
    h.remove_node(c)
    arms = sorted(len(comp) for comp in nx.connected_components(h))
    if arms[0] == 1 and arms[1] == 1:
        return f"D{k}"
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return f"E{k}"
    raise LatticeError(f"arm lengths {arms} are not of ADE type")


def dynkin_graph(simple) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(len(simple)))
    for i in range(len(simple)):
        for j in range(i + 1, len(simple)):
            v = inner(simple[i], simple[j])
            if v == 0:
                continue
            if abs(v) != 1:
                raise LatticeError("simple roots with inner product other than 0, +-1")
            g.add_edge(i, j)
    return g


def _type_key(label: str) -> tuple:
    return (-int(label[1:]), label[0])


def format_type(components) -> str:
    if not components:
        return "smooth"
    return "+".join(sorted(components, key=_type_key))


@dataclass(frozen=True)
class RootDiagnosis:
    roots: tuple[PicClass, ...]
    components: tuple[str, ...]
    simple: tuple[PicClass, ...] = field(default=())

    @property
    def rank(self) -> int:
        return sum(int(c[1:]) for c in self.components)

    @property
    def label(self) -> str:
        return format_type(self.components)

    def to_dict(self) -> dict:
        return {
            "type": self.label,
            "components": list(self.components),
            "rank": self.rank,
            "roots": [str(r) for r in self.roots],
        }


def diagnosis_of_type(label: str) -> RootDiagnosis:
    """A diagnosis carrying only the ADE type (no explicit roots)."""
    if label in ("", "smooth"):
        return RootDiagnosis((), ())
    comps = tuple(sorted(label.split("+"), key=_type_key))
    for c in comps:
        if c[0] not in "ADE" or not c[1:].isdigit():
            raise LatticeError(f"bad ADE label {c!r}")
    return RootDiagnosis((), comps)


def classify_root_subsystem(roots) -> RootDiagnosis:
    roots = list(roots)
    for r in roots:
        if not is_root(r):
            raise LatticeError(f"{r} is not a root (C^2={r.square}, K.C={r.k_dot})")
    if not roots:
        return RootDiagnosis((), ())
    system = root_closure(roots)
    simple = simple_roots(system)
    g = dynkin_graph(simple)
    comps = [label_component(g.subgraph(c).copy()) for c in nx.connected_components(g)]
    return RootDiagnosis(tuple(sorted(set(roots))), tuple(sorted(comps, key=_type_key)), tuple(simple))


# ------------------------------------------------- singularities and verdicts


def type_threshold(label: str) -> int:
    """Smallest prime p for which the rational double point is strongly F-regular."""
    kind, k = label[0], int(label[1:])
    if kind == "A":
        return 2
    if kind == "D":
        return 3
    if kind == "E" and k in (6, 7):
        return 5
    if kind == "E" and k == 8:
        return 7
    raise LatticeError(f"unknown type {label}")


def _check_rank(K2: int, diagnosis: RootDiagnosis) -> None:
    if not 1 <= K2 <= 9:
        raise LatticeError(f"K^2 must be in 1..9, got {K2}")
    # rank <= 10 - K^2 - rho(X) with rho(X) >= 1
    if diagnosis.rank > 9 - K2:
        raise LatticeError(f"rank {diagnosis.rank} too large for K^2 = {K2}")


def strongly_f_regular_singularities(K2: int, p: int, diagnosis: RootDiagnosis) -> bool:
    _check_rank(K2, diagnosis)
    ok = all(p >= type_threshold(c) for c in diagnosis.components)
    if coarse_sfr_conditions(K2, p) and not ok:
        raise AssertionError(f"sufficient condition holds but {diagnosis.label} fails at p={p}")
    return ok


def coarse_sfr_conditions(K2: int, p: int) -> bool:
    """Coarse sufficient conditions for strongly F-regular canonical singularities."""
    return p > 5 or (K2 >= 2 and p > 3) or (K2 >= 4 and p > 2) or K2 >= 5


# extended Dynkin diagrams, for Borel-de Siebenthal subsystem enumeration
def _path(k: int) -> nx.Graph:
    return nx.path_graph(k)


def _dynkin(label: str) -> nx.Graph:
    kind, k = label[0], int(label[1:])
    if kind == "A":
        return _path(k)
    if kind == "D":
        g = _path(k - 1)
        g.add_edge(k - 3, k - 1)
        return g
    if kind == "E":
        g = _path(k - 1)
        g.add_edge(2, k - 1)
        return g
    raise LatticeError(label)


def _extended(label: str) -> nx.Graph:
    kind, k = label[0], int(label[1:])
    if kind == "A":
        return nx.cycle_graph(k + 1) if k >= 2 else nx.Graph([(0, 1)])
    g = _dynkin(label)
    x = k
    if kind == "D":
        g.add_edge(1, x)
    elif k == 6:
        g.add_edge(k - 1, x)
    elif k == 7:
        g.add_edge(0, x)
    else:
        g.add_edge(k - 2, x)
    return g


def _component_labels(g: nx.Graph) -> tuple[str, ...]:
    return tuple(label_component(g.subgraph(c).copy()) for c in nx.connected_components(g))


def _one_step(label: str) -> set[tuple[str, ...]]:
    """Maximal proper subsystems of one irreducible type (as label tuples)."""
    out = set()
    kind, k = label[0], int(label[1:])
    graphs = [_dynkin(label)]
    if not (kind == "A" and k == 1):
        graphs.append(_extended(label))
    for g in graphs:
        for v in list(g.nodes):
            h = g.copy()
            h.remove_node(v)
            labels = _component_labels(h) if h.number_of_nodes() else ()
            if labels != (label,):
                out.add(labels)
    return out


def _normalise(labels) -> tuple[str, ...]:
    return tuple(sorted((l for l in labels if l), key=_type_key))


@lru_cache(maxsize=None)
def root_subsystem_types(label: str) -> frozenset:
    """All types of root subsystems of a root system of the given type."""
    start = _normalise(label.split("+")) if label not in ("", "smooth") else ()
    seen = {start}
    todo = [start]
    while todo:
        cur = todo.pop()
        for i, comp in enumerate(cur):
            rest = cur[:i] + cur[i + 1 :]
            for sub in _one_step(comp):
                t = _normalise(rest + sub)
                if t not in seen:
                    seen.add(t)
                    todo.append(t)
    return frozenset(seen)


E_N_TYPE = {0: "", 1: "", 2: "A1", 3: "A2+A1", 4: "A4", 5: "D5", 6: "E6", 7: "E7", 8: "E8"}


def realizable_types(K2: int) -> list[tuple[str, ...]]:
    """Candidate singularity types of canonical del Pezzo surfaces of degree K2.

    Root subsystems of K^perp = E_{9-K2}; degree 8 also has the quadric cone
    (A1), whose resolution F_2 is not a blowup of P^2.
    """
    if not 1 <= K2 <= 9:
        raise LatticeError(f"K^2 must be in 1..9, got {K2}")
    types = set(root_subsystem_types(E_N_TYPE[9 - K2]))
    if K2 == 8:
        types.add(("A1",))
    return sorted(types, key=lambda t: (len(t), t))


def classification_verdict(K2: int, p: int, diagnosis: RootDiagnosis, f_split):
    """Combine singularity thresholds with F-splitting (GFR iff SFR and F-split)."""
    from .frobenius.theorems import CellStatus, theorem_verdict
    from .frobenius.verdict import GfrStatus

    sfr = strongly_f_regular_singularities(K2, p, diagnosis)
    if sfr and f_split is True:
        return GfrStatus.GUARANTEED
    if theorem_verdict(K2, p) is CellStatus.EXCEPTIONAL:
        return GfrStatus.COUNTEREXAMPLE_POSSIBLE_CELL
    if f_split is False or not sfr:
        return GfrStatus.NOT_GFR
    return GfrStatus.UNKNOWN_AT_BOUND
