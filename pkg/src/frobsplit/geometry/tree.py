"""Point trees on P^2 (with infinitely near points) and their blowup charts.

A root node is a point of P^2(F_q).  A child node is a point on the
exceptional curve of its parent, given as a direction [alpha:beta] in the
parent's local frame (u, v).  For a root the frame is the affine chart where
the last non-zero coordinate is 1, with u, v the other two coordinates (in
index order) minus the point's values.  For a child the frame comes from the
blowup chart, and {u = 0} is always the parent's exceptional curve:

    [1:t]  ->  (u, v) = (u', u'(v' + t))
    [0:1]  ->  (u, v) = (u'v', u')

So a child with direction [0:1] of a non-root node lies on the strict
transform of the grandparent's exceptional curve.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from math import comb

from ..gfpoly import GF, P2, Poly, embedding, ring

MAX_NODES = 8


class TreeError(ValueError):
    pass


_TERM = re.compile(r"([+-])(\d*)(\*?a(?:\^(\d+))?)?")


def parse_element(fld: GF, value) -> int:
    """Field element from an int code or a polynomial string in ``a``."""
    if isinstance(value, bool):
        raise TreeError("booleans are not field elements")
    if isinstance(value, int):
        return value % fld.p if fld.k == 1 else fld.check(value)
    text = str(value).replace(" ", "")
    if not text:
        raise TreeError("empty field element")
    if text[0] not in "+-":
        text = "+" + text
    acc = 0
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3)):
            raise TreeError(f"cannot parse field element {value!r}")
        coef = int(m.group(2)) if m.group(2) else 1
        if m.group(1) == "-":
            coef = -coef
        e = 0
        if m.group(3):
            if fld.k == 1:
                raise TreeError(f"{value!r} uses a generator, but the field is prime")
            e = int(m.group(4)) if m.group(4) else 1
        x = fld.pow(fld.generator(), e) if e else 1
        acc = fld.add(acc, fld.mul(fld(coef), x))
        pos = m.end()
    return acc


def format_element(fld: GF, a: int):
    return a if fld.k == 1 else fld.format(a)


@dataclass(frozen=True)
class Node:
    name: str
    parent: int | None = None
    point: tuple[int, int, int] | None = None
    direction: tuple[int, int] | None = None

    @property
    def is_root(self) -> bool:
        return self.parent is None


def normalise_point(fld: GF, pt) -> tuple[int, int, int]:
    pt = tuple(int(c) for c in pt)
    if len(pt) != 3:
        raise TreeError("P^2 points need three coordinates")
    nz = [i for i, c in enumerate(pt) if c]
    if not nz:
        raise TreeError("the zero vector is not a point")
    inv = fld.inv(pt[nz[-1]])
    return tuple(fld.mul(inv, c) for c in pt)


def normalise_direction(fld: GF, d) -> tuple[int, int]:
    a, b = (int(c) for c in d)
    if a:
        return (1, fld.div(b, a))
    if b:
        return (0, 1)
    raise TreeError("the zero vector is not a direction")


# ------------------------------------------------------------ bivariate polys
# dict {(i, j): c} for sum c u^i v^j over F_q


def _badd(fld, acc: dict, key, c) -> None:
    v = fld.add(acc.get(key, 0), c)
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _binomial_row(fld: GF, t: int, e: int) -> list[int]:
    """Coefficients of (x + t)^e, index = power of x."""
    return [fld.mul(fld(comb(e, i)), fld.pow(t, e - i)) if t or i == e else 0 for i in range(e + 1)]


def chart_map(fld: GF, f: dict, direction, trunc=None) -> dict:
    """Pull a local equation back along the blowup chart of ``direction``."""
    out: dict = {}
    a, t = direction
    for (i, j), c in f.items():
        if a:
            # u^i v^j -> u^(i+j) (v + t)^j
            for k, b in enumerate(_binomial_row(fld, t, j)):
                if b and (trunc is None or i + j + k < trunc):
                    _badd(fld, out, (i + j, k), fld.mul(c, b))
        else:
            # u^i v^j -> u^(i+j) v^i
            if trunc is None or 2 * i + j < trunc:
                _badd(fld, out, (i + j, i), c)
    return out


def multiplicity(f: dict) -> int | None:
    return min((i + j for i, j in f), default=None)


@dataclass(frozen=True)
class PointTree:
    field: GF
    nodes: tuple[Node, ...]
    base: str = "P2"

    def __post_init__(self):
        if self.base not in ("P2", "P1xP1"):
            raise TreeError(f"unknown base {self.base!r}")
        if len(self.nodes) > MAX_NODES:
            raise TreeError(f"{len(self.nodes)} nodes; at most {MAX_NODES} allowed")
        names = [n.name for n in self.nodes]
        if len(set(names)) != len(names):
            raise TreeError("node names must be distinct")
        roots, kids = set(), set()
        for i, n in enumerate(self.nodes):
            if n.is_root:
                if n.point is None or n.direction is not None:
                    raise TreeError(f"root {n.name} needs a point and no direction")
                if n.point in roots:
                    raise TreeError(f"root {n.name} repeats an earlier point")
                roots.add(n.point)
            else:
                if not 0 <= n.parent < i:
                    raise TreeError(f"node {n.name} must come after its parent")
                if n.direction is None or n.point is not None:
                    raise TreeError(f"node {n.name} needs a direction and no point")
                key = (n.parent, n.direction)
                if key in kids:
                    raise TreeError(f"node {n.name} repeats a sibling")
                kids.add(key)
        if self.base == "P1xP1" and any(not n.is_root for n in self.nodes):
            raise TreeError("P1xP1 trees support distinct points only")

    def __len__(self) -> int:
        return len(self.nodes)

    # ------------------------------------------------------------ structure
    def index(self, name: str) -> int:
        for i, n in enumerate(self.nodes):
            if n.name == name:
                return i
        raise KeyError(name)

    def path(self, k: int) -> list[int]:
        """Node indices from the root down to k."""
        out = [k]
        while self.nodes[out[-1]].parent is not None:
            out.append(self.nodes[out[-1]].parent)
        return out[::-1]

    def ancestors(self, k: int) -> list[int]:
        return self.path(k)[:-1]

    def depth(self, k: int) -> int:
        return len(self.path(k)) - 1

    @cached_property
    def V(self) -> list[list[int]]:
        """V[k][i] = order of the total transform of E_i along E_k."""
        n = len(self.nodes)
        fld = self.field
        V = [[0] * n for _ in range(n)]
        for k in range(n):
            V[k][k] = 1
            path = self.path(k)
            for pos, i in enumerate(path[:-1]):
                f = {(1, 0): 1}
                for c in path[pos + 2 :]:
                    f = chart_map(fld, f, self.nodes[c].direction)
                V[k][i] = multiplicity(f)
        return V

    # --------------------------------------------------------- local charts
    def root_chart(self, g: Poly, root: int, trunc=None) -> dict:
        fld = self.field
        pt = self.nodes[root].point
        j = max(i for i in range(3) if pt[i])
        others = [i for i in range(3) if i != j]
        out: dict = {}
        for m, c in g.terms.items():
            eu, ev = m[others[0]], m[others[1]]
            ru = _binomial_row(fld, pt[others[0]], eu)
            rv = _binomial_row(fld, pt[others[1]], ev)
            for a, ca in enumerate(ru):
                if not ca:
                    continue
                for b, cb in enumerate(rv):
                    if cb and (trunc is None or a + b < trunc):
                        _badd(fld, out, (a, b), fld.mul(c, fld.mul(ca, cb)))
        return out

    def local_equation(self, g: Poly, k: int, trunc=None) -> dict:
        """g pulled back (total transform) to the frame centred at node k."""
        path = self.path(k)
        f = self.root_chart(g, path[0], trunc)
        for c in path[1:]:
            f = chart_map(self.field, f, self.nodes[c].direction, trunc)
        return f

    def order(self, g: Poly, k: int) -> int:
        """ord along E_k of the total transform of the curve g = 0."""
        m = multiplicity(self.local_equation(g, k))
        if m is None:
            raise TreeError("the zero form has no order")
        return m

    # ------------------------------------------------------------ fields
    def over(self, big: GF) -> "PointTree":
        """The same configuration over an extension field."""
        if big is self.field:
            return self
        if big.p != self.field.p or big.k % self.field.k:
            raise TreeError(f"{big} does not contain {self.field}")
        emb = embedding(self.field, big)
        if self.base == "P1xP1":
            from .quadric import p1xp1_tree

            pts = [
                (tuple(emb[c] for c in n.point[:2]), tuple(emb[c] for c in n.point[2:]))
                for n in self.nodes
            ]
            return p1xp1_tree(big, pts, [n.name for n in self.nodes])
        nodes = tuple(
            Node(
                n.name,
                n.parent,
                tuple(emb[c] for c in n.point) if n.point else None,
                tuple(emb[c] for c in n.direction) if n.direction else None,
            )
            for n in self.nodes
        )
        return PointTree(big, nodes, self.base)

    def ring(self):
        return ring(self.field, P2)

    # ------------------------------------------------------------ I/O
    def to_dict(self) -> dict:
        fld = self.field
        nodes = []
        for n in self.nodes:
            d: dict = {"name": n.name}
            if n.is_root and self.base == "P1xP1":
                x0, x1, y0, y1 = (format_element(fld, c) for c in n.point)
                d["point"] = [[x0, x1], [y0, y1]]
            elif n.is_root:
                d["point"] = [format_element(fld, c) for c in n.point]
            else:
                d["parent"] = self.nodes[n.parent].name
                d["direction"] = [format_element(fld, c) for c in n.direction]
            nodes.append(d)
        return {"base": self.base, "p": fld.p, "k": fld.k, "nodes": nodes}

    @classmethod
    def from_dict(cls, data: dict) -> "PointTree":
        try:
            fld = GF(int(data["p"]), int(data.get("k", 1)))
        except KeyError as exc:
            raise TreeError(f"missing key {exc}") from None
        base = str(data.get("base", "P2"))
        if base == "P1xP1":
            from .quadric import p1xp1_tree

            pts = [
                (tuple(parse_element(fld, c) for c in nd["point"][0]),
                 tuple(parse_element(fld, c) for c in nd["point"][1]))
                for nd in data.get("nodes", [])
            ]
            names = [str(nd.get("name", f"Q{i + 1}")) for i, nd in enumerate(data.get("nodes", []))]
            return p1xp1_tree(fld, pts, names)
        raw = list(data.get("nodes", []))
        names = [str(nd.get("name", f"N{i + 1}")) for i, nd in enumerate(raw)]
        nodes = []
        for nd, name in zip(raw, names):
            if "parent" in nd:
                parent = str(nd["parent"])
                if parent not in names[: len(nodes)]:
                    raise TreeError(f"node {name}: unknown or later parent {parent!r}")
                direction = normalise_direction(fld, [parse_element(fld, c) for c in nd["direction"]])
                nodes.append(Node(name, names.index(parent), None, direction))
            else:
                if "point" not in nd:
                    raise TreeError(f"node {name} needs a point or a parent")
                pt = normalise_point(fld, [parse_element(fld, c) for c in nd["point"]])
                nodes.append(Node(name, None, pt, None))
        return cls(fld, tuple(nodes), "P2")


def make_tree(fld: GF, layout) -> PointTree:
    """Build a P^2 tree from (name, point) and (name, parent_name, direction) tuples."""
    nodes: list[Node] = []
    names: list[str] = []
    for item in layout:
        if len(item) == 2:
            name, pt = item
            nodes.append(Node(name, None, normalise_point(fld, pt), None))
        else:
            name, parent, d = item
            nodes.append(Node(name, names.index(parent), None, normalise_direction(fld, d)))
        names.append(name)
    return PointTree(fld, tuple(nodes))
