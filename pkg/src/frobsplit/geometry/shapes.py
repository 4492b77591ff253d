"""Random point trees of the five degree-5 configuration shapes (and five
distinct points, degree 4)."""

from __future__ import annotations

import random

from ..gfpoly import GF
from .tree import Node, PointTree, normalise_direction, normalise_point

# (name, parent name or None) in blowup order
SHAPES = {
    "i": [("P", None), ("Q", None), ("R", None), ("S", None)],
    "ii": [("P", None), ("P'", "P"), ("Q", None), ("R", None)],
    "iii": [("P", None), ("P'", "P"), ("Q", None), ("Q'", "Q")],
    "iv": [("P", None), ("P'", "P"), ("P''", "P'"), ("Q", None)],
    "v": [("Q", None), ("P", "Q"), ("P'", "P"), ("P''", "P'")],
    "five": [("P1", None), ("P2", None), ("P3", None), ("P4", None), ("P5", None)],
}


def random_point(fld: GF, rng: random.Random) -> tuple[int, int, int]:
    while True:
        pt = [rng.randrange(fld.q) for _ in range(3)]
        if any(pt):
            return normalise_point(fld, pt)


def random_direction(fld: GF, rng: random.Random) -> tuple[int, int]:
    # uniform on P^1(F_q): q affine directions plus [0:1]
    t = rng.randrange(fld.q + 1)
    return (0, 1) if t == fld.q else normalise_direction(fld, (1, t))


def random_tree(shape: str, fld: GF, rng: random.Random) -> PointTree:
    """A random tree of the given shape; it need not be weak del Pezzo."""
    if shape not in SHAPES:
        raise ValueError(f"unknown shape {shape!r}; known: {sorted(SHAPES)}")
    layout = SHAPES[shape]
    for _ in range(1000):
        nodes: list[Node] = []
        names = [name for name, _ in layout]
        roots: set = set()
        ok = True
        for name, parent in layout:
            if parent is None:
                pt = random_point(fld, rng)
                if pt in roots:
                    ok = False
                    break
                roots.add(pt)
                nodes.append(Node(name, None, pt, None))
            else:
                nodes.append(Node(name, names.index(parent), None, random_direction(fld, rng)))
        if ok:
            return PointTree(fld, tuple(nodes))
    raise RuntimeError(f"could not place {len(layout)} distinct points over {fld}")
