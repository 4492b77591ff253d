"""Search for F-splitting certificates of blowups of P^2 along short trees.

A certificate is an anticanonical boundary B on P^2 (three lines, or a conic
and a line) such that
  * every exceptional coefficient of Delta, K_X + Delta = f^*(K + B), is >= 0;
  * the pair (P^2, B) is F-split (Fedder on the product of the forms).
Then X is F-split.  Each boundary component is a general member of a linear
system |d H - sum_{i in S} e_i| with S an ancestor-closed set of nodes.

The conic-plus-line template carries the F_1 boundary C + D + F of a chain
P'' > P' > P > Q: blowing down C = E_Q turns D into a conic through Q with
tangent P and osculating point P', and the fibre F into a line through Q.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from ..frobenius.fedder import FedderWitness, pair_fsplit
from ..gfpoly import GF, P2, Poly, ring, to_string
from ..gfpoly.field import MAX_DEGREE
from .curves import LinearSystems, discrepancy, weak_dp_check
from .tree import PointTree, TreeError

MAX_CERT_NODES = 5
MAX_CHAIN = 4


class CertificateError(RuntimeError):
    pass


@dataclass
class BoundaryCertificate:
    field: GF
    forms: list[Poly]
    node_sets: list[tuple[str, ...]]
    tags: list[str]
    discrepancies: list[int]
    witness: FedderWitness
    template: str
    tree: PointTree = None
    notes: list[str] = field(default_factory=list)
    base: str = "P2"

    def to_dict(self) -> dict:
        return {
            "type": "boundary_certificate",
            "base": self.base,
            "field": {"p": self.field.p, "k": self.field.k},
            "template": self.template,
            "forms": [to_string(f) for f in self.forms],
            "components": [
                {"form": to_string(f), "through": list(s), "tag": t}
                for f, s, t in zip(self.forms, self.node_sets, self.tags)
            ],
            "discrepancies": dict(
                zip([n.name for n in self.tree.nodes], self.discrepancies)
            ),
            "witness": self.witness.to_dict(),
            "tree": self.tree.to_dict(),
            "notes": self.notes,
        }


def verify_certificate(tree: PointTree, cert: BoundaryCertificate) -> bool:
    """Independent re-check: Delta effective and (base, B) F-split."""
    if cert.base == "P1xP1":
        from .quadric import verify_p1xp1_certificate

        return verify_p1xp1_certificate(tree, cert)
    t = tree.over(cert.field) if tree.field is not cert.field else tree
    a = discrepancy(t, cert.forms)
    if any(v < 0 for v in a):
        return False
    ok, wit = pair_fsplit("P2", cert.forms)
    return ok and wit is not None


def certificate_from_dict(data: dict) -> tuple[PointTree, list[Poly]]:
    """Rebuild (tree, forms) from a serialised certificate for re-checking."""
    tree = PointTree.from_dict(data["tree"])
    fld = GF(int(data["field"]["p"]), int(data["field"]["k"]))
    tree = tree.over(fld)
    R = ring(fld, P2)
    return tree, [R.parse(s) for s in data["forms"]]


# ------------------------------------------------------------------ search


def ancestor_closed_sets(tree: PointTree) -> list[frozenset[int]]:
    n = len(tree)
    out = []
    for mask in range(1 << n):
        s = {i for i in range(n) if mask >> i & 1}
        if all(tree.nodes[i].parent is None or tree.nodes[i].parent in s for i in s):
            out.append(frozenset(s))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def _lower_bound_ok(tree: PointTree, sets) -> bool:
    V = tree.V
    n = len(tree)
    cnt = [sum(i in s for s in sets) for i in range(n)]
    return all(sum((cnt[i] - 1) * V[k][i] for i in range(n)) >= 0 for k in range(n))


TEMPLATES = (("triangle", (1, 1, 1)), ("conic+line", (2, 1)))


def candidate_templates(tree: PointTree, ls: LinearSystems):
    """(template, degrees, node sets) in search order, non-empty systems only."""
    sets = ancestor_closed_sets(tree)
    n = len(tree)
    cands = []
    for name, degs in TEMPLATES:
        if len(degs) == 3:
            combos = combinations_with_replacement(range(len(sets)), 3)
            groups = [tuple(sets[i] for i in c) for c in combos]
        else:
            groups = [(a, b) for a in sets for b in sets]
        for g in groups:
            if not _lower_bound_ok(tree, g):
                continue
            ok = True
            for d, s in zip(degs, g):
                m = tuple(1 if i in s else 0 for i in range(n))
                if ls.dimension(d, m) == 0:
                    ok = False
                    break
            if ok:
                cands.append((name, degs, g))
    return sorted(cands, key=lambda c: _preference(tree, c))


def _preference(tree: PointTree, cand) -> tuple:
    """Template first, then fewest incidences, fewest infinitely near nodes,
    and lines through more nodes listed first."""
    name, degs, sets = cand
    order = [n for n, _ in TEMPLATES].index(name)
    total = sum(len(s) for s in sets)
    near = sum(1 for s in sets for i in s if not tree.nodes[i].is_root)
    shape = tuple(sorted((tuple(sorted(s)) for s in sets), key=lambda t: (-len(t), t)))
    return (order, total, near, shape)


def _tag(tree: PointTree, d: int, s) -> str:
    kind = "line" if d == 1 else "conic"
    if not s:
        return f"general {kind}"
    return f"{kind} through " + ",".join(tree.nodes[i].name for i in sorted(s))


def _field_ladder(fld: GF) -> list[GF]:
    out = [fld]
    k = fld.k
    while 2 * k <= MAX_DEGREE:
        k *= 2
        out.append(GF(fld.p, k))
    return out


def _check_tree(tree: PointTree) -> None:
    if tree.base != "P2":
        raise TreeError("boundary certificates are searched on P^2 trees")
    if len(tree) > MAX_CERT_NODES:
        raise TreeError(f"certificate search handles at most {MAX_CERT_NODES} nodes")
    if any(tree.depth(k) >= MAX_CHAIN for k in range(len(tree))):
        raise TreeError(f"chains longer than {MAX_CHAIN} are not supported")


def find_boundary_certificate(
    tree: PointTree,
    retries: int = 8,
    seed: int = 0,
    draws: int = 4,
    check_weak_dp: bool = True,
) -> BoundaryCertificate | None:
    """First certificate in template order, or None after all retries.

    Each retry sweeps the templates, drawing ``draws`` general members per
    template; if every retry fails, the field is extended F_{p^k} ->
    F_{p^2k} (k <= 4) and the search repeats.
    """
    _check_tree(tree)
    if check_weak_dp and not weak_dp_check(tree):
        return None
    for fld in _field_ladder(tree.field):
        t = tree.over(fld)
        ls = LinearSystems(t)
        cands = candidate_templates(t, ls)
        n = len(t)
        for r in range(retries):
            rng = random.Random(f"{seed}:{fld.k}:{r}")
            for name, degs, sets in cands:
                for _ in range(draws):
                    forms = []
                    for d, s in zip(degs, sets):
                        m = tuple(1 if i in s else 0 for i in range(n))
                        g = ls.random_member(d, m, rng)
                        if g is None:
                            break
                        forms.append(g)
                    if len(forms) != len(degs):
                        continue
                    a = discrepancy(t, forms)
                    if any(v < 0 for v in a):
                        continue
                    ok, wit = pair_fsplit("P2", forms)
                    if not ok:
                        continue
                    names = [tuple(t.nodes[i].name for i in sorted(s)) for s in sets]
                    cert = BoundaryCertificate(
                        field=fld,
                        forms=forms,
                        node_sets=names,
                        tags=[_tag(t, d, s) for d, s in zip(degs, sets)],
                        discrepancies=a,
                        witness=wit,
                        template=name,
                        tree=t,
                    )
                    if name == "conic+line":
                        cert.notes.append(
                            "conic+line is the push-down to P^2 of a boundary C + D + F on F_1"
                        )
                    if fld is not tree.field:
                        cert.notes.append(f"general choices made over GF({fld.p}^{fld.k})")
                    return cert
    return None
