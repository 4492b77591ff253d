"""Fedder-type membership tests and the bounded strong F-regularity search.

Everything reduces to one question: does a polynomial survive reduction
modulo the Frobenius power m^[q] = (x_0^q, ..., x_n^q)?
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from ..gfpoly import (
    DEFAULT_TERM_CAP,
    Poly,
    binary_power,
    derivative,
    mul,
    mul_truncated,
    product,
)
from ..gfpoly.poly import sort_key


@dataclass(frozen=True)
class FedderWitness:
    """A monomial of (prod f_i)^(q-1) not in m^[q], with its coefficient."""

    monomial: tuple[int, ...]
    coefficient: int
    names: tuple[str, ...]
    q: int

    def text(self) -> str:
        parts = []
        for n, e in zip(self.names, self.monomial):
            if e == 1:
                parts.append(n)
            elif e > 1:
                parts.append(f"{n}^{e}")
        return "*".join(parts) or "1"

    def to_dict(self) -> dict:
        return {
            "type": "fedder_witness",
            "monomial": list(self.monomial),
            "text": self.text(),
            "coefficient": self.coefficient,
            "q": self.q,
        }


def first_monomial(f: Poly) -> tuple[int, ...]:
    """Canonical-order first (graded-lex largest) monomial of f."""
    return max(f.terms, key=sort_key(f.ring.ambient))


def _witness(g: Poly, q: int) -> FedderWitness:
    m = first_monomial(g)
    return FedderWitness(m, g.terms[m], g.ring.names, q)


def fedder_residue(forms, e: int = 1, cap: int = DEFAULT_TERM_CAP) -> Poly:
    """(prod forms)^(p^e - 1) reduced modulo m^[p^e]."""
    forms = list(forms)
    if not forms:
        raise ValueError("at least one form required")
    p = forms[0].field.p
    q = p**e
    h = product(forms, cap=cap)
    return binary_power(h, q - 1, cap, trunc=q)


def fedder_fpure(forms, p: int | None = None, e: int = 1, cap: int = DEFAULT_TERM_CAP):
    """Fedder's criterion for the complete intersection cut out by ``forms``.

    Returns ``(is_f_pure, witness)``; the witness is the graded-lex-first
    surviving monomial, or None.
    """
    forms = list(forms)
    if p is not None and forms and forms[0].field.p != p:
        raise ValueError(f"forms live in characteristic {forms[0].field.p}, not {p}")
    if e < 1:
        raise ValueError("Frobenius exponent must be positive")
    r = fedder_residue(forms, e, cap)
    if r.is_zero():
        return False, None
    return True, _witness(r, forms[0].field.p ** e)


# ------------------------------------------------------------------ pairs

PAIR_BASES = {
    # base: (number of variables, anticanonical (multi)degree, grading)
    "P1": (2, (2,), ((1,), (1,))),
    "P2": (3, (3,), ((1,), (1,), (1,))),
    "P1xP1": (4, (2, 2), ((1, 0), (1, 0), (0, 1), (0, 1))),
}


class DegreeError(ValueError):
    pass


def _form_degree(f: Poly, grading) -> tuple[int, ...]:
    degs = set()
    for m in f.terms:
        d = [0] * len(grading[0])
        for e, g in zip(m, grading):
            for c in range(len(d)):
                d[c] += e * g[c]
        degs.add(tuple(d))
    if len(degs) != 1:
        raise DegreeError("boundary forms must be non-zero and homogeneous")
    return degs.pop()


def pair_fsplit(base: str, boundary_forms) -> tuple[bool, FedderWitness | None]:
    """F-splitting of (base, sum of the divisors of boundary_forms).

    The boundary must be anticanonical: total degree 2 on P1, 3 on P2,
    bidegree (2, 2) on P1xP1 (variables x0, x1, y0, y1).  All coefficients are
    one, so (p - 1) * boundary is integral.
    """
    if base not in PAIR_BASES:
        raise ValueError(f"unsupported base {base!r}")
    nvars, target, grading = PAIR_BASES[base]
    forms = list(boundary_forms)
    if not forms:
        raise DegreeError("empty boundary")
    total = [0] * len(target)
    for f in forms:
        if f.ring.nvars != nvars:
            raise DegreeError(f"{base} forms need {nvars} variables")
        d = _form_degree(f, grading)
        total = [a + b for a, b in zip(total, d)]
    if tuple(total) != target:
        raise DegreeError(f"boundary degree {tuple(total)} is not anticanonical {target} on {base}")
    return fedder_fpure(forms)


# ------------------------------------------------- strong F-regularity search


class _Span:
    """Row-echelon basis of a space of polynomials (as term dicts)."""

    def __init__(self, fld):
        self.fld = fld
        self.rows: dict[tuple, dict] = {}

    def reduce(self, g: dict) -> dict:
        fld = self.fld
        g = dict(g)
        changed = True
        while changed and g:
            changed = False
            for piv in sorted(set(g) & set(self.rows), reverse=True):
                c = g.get(piv)
                if not c:
                    continue
                row = self.rows[piv]
                for m, v in row.items():
                    nv = fld.sub(g.get(m, 0), fld.mul(c, v))
                    if nv:
                        g[m] = nv
                    else:
                        g.pop(m, None)
                changed = True
        return g

    def insert(self, g: dict) -> bool:
        g = self.reduce(g)
        if not g:
            return False
        piv = max(g)
        inv = self.fld.inv(g[piv])
        row = {m: self.fld.mul(inv, v) for m, v in g.items()}
        # keep rows fully reduced against the new pivot
        for key, other in list(self.rows.items()):
            c = other.get(piv)
            if c:
                new = dict(other)
                for m, v in row.items():
                    nv = self.fld.sub(new.get(m, 0), self.fld.mul(c, v))
                    if nv:
                        new[m] = nv
                    else:
                        new.pop(m, None)
                self.rows[key] = new
        self.rows[piv] = row
        return True

    def basis(self) -> list[dict]:
        return list(self.rows.values())


def _roots(g: dict, p: int) -> list[dict]:
    """The p-th root components u_mu(g), g = sum_mu x^mu u_mu(g)^p (F_p coefficients)."""
    parts: dict[tuple, dict] = {}
    for m, c in g.items():
        mu = tuple(e % p for e in m)
        nu = tuple(e // p for e in m)
        parts.setdefault(mu, {})[nu] = c
    return list(parts.values())


def _has_constant(g: dict, n: int) -> bool:
    return bool(g.get((0,) * n))


def survives_iterate(c: Poly, h: Poly, e_max: int, cap: int = DEFAULT_TERM_CAP):
    """Smallest e <= e_max with c * h^(p^e - 1) not in m^[p^e], else None.

    Uses c*h^(q-1) = (c*h^(p-1)) * (h^(p^(e-1)-1))^p and splits off p-th roots,
    so only polynomials of bounded degree are ever stored.
    """
    fld = h.field
    if fld.k != 1:
        raise ValueError("iterate search is implemented over prime fields")
    p = fld.p
    n = h.ring.nvars
    hp = binary_power(h, p - 1, cap)
    span = _Span(fld)
    span.insert(c.terms)
    for e in range(1, e_max + 1):
        nxt = _Span(fld)
        for g in span.basis():
            prod = mul(Poly._raw(h.ring, g), hp, cap).terms
            for part in _roots(prod, p):
                if _has_constant(part, n):
                    return e
                nxt.insert(part)
        if not nxt.rows:
            return None
        span = nxt
    return None


def survives_direct(c: Poly, h: Poly, e: int, cap: int = DEFAULT_TERM_CAP) -> bool:
    """Reference route: expand c*h^(q-1) modulo m^[q] directly."""
    q = h.field.p**e
    return not mul_truncated(c, binary_power(h, q - 1, cap, trunc=q), q, cap).is_zero()


def test_elements(forms) -> list[Poly]:
    """Elements c with R_c regular away from the singular locus of V(forms).

    Hypersurface: the non-zero partial derivatives.  Complete intersection of
    two forms: the non-zero 2x2 Jacobian minors not lying in the ideal.
    """
    forms = list(forms)
    n = forms[0].ring.nvars
    if len(forms) == 1:
        return [d for d in (derivative(forms[0], i) for i in range(n)) if not d.is_zero()]
    if len(forms) != 2:
        raise ValueError("test elements implemented for one or two forms")
    f, g = forms
    df = [derivative(f, i) for i in range(n)]
    dg = [derivative(g, i) for i in range(n)]
    out = []
    for a, b in combinations(range(n), 2):
        m = mul(df[a], dg[b]) - mul(df[b], dg[a])
        if m.is_zero() or _in_span(m, [f, g]):
            continue
        out.append(m)
    return out


def _in_span(m: Poly, gens) -> bool:
    span = _Span(m.field)
    for g in gens:
        span.insert(g.terms)
    return not span.reduce(m.terms)


@dataclass
class GfrSearchResult:
    status: str  # established_by_search | unknown_at_bound
    e_max: int
    e: int | None = None
    test_element: str | None = None
    per_element: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "e_max": self.e_max,
            "e": self.e,
            "test_element": self.test_element,
        }


def gfr_bounded_search(
    model_or_forms,
    e_max: int = 3,
    mode: str = "any",
    elements=None,
    cap: int = DEFAULT_TERM_CAP,
) -> GfrSearchResult:
    """Semi-decision for strong F-regularity of the cone (Glassbrenner-type).

    ``established_by_search`` when some test element c (``any`` mode) or every
    one (``all`` mode) satisfies c*(prod f)^(p^e-1) not in m^[p^e] for some
    e <= e_max.  Never returns a negative verdict.
    """
    if e_max < 1:
        raise ValueError("e_max must be >= 1")
    if mode not in ("any", "all"):
        raise ValueError("mode must be 'any' or 'all'")
    forms = list(getattr(model_or_forms, "forms", model_or_forms))
    h = product(forms, cap=cap)
    cands = list(elements) if elements is not None else test_elements(forms)
    result = GfrSearchResult("unknown_at_bound", e_max)
    if not cands:
        return result
    found = []
    for c in cands:
        e = survives_iterate(c, h, e_max, cap)
        result.per_element.append((str(c), e))
        if e is not None:
            found.append((e, c))
            if mode == "any":
                break
        elif mode == "all":
            return result
    if not found:
        return result
    e, c = min(found, key=lambda t: t[0]) if mode == "any" else max(found, key=lambda t: t[0])
    result.status = "established_by_search"
    result.e = e
    result.test_element = str(c)
    return result
