"""Sparse multivariate polynomials over finite fields.

A :class:`Poly` is an immutable map from exponent tuples to non-zero field
elements, attached to a :class:`Ring` (field + graded ambient).  The canonical
term order is descending by weighted degree, then by exponent tuple
(lexicographic); the first term in that order is the *leading* term.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import lru_cache

from .ambient import WeightedAmbient, weighted_projective
from .field import GF, FieldError

DEFAULT_TERM_CAP = 10**7
MAX_EXPONENT = 2**31 - 1


class PolyError(ValueError):
    """Malformed polynomial input or incompatible operands."""


class ResourceLimitError(RuntimeError):
    """An expansion exceeded the configured term cap."""


@dataclass(frozen=True)
class Ring:
    field: GF
    ambient: WeightedAmbient

    @property
    def nvars(self) -> int:
        return self.ambient.nvars

    @property
    def names(self) -> tuple[str, ...]:
        return self.ambient.names

    @property
    def p(self) -> int:
        return self.field.p

    def __repr__(self) -> str:
        return f"Ring({self.field!r}, {self.ambient.name})"

    def poly(self, terms) -> "Poly":
        return Poly(self, terms)

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {(0,) * self.nvars: 1})

    def gen(self, i) -> "Poly":
        if isinstance(i, str):
            i = self.names.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    def gens(self) -> list["Poly"]:
        return [self.gen(i) for i in range(self.nvars)]

    def const(self, c: int) -> "Poly":
        c = self.field.check(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def monomial(self, exps, coeff: int = 1) -> "Poly":
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise PolyError("exponent vector length does not match the ambient")
        return Poly(self, {exps: coeff} if coeff else {})

    def parse(self, text: str) -> "Poly":
        return parse(text, self)


def ring(p_or_field, ambient=None) -> Ring:
    fld = p_or_field if isinstance(p_or_field, GF) else GF(p_or_field)
    if ambient is None:
        raise PolyError("an ambient is required")
    if isinstance(ambient, (tuple, list)):
        ambient = weighted_projective(ambient)
    return Ring(fld, ambient)


class Poly:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms=None):
        self.ring = ring
        clean = {}
        n = ring.nvars
        q = ring.field.q
        for m, c in (terms or {}).items():
            m = tuple(int(e) for e in m)
            if len(m) != n:
                raise PolyError(f"monomial {m} has {len(m)} exponents, ambient has {n}")
            if any(e < 0 or e > MAX_EXPONENT for e in m):
                raise PolyError(f"exponent out of range in {m}")
            c = int(c)
            if ring.field.k == 1:
                c %= q
            elif not 0 <= c < q:
                raise FieldError(f"{c} is not an element of {ring.field}")
            if c:
                clean[m] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: Ring, terms: dict) -> "Poly":
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj._hash = None
        return obj

    # basic protocol

    @property
    def field(self) -> GF:
        return self.ring.field

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ring.const(other % self.field.p)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Poly({to_string(self)!r}, {self.ring!r})"

    def __str__(self) -> str:
        return to_string(self)

    def coeff(self, exps) -> int:
        return self.terms.get(tuple(exps), 0)

    def monomials(self) -> list[tuple[int, ...]]:
        return sorted_monomials(self)

    def leading(self) -> tuple[tuple[int, ...], int]:
        if not self.terms:
            raise PolyError("zero polynomial has no leading term")
        m = sorted_monomials(self)[0]
        return m, self.terms[m]

    def degrees(self) -> set[tuple[int, ...]]:
        amb = self.ring.ambient
        return {amb.degree_of(m) for m in self.terms}

    def weighted_degree(self) -> int:
        """Weighted degree; requires homogeneity."""
        ds = self.degrees()
        if len(ds) != 1:
            raise PolyError("polynomial is not homogeneous")
        amb = self.ring.ambient
        m = next(iter(self.terms))
        return amb.weighted_degree(m)

    def is_homogeneous(self, degree=None) -> bool:
        ds = self.degrees()
        if not ds:
            return True
        if len(ds) != 1:
            return False
        if degree is None:
            return True
        if isinstance(degree, int):
            degree = (degree,)
        return next(iter(ds)) == tuple(degree)

    # arithmetic

    def __add__(self, other):
        return add(self, _coerce(self, other))

    __radd__ = __add__

    def __neg__(self):
        return neg(self)

    def __sub__(self, other):
        return add(self, neg(_coerce(self, other)))

    def __rsub__(self, other):
        return add(_coerce(self, other), neg(self))

    def __mul__(self, other):
        if isinstance(other, int):
            return scale(self, self.field(other))
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return power(self, k)

    def __call__(self, *values):
        return evaluate(self, values)


def _coerce(f: Poly, other) -> Poly:
    if isinstance(other, Poly):
        return other
    if isinstance(other, int):
        return f.ring.const(f.field(other))
    raise TypeError(f"cannot combine Poly with {type(other).__name__}")


def _check_compatible(f: Poly, g: Poly) -> None:
    if f.ring.field is not g.ring.field:
        raise PolyError(f"field mismatch: {f.ring.field} vs {g.ring.field}")
    if f.ring.nvars != g.ring.nvars:
        raise PolyError(f"arity mismatch: {f.ring.nvars} vs {g.ring.nvars}")


def sort_key(ambient: WeightedAmbient):
    weights = ambient.weights

    def key(m):
        return (sum(e * w for e, w in zip(m, weights)), m)

    return key


def sorted_monomials(f: Poly) -> list[tuple[int, ...]]:
    return sorted(f.terms, key=sort_key(f.ring.ambient), reverse=True)


# ---------------------------------------------------------------- arithmetic


def add(f: Poly, g: Poly) -> Poly:
    _check_compatible(f, g)
    fld = f.field
    out = dict(f.terms)
    if fld.k == 1:
        p = fld.p
        for m, c in g.terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    else:
        for m, c in g.terms.items():
            v = fld.add(out.get(m, 0), c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return Poly._raw(f.ring, out)


def neg(f: Poly) -> Poly:
    fld = f.field
    return Poly._raw(f.ring, {m: fld.neg(c) for m, c in f.terms.items()})


def scale(f: Poly, c: int) -> Poly:
    fld = f.field
    if c == 0:
        return f.ring.zero()
    return Poly._raw(f.ring, {m: fld.mul(c, v) for m, v in f.terms.items()})


def mul(f: Poly, g: Poly, cap: int = DEFAULT_TERM_CAP) -> Poly:
    _check_compatible(f, g)
    return Poly._raw(f.ring, _mul_terms(f.terms, g.terms, f.field, None, cap))


def mul_truncated(f: Poly, g: Poly, q: int, cap: int = DEFAULT_TERM_CAP) -> Poly:
    """Product with every term having an exponent >= q discarded.

    Because (x_0^q, ..., x_n^q) is a monomial ideal, this is the normal form
    of f*g modulo it, and equals the reduction of the full product.
    """
    _check_compatible(f, g)
    return Poly._raw(f.ring, _mul_terms(f.terms, g.terms, f.field, q, cap))


def _mul_terms(a: dict, b: dict, fld: GF, trunc, cap: int) -> dict:
    if len(a) < len(b):
        a, b = b, a
    if trunc is not None:
        a = {m: c for m, c in a.items() if max(m, default=0) < trunc}
        b = {m: c for m, c in b.items() if max(m, default=0) < trunc}
    out: dict = {}
    get = out.get
    blist = list(b.items())
    if fld.k == 1:
        for ma, ca in a.items():
            for mb, cb in blist:
                m = tuple([x + y for x, y in zip(ma, mb)])
                if trunc is not None and max(m, default=0) >= trunc:
                    continue
                out[m] = get(m, 0) + ca * cb
            if len(out) > cap:
                raise ResourceLimitError(f"term cap {cap} exceeded during multiplication")
        p = fld.p
        return {m: c % p for m, c in out.items() if c % p}
    mulf, addf = fld.mul, fld.add
    for ma, ca in a.items():
        for mb, cb in blist:
            m = tuple([x + y for x, y in zip(ma, mb)])
            if trunc is not None and max(m, default=0) >= trunc:
                continue
            out[m] = addf(get(m, 0), mulf(ca, cb))
        if len(out) > cap:
            raise ResourceLimitError(f"term cap {cap} exceeded during multiplication")
    return {m: c for m, c in out.items() if c}


def _check_prime_power(q: int, p: int) -> int:
    e, r = 0, q
    while r > 1 and r % p == 0:
        r //= p
        e += 1
    if r != 1 or q < 1:
        raise PolyError(f"{q} is not a power of the characteristic {p}")
    return e


def frobenius_scale(f: Poly, q: int) -> Poly:
    """The q-th power of f computed as a Frobenius twist (q a power of p).

    Exponents are multiplied by q and coefficients raised to the q-th power;
    over F_p the latter is the identity.
    """
    _check_prime_power(q, f.field.p)
    fld = f.field
    if fld.k == 1:
        return Poly._raw(f.ring, {tuple(e * q for e in m): c for m, c in f.terms.items()})
    return Poly._raw(
        f.ring, {tuple(e * q for e in m): fld.pow(c, q) for m, c in f.terms.items()}
    )


def binary_power(f: Poly, k: int, cap: int = DEFAULT_TERM_CAP, trunc=None) -> Poly:
    if k < 0:
        raise PolyError("negative exponent")
    result = f.ring.one()
    base = f
    while k:
        if k & 1:
            result = Poly._raw(f.ring, _mul_terms(result.terms, base.terms, f.field, trunc, cap))
        k >>= 1
        if k:
            base = Poly._raw(f.ring, _mul_terms(base.terms, base.terms, f.field, trunc, cap))
    return result


def power(f: Poly, k: int, method: str = "auto", cap: int = DEFAULT_TERM_CAP) -> Poly:
    """Exact k-th power.

    ``auto`` splits k = p^e * m, raises to m by repeated squaring and applies
    the Frobenius twist for p^e.  ``binary`` uses repeated squaring only.
    ``division`` requires k + 1 = p^e and returns frobenius_scale(f, p^e) / f
    through exact division.
    """
    if k < 0:
        raise PolyError("negative exponent")
    p = f.field.p
    if method == "binary":
        return binary_power(f, k, cap)
    if method == "division":
        _check_prime_power(k + 1, p)
        if f.is_zero():
            return f.ring.one() if k == 0 else f
        return exact_divide(frobenius_scale(f, k + 1), f, cap)
    if method != "auto":
        raise PolyError(f"unknown power method {method!r}")
    if k == 0:
        return f.ring.one()
    q = 1
    while k % p == 0:
        k //= p
        q *= p
    g = binary_power(f, k, cap)
    return frobenius_scale(g, q) if q > 1 else g


def exact_divide(f: Poly, g: Poly, cap: int = DEFAULT_TERM_CAP) -> Poly:
    """Quotient f / g; raises PolyError unless g divides f exactly."""
    _check_compatible(f, g)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    fld = f.field
    # plain lexicographic order is a monomial order, so division terminates
    glead = max(g.terms)
    ginv = fld.inv(g.terms[glead])
    gterms = list(g.terms.items())
    rem = dict(f.terms)
    quot: dict = {}
    while rem:
        m = max(rem)
        if any(a < b for a, b in zip(m, glead)):
            raise PolyError("not divisible")
        qm = tuple(a - b for a, b in zip(m, glead))
        qc = fld.mul(rem[m], ginv)
        quot[qm] = qc
        for gm, gc in gterms:
            mm = tuple(a + b for a, b in zip(qm, gm))
            v = fld.sub(rem.get(mm, 0), fld.mul(qc, gc))
            if v:
                rem[mm] = v
            else:
                rem.pop(mm, None)
        if len(quot) > cap:
            raise ResourceLimitError(f"term cap {cap} exceeded during division")
    return Poly._raw(f.ring, quot)


def frobenius_reduce(f: Poly, q: int) -> Poly:
    """Normal form of f modulo the Frobenius power (x_0^q, ..., x_n^q)."""
    _check_prime_power(q, f.field.p)
    return Poly._raw(f.ring, {m: c for m, c in f.terms.items() if max(m, default=0) < q})


def derivative(f: Poly, i) -> Poly:
    if isinstance(i, str):
        i = f.ring.names.index(i)
    fld = f.field
    out = {}
    for m, c in f.terms.items():
        e = m[i]
        if e % fld.p == 0:
            continue
        mm = m[:i] + (e - 1,) + m[i + 1 :]
        out[mm] = fld.scalar_mul(e % fld.p, c)
    return Poly._raw(f.ring, out)


def evaluate(f: Poly, values) -> int:
    fld = f.field
    values = list(values)
    if len(values) != f.ring.nvars:
        raise PolyError("wrong number of values")
    total = 0
    for m, c in f.terms.items():
        v = c
        for x, e in zip(values, m):
            if e:
                v = fld.mul(v, fld.pow(x, e))
                if v == 0:
                    break
        total = fld.add(total, v)
    return total


def substitute(f: Poly, images, cap: int = DEFAULT_TERM_CAP) -> Poly:
    """Compose f with polynomials: x_i -> images[i] (all in a common ring)."""
    images = list(images)
    if len(images) != f.ring.nvars:
        raise PolyError("one image per variable required")
    target = images[0].ring
    powers: list[dict[int, Poly]] = [dict() for _ in images]

    def pw(i, e):
        if e not in powers[i]:
            powers[i][e] = power(images[i], e, method="binary", cap=cap)
        return powers[i][e]

    out = target.zero()
    for m, c in f.terms.items():
        t = target.const(c) if target.field is f.field else None
        if t is None:
            raise PolyError("substitution must stay in the same field")
        for i, e in enumerate(m):
            if e:
                t = mul(t, pw(i, e), cap)
        out = add(out, t)
    return out


def change_ring(f: Poly, target: Ring, embed=None) -> Poly:
    """Move f to another ring with the same number of variables.

    ``embed`` maps coefficients (e.g. a field embedding table).
    """
    if target.nvars != f.ring.nvars:
        raise PolyError("arity mismatch")
    if embed is None:
        if target.field is not f.field:
            raise PolyError("a coefficient embedding is needed to change fields")
        return Poly._raw(target, dict(f.terms))
    return Poly(target, {m: embed[c] for m, c in f.terms.items()})


def product(polys, ring_: Ring | None = None, cap: int = DEFAULT_TERM_CAP) -> Poly:
    polys = list(polys)
    if not polys:
        if ring_ is None:
            raise PolyError("empty product needs a ring")
        return ring_.one()
    out = polys[0]
    for g in polys[1:]:
        out = mul(out, g, cap)
    return out


# ---------------------------------------------------------------- sampling


def random_form(ambient: WeightedAmbient, degree, seed, field=None, p: int | None = None) -> Poly:
    """Uniformly random form of the given weighted degree.

    Every monomial of that degree gets an independent uniform coefficient from
    the field (zero included).  The result depends only on (ambient, degree,
    field, seed).
    """
    fld = field if field is not None else GF(p)
    monos = ambient.monomials(degree)
    if not monos:
        raise PolyError(f"no monomials of degree {degree} in {ambient.name}")
    rng = random.Random(_seed_int(seed))
    return Poly(Ring(fld, ambient), {m: rng.randrange(fld.q) for m in monos})


def _seed_int(seed) -> int:
    if isinstance(seed, int):
        return seed
    # stable across interpreter runs, unlike hash()
    import hashlib

    return int.from_bytes(hashlib.sha256(repr(seed).encode()).digest()[:8], "big")


# ---------------------------------------------------------------- text I/O


def _format_coeff(fld: GF, c: int) -> str:
    if fld.k == 1 or c < fld.p:
        return str(c)
    return "(" + fld.format(c) + ")"


def to_string(f: Poly) -> str:
    if not f.terms:
        return "0"
    names = f.ring.names
    parts = []
    for m in sorted_monomials(f):
        c = f.terms[m]
        factors = []
        for name, e in zip(names, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if c != 1 or not factors:
            factors.insert(0, _format_coeff(f.field, c))
        parts.append("*".join(factors))
    return " + ".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|(\+)|(-)|(\()|(\)))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolyError(f"unexpected character {text[pos]!r} at column {pos + 1}")
        kinds = ("int", "name", "^", "*", "+", "-", "(", ")")
        for kind, val in zip(kinds, m.groups()):
            if val is not None:
                out.append((kind, val, m.start(m.lastindex) + 1))
                break
        pos = m.end()
    return out


def parse(text: str, ring_: Ring) -> Poly:
    """Parse ``3*x^2*y + w`` style literals.

    Coefficients are integers (reduced mod p); over F_{p^k} a parenthesised
    polynomial in the generator ``a`` is also accepted, e.g. ``(2*a+1)*x``.
    """
    toks = _tokenize(text)
    fld = ring_.field
    names = ring_.names
    i = 0

    def peek():
        return toks[i] if i < len(toks) else ("end", "", len(text) + 1)

    def take(kind):
        nonlocal i
        t = peek()
        if t[0] != kind:
            raise PolyError(f"expected {kind!r} at column {t[2]}, found {t[1]!r}")
        i += 1
        return t

    def exponent():
        if peek()[0] == "^":
            take("^")
            return int(take("int")[1])
        return 1

    def coeff_expr():
        # polynomial in the generator a, evaluated in the field
        total = 0
        sign = 1
        first = True
        while True:
            t = peek()
            if t[0] in "+-":
                take(t[0])
                sign = -1 if t[0] == "-" else 1
            elif not first:
                break
            first = False
            c, deg = 1, 0
            while True:
                t = peek()
                if t[0] == "int":
                    c = c * int(take("int")[1])
                elif t[0] == "name" and t[1] == "a":
                    take("name")
                    deg += exponent()
                else:
                    raise PolyError(f"bad coefficient term at column {t[2]}")
                if peek()[0] == "*":
                    take("*")
                    continue
                break
            if deg and fld.k == 1:
                raise PolyError("generator 'a' only exists in extension fields")
            term = fld(sign * c)
            if deg:
                term = fld.mul(term, fld.pow(fld.generator(), deg))
            total = fld.add(total, term)
            if peek()[0] not in "+-":
                break
        return total

    def term():
        c = 1
        exps = [0] * len(names)
        while True:
            t = peek()
            if t[0] == "int":
                take("int")
                c = fld.mul(c, fld(int(t[1])))
            elif t[0] == "name":
                take("name")
                if t[1] not in names:
                    raise PolyError(f"unknown variable {t[1]!r} at column {t[2]}")
                exps[names.index(t[1])] += exponent()
            elif t[0] == "(":
                take("(")
                c = fld.mul(c, coeff_expr())
                take(")")
            else:
                raise PolyError(f"expected a factor at column {t[2]}, found {t[1]!r}")
            if peek()[0] == "*":
                take("*")
                continue
            return tuple(exps), c

    if not toks:
        raise PolyError("empty polynomial literal")
    out = ring_.zero()
    sign = 1
    if peek()[0] == "-":
        take("-")
        sign = -1
    while True:
        m, c = term()
        if sign < 0:
            c = fld.neg(c)
        out = add(out, Poly._raw(ring_, {m: c} if c else {}))
        t = peek()
        if t[0] == "end":
            break
        if t[0] not in "+-":
            raise PolyError(f"unexpected {t[1]!r} at column {t[2]}")
        take(t[0])
        sign = -1 if t[0] == "-" else 1
    return out


@lru_cache(maxsize=None)
def multinomial(n: int, parts: tuple[int, ...]) -> int:
    from math import factorial

    if sum(parts) != n:
        raise ValueError("parts must sum to n")
    out = factorial(n)
    for k in parts:
        out //= factorial(k)
    return out
