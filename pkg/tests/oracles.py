"""Independent reference computations used by the tests.

Nothing here imports the package: polynomials are plain dicts
{exponent tuple: int} and arithmetic is schoolbook modulo p.
"""

from __future__ import annotations

from math import factorial


def dense_mul(a: dict, b: dict, p: int, below: int | None = None) -> dict:
    """Product modulo p; with ``below`` set, drop monomials with an exponent >= below."""
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            if below is not None and max(m) >= below:
                continue
            out[m] = (out.get(m, 0) + ca * cb) % p
    return {m: c for m, c in out.items() if c}


def dense_power(f: dict, k: int, p: int, nvars: int) -> dict:
    out = {(0,) * nvars: 1}
    for _ in range(k):
        out = dense_mul(out, f, p)
    return out


def dense_fpure(polys: list[dict], p: int, nvars: int, e: int = 1) -> bool:
    """(prod f)^(q-1) has a monomial with every exponent below q."""
    q = p**e
    h = {(0,) * nvars: 1}
    for f in polys:
        h = dense_mul(h, f, p)
    g = dense_power(h, q - 1, p, nvars)
    return any(max(m) < q for m in g)


def dense_survives(c: dict, polys: list[dict], p: int, nvars: int, e: int) -> bool:
    """c * (prod f)^(q-1) has a monomial with every exponent below q."""
    q = p**e
    h = {(0,) * nvars: 1}
    for f in polys:
        h = dense_mul(h, f, p, q)
    g = dict(c)
    for _ in range(q - 1):
        g = dense_mul(g, h, p, q)
    return bool(g)


def multinomial(n: int, parts) -> int:
    out = factorial(n)
    for k in parts:
        out //= factorial(k)
    return out


def count_monomials(weights, degree: int) -> int:
    """Number of exponent vectors with sum w_i e_i = degree (dynamic programming)."""
    ways = [1] + [0] * degree
    for w in weights:
        for d in range(w, degree + 1):
            ways[d] += ways[d - w]
    return ways[degree]
