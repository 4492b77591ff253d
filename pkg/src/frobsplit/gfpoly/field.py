"""Finite fields F_p and F_{p^k} (k <= 4) with integer-coded elements.

An element of F_{p^k} is stored as an int in [0, p^k) whose base-p digits are
the coefficients (constant term first) of a polynomial in the generator ``a``
modulo a fixed primitive polynomial.  For k == 1 this is plain arithmetic mod p.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

MAX_PRIME = 97
MAX_DEGREE = 4
# log/exp tables are built only up to this order
TABLE_LIMIT = 1 << 20


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _polymulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    """Multiply coefficient lists (constant first) modulo a monic ``mod``."""
    k = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for i in range(len(prod) - 1, k - 1, -1):
        c = prod[i]
        if c:
            for j in range(k + 1):
                prod[i - k + j] = (prod[i - k + j] - c * mod[j]) % p
    prod = prod[:k] + [0] * max(0, k - len(prod))
    return prod[:k]


def _polypowmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    k = len(mod) - 1
    result = [1] + [0] * (k - 1)
    b = (base + [0] * k)[:k]
    while e:
        if e & 1:
            result = _polymulmod(result, b, mod, p)
        b = _polymulmod(b, b, mod, p)
        e >>= 1
    return result


@lru_cache(maxsize=None)
def primitive_polynomial(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically first monic primitive polynomial of degree k over F_p.

    Returned as coefficients, constant term first, leading 1 last.  The choice
    is deterministic, in the spirit of Conway polynomials (without their
    compatibility conditions).
    """
    if k == 1:
        # x - g for the smallest primitive root g
        g = primitive_root(p)
        return ((-g) % p, 1)
    order = p**k - 1
    factors = prime_factors(order)
    one = [1] + [0] * (k - 1)
    x = [0, 1] + [0] * (k - 2)
    for tail in product(range(p), repeat=k):
        # tail[0] is the constant term; skip reducible-at-zero candidates
        if tail[0] == 0:
            continue
        mod = list(tail) + [1]
        if _polypowmod(x, order, mod, p) != one:
            continue
        if all(_polypowmod(x, order // r, mod, p) != one for r in factors):
            return tuple(mod)
    raise FieldError(f"no primitive polynomial of degree {k} over F_{p}")


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    if p == 2:
        return 1
    factors = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in factors):
            return g
    raise FieldError(f"no primitive root mod {p}")


class GF:
    """The finite field with p**k elements.

    Instances are cached: ``GF(7) is GF(7)``.
    """

    _cache: dict[tuple[int, int], "GF"] = {}

    def __new__(cls, p: int, k: int = 1):
        key = (int(p), int(k))
        if key in cls._cache:
            return cls._cache[key]
        if not is_prime(p) or p > MAX_PRIME:
            raise FieldError(f"characteristic must be a prime <= {MAX_PRIME}, got {p}")
        if not 1 <= k <= MAX_DEGREE:
            raise FieldError(f"extension degree must be in 1..{MAX_DEGREE}, got {k}")
        obj = super().__new__(cls)
        obj.p = key[0]
        obj.k = key[1]
        obj.q = obj.p**obj.k
        obj.modulus = primitive_polynomial(obj.p, obj.k)
        obj._exp = None
        obj._log = None
        cls._cache[key] = obj
        return obj

    def __reduce__(self):
        return (GF, (self.p, self.k))

    def __repr__(self) -> str:
        return f"GF({self.p})" if self.k == 1 else f"GF({self.p}^{self.k})"

    @property
    def is_prime_field(self) -> bool:
        return self.k == 1

    # element <-> digit conversions

    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_digits(self, ds) -> int:
        v = 0
        for d in reversed(list(ds)):
            v = v * self.p + (d % self.p)
        return v

    def __call__(self, value: int) -> int:
        """Embed an integer (through F_p) into the field."""
        return int(value) % self.p

    def elements(self) -> range:
        return range(self.q)

    def check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise FieldError(f"{a} is not an element of {self}")
        return a

    # tables

    def _build_tables(self) -> None:
        if self.q > TABLE_LIMIT:
            raise FieldError(f"{self} too large for log tables")
        exp = np.zeros(2 * self.q, dtype=np.int64)
        log = np.full(self.q, -1, dtype=np.int64)
        if self.k == 1:
            g = primitive_root(self.p)
            v = 1
            for i in range(self.q - 1):
                exp[i] = v
                log[v] = i
                v = v * g % self.p
        else:
            mod = list(self.modulus)
            cur = [1] + [0] * (self.k - 1)
            x = [0, 1] + [0] * (self.k - 2)
            for i in range(self.q - 1):
                v = self.from_digits(cur)
                exp[i] = v
                log[v] = i
                cur = _polymulmod(cur, x, mod, self.p)
        exp[self.q - 1 : 2 * (self.q - 1)] = exp[: self.q - 1]
        self._exp = exp
        self._log = log
        self._exp_list = exp.tolist()
        self._log_list = log.tolist()

    @property
    def exp_table(self) -> np.ndarray:
        if self._exp is None:
            self._build_tables()
        return self._exp

    @property
    def log_table(self) -> np.ndarray:
        if self._log is None:
            self._build_tables()
        return self._log

    # scalar arithmetic

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        p = self.p
        out, base = 0, 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * base
            base *= p
        return out

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        p = self.p
        out, base = 0, 1
        while a:
            a, r = divmod(a, p)
            out += ((-r) % p) * base
            base *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self.q <= TABLE_LIMIT:
            if self._exp is None:
                self._build_tables()
            return self._exp_list[self._log_list[a] + self._log_list[b]]
        return self.from_digits(
            _polymulmod(self.digits(a), self.digits(b), list(self.modulus), self.p)
        )

    def scalar_mul(self, c: int, a: int) -> int:
        """Multiply by an element c of the prime subfield."""
        if self.k == 1:
            return c * a % self.p
        return self.from_digits([c * d for d in self.digits(a)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if self.k == 1:
            if e < 0:
                a, e = self.inv(a), -e
            return pow(a, e, self.p)
        if e < 0:
            a, e = self.inv(a), -e
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self.q <= TABLE_LIMIT:
            if self._exp is None:
                self._build_tables()
            return self._exp_list[(self._log_list[a] * e) % (self.q - 1)]
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def sqrt_candidates(self, a: int) -> list[int]:
        return [x for x in self.elements() if self.mul(x, x) == a]

    def generator(self) -> int:
        """A primitive element (the class of ``a`` for k > 1)."""
        return primitive_root(self.p) if self.k == 1 else self.p

    def format(self, a: int) -> str:
        """Render an element; extension elements as polynomials in ``a``."""
        if self.k == 1:
            return str(a)
        parts = []
        for i, d in reversed(list(enumerate(self.digits(a)))):
            if d == 0:
                continue
            if i == 0:
                parts.append(str(d))
            else:
                mono = "a" if i == 1 else f"a^{i}"
                parts.append(mono if d == 1 else f"{d}*{mono}")
        return "+".join(parts) if parts else "0"

    # vectorised arithmetic on numpy arrays of element codes

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.k == 1:
            return (a + b) % self.p
        p = self.p
        out = np.zeros_like(a)
        base = 1
        aa, bb = a.copy(), b.copy()
        for _ in range(self.k):
            out += ((aa % p + bb % p) % p) * base
            aa //= p
            bb //= p
            base *= p
        return out

    def vneg(self, a: np.ndarray) -> np.ndarray:
        if self.k == 1:
            return (-a) % self.p
        p = self.p
        out = np.zeros_like(a)
        base = 1
        aa = a.copy()
        for _ in range(self.k):
            out += ((-(aa % p)) % p) * base
            aa //= p
            base *= p
        return out

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.k == 1:
            return (a * b) % self.p
        exp, log = self.exp_table, self.log_table
        zero = (a == 0) | (b == 0)
        la = log[np.where(zero, 1, a)]
        lb = log[np.where(zero, 1, b)]
        return np.where(zero, 0, exp[la + lb])

    def vpow(self, a: np.ndarray, e: int) -> np.ndarray:
        if e == 0:
            return np.ones_like(a)
        if self.k == 1:
            out = np.ones_like(a)
            base = a % self.p
            while e:
                if e & 1:
                    out = out * base % self.p
                base = base * base % self.p
                e >>= 1
            return out
        exp, log = self.exp_table, self.log_table
        zero = a == 0
        la = log[np.where(zero, 1, a)]
        return np.where(zero, 0, exp[(la * e) % (self.q - 1)])


def embedding(small: GF, big: GF) -> list[int]:
    """Table of a field embedding small -> big (requires small.k | big.k).

    Found by brute-force search for a root of the small field's modulus, so it
    is only offered for moderately sized ``big``.
    """
    if small.p != big.p or big.k % small.k:
        raise FieldError(f"no embedding {small} -> {big}")
    if small.k == 1:
        return list(range(small.q))
    if big.q > TABLE_LIMIT:
        raise FieldError(f"{big} too large for embedding search")
    mod = small.modulus
    root = None
    for x in big.elements():
        acc = 0
        for c in reversed(mod):
            acc = big.add(big.mul(acc, x), c)
        if acc == 0 and x != 0:
            # must generate the small multiplicative group, i.e. be primitive there
            order = small.q - 1
            if all(big.pow(x, order // r) != 1 for r in prime_factors(order)):
                root = x
                break
    if root is None:
        raise FieldError(f"could not embed {small} in {big}")
    table = []
    for a in small.elements():
        acc = 0
        for d in reversed(small.digits(a)):
            acc = big.add(big.mul(acc, root), d)
        table.append(acc)
    return table
