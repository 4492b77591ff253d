import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobsplit.gfpoly import (
    GF,
    P2,
    P3,
    P1112,
    P1123,
    FieldError,
    Poly,
    PolyError,
    ResourceLimitError,
    ScanBudgetError,
    binary_power,
    derivative,
    embedding,
    evaluate,
    exact_divide,
    frobenius_reduce,
    frobenius_scale,
    mul,
    power,
    random_form,
    ring,
    singular_point_scan,
    substitute,
    to_string,
)
from oracles import count_monomials, dense_power, multinomial


# ------------------------------------------------------------------ fields


@pytest.mark.parametrize("p", [2, 3, 5, 7, 97])
def test_prime_field_inverses(p):
    F = GF(p)
    for a in range(1, p):
        assert F.mul(a, F.inv(a)) == 1


def test_field_rejects_composites_and_large_primes():
    with pytest.raises(FieldError):
        GF(4)
    with pytest.raises(FieldError):
        GF(101)


@pytest.mark.parametrize("p,k", [(2, 2), (2, 4), (3, 2), (5, 2), (3, 4)])
def test_extension_field_axioms(p, k):
    F = GF(p, k)
    rng = random.Random(p * 10 + k)
    for _ in range(200):
        a, b, c = (rng.randrange(F.q) for _ in range(3))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        # Frobenius is additive
        assert F.pow(F.add(a, b), p) == F.add(F.pow(a, p), F.pow(b, p))
    # the multiplicative group is cyclic of order q - 1
    g = F.generator()
    assert len({F.pow(g, i) for i in range(F.q - 1)}) == F.q - 1


@pytest.mark.parametrize("p,k,K", [(2, 1, 4), (2, 2, 4), (3, 1, 2), (3, 2, 4)])
def test_embedding_is_a_ring_map(p, k, K):
    small, big = GF(p, k), GF(p, K)
    emb = embedding(small, big)
    for a in small.elements():
        for b in small.elements():
            assert emb[small.add(a, b)] == big.add(emb[a], emb[b])
            assert emb[small.mul(a, b)] == big.mul(emb[a], emb[b])


# ------------------------------------------------------- polynomial algebra


def test_add_examples():
    R2 = ring(2, P2)
    x, y, z = R2.gens()
    assert (x + y) + (x + z) == y + z
    assert x + R2.zero() == x
    R5 = ring(5, P2)
    x5 = R5.gens()[0]
    assert (x5**3 + R5.const(4) * x5**3).is_zero()


def test_mul_examples():
    R2 = ring(2, P2)
    x, y, z = R2.gens()
    assert (x + y) * (x + y) == x**2 + y**2
    assert (x * y).weighted_degree() == 2
    R3 = ring(3, P2)
    x, y, z = R3.gens()
    assert (x * z - y**2) * z == R3.parse("x*z^2 + 2*y^2*z")


def test_power_examples():
    R = ring(3, P2)
    x, y, z = R.gens()
    assert power(x + y, 0) == R.one()
    assert power(x + y, 3) == x**3 + y**3
    R7 = ring(7, P3)
    f = R7.parse("x^3 + y^3 + z^3 + w^3")
    g = power(f, 6)
    assert g.coeff((6, 6, 6, 0)) == multinomial(6, (2, 2, 2)) % 7 == 6


def test_frobenius_reduce_examples():
    R2 = ring(2, P3)
    assert frobenius_reduce(R2.parse("x^3 + y^3 + z^3 + w^3"), 2).is_zero()
    for p in (2, 3, 5):
        R = ring(p, P2)
        x, y, _ = R.gens()
        m = (x * y) ** (p - 1)
        assert frobenius_reduce(m, p) == m
    R3 = ring(3, P2)
    f = R3.parse("x^2*y^2*z^2 + x^3*z^3")
    assert frobenius_reduce(f, 3) == R3.parse("x^2*y^2*z^2")
    with pytest.raises(PolyError):
        frobenius_reduce(f, 4)


def test_random_form_slot_counts_and_determinism():
    f = random_form(P3, 3, seed=11, p=5)
    assert len(P3.monomials(3)) == 20 == count_monomials((1, 1, 1, 1), 3)
    assert len(P1112.monomials(4)) == 22 == count_monomials((1, 1, 1, 2), 4)
    assert f == random_form(P3, 3, seed=11, p=5)
    assert f.is_homogeneous(3)
    with pytest.raises(PolyError):
        random_form(P1123, -1, seed=0, p=5)


def test_parse_print_round_trip():
    R = ring(5, P1123)
    for seed in range(20):
        f = random_form(P1123, 6, seed=seed, p=5)
        assert R.parse(to_string(f)) == f
        assert to_string(R.parse(to_string(f))) == to_string(f)


def test_parse_errors():
    R = ring(3, P2)
    for bad in ("x +", "x^", "q*x", "x ** y", "(x"):
        with pytest.raises(PolyError):
            R.parse(bad)


def test_derivative_and_evaluate():
    R = ring(7, P3)
    f = R.parse("x^3 + y^3 + z^3 + w^3")
    assert derivative(f, "x") == R.parse("3*x^2")
    assert evaluate(f, (1, 2, 3, 0)) == (1 + 8 + 27) % 7
    R2 = ring(2, P2)
    assert derivative(R2.parse("x^2*y"), 0).is_zero()


def test_substitute_composes():
    R = ring(5, P2)
    x, y, z = R.gens()
    f = x**2 + y * z
    g = substitute(f, [x + y, y, z])
    assert g == (x + y) ** 2 + y * z


def test_exact_divide_and_errors():
    R = ring(3, P2)
    x, y, z = R.gens()
    f = (x + y) * (x * z - y**2)
    assert exact_divide(f, x + y) == x * z - y**2
    with pytest.raises(PolyError):
        exact_divide(x**2 + y, x)


def test_term_cap_is_a_distinct_error():
    R = ring(97, P3)
    f = R.parse("x + y + z + w")
    with pytest.raises(ResourceLimitError):
        binary_power(f, 40, cap=100)


def test_power_methods_agree_with_dense_oracle():
    rng = random.Random(3)
    for p in (2, 3, 5):
        for _ in range(10):
            f = random_form(P3, 2, seed=rng.random(), p=p)
            for e in (1, 2):
                k = p**e - 1
                a = power(f, k, method="binary")
                b = power(f, k, method="division")
                c = power(f, k, method="auto")
                assert a == b == c
                assert a.terms == dense_power(f.terms, k, p, 4)


# ---------------------------------------------------------------- properties

mono = st.tuples(*[st.integers(0, 3)] * 3)


@st.composite
def polys(draw, p=5):
    terms = draw(st.dictionaries(mono, st.integers(1, p - 1), max_size=5))
    return Poly(ring(p, P2), terms)


@given(polys(), st.integers(1, 2))
@settings(max_examples=60, deadline=None)
def test_frobenius_identity(f, e):
    q = 5**e
    assert power(f, q) == frobenius_scale(f, q)


@given(polys(), polys())
@settings(max_examples=60, deadline=None)
def test_reduction_is_multiplicative(f, g):
    q = 5
    lhs = frobenius_reduce(mul(f, g), q)
    rhs = frobenius_reduce(mul(frobenius_reduce(f, q), frobenius_reduce(g, q)), q)
    assert lhs == rhs


@given(st.integers(0, 10**6), st.integers(0, 3))
@settings(max_examples=30, deadline=None)
def test_homogeneity_preserved(seed, k):
    f = random_form(P1123, 6, seed=seed, p=3)
    g = random_form(P1123, 2, seed=seed + 1, p=3)
    h = mul(f, g)
    if not h.is_zero():
        assert h.is_homogeneous(8)
    fk = power(f, k)
    if not fk.is_zero():
        assert fk.is_homogeneous(6 * k)


# --------------------------------------------------------------------- scan


def test_scan_fermat_cubic_smooth():
    R = ring(7, P3)
    res = singular_point_scan([R.parse("x^3 + y^3 + z^3 + w^3")], k_max=2)
    assert res.smooth_screened and not res.singular_points


def test_scan_finds_singular_point():
    R = ring(2, P3)
    res = singular_point_scan([R.parse("x*y*z + w^3")], k_max=1)
    assert (1, (1, 0, 0, 0)) in res.singular_points


def test_scan_reports_ambient_singular_points():
    R = ring(5, P1123)
    f = R.parse("x^6 + y^6 + z^3 + w^2")
    assert not singular_point_scan([f], k_max=1).ambient_singular_hits
    g = R.parse("x^6 + y^6 + z^3 + x*w*z")
    assert (0, 0, 0, 1) in singular_point_scan([g], k_max=1).ambient_singular_hits


def test_scan_monotone_in_k():
    for seed in range(15):
        f = random_form(P3, 3, seed=seed, p=2)
        a = {pt for _, pt in singular_point_scan([f], k_max=1).singular_points}
        b = {pt for _, pt in singular_point_scan([f], k_max=2).singular_points}
        assert a <= b


def test_scan_budget():
    R = ring(97, P3)
    with pytest.raises(ScanBudgetError):
        singular_point_scan([R.parse("x^3 + y^3 + z^3 + w^3")], k_max=2, budget=1000)
