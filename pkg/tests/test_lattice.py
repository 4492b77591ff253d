import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobsplit.frobenius import GfrStatus
from frobsplit.lattice import (
    E_N_TYPE,
    LatticeError,
    PicClass,
    canonical_class,
    classification_verdict,
    classify_root_subsystem,
    count_by_multisets,
    degree_range,
    diagnosis_of_type,
    enumerate_by_multisets,
    enumerate_minus1,
    enumerate_roots,
    exceptional,
    inner,
    is_root,
    coarse_sfr_conditions,
    realizable_types,
    reflect,
    root_subsystem_types,
    strongly_f_regular_singularities,
    to_csv,
    type_threshold,
)

MINUS1 = (1, 3, 6, 10, 16, 27, 56, 240)
ROOTS = (0, 2, 8, 20, 40, 72, 126, 240)


def test_inner_examples():
    assert inner(canonical_class(6), canonical_class(6)) == 3
    assert inner(exceptional(3, 1), exceptional(3, 1)) == -1
    assert inner(PicClass(1, (1, 1)), PicClass(1, (1, 0))) == 0
    with pytest.raises(LatticeError):
        inner(PicClass(1, (1,)), PicClass(1, (1, 0)))


@pytest.mark.parametrize("n", range(1, 9))
def test_counts(n):
    assert len(enumerate_minus1(n)) == MINUS1[n - 1]
    assert len(enumerate_roots(n)) == ROOTS[n - 1]


@pytest.mark.parametrize("n", range(1, 8))
def test_counts_match_multiset_oracle(n):
    assert enumerate_minus1(n) == enumerate_by_multisets(n, -1, -1)
    assert enumerate_roots(n) == enumerate_by_multisets(n, -2, 0)
    assert count_by_multisets(n, -1, -1) == MINUS1[n - 1]
    assert count_by_multisets(n, -2, 0) == ROOTS[n - 1]


def test_small_cases():
    assert enumerate_minus1(1) == [PicClass(0, (-1,))]
    assert enumerate_roots(1) == []
    assert set(enumerate_roots(2)) == {PicClass(0, (-1, 1)), PicClass(0, (1, -1))}
    with pytest.raises(LatticeError):
        enumerate_roots(9)
    with pytest.raises(LatticeError):
        enumerate_minus1(0)


def test_minus1_degree_bound():
    for n in range(1, 9):
        assert max(c.d for c in enumerate_minus1(n)) <= 6
        assert all(c.d in degree_range(n, -1, -1) for c in enumerate_minus1(n))


@pytest.mark.parametrize("n", range(1, 9))
def test_defining_equations(n):
    for c in enumerate_minus1(n):
        assert (c.square, c.k_dot) == (-1, -1)
    for c in enumerate_roots(n):
        assert (c.square, c.k_dot) == (-2, 0)


@pytest.mark.parametrize("n", range(2, 9))
def test_full_root_systems(n):
    d = classify_root_subsystem(enumerate_roots(n))
    assert d.label == E_N_TYPE[n]
    assert d.rank == (n if n >= 3 else 1)


def test_classify_examples():
    a = PicClass(0, (1, -1, 0, 0))
    b = PicClass(0, (0, 0, 1, -1))
    assert classify_root_subsystem([a, -a]).label == "A1"
    assert classify_root_subsystem([a, b]).label == "A1+A1"
    assert classify_root_subsystem([]).label == "smooth"
    with pytest.raises(LatticeError):
        classify_root_subsystem([PicClass(1, (0, 0, 0, 0))])


@given(st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_classification_permutation_invariant(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 7)
    roots = enumerate_roots(n)
    picked = rng.sample(roots, rng.randint(1, 4))
    perm = list(range(n))
    rng.shuffle(perm)
    moved = [PicClass(r.d, tuple(r.m[perm[i]] for i in range(n))) for r in picked]
    a, b = classify_root_subsystem(picked), classify_root_subsystem(moved)
    assert a.label == b.label and a.rank == b.rank <= n


def test_reflection_preserves_form():
    roots = enumerate_roots(6)
    K = canonical_class(6)
    for a in roots[:10]:
        for x in roots[::7]:
            y = reflect(x, a)
            assert is_root(y) and inner(y, K) == 0


def test_csv_export():
    text = to_csv(enumerate_roots(2))
    assert text.splitlines()[0] == "d,m1,m2"
    assert len(text.splitlines()) == 3
    assert PicClass.parse(str(PicClass(3, (1, -2)))) == PicClass(3, (1, -2))


def test_thresholds_and_sfr_examples():
    assert [type_threshold(t) for t in ("A5", "D4", "E6", "E7", "E8")] == [2, 3, 5, 5, 7]
    for p in (2, 3, 5, 7):
        for t in realizable_types(5):
            assert strongly_f_regular_singularities(5, p, diagnosis_of_type("+".join(t)))
    assert not strongly_f_regular_singularities(1, 5, diagnosis_of_type("E8"))
    assert strongly_f_regular_singularities(4, 3, diagnosis_of_type("D5"))
    with pytest.raises(LatticeError):
        strongly_f_regular_singularities(5, 3, diagnosis_of_type("D5"))


def test_sfr_monotone_in_p():
    primes = (2, 3, 5, 7, 11)
    for K2 in range(1, 10):
        for t in realizable_types(K2):
            d = diagnosis_of_type("+".join(t))
            vals = [strongly_f_regular_singularities(K2, p, d) for p in primes]
            assert vals == sorted(vals)


def test_subsystem_types():
    assert ("A8",) in root_subsystem_types("E8")
    assert ("D8",) in root_subsystem_types("E8")
    assert any(sorted(t) == ["A1", "E7"] for t in root_subsystem_types("E8"))
    assert ("D4",) in root_subsystem_types("D5")
    assert ("D4",) not in root_subsystem_types("A4")
    assert realizable_types(9) == [()]
    assert ("A1",) in realizable_types(8)
    assert max(sum(int(c[1:]) for c in t) for t in realizable_types(1)) == 8


def test_coarse_sfr_conditions_table():
    assert coarse_sfr_conditions(1, 7) and not coarse_sfr_conditions(1, 5)
    assert coarse_sfr_conditions(2, 5) and not coarse_sfr_conditions(2, 3)
    assert coarse_sfr_conditions(4, 3) and not coarse_sfr_conditions(4, 2)
    assert coarse_sfr_conditions(5, 2)


def test_classification_verdict_examples():
    smooth = diagnosis_of_type("")
    assert classification_verdict(5, 2, diagnosis_of_type("A2+A1"), True) is GfrStatus.GUARANTEED
    assert classification_verdict(3, 2, smooth, False) is GfrStatus.COUNTEREXAMPLE_POSSIBLE_CELL
    assert classification_verdict(1, 7, smooth, True) is GfrStatus.GUARANTEED
    assert classification_verdict(3, 5, smooth, False) is GfrStatus.NOT_GFR
    assert classification_verdict(3, 5, smooth, None) is GfrStatus.UNKNOWN_AT_BOUND
