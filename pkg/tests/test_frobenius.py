import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobsplit.frobenius import (
    FSPLIT_EXCEPTIONS,
    GFR_EXCEPTIONS_CANONICAL,
    GFR_EXCEPTIONS_SMOOTH,
    Blowup,
    CellStatus,
    CompleteIntersection,
    DegreeError,
    GfrStatus,
    ModelError,
    Verdict,
    VerdictRefused,
    WeightedHypersurface,
    exceptional_cells,
    fedder_fpure,
    fermat_model,
    fsplit_anticanonical_model,
    gfr_bounded_search,
    model_from_dict,
    pair_fsplit,
    survives_direct,
    survives_iterate,
    test_elements as make_test_elements,
    theorem_verdict,
)
from frobsplit.gfpoly import P1, P2, P3, P4, P1112, P1123, P1xP1, ring, random_form
from frobsplit.gfpoly.poly import product
from oracles import dense_fpure, dense_survives

PRIMES = (2, 3, 5, 7)


def cubic(p, text="x^3 + y^3 + z^3 + w^3"):
    return ring(p, P3).parse(text)


# -------------------------------------------------------------- Fedder


def test_fermat_cubic_char_two_not_fpure():
    assert fedder_fpure([cubic(2)]) == (False, None)


def test_fermat_cubic_char_seven_witness():
    ok, w = fedder_fpure([cubic(7)])
    assert ok
    assert w.monomial == (6, 6, 6, 0)
    assert w.coefficient == 6  # 6!/(2!2!2!) = 90 = 6 mod 7
    assert w.text() == "x^6*y^6*z^6"


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_xy_witness(p):
    R = ring(p, P1)
    x, y = R.gens()
    ok, w = fedder_fpure([x * y])
    assert ok and w.monomial == (p - 1, p - 1) and w.coefficient == 1


def test_witness_exponents_below_q():
    for seed in range(30):
        f = random_form(P3, 3, seed=seed, p=5)
        ok, w = fedder_fpure([f])
        if ok:
            assert max(w.monomial) < 5 and w.coefficient != 0


def test_fedder_characteristic_mismatch():
    with pytest.raises(ValueError):
        fedder_fpure([cubic(7)], p=5)


def test_spec_cubic_against_dense_oracle():
    f = cubic(3, "x^2*y + y^2*z + z^2*w + w^2*x + x*y*z")
    ok, w = fedder_fpure([f])
    assert ok == dense_fpure([f.terms], 3, 4) is True
    assert w.monomial == (2, 2, 2, 0)


@pytest.mark.parametrize("e", [1, 2])
def test_fedder_higher_e_matches_oracle(e):
    rng = random.Random(e)
    for _ in range(20):
        f = random_form(P2, 3, seed=rng.random(), p=2)
        ok, _ = fedder_fpure([f], e=e)
        assert ok == dense_fpure([f.terms], 2, 3, e=e)


# ---------------------------------------------------------------- pairs


def test_pair_examples():
    for p in PRIMES:
        R1 = ring(p, P1)
        assert pair_fsplit("P1", R1.gens())[0]
    R = ring(2, P2)
    x, y, z = R.gens()
    assert pair_fsplit("P2", [x, x, y]) == (False, None)
    R3 = ring(3, P2)
    x, y, z = R3.gens()
    ok, w = pair_fsplit("P2", [x + z, x * z - y**2])
    assert ok and w.monomial == (2, 2, 2) and w.coefficient == 2
    Rq = ring(5, P1xP1)
    x0, x1, y0, y1 = Rq.gens()
    assert pair_fsplit("P1xP1", [x0, x1, y0, y1])[0]


def test_pair_degree_errors():
    R = ring(3, P2)
    x, y, z = R.gens()
    with pytest.raises(DegreeError):
        pair_fsplit("P2", [x, y])
    with pytest.raises(DegreeError):
        pair_fsplit("P2", [x + y * y, z, z])
    Rq = ring(3, P1xP1)
    x0, x1, y0, y1 = Rq.gens()
    with pytest.raises(DegreeError):
        pair_fsplit("P1xP1", [x0, x1, y0, x0])


@given(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6), st.integers(0, 6))
@settings(max_examples=80, deadline=None)
def test_p1_pair_iff_distinct_points(a, b, c, d):
    R = ring(7, P1)
    x, y = R.gens()
    l1 = R.const(a) * x + R.const(b) * y
    l2 = R.const(c) * x + R.const(d) * y
    if l1.is_zero() or l2.is_zero():
        return
    proportional = (a * d - b * c) % 7 == 0
    assert pair_fsplit("P1", [l1, l2])[0] == (not proportional)


# ------------------------------------------------------- bounded GFR search


def test_search_fermat_seven():
    r = gfr_bounded_search([cubic(7)], e_max=1)
    assert r.status == "established_by_search" and r.e == 1
    # c = dF/dx works on its own as well
    assert survives_direct(cubic(7).ring.parse("3*x^2"), cubic(7), 1)


def test_search_fermat_two_exhausts():
    r = gfr_bounded_search([cubic(2)], e_max=3)
    assert r.status == "unknown_at_bound" and r.e is None


def test_search_ci_quadrics_frozen():
    # dense-expansion oracle: F-pure at e = 1 for the pair of quadrics below
    R = ring(3, P4)
    q = R.parse("x0*x1 + x2^2 + x3*x4")
    q2 = R.parse("x0*x4 + x1*x2 + x3^2")
    assert dense_fpure([q.terms, q2.terms], 3, 5)
    r = gfr_bounded_search([q, q2], e_max=2)
    assert (r.status, r.e, str(r.test_element)) == ("established_by_search", 2, "2*x0*x4 + x1*x2")
    h = product([q, q2])
    c = R.parse(r.test_element)
    assert survives_direct(c, h, 2)
    assert dense_survives(c.terms, [q.terms, q2.terms], 3, 5, 2)
    assert not dense_survives(c.terms, [q.terms, q2.terms], 3, 5, 1)


def test_iterate_matches_direct_and_oracle():
    rng = random.Random(7)
    for p in (2, 3):
        for _ in range(8):
            f = random_form(P2, 3, seed=rng.random(), p=p)
            for c in make_test_elements([f]):
                it = survives_iterate(c, f, 2)
                for e in (1, 2):
                    d = survives_direct(c, f, e)
                    assert d == dense_survives(c.terms, [f.terms], p, 3, e)
                    assert (it is not None and it <= e) == (
                        d or any(survives_direct(c, f, k) for k in range(1, e))
                    )


def test_test_elements_are_partials_for_hypersurfaces():
    f = cubic(7)
    els = make_test_elements([f])
    assert {str(c) for c in els} == {"3*x^2", "3*y^2", "3*z^2", "3*w^2"}


def test_search_never_contradicts_fsplit():
    for seed in range(20):
        f = random_form(P3, 3, seed=seed, p=3)
        ok, _ = fedder_fpure([f])
        r = gfr_bounded_search([f], e_max=2)
        assert r.status in ("established_by_search", "unknown_at_bound")
        if not ok:
            assert r.status == "unknown_at_bound"


# ---------------------------------------------------------------- tables


def test_exception_tables():
    assert GFR_EXCEPTIONS_CANONICAL == {(4, 2), (3, 2), (3, 3), (2, 2), (2, 3), (1, 2), (1, 3), (1, 5)}
    assert GFR_EXCEPTIONS_SMOOTH == {(3, 2), (2, 2), (2, 3), (1, 2), (1, 3), (1, 5)}
    assert FSPLIT_EXCEPTIONS == {(3, 2), (2, 2), (2, 3), (1, 2), (1, 3), (1, 5)}


def test_theorem_verdict_examples():
    assert theorem_verdict(4, 2) is CellStatus.EXCEPTIONAL
    assert theorem_verdict(4, 2, smooth_only=True) is CellStatus.GUARANTEED
    assert theorem_verdict(5, 2) is CellStatus.GUARANTEED
    assert not exceptional_cells([11, 13])
    with pytest.raises(ValueError):
        theorem_verdict(10, 2)


def test_smooth_table_inside_canonical():
    assert exceptional_cells(PRIMES, True) <= exceptional_cells(PRIMES, False)


# ---------------------------------------------------------------- models


def test_model_degree_bookkeeping():
    with pytest.raises(ModelError):
        WeightedHypersurface(P3, ring(3, P3).parse("x^2 + y^2"))
    with pytest.raises(ModelError):
        WeightedHypersurface(P2, ring(3, P2).parse("x^3"))
    assert fermat_model(1, 7).K2 == 1
    assert fermat_model(2, 7).K2 == 2
    assert fermat_model(3, 7).K2 == 3
    assert fermat_model(4, 7).K2 == 4
    with pytest.raises(ModelError):
        CompleteIntersection(ring(3, P4).parse("x0^2"), ring(3, P4).parse("x1^3"))


def test_model_round_trip_and_hash():
    for K2 in (1, 2, 3, 4):
        m = fermat_model(K2, 5)
        again = model_from_dict(json.loads(json.dumps(m.to_dict())))
        assert again.model_hash == m.model_hash
        assert len(m.model_hash) == 16
    assert fermat_model(3, 5).model_hash != fermat_model(3, 7).model_hash


def test_blowup_model_counts():
    from frobsplit.geometry import make_tree
    from frobsplit.gfpoly import GF

    F = GF(7)
    t = make_tree(F, [("P", (1, 0, 0)), ("Q", (0, 1, 0))])
    assert Blowup("P2", t).K2 == 7
    with pytest.raises(ModelError):
        Blowup("P1xP1", t)


# --------------------------------------------------------------- verdicts


def test_verdict_fermat_cubic():
    v = fsplit_anticanonical_model(fermat_model(3, 2), e_max=3)
    assert (v.f_pure, v.f_split, v.gfr) == (False, False, GfrStatus.COUNTEREXAMPLE_POSSIBLE_CELL)
    v = fsplit_anticanonical_model(fermat_model(3, 7), e_max=1)
    assert (v.f_split, v.gfr) == (True, GfrStatus.ESTABLISHED_BY_SEARCH)
    assert v.certificate.monomial == (6, 6, 6, 0)


def test_non_fsplit_outside_exceptional_cells_is_not_gfr():
    # cone over a supersingular plane cubic (p = 2 mod 3): singular, not F-split
    f = cubic(5, "x^3 + y^3 + z^3")
    v = fsplit_anticanonical_model(WeightedHypersurface(P3, f))
    assert v.f_split is False
    assert v.gfr is GfrStatus.NOT_GFR


def test_verdict_invariants_enforced():
    with pytest.raises(ValueError):
        Verdict("h", 2, 3, False, True, GfrStatus.UNKNOWN_AT_BOUND)
    with pytest.raises(ValueError):
        Verdict("h", 2, 3, None, None, GfrStatus.ESTABLISHED_BY_SEARCH)


def test_gorenstein_locus_refusal():
    R = ring(5, P1123)
    f = R.parse("x^6 + y^6 + x*z*w + x^2*z^2")  # no z^3 and no w^2: passes through both points
    with pytest.raises(VerdictRefused):
        fsplit_anticanonical_model(WeightedHypersurface(P1123, f))


def test_weighted_fermat_verdicts():
    R = ring(3, P1112)
    v = fsplit_anticanonical_model(WeightedHypersurface(P1112, R.parse("x^4 + y^4 + z^4 + w^2")))
    assert v.f_split is False
    v = fsplit_anticanonical_model(fermat_model(1, 5))
    assert v.f_split is False
    v = fsplit_anticanonical_model(fermat_model(1, 7))
    assert v.f_split is True


def test_verdict_json_is_stable():
    a = fsplit_anticanonical_model(fermat_model(2, 5), e_max=1).to_dict()
    b = fsplit_anticanonical_model(fermat_model(2, 5), e_max=1).to_dict()
    assert json.dumps(a) == json.dumps(b)
    assert set(a) >= {"model_hash", "p", "K2", "f_pure", "f_split", "gfr", "witness"}
    assert "timings" not in a
