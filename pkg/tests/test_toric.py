import random

import pytest

from frobsplit.frobenius import pair_fsplit
from frobsplit.gfpoly import GF, P2, P1xP1, ring
from frobsplit.geometry import (
    cech_cohomology,
    cech_h1,
    h1_hirzebruch,
    hirzebruch_ambient,
    ioa_fsplit_check,
    restriction_map,
)


def test_h1_examples():
    assert h1_hirzebruch(1, 0, 1) == 0
    assert h1_hirzebruch(1, 0, -2) == 1
    for a in range(6):
        assert h1_hirzebruch(a, 0, 0) == 0
    assert h1_hirzebruch(2, 1, 0) == 1  # O(C0) on F_2: pushforward O + O(-2)
    with pytest.raises(ValueError):
        h1_hirzebruch(-1, 0, 0)


@pytest.mark.parametrize("a", [0, 1, 2])
def test_h1_matches_cech(a):
    for b in range(-5, 6):
        for c in range(-5, 6):
            assert h1_hirzebruch(a, b, c) == cech_h1(a, b, c), (a, b, c)


def test_cech_euler_characteristic():
    # Riemann-Roch: chi(D) = 1 + D.(D - K)/2 with C0^2 = -a, C0.F = 1, F^2 = 0
    for a in range(3):
        for b in range(-3, 4):
            for c in range(-3, 4):
                h0, h1, h2 = cech_cohomology(a, b, c)
                kb, kc = -2, -(a + 2)
                db, dc = b - kb, c - kc

                def dot(u, v):
                    return -a * u[0] * v[0] + u[0] * v[1] + u[1] * v[0]

                assert h0 - h1 + h2 == 1 + dot((b, c), (db, dc)) // 2


def test_cech_h0_counts_sections():
    # h0(O(F)) = 2, h0(O(C0)) = 1 on F_1, h0(O(C0 + F)) = 3
    assert cech_cohomology(1, 0, 1)[0] == 2
    assert cech_cohomology(1, 1, 0)[0] == 1
    assert cech_cohomology(1, 1, 1)[0] == 3


# ----------------------------------------------------- inversion of adjunction


def test_p2_line_and_two_lines():
    for p in (2, 3, 5, 7):
        R = ring(p, P2)
        x, y, z = R.gens()
        assert ioa_fsplit_check("P2", x, [y, z])


def test_p2_concurrent_lines_fail():
    R = ring(5, P2)
    x, y, z = R.gens()
    assert not ioa_fsplit_check("P2", x, [y, x + y])
    assert not pair_fsplit("P2", [x, y, x + y])[0]


def test_p2_conic_tangent_line():
    # S = line tangent to the conic: restriction is a double point
    R = ring(3, P2)
    x, y, z = R.gens()
    conic = x * z - y**2
    out = ioa_fsplit_check("P2", x, [conic], detail=True)
    assert not out["restriction_fsplit"]
    assert ioa_fsplit_check("P2", y, [conic])


def test_p1xp1_four_fibres():
    R = ring(5, P1xP1)
    x0, x1, y0, y1 = R.gens()
    out = ioa_fsplit_check("P1xP1", x0, [x1, y0, y1], detail=True)
    assert out["ok"] and out["h1"] == 0
    assert ioa_fsplit_check("P1xP1", y0, [x0, x1, y1])


def test_f1_boundary_with_fibre():
    # C + F_P + C~ + F~ on F_1 with C = x2, F_P = x1, F~ = x3, C~ = x4
    amb = hirzebruch_ambient(1)
    for p in (2, 3, 5):
        R = ring(p, amb)
        x1, x2, x3, x4 = R.gens()
        out = ioa_fsplit_check("F1", x3, [x2, x1, x4 + x2 * x1], detail=True)
        assert out["ok"], out
        assert out["class"] == [0, -1]
        assert ioa_fsplit_check("F1", x4 + x2 * x3, [x2, x1, x3])


def test_f2_section_restriction():
    amb = hirzebruch_ambient(2)
    R = ring(3, amb)
    x1, x2, x3, x4 = R.gens()
    img = restriction_map("F2", x4 + x2 * x1**2)
    assert img[1] == img[1].ring.one()  # chart x2 = 1
    assert ioa_fsplit_check("F2", x2, [x1, x3, x4])


def test_ioa_errors():
    R = ring(3, P2)
    x, y, z = R.gens()
    with pytest.raises(ValueError):
        ioa_fsplit_check("P3", x, [y, z])
    with pytest.raises(ValueError):
        ioa_fsplit_check("F3", x, [y, z])
    with pytest.raises(ValueError):
        ioa_fsplit_check("P2", x * y, [z])
    with pytest.raises(ValueError):
        ioa_fsplit_check("P2", x, [x * y, z])


def _random_line(R, rng):
    q = R.field.q
    while True:
        c = [rng.randrange(q) for _ in range(3)]
        if any(c):
            x, y, z = R.gens()
            return x * R.const(c[0]) + y * R.const(c[1]) + z * R.const(c[2])


def _independent(fld, lines):
    from frobsplit.geometry import nullspace

    rows = [[l.terms.get(m, 0) for m in ((1, 0, 0), (0, 1, 0), (0, 0, 1))] for l in lines]
    return not nullspace(rows, 3, fld) if len(rows) == 3 else True


def test_ioa_agrees_with_three_line_pairs():
    rng = random.Random(29)
    seen = 0
    while seen < 100:
        p = rng.choice([2, 3, 5, 7])
        R = ring(p, P2)
        lines = [_random_line(R, rng) for _ in range(3)]
        if not _independent(GF(p), lines):
            continue
        seen += 1
        assert ioa_fsplit_check("P2", lines[0], lines[1:]) == pair_fsplit("P2", lines)[0] is True
