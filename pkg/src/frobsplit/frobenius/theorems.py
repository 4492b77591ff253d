"""Exception tables for global F-regularity and F-splitting of del Pezzo surfaces.

A cell (K^2, p) is *exceptional* when surfaces of that degree in that
characteristic can fail the property; it does not mean every surface fails.
"""

from __future__ import annotations

from enum import Enum

# canonical (weak) del Pezzo surfaces: globally F-regular outside these cells
GFR_EXCEPTIONS_CANONICAL = frozenset(
    {(4, 2), (3, 2), (3, 3), (2, 2), (2, 3), (1, 2), (1, 3), (1, 5)}
)
# smooth del Pezzo surfaces (Hara)
GFR_EXCEPTIONS_SMOOTH = frozenset({(3, 2), (2, 2), (2, 3), (1, 2), (1, 3), (1, 5)})
# F-pure canonical del Pezzo surfaces: F-split outside these cells
FSPLIT_EXCEPTIONS = frozenset({(3, 2), (2, 2), (2, 3), (1, 2), (1, 3), (1, 5)})


class CellStatus(str, Enum):
    GUARANTEED = "guaranteed_GFR"
    EXCEPTIONAL = "exceptional_cell"


def _check_degree(K2: int) -> None:
    if not 1 <= K2 <= 9:
        raise ValueError(f"K^2 must be in 1..9, got {K2}")


def theorem_verdict(K2: int, p: int, smooth_only: bool = False) -> CellStatus:
    _check_degree(K2)
    table = GFR_EXCEPTIONS_SMOOTH if smooth_only else GFR_EXCEPTIONS_CANONICAL
    return CellStatus.EXCEPTIONAL if (K2, p) in table else CellStatus.GUARANTEED


def fsplit_verdict(K2: int, p: int) -> CellStatus:
    """Cell status for F-splitting of F-pure canonical del Pezzo surfaces."""
    _check_degree(K2)
    return CellStatus.EXCEPTIONAL if (K2, p) in FSPLIT_EXCEPTIONS else CellStatus.GUARANTEED


def exceptional_cells(primes, smooth_only: bool = False) -> set[tuple[int, int]]:
    return {
        (K2, p)
        for K2 in range(1, 10)
        for p in primes
        if theorem_verdict(K2, p, smooth_only) is CellStatus.EXCEPTIONAL
    }
