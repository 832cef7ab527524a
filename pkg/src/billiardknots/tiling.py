"""Domino-tiling view of the height-3 expansion.

Summands of the width-(b-1) f sum correspond to tilings of a 2 x (b-1)
board: an A-factor is a vertical domino (V), the kink pair is two horizontal
dominoes (H), the branching block C is a 2 x 2 square, and the two leading
configurations are start tiles S2 (2 x 2) and S1 (vertical domino).  All
2 x n domino tilings are counted by Fibonacci numbers; the term tilings are
the sparser Padovan-counted subset reachable from the rewriting rules.
"""

from __future__ import annotations

from functools import lru_cache

from . import recursions
from .terms import TermSum, product

TILE_WIDTH = {"S1": 1, "S2": 2, "V": 1, "H": 2, "C": 2}


def count_domino_tilings(n: int) -> int:
    """Number of domino tilings of a 2 x n board: F(n) with F(0)=F(1)=1."""
    if n < 0:
        raise ValueError("n must be >= 0")
    prev, cur = 1, 1
    for _ in range(n - 1):
        prev, cur = cur, prev + cur
    return cur if n else 1


def _step(tilings: list[tuple[str, ...]]) -> list[tuple[str, ...]]:
    out: list[tuple[str, ...]] = []
    for t in tilings:
        last = t[-1]
        if last == "V":
            out.append(t[:-1] + ("C",))
        elif last == "H":
            out.append(t + ("V",))
        elif last == "C":
            out.append(t[:-1] + ("C", "V"))
            out.append(t[:-1] + ("V", "H"))
        else:
            raise AssertionError(f"tiling ends in start tile {last}")
    return out


@lru_cache(maxsize=None)
def enumerate_term_tilings(b: int) -> tuple[tuple[str, ...], ...]:
    """Tile sequences of board length b-1 reachable from the rewriting."""
    if b < 4:
        raise ValueError("term tilings start at b = 4")
    tilings = [("S2", "V"), ("S1", "H")]
    for _ in range(b - 4):
        tilings = _step(tilings)
    for t in tilings:
        if sum(TILE_WIDTH[x] for x in t) != b - 1:
            raise AssertionError(f"tile widths of {t} do not cover the board")
    return tuple(tilings)


def tiling_to_term(t: tuple[str, ...]) -> TermSum:
    """The f summand a tile sequence stands for, as a flat term sum."""
    if not t or t[0] not in ("S1", "S2") or any(x in ("S1", "S2") for x in t[1:]):
        raise ValueError("a tiling carries exactly one start tile, first")
    key = {"S2": "S2", "S1": "S1", "V": "V", "H": "H", "C": "C"}
    return product(*(recursions._F_TOKEN_SUM[key[x]] for x in t))


def render_tilings(b: int) -> str:
    """Tile sequences with branch groups bracketed, e.g. (S2,C,[C,V]+[V,H])."""
    if b == 4:
        return "(S2,V)+(S1,H)"
    parts = []
    for parent in enumerate_term_tilings(b - 1):
        if parent[-1] == "C":
            prefix = ",".join(parent[:-1])
            parts.append(f"({prefix},[C,V]+[V,H])")
        elif parent[-1] == "V":
            parts.append("(" + ",".join(parent[:-1] + ("C",)) + ")")
        else:
            parts.append("(" + ",".join(parent + ("V",)) + ")")
    return "+".join(parts)
