"""Ground-truth Kauffman bracket by exhaustive smoothing.

The state sum runs over all 2^k smoothing choices.  Each state contributes
A^(#A - #B) * delta^(loops - 1), the loop count coming from a union-find over
the diagram's arcs; the unknot normalizes to 1.

At a crossing whose over strand has slope +1, the A-smoothing joins the
(SE,NE) and (NW,SW) port pairs; with the slope -1 strand on top the two
smoothings swap.  Which strand is on top is set by the crossing's sign
('+' puts the NE-sloped strand over), so the pairing applied at crossing c
in state sigma depends only on sign(c) xor sigma(c).  ``bracket_all_signs``
exploits that: it tabulates loop counts once per pairing vector and then
serves every sign assignment from the table.  ``bracket_bruteforce`` stays
deliberately plain - one union-find per state - since it is the oracle the
fast paths are judged against.
"""

from __future__ import annotations

from itertools import product as iproduct
from typing import Iterator, Optional, Sequence

import numpy as np

from .billiard import NE, NW, SE, SW, BilliardDiagram, SignedDiagram, writhe_direct
from .laurent import LaurentPoly, QuarterPoly, delta_power, jones_normalize
from .terms import parse_signs, signs_text

#: Port pairs for the two smoothings: index 0 when the NE-sloped strand is
#: over and the state picks A (or the NW-sloped strand is over and the state
#: picks B); index 1 otherwise.
_PAIRING_V = ((SE, NE), (NW, SW))
_PAIRING_H = ((NE, NW), (SW, SE))


def _arc_pairings(d: BilliardDiagram) -> list[tuple[tuple[int, int], ...]]:
    """Per crossing, the two smoothing pairings as arc-id pairs."""
    table = []
    for c in d.crossings:
        v = tuple((c.arcs[p], c.arcs[q]) for p, q in _PAIRING_V)
        h = tuple((c.arcs[p], c.arcs[q]) for p, q in _PAIRING_H)
        table.append((v, h))
    return table


def _loops(pairs: Sequence[tuple[int, int]], n_arcs: int) -> int:
    parent = list(range(n_arcs))
    roots = n_arcs
    for x, y in pairs:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        while parent[y] != y:
            parent[y] = parent[parent[y]]
            y = parent[y]
        if x != y:
            parent[x] = y
            roots -= 1
    return roots


def bracket_bruteforce(
    sd: SignedDiagram,
    limit: int = 24,
    order: Optional[Sequence[int]] = None,
) -> LaurentPoly:
    """Kauffman bracket by summing all 2^k smoothing states.

    ``order`` permutes the sequence in which crossings are smoothed; the
    result provably does not depend on it (exposed so tests can check).
    """
    d = sd.diagram
    k = d.crossing_count
    if k > limit:
        raise ValueError(f"crossing count {k} exceeds the oracle limit {limit}")
    if not k:
        return delta_power(d.component_count() - 1)

    pairings = _arc_pairings(d)
    seq = list(order) if order is not None else list(range(k))
    if sorted(seq) != list(range(k)):
        raise ValueError("order must be a permutation of the crossings")
    neg_mask = 0
    for i, s in enumerate(sd.crossing_signs):
        if s == -1:
            neg_mask |= 1 << i

    n_arcs = d.arc_count
    tally: dict[tuple[int, int], int] = {}
    for sigma in range(1 << k):
        parent = list(range(n_arcs))
        roots = n_arcs
        pi = sigma ^ neg_mask
        for c in seq:
            x, y = pairings[c][(pi >> c) & 1][0]
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            while parent[y] != y:
                parent[y] = parent[parent[y]]
                y = parent[y]
            if x != y:
                parent[x] = y
                roots -= 1
            x, y = pairings[c][(pi >> c) & 1][1]
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            while parent[y] != y:
                parent[y] = parent[parent[y]]
                y = parent[y]
            if x != y:
                parent[x] = y
                roots -= 1
        key = (k - 2 * sigma.bit_count(), roots + d.free_loops)
        tally[key] = tally.get(key, 0) + 1

    total = LaurentPoly.zero()
    for (exp, loops), count in tally.items():
        total = total + LaurentPoly.monomial(exp, count) * delta_power(loops - 1)
    return total


def jones(sd: SignedDiagram, limit: int = 24) -> QuarterPoly:
    """Jones polynomial: writhe-normalized bracket with A = t^(-1/4)."""
    return jones_normalize(bracket_bruteforce(sd, limit), writhe_direct(sd))


def sign_sequences(d: BilliardDiagram) -> Iterator[str]:
    """All sign strings for the diagram's slots, skips fixed, '+' first."""
    real = [i for i in range(d.slot_count) if i not in d.skip_positions]
    for combo in iproduct("+-", repeat=len(real)):
        chars = ["_"] * d.slot_count
        for i, ch in zip(real, combo):
            chars[i] = ch
        yield "".join(chars)


def _loops_table(d: BilliardDiagram) -> np.ndarray:
    """Loop count for every pairing vector pi over the crossings."""
    k = d.crossing_count
    pairings = _arc_pairings(d)
    n_arcs = d.arc_count
    out = np.empty(1 << k, dtype=np.int64)
    for pi in range(1 << k):
        pairs = []
        for c in range(k):
            pairs.extend(pairings[c][(pi >> c) & 1])
        out[pi] = _loops(pairs, n_arcs)
    return out


def bracket_all_signs(
    d: BilliardDiagram, limit: int = 14
) -> dict[str, LaurentPoly]:
    """Brute-force bracket for every sign assignment of the diagram.

    Grouping the state sum by pairing vector reuses each union-find run
    across all 2^k sign assignments; the tests cross-check this against
    per-state ``bracket_bruteforce`` runs.
    """
    k = d.crossing_count
    if k > limit:
        raise ValueError(f"slot count {k} exceeds the sweep limit {limit}")
    base = delta_power(d.component_count() - 1)
    if not k:
        return {signs_text((None,) * d.slot_count): base}

    loops = _loops_table(d)
    states = np.arange(1 << k, dtype=np.int64)
    exps = k - 2 * np.array([int(s).bit_count() for s in states], dtype=np.int64)
    max_loops = int(loops.max())
    out: dict[str, LaurentPoly] = {}
    for text in sign_sequences(d):
        signs = [s for s in parse_signs(text) if s is not None]
        neg_mask = 0
        for i, s in enumerate(signs):
            if s == -1:
                neg_mask |= 1 << i
        loop_of_state = loops[states ^ neg_mask]
        total = LaurentPoly.zero()
        for nloops in range(1, max_loops + 1):
            sel = exps[loop_of_state == nloops]
            if not sel.size:
                continue
            lo = int(sel.min())
            counts = np.bincount(sel - lo)
            poly = LaurentPoly(
                {lo + i: int(c) for i, c in enumerate(counts) if c}
            )
            total = total + poly * delta_power(nloops - 1)
        out[text] = total
    return out
