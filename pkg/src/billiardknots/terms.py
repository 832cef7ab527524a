"""Executable tuple calculus for bracket expansions.

A bracket expansion for a family of diagrams with indeterminate crossing
signs is a sum of *slot terms*: each term is a global Laurent scalar times
one factor per crossing slot, and each factor is a function of that slot's
sign alone.  Evaluating the sum against a concrete sign sequence produces the
exact Kauffman bracket of that signed diagram.

Factor alphabet (s is the slot sign, +1 or -1):

==========  =====================  ====================
kind        value at s = +1        value at s = -1
==========  =====================  ====================
``APM``     A                      A^-1
``AMP``     A^-1                   A
``F2PM``    -A^-3                  -A^3
``F2MP``    -A^3                   -A^-3
``SKIP``    1 (slot must carry no crossing)
==========  =====================  ====================

``F2PM``/``F2MP`` are the two one-crossing kink values; ``SKIP`` occupies a
slot position that the diagram family leaves without a crossing, so sign
sequences for such families align positionally with the full slot grid.

Named fixed-width blocks (C, X, K, L, M, N, NT, R, RT, S, g2, h2, h3, f3)
and the parametric families P'_i, P~'_i, Q_i expand eagerly to flat term
sums; evaluation never recurses.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable

import numpy as np

from .laurent import DELTA, LaurentPoly, delta_power

Sign = int  # +1, -1, or None for a skipped slot
SignSeq = tuple  # tuple of Sign


class Factor(IntEnum):
    APM = 0  # A^(+s)
    AMP = 1  # A^(-s)
    F2PM = 2  # -A^(-3s)
    F2MP = 3  # -A^(+3s)
    SKIP = 4


# A-exponent contributed per unit of slot sign.
_WEIGHT = (1, -1, -3, 3, 0)
# Factors carrying a global -1.
_NEGATIVE = (False, False, True, True, False)

_FACTOR_TEXT = ("A^±", "A^∓", "f2^±", "f2^∓", "_")


def parse_signs(text: str) -> SignSeq:
    """Parse a sign string over '+', '-', '_' into (+1, -1, None) entries."""
    table = {"+": 1, "-": -1, "_": None}
    try:
        return tuple(table[ch] for ch in text)
    except KeyError as exc:
        raise ValueError(f"bad sign character {exc.args[0]!r} in {text!r}") from None


def signs_text(signs: SignSeq) -> str:
    return "".join("+" if s == 1 else "-" if s == -1 else "_" for s in signs)


@dataclass(frozen=True)
class SlotTerm:
    """A scalar times one factor per slot; evaluation multiplies them out."""

    scalar: LaurentPoly
    factors: tuple[Factor, ...]

    @property
    def width(self) -> int:
        return len(self.factors)

    def evaluate(self, signs: SignSeq) -> LaurentPoly:
        exponent = 0
        negate = False
        for f, s in zip(self.factors, signs):
            if f is Factor.SKIP:
                if s is not None:
                    raise ValueError("skip factor over a real crossing slot")
                continue
            if s is None:
                raise ValueError("sign missing at a real crossing slot")
            exponent += _WEIGHT[f] * s
            negate ^= _NEGATIVE[f]
        return self.scalar * LaurentPoly.monomial(exponent, -1 if negate else 1)

    def render(self) -> str:
        body = ",".join(_FACTOR_TEXT[f] for f in self.factors)
        prefix = _scalar_prefix(self.scalar)
        return f"{prefix}({body})"


def _scalar_prefix(scalar: LaurentPoly) -> str:
    if scalar == LaurentPoly.one():
        return ""
    sign, k = _as_delta_power(scalar)
    if k is not None:
        mark = "-" if sign < 0 else ""
        return f"{mark}δ^{k}" if k > 1 else f"{mark}δ"
    return f"[{scalar.text()}]·"


def _as_delta_power(scalar: LaurentPoly) -> tuple[int, int | None]:
    """Decompose scalar as sign * delta^k, or (1, None) when not of that shape."""
    for k in range(0, 65):
        dk = delta_power(k)
        if scalar == dk:
            return 1, k
        if scalar == -dk:
            return -1, k
        if dk.exponents() and scalar.exponents() and dk.exponents()[0] > abs(
            max(scalar.exponents()[0], -scalar.exponents()[-1])
        ):
            break
    return 1, None


class TermSum:
    """A finite list of slot terms sharing one slot width.

    Terms are kept literally as constructed (no cross-term simplification),
    so printed forms diff cleanly against the closed-form tables.
    """

    __slots__ = ("terms", "width", "skip_positions")

    def __init__(self, terms: Iterable[SlotTerm], width: int | None = None):
        self.terms: tuple[SlotTerm, ...] = tuple(terms)
        if width is None:
            if not self.terms:
                raise ValueError("width required for an empty term sum")
            width = self.terms[0].width
        self.width = width
        skips: set[int] | None = None
        for t in self.terms:
            if t.width != self.width:
                raise ValueError(
                    f"inconsistent widths: {t.width} vs {self.width}"
                )
            positions = {i for i, f in enumerate(t.factors) if f is Factor.SKIP}
            if skips is None:
                skips = positions
            elif skips != positions:
                raise ValueError("terms disagree on skipped slot positions")
        self.skip_positions = frozenset(skips or ())

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: "TermSum") -> "TermSum":
        if other.width != self.width:
            raise ValueError("cannot add term sums of different widths")
        return TermSum(self.terms + other.terms, self.width)

    def scale(self, scalar: LaurentPoly) -> "TermSum":
        return TermSum(
            (SlotTerm(t.scalar * scalar, t.factors) for t in self.terms), self.width
        )

    def evaluate(self, signs: SignSeq | str) -> LaurentPoly:
        if isinstance(signs, str):
            signs = parse_signs(signs)
        if len(signs) != self.width:
            raise ValueError(
                f"sign sequence length {len(signs)} != slot width {self.width}"
            )
        for i, s in enumerate(signs):
            if (s is None) != (i in self.skip_positions):
                raise ValueError(f"sign/skip mismatch at slot {i + 1}")
        total = LaurentPoly.zero()
        for t in self.terms:
            total = total + t.evaluate(signs)
        return total

    def canonical(self) -> tuple:
        """Order-free fingerprint: the multiset of (factors, scalar) pairs."""
        return tuple(
            sorted(
                (t.factors, tuple(sorted(t.scalar.terms.items())))
                for t in self.terms
            )
        )

    def render(self) -> str:
        return "+".join(t.render() for t in self.terms) if self.terms else "0"

    def __repr__(self) -> str:
        return f"TermSum(width={self.width}, terms={len(self.terms)})"


def concat(prefix: TermSum, suffix: TermSum) -> TermSum:
    """Distributive juxtaposition: every prefix term times every suffix term."""
    terms = [
        SlotTerm(p.scalar * q.scalar, p.factors + q.factors)
        for p in prefix.terms
        for q in suffix.terms
    ]
    return TermSum(terms, prefix.width + suffix.width)


def product(*sums: TermSum) -> TermSum:
    out = EMPTY
    for s in sums:
        out = concat(out, s)
    return out


def _single(*factors: Factor, scalar: LaurentPoly | None = None) -> TermSum:
    return TermSum([SlotTerm(scalar or LaurentPoly.one(), tuple(factors))])


ONE = LaurentPoly.one()

#: Width-0 multiplicative unit.
EMPTY = TermSum([SlotTerm(ONE, ())], 0)

APM = _single(Factor.APM)
AMP = _single(Factor.AMP)
F2PM = _single(Factor.F2PM)
F2MP = _single(Factor.F2MP)
SKIP = _single(Factor.SKIP)

#: C = [A^±,A^±] + [f2^∓,A^∓] (width 2).
C_BLOCK = _single(Factor.APM, Factor.APM) + _single(Factor.F2MP, Factor.AMP)

#: X = δ[A^±,A^±] + [A^±,A^∓] + [A^∓,A^±]; 1 - A^(±4) on equal signs, else 0.
X_BLOCK = (
    _single(Factor.APM, Factor.APM, scalar=DELTA)
    + _single(Factor.APM, Factor.AMP)
    + _single(Factor.AMP, Factor.APM)
)

#: g2 = [X] + δ[A^∓,A^∓], the two-slot denominator-closed 3xN-table base value.
G2_BLOCK = X_BLOCK + _single(Factor.AMP, Factor.AMP, scalar=DELTA)

#: h2 = (A^±,A^±) + δ(A^±,A^∓) + δ(A^∓,A^±) + δ²(A^∓,A^∓).
H2_BLOCK = (
    _single(Factor.APM, Factor.APM)
    + _single(Factor.APM, Factor.AMP, scalar=DELTA)
    + _single(Factor.AMP, Factor.APM, scalar=DELTA)
    + _single(Factor.AMP, Factor.AMP, scalar=delta_power(2))
)

#: f3 = (f2^±,A^±) + (f2^∓,A^∓).
F3_BLOCK = _single(Factor.F2PM, Factor.APM) + _single(Factor.F2MP, Factor.AMP)

K_BLOCK = _single(Factor.F2MP, Factor.F2MP, Factor.AMP, Factor.AMP)
L_BLOCK = _single(Factor.F2MP, Factor.APM, Factor.AMP)
M_BLOCK = _single(Factor.F2MP, Factor.F2PM, Factor.AMP)
N_BLOCK = _single(Factor.F2MP, Factor.AMP, Factor.AMP, Factor.AMP)
NT_BLOCK = _single(Factor.AMP, Factor.F2MP, Factor.AMP, Factor.AMP)
R_BLOCK = _single(Factor.F2MP, Factor.APM, Factor.AMP, Factor.AMP)
RT_BLOCK = _single(Factor.APM, Factor.F2MP, Factor.AMP, Factor.AMP)
S_BLOCK = _single(Factor.F2PM, Factor.F2MP, Factor.AMP, Factor.AMP)

#: h3 = (h2,A^±,A^±) + (K) + (g2,A^±,A^∓) + (M,A^±).
H3_BLOCK = (
    product(H2_BLOCK, APM, APM)
    + K_BLOCK
    + product(G2_BLOCK, APM, AMP)
    + product(M_BLOCK, APM)
)


def _powers(block: TermSum, j: int) -> TermSum:
    return product(*([block] * j))


def p_prime(i: int) -> TermSum:
    """P'_i, width 2i.

    P'_1 = [A^±,A^±]; P'_2 = [K] + [A^±,L] + [X,A^∓,A^±]; for i >= 3,
    odd i = 2j+3:  [R,N^j,A^±,A^∓] + [A^±,K^(j+1),A^±],
    even i = 2j+2: [X,NT^j,A^∓,A^±] + [A^±,K^j,L].

    Every even-index prime block is consumed at an even recursion stage,
    where the one-bumper pieces feeding it carry NT rather than N; the
    exhaustive oracle sweep (first decisive at width 2*5) confirms NT.
    """
    if i < 1:
        raise ValueError("P block index must be >= 1")
    if i == 1:
        return _single(Factor.APM, Factor.APM)
    if i == 2:
        out = K_BLOCK + product(APM, L_BLOCK) + product(X_BLOCK, AMP, APM)
    elif i % 2 == 1:
        j = (i - 3) // 2
        out = product(R_BLOCK, _powers(N_BLOCK, j), APM, AMP) + product(
            APM, _powers(K_BLOCK, j + 1), APM
        )
    else:
        j = (i - 2) // 2
        out = product(X_BLOCK, _powers(NT_BLOCK, j), AMP, APM) + product(
            APM, _powers(K_BLOCK, j), L_BLOCK
        )
    assert out.width == 2 * i
    return out


def p_tilde(i: int) -> TermSum:
    """P~'_i, width 2i.

    P~'_1 = P'_1; P~'_2 = [X,A^±,A^∓] + [L,A^±] + [K]; for i >= 3,
    odd i = 2j+3:  [L,K^j,L] + [RT,NT^j,A^∓,A^±],
    even i = 2j+2: [L,K^j,A^±] + [X,N^j,A^±,A^∓].
    """
    if i < 1:
        raise ValueError("P block index must be >= 1")
    if i == 1:
        return p_prime(1)
    if i == 2:
        out = product(X_BLOCK, APM, AMP) + product(L_BLOCK, APM) + K_BLOCK
    elif i % 2 == 1:
        j = (i - 3) // 2
        out = product(L_BLOCK, _powers(K_BLOCK, j), L_BLOCK) + product(
            RT_BLOCK, _powers(NT_BLOCK, j), AMP, APM
        )
    else:
        j = (i - 2) // 2
        out = product(L_BLOCK, _powers(K_BLOCK, j), APM) + product(
            X_BLOCK, _powers(N_BLOCK, j), APM, AMP
        )
    assert out.width == 2 * i
    return out


def q_block(i: int) -> TermSum:
    """Q_i (i >= 3), width 2i.

    odd i = 2j+3:  [M,K^j,L] + [S,NT^j,A^∓,A^±],
    even i = 2j+2: [M,K^j,A^±] + [g2,N^j,A^±,A^∓].

    The even case indexes j = (i-2)/2: that is the unique choice giving width
    2i, and the second piece carries N (not K); both points are validated by
    the exhaustive oracle sweep in the test suite.
    """
    if i < 3:
        raise ValueError("Q block index must be >= 3")
    if i % 2 == 1:
        j = (i - 3) // 2
        out = product(M_BLOCK, _powers(K_BLOCK, j), L_BLOCK) + product(
            S_BLOCK, _powers(NT_BLOCK, j), AMP, APM
        )
    else:
        j = (i - 2) // 2
        out = product(M_BLOCK, _powers(K_BLOCK, j), APM) + product(
            G2_BLOCK, _powers(N_BLOCK, j), APM, AMP
        )
    assert out.width == 2 * i
    return out


_FIXED_BLOCKS: dict[str, TermSum] = {
    "C": C_BLOCK,
    "X": X_BLOCK,
    "K": K_BLOCK,
    "L": L_BLOCK,
    "M": M_BLOCK,
    "N": N_BLOCK,
    "NT": NT_BLOCK,
    "Ñ": NT_BLOCK,
    "R": R_BLOCK,
    "RT": RT_BLOCK,
    "R̃": RT_BLOCK,
    "S": S_BLOCK,
    "g2": G2_BLOCK,
    "h2": H2_BLOCK,
    "h3": H3_BLOCK,
    "f3": F3_BLOCK,
    "f2pm": F2PM,
    "f2mp": F2MP,
}


def expand_block(name: str, i: int | None = None, j: int | None = None) -> TermSum:
    """Look up a named block, fully expanded to a flat term sum.

    Fixed blocks take no index.  ``P'``/``P~'`` need ``i >= 1``; ``Q`` needs
    ``i >= 3``.  ``P`` additionally takes the tail position ``j`` (slot pairs
    preceding the block) and resolves to P' when ``i + j`` is odd, else P~'.
    """
    if name in _FIXED_BLOCKS:
        if i is not None:
            raise ValueError(f"block {name} takes no index")
        return _FIXED_BLOCKS[name]
    if i is None:
        raise ValueError(f"block {name} needs an index")
    if name in ("P'", "Pp"):
        return p_prime(i)
    if name in ("P~'", "P~", "Pt"):
        return p_tilde(i)
    if name == "Q":
        return q_block(i)
    if name == "P":
        if j is None:
            raise ValueError("block P needs the position parameter j")
        return p_prime(i) if (i + j) % 2 == 1 else p_tilde(i)
    raise ValueError(f"unknown block {name!r}")


def slot_width(ts: TermSum) -> int:
    """Common width of a term sum (construction already enforces agreement)."""
    for t in ts.terms:
        if t.width != ts.width:
            raise ValueError("inconsistent term widths")
    return ts.width


def eval_sum(ts: TermSum, signs: SignSeq | str) -> LaurentPoly:
    """Evaluate a term sum at a sign sequence (see TermSum.evaluate)."""
    return ts.evaluate(signs)


class CompiledTermSum:
    """Vectorized evaluator for a flat term sum.

    Each term's scalar must be ±delta^k (true for every expansion built from
    the block alphabet); the per-slot factors contribute a signed A-exponent
    that is linear in the sign vector, so one matrix product evaluates all
    terms at once.
    """

    def __init__(self, ts: TermSum):
        self.width = ts.width
        self.skip_positions = ts.skip_positions
        n = len(ts.terms)
        self.weights = np.zeros((n, ts.width), dtype=np.int64)
        self.signs = np.zeros(n, dtype=np.int64)
        self.delta_pows = np.zeros(n, dtype=np.int64)
        for r, t in enumerate(ts.terms):
            sgn, k = _as_delta_power(t.scalar)
            if k is None:
                raise ValueError("term scalar is not ±delta^k; use eval_sum")
            for col, f in enumerate(t.factors):
                self.weights[r, col] = _WEIGHT[f]
                if _NEGATIVE[f]:
                    sgn = -sgn
            self.signs[r] = sgn
            self.delta_pows[r] = k
        self.max_k = int(self.delta_pows.max(initial=0))

    def evaluate(self, signs: SignSeq | str) -> LaurentPoly:
        if isinstance(signs, str):
            signs = parse_signs(signs)
        if len(signs) != self.width:
            raise ValueError("sign sequence length != slot width")
        for i, s in enumerate(signs):
            if (s is None) != (i in self.skip_positions):
                raise ValueError(f"sign/skip mismatch at slot {i + 1}")
        vec = np.array([0 if s is None else s for s in signs], dtype=np.int64)
        exps = self.weights @ vec
        total = LaurentPoly.zero()
        for k in range(self.max_k + 1):
            mask = self.delta_pows == k
            if not mask.any():
                continue
            acc: dict[int, int] = {}
            for e, s in zip(exps[mask].tolist(), self.signs[mask].tolist()):
                v = acc.get(e, 0) + s
                if v:
                    acc[e] = v
                elif e in acc:
                    del acc[e]
            total = total + LaurentPoly(acc) * delta_power(k)
        return total
