"""Exact Laurent polynomial arithmetic in the bracket variable A.

Bracket values live in Z[A, A^-1].  Coefficients are Python integers, so
every operation is exact at any magnitude (no overflow, no floats).  The
Jones normalization substitutes A = t^(-1/4); the result lives in the
quarter-integer exponent ring, represented by :class:`QuarterPoly` with all
exponents stored as numerators over the fixed denominator 4.
"""

from __future__ import annotations

from math import gcd
from typing import Iterator, Mapping


class LaurentPoly:
    """Integer Laurent polynomial, stored as a map exponent -> nonzero coefficient.

    The zero polynomial is the empty map.  Instances are value-like: no method
    mutates ``terms`` after construction, so they are safe to share and reuse.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        self.terms: dict[int, int] = (
            {int(e): c for e, c in terms.items() if c} if terms else {}
        )

    @classmethod
    def _raw(cls, terms: dict[int, int]) -> "LaurentPoly":
        p = cls.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls._raw({0: 1})

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPoly":
        return cls._raw({exponent: coefficient} if coefficient else {})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.terms == ({0: other} if other else {})
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.monomial(0, other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            elif e in out:
                del out[e]
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.monomial(0, other)
        return self + (-other)

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            if not other:
                return LaurentPoly.zero()
            return LaurentPoly._raw({e: c * other for e, c in self.terms.items()})
        out: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                elif e in out:
                    del out[e]
        return LaurentPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers of a general Laurent polynomial")
        acc = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def mirror(self) -> "LaurentPoly":
        """Substitute A -> A^-1 (the mirror image of a bracket value)."""
        return LaurentPoly._raw({-e: c for e, c in self.terms.items()})

    def exponents(self) -> list[int]:
        return sorted(self.terms, reverse=True)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self.terms.items(), reverse=True))

    def text(self) -> str:
        """Render like ``-A^5 - A^-3 + A^-7``, highest exponent first."""
        if not self.terms:
            return "0"
        parts: list[str] = []
        for e in self.exponents():
            c = self.terms[e]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "A" if e == 1 else f"A^{e}"
                body = var if mag == 1 else f"{mag}{var}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def json_pairs(self) -> list[list[int]]:
        """[[exponent, coefficient], ...] sorted descending by exponent."""
        return [[e, self.terms[e]] for e in self.exponents()]

    def __repr__(self) -> str:
        return f"LaurentPoly({self.text()})"


#: delta = -A^2 - A^-2, the value of a disjoint unknot under stabilization.
DELTA = LaurentPoly({2: -1, -2: -1})

_DELTA_POWERS = [LaurentPoly.one(), DELTA]


def delta_power(k: int) -> LaurentPoly:
    """(-A^2 - A^-2)^k, exact; cached across calls."""
    if k < 0:
        raise ValueError("delta_power needs k >= 0")
    while len(_DELTA_POWERS) <= k:
        _DELTA_POWERS.append(_DELTA_POWERS[-1] * DELTA)
    return _DELTA_POWERS[k]


class QuarterPoly:
    """Laurent polynomial in t with quarter-integer exponents.

    Exponents are stored as integer numerators over the fixed denominator 4,
    so t^(n/4) is keyed by n.  Knot diagrams normalize to integer exponents;
    links may genuinely need halves.
    """

    __slots__ = ("numers",)

    def __init__(self, numers: Mapping[int, int] | None = None):
        self.numers: dict[int, int] = (
            {int(n): c for n, c in numers.items() if c} if numers else {}
        )

    @classmethod
    def one(cls) -> "QuarterPoly":
        return cls({0: 1})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.numers == ({0: other} if other else {})
        if isinstance(other, QuarterPoly):
            return self.numers == other.numers
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.numers.items()))

    def __bool__(self) -> bool:
        return bool(self.numers)

    def is_integral(self) -> bool:
        """True when every t-exponent is a whole integer."""
        return all(n % 4 == 0 for n in self.numers)

    def text(self) -> str:
        """Render like ``t + t^3 - t^4`` (ascending exponents, fractions reduced)."""
        if not self.numers:
            return "0"
        parts: list[str] = []
        for n in sorted(self.numers):
            c = self.numers[n]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if n == 0:
                body = str(mag)
            else:
                if n % 4 == 0:
                    e = n // 4
                    var = "t" if e == 1 else f"t^{e}"
                else:
                    d = 4 // gcd(abs(n), 4)
                    var = f"t^({n * d // 4}/{d})"
                body = var if mag == 1 else f"{mag}{var}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def json_pairs(self) -> list[list[int]]:
        """[[numerator-of-quarter-exponent, coefficient], ...] ascending."""
        return [[n, self.numers[n]] for n in sorted(self.numers)]

    def __repr__(self) -> str:
        return f"QuarterPoly({self.text()})"


def jones_normalize(bracket: LaurentPoly, writhe: int) -> QuarterPoly:
    """Jones polynomial from a bracket value and the diagram writhe.

    Multiplies by (-A^-3)^writhe, then substitutes A = t^(-1/4): the
    A-exponent e becomes the t-exponent -e/4.
    """
    sign = -1 if writhe & 1 else 1
    normalized = bracket * LaurentPoly.monomial(-3 * writhe, sign)
    return QuarterPoly({-e: c for e, c in normalized.terms.items()})


def coefficient_string(p: LaurentPoly) -> tuple[int, ...]:
    """Coefficients read from highest to lowest exponent over the support lattice.

    The lattice stride is the gcd of the gaps between consecutive exponents,
    so interior zeros on that lattice are included.  A one-term polynomial has
    no gaps and yields a single coefficient.
    """
    if not p.terms:
        raise ValueError("empty polynomial")
    exps = p.exponents()
    if len(exps) == 1:
        return (p.terms[exps[0]],)
    stride = 0
    for hi, lo in zip(exps, exps[1:]):
        stride = gcd(stride, hi - lo)
    return tuple(p.terms.get(e, 0) for e in range(exps[0], exps[-1] - 1, -stride))
