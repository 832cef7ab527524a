import random

import pytest

from billiardknots.billiard import diagram
from billiardknots.laurent import DELTA, LaurentPoly, QuarterPoly
from billiardknots.oracle import (
    bracket_all_signs,
    bracket_bruteforce,
    jones,
    sign_sequences,
)

A = LaurentPoly.monomial


def test_unknot_bracket():
    assert bracket_bruteforce(diagram(3, 1).assign_signs("")) == LaurentPoly.one()
    assert bracket_bruteforce(diagram(5, 1).assign_signs("")) == LaurentPoly.one()


def test_single_kink_values():
    d = diagram(3, 2)
    assert bracket_bruteforce(d.assign_signs("+")) == A(-3, -1)
    assert bracket_bruteforce(d.assign_signs("-")) == A(3, -1)


def test_two_component_values():
    d = diagram(3, 3)
    assert bracket_bruteforce(d.assign_signs("++")) == DELTA
    assert bracket_bruteforce(d.assign_signs("+-")) == LaurentPoly({4: -1, -4: -1})


def test_trefoil():
    sd = diagram(3, 4).assign_signs("+-+")
    assert bracket_bruteforce(sd) == LaurentPoly({5: -1, -3: -1, -7: 1})


def test_all_signs_kink_table():
    table = bracket_all_signs(diagram(3, 2))
    assert table == {"+": A(-3, -1), "-": A(3, -1)}


def test_all_signs_double_kink_table():
    table = bracket_all_signs(diagram(5, 2))
    assert table == {
        "++": A(-6),
        "+-": LaurentPoly.one(),
        "-+": LaurentPoly.one(),
        "--": A(6),
    }


def test_all_signs_two_long_knots_table():
    hopf = LaurentPoly({4: -1, -4: -1})
    table = bracket_all_signs(diagram(4, 2))
    assert table == {"++": hopf, "+-": DELTA, "-+": DELTA, "--": hopf}


def test_reducible_final_crossing_behavior():
    # Each kink multiplies the bracket by -A^(-3 sign); stacked kinks compose.
    d = diagram(5, 2)
    for s1 in (1, -1):
        for s2 in (1, -1):
            sd = d.assign_signs((s1, s2))
            assert bracket_bruteforce(sd) == A(-3 * s1, -1) * A(-3 * s2, -1)
    # One kink on a skipped-slot table reduces to the bare kink value.
    d2 = diagram(5, 2, bumpers=2)
    assert bracket_bruteforce(d2.assign_signs("_+")) == A(-3, -1)
    assert bracket_bruteforce(d2.assign_signs("_-")) == A(3, -1)


def test_mirror_symmetry():
    for a, b in [(3, 5), (3, 6), (5, 3), (5, 4)]:
        d = diagram(a, b)
        for s in sign_sequences(d):
            flipped = s.replace("+", "x").replace("-", "+").replace("x", "-")
            got = bracket_bruteforce(d.assign_signs(s)).mirror()
            assert got == bracket_bruteforce(d.assign_signs(flipped))


def test_smoothing_order_independence():
    rng = random.Random(5)
    sd = diagram(5, 4).assign_signs("++--+-")
    want = bracket_bruteforce(sd)
    for _ in range(5):
        order = list(range(6))
        rng.shuffle(order)
        assert bracket_bruteforce(sd, order=order) == want
    with pytest.raises(ValueError, match="permutation"):
        bracket_bruteforce(sd, order=[0, 0, 1, 2, 3, 4])


def test_crossing_limit():
    sd = diagram(5, 4).assign_signs("++--+-")
    with pytest.raises(ValueError, match="limit"):
        bracket_bruteforce(sd, limit=5)
    with pytest.raises(ValueError, match="limit"):
        bracket_all_signs(diagram(5, 4), limit=5)


def test_all_signs_matches_bruteforce():
    for a, b, bump in [(3, 5, 0), (5, 3, 0), (5, 4, 2), (5, 4, 1), (3, 6, 0)]:
        d = diagram(a, b, bumpers=bump)
        table = bracket_all_signs(d)
        for s in sign_sequences(d):
            assert table[s] == bracket_bruteforce(d.assign_signs(s))


def test_all_signs_iteration_order_deterministic():
    keys = list(bracket_all_signs(diagram(5, 2)))
    assert keys == ["++", "+-", "-+", "--"]


def test_jones_values():
    assert jones(diagram(3, 2).assign_signs("+")) == QuarterPoly.one()
    assert jones(diagram(5, 2).assign_signs("++")) == QuarterPoly.one()
    assert jones(diagram(3, 4).assign_signs("+-+")) == QuarterPoly(
        {4: 1, 12: 1, 16: -1}
    )


def test_jones_integral_on_knots():
    # Knot diagrams normalize to whole t-exponents.
    cases = [(3, b) for b in (2, 4, 5, 7, 8)] + [(5, b) for b in (2, 3, 4)]
    rng = random.Random(3)
    for a, b in cases:
        d = diagram(a, b)
        k = d.crossing_count
        for _ in range(4):
            signs = tuple(rng.choice((1, -1)) for _ in range(k))
            assert jones(d.assign_signs(signs)).is_integral()
