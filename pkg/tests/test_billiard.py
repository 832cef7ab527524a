import json
import math
import re

import pytest

from billiardknots.billiard import (
    BilliardDiagram,
    TableSpec,
    build_bumpered,
    build_table,
    component_count,
    diagram,
    writhe_direct,
)
from billiardknots.laurent import LaurentPoly, delta_power
from billiardknots.oracle import bracket_bruteforce


def bracket_from_pd(pd_text: str) -> LaurentPoly:
    """Independent evaluator working purely from a PD code string.

    For X[a,b,c,d] (counterclockwise from the incoming under-strand) the
    A-smoothing joins (a,b) and (c,d); the B-smoothing joins (a,d) and (b,c).
    """
    xs = [tuple(map(int, m.group(1).split(","))) for m in re.finditer(r"X\[([0-9,]+)\]", pd_text)]
    arcs = sorted({x for t in xs for x in t})
    idx = {a: i for i, a in enumerate(arcs)}
    k = len(xs)
    total = LaurentPoly.zero()
    for sigma in range(1 << k):
        parent = list(range(len(arcs)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        loops = len(arcs)
        for c, (a, b, cc, d) in enumerate(xs):
            pairs = ((a, b), (cc, d)) if not (sigma >> c) & 1 else ((a, d), (b, cc))
            for x, y in pairs:
                rx, ry = find(idx[x]), find(idx[y])
                if rx != ry:
                    parent[rx] = ry
                    loops -= 1
        total = total + LaurentPoly.monomial(k - 2 * bin(sigma).count("1")) * delta_power(loops - 1)
    return total


# -- spec shapes -------------------------------------------------------


def test_crossing_counts_height3():
    for b in range(1, 13):
        assert diagram(3, b).crossing_count == b - 1


def test_crossing_counts_height5():
    for b in range(1, 11):
        assert diagram(5, b).crossing_count == 2 * (b - 1)


def test_coprime_crossing_formula():
    for a in (3, 4, 5):
        for b in range(1, 10):
            if math.gcd(a, b) == 1:
                assert diagram(a, b).crossing_count == (a - 1) * (b - 1) // 2


def test_unknot_table():
    d = build_table(TableSpec.rect(3, 1))
    assert d.crossing_count == 0
    assert component_count(d) == 1


def test_t33_two_components():
    d = diagram(3, 3)
    assert d.crossing_count == 2
    assert component_count(d) == 2


def test_t57_single_component():
    d = diagram(5, 7)
    assert d.crossing_count == 12
    assert component_count(d) == 1


def test_t42_two_long_components():
    d = diagram(4, 2)
    assert d.crossing_count == 2
    assert component_count(d) == 2


def test_bumpered_shapes():
    d = build_bumpered(TableSpec.bumpered(7, 2))
    assert component_count(d) == 1
    assert d.crossing_count == 11
    assert not d.skip_positions

    d8 = diagram(5, 8, bumpers=2)
    assert component_count(d8) == 2
    assert d8.slot_count == 14
    assert d8.skip_positions == {12}

    d13 = diagram(5, 3, bumpers=1)
    assert d13.slot_count == 4
    assert not d13.skip_positions

    d2 = diagram(5, 2, bumpers=2)
    assert d2.slot_count == 2
    assert d2.skip_positions == {0}


def test_canonical_order_stable_and_sorted():
    d1, d2 = diagram(5, 6), diagram(5, 6)
    pos1 = [(c.x, c.y) for c in d1.crossings]
    assert pos1 == [(c.x, c.y) for c in d2.crossings]
    assert pos1 == sorted(pos1)


def test_parity_rule_rejections():
    with pytest.raises(ValueError, match="parity"):
        TableSpec(5, 7, bumpers=2, side="bottom")
    with pytest.raises(ValueError, match="parity"):
        TableSpec(5, 8, bumpers=2, side="top")
    with pytest.raises(ValueError, match="parity"):
        TableSpec(5, 7, bumpers=1, side="top")
    with pytest.raises(ValueError, match="parity"):
        TableSpec(5, 8, bumpers=1, side="bottom")
    with pytest.raises(ValueError):
        TableSpec(3, 5, bumpers=1, side="bottom")
    with pytest.raises(ValueError):
        TableSpec(6, 4)
    with pytest.raises(ValueError):
        build_table(TableSpec.bumpered(5, 1))
    with pytest.raises(ValueError):
        build_bumpered(TableSpec.rect(5, 5))


def test_assign_signs_validation():
    d = diagram(3, 4)
    with pytest.raises(ValueError, match="length"):
        d.assign_signs("+-")
    with pytest.raises(ValueError, match="slot"):
        d.assign_signs("+_+")
    d8 = diagram(5, 8, bumpers=2)
    with pytest.raises(ValueError, match="slot"):
        d8.assign_signs("+" * 14)


def test_writhe_examples():
    assert writhe_direct(diagram(3, 1).assign_signs("")) == 0
    assert writhe_direct(diagram(3, 4).assign_signs("+-+")) == 3
    assert writhe_direct(diagram(3, 5).assign_signs("+-+-")) == 0
    assert writhe_direct(diagram(3, 2).assign_signs("+")) == -1


def test_euler_planarity():
    for spec in [(3, 5, 0), (3, 8, 0), (5, 4, 0), (5, 6, 0), (5, 5, 0),
                 (5, 6, 2), (5, 7, 2), (5, 6, 1), (5, 7, 1), (4, 3, 0)]:
        a, b, bump = spec
        assert diagram(a, b, bumpers=bump).euler_check(), spec


def test_pd_trefoil_matches_independent_evaluator():
    sd = diagram(3, 4).assign_signs("+-+")
    assert bracket_from_pd(sd.pd_code()) == bracket_bruteforce(sd)


def test_pd_hopf_two_crossings():
    sd = diagram(3, 3).assign_signs("+-")
    pd = sd.pd_code()
    assert pd.count("X[") == 2
    assert bracket_from_pd(pd) == bracket_bruteforce(sd)


def test_pd_bumpered_and_height5():
    for a, b, bump, signs in [(5, 3, 0, "++--"), (5, 4, 1, "+--++-"),
                              (5, 5, 2, "+-+-+-+")]:
        sd = diagram(a, b, bumpers=bump).assign_signs(signs)
        assert bracket_from_pd(sd.pd_code()) == bracket_bruteforce(sd)


def test_pd_unknot_marker():
    sd = diagram(3, 1).assign_signs("")
    assert sd.pd_code() == "PD[U]"
    assert sd.gauss_code() == "U"


def test_gauss_code_trefoil():
    sd = diagram(3, 4).assign_signs("+-+")
    assert sd.gauss_code() == "O1+ U2+ O3+ U1+ O2+ U3+"


def test_pd_deterministic():
    one = diagram(5, 4).assign_signs("+-+-+-").pd_code()
    two = diagram(5, 4).assign_signs("+-+-+-").pd_code()
    assert one == two


def test_json_dump():
    d = diagram(5, 4, bumpers=2)
    data = json.loads(d.json_dump())
    assert data["schema"] == 1
    assert data["table"] == "B_2(5,4)"
    assert [s["skipped"] for s in data["slots"]].count(True) == 1
    assert len(data["crossings"]) == d.crossing_count
