"""Kauffman bracket and Jones polynomials of billiard-table knot diagrams.

Two routes to every bracket value: closed-form term expansions evaluated
against a crossing-sign sequence (fast), and an exhaustive skein state sum
over the combinatorial diagram (the oracle the expansions are checked
against).
"""

from .billiard import (
    BilliardDiagram,
    SignedDiagram,
    TableSpec,
    assign_signs,
    build_bumpered,
    build_table,
    component_count,
    diagram,
    export_gauss,
    export_pd,
    writhe_direct,
)
from .laurent import (
    DELTA,
    LaurentPoly,
    QuarterPoly,
    coefficient_string,
    delta_power,
    jones_normalize,
)
from .oracle import bracket_all_signs, bracket_bruteforce, jones, sign_sequences
from .recursions import (
    b_terms,
    bt_terms,
    compositions,
    count_f_terms,
    count_h_skeletons,
    f_terms,
    h_terms,
    padovan,
    writhe_recursive,
)
from .terms import (
    CompiledTermSum,
    Factor,
    SlotTerm,
    TermSum,
    concat,
    eval_sum,
    expand_block,
    parse_signs,
    slot_width,
)
from .tiling import count_domino_tilings, enumerate_term_tilings, tiling_to_term

__version__ = "0.1.0"

__all__ = [
    "BilliardDiagram",
    "CompiledTermSum",
    "DELTA",
    "Factor",
    "LaurentPoly",
    "QuarterPoly",
    "SignedDiagram",
    "SlotTerm",
    "TableSpec",
    "TermSum",
    "assign_signs",
    "b_terms",
    "bracket_all_signs",
    "bracket_bruteforce",
    "bt_terms",
    "build_bumpered",
    "build_table",
    "coefficient_string",
    "component_count",
    "compositions",
    "concat",
    "count_domino_tilings",
    "count_f_terms",
    "count_h_skeletons",
    "delta_power",
    "diagram",
    "enumerate_term_tilings",
    "eval_sum",
    "expand_block",
    "export_gauss",
    "export_pd",
    "f_terms",
    "h_terms",
    "jones",
    "jones_normalize",
    "padovan",
    "parse_signs",
    "sign_sequences",
    "slot_width",
    "tiling_to_term",
    "writhe_direct",
    "writhe_recursive",
]
