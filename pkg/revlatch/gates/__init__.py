from revlatch.gates.expression import Complexity, Expr, parse_expression
from revlatch.gates.gate_spec import (
    INPUT_SYMBOLS,
    GateSpec,
    UniversalityVerdict,
    check_nand_universality,
    eval_gate,
    pass_through_ports,
)
from revlatch.gates.library import (
    BUILTIN_GATES,
    FG,
    FRG,
    NOT,
    SEARCH_LIBRARY,
    PG,
    SG,
    STRICT_LIBRARY,
    TG,
    GateLibrary,
    get_gate,
)
from revlatch.gates.truth_table import (
    DEFAULT_MAX_ARITY,
    BijectivityVerdict,
    TruthTable,
    check_bijective,
    inverse_gate,
    truth_table,
)

__all__ = [
    "Complexity",
    "Expr",
    "parse_expression",
    "INPUT_SYMBOLS",
    "GateSpec",
    "UniversalityVerdict",
    "check_nand_universality",
    "eval_gate",
    "pass_through_ports",
    "BUILTIN_GATES",
    "NOT",
    "FG",
    "TG",
    "FRG",
    "PG",
    "SG",
    "SEARCH_LIBRARY",
    "STRICT_LIBRARY",
    "GateLibrary",
    "get_gate",
    "DEFAULT_MAX_ARITY",
    "BijectivityVerdict",
    "TruthTable",
    "check_bijective",
    "inverse_gate",
    "truth_table",
]
