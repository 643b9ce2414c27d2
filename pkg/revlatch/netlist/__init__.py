from revlatch.netlist.builders import (
    BUILTIN_CIRCUITS,
    D_LATCH_EQUATION,
    JK_LATCH_EQUATION,
    d_latch_q,
    d_latch_qq,
    get_builtin,
    jk_latch_q,
    jk_latch_qq,
)
from revlatch.netlist.circuit import Circuit, CircuitBuilder, FeedbackArc, GateInstance, Line, LineRole
from revlatch.netlist.refs import PortRef, Ref, RefKind
from revlatch.netlist.serialization import (
    circuit_to_dict,
    load_circuit,
    load_gate_library,
    parse,
    save_circuit,
    serialize,
)
from revlatch.netlist.validation import ValidationResult, validate

__all__ = [
    "BUILTIN_CIRCUITS",
    "D_LATCH_EQUATION",
    "JK_LATCH_EQUATION",
    "d_latch_q",
    "d_latch_qq",
    "jk_latch_q",
    "jk_latch_qq",
    "get_builtin",
    "Circuit",
    "CircuitBuilder",
    "FeedbackArc",
    "GateInstance",
    "Line",
    "LineRole",
    "PortRef",
    "Ref",
    "RefKind",
    "circuit_to_dict",
    "load_circuit",
    "load_gate_library",
    "parse",
    "save_circuit",
    "serialize",
    "ValidationResult",
    "validate",
]
