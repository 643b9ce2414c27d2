"""
Latch netlists built around the 4x4 SG gate.

SG with inputs (E, Q, D, 0) computes E'Q ^ ED = DE + E'Q on outputs 2 and 3;
output 3 closes the feedback loop and output 2 is the visible Q. A Fredkin gate
with inputs (Q, J, K') produces JQ' + K'Q on its second output, which takes the
place of D for the JK latch. A Feynman gate with a constant-1 target copies Q and
produces its complement.
"""
from typing import Callable, Dict

from revlatch.base.errors import UnknownReferenceError
from revlatch.gates.library import FG, FRG, SG
from revlatch.netlist.circuit import Circuit, CircuitBuilder
from revlatch.netlist.refs import Ref

__all__ = [
    "STATE",
    "OUTPUT",
    "OUTPUT_BAR",
    "D_LATCH_EQUATION",
    "JK_LATCH_EQUATION",
    "d_latch_q",
    "d_latch_qq",
    "jk_latch_q",
    "jk_latch_qq",
    "BUILTIN_CIRCUITS",
    "get_builtin",
]

STATE = "Q"
OUTPUT = "Q"
OUTPUT_BAR = "Q_bar"

D_LATCH_EQUATION = "D*E + !E*Q"
JK_LATCH_EQUATION = "(J*!Q + !K*Q)*E + !E*Q"


def _sg_latch(builder: CircuitBuilder, enable: Ref, data: Ref, state: Ref) -> int:
    sg = builder.add_gate(SG, [enable, state, data, builder.constant(0)])
    builder.feedback_source(STATE, sg, 2)
    return sg


def _complement_pair(builder: CircuitBuilder, sg: int):
    fg = builder.add_gate(FG, [Ref.out(sg, 1), builder.constant(1)])
    builder.primary_output(fg, 0, OUTPUT)
    builder.primary_output(fg, 1, OUTPUT_BAR)


def d_latch_q() -> Circuit:
    builder = CircuitBuilder()
    enable = builder.primary_input("E")
    data = builder.primary_input("D")
    sg = _sg_latch(builder, enable, data, Ref.feedback(STATE))
    builder.primary_output(sg, 1, OUTPUT)
    builder.garbage_rest()
    return builder.build()


def d_latch_qq() -> Circuit:
    builder = CircuitBuilder()
    enable = builder.primary_input("E")
    data = builder.primary_input("D")
    sg = _sg_latch(builder, enable, data, Ref.feedback(STATE))
    _complement_pair(builder, sg)
    builder.garbage_rest()
    return builder.build()


def _jk_core(builder: CircuitBuilder) -> int:
    enable = builder.primary_input("E")
    j = builder.primary_input("J")
    k_bar = builder.complemented_input("K")
    frg = builder.add_gate(FRG, [Ref.feedback(STATE), j, k_bar])
    return _sg_latch(builder, enable, Ref.out(frg, 1), Ref.out(frg, 0))


def jk_latch_q() -> Circuit:
    builder = CircuitBuilder()
    sg = _jk_core(builder)
    builder.primary_output(sg, 1, OUTPUT)
    builder.garbage_rest()
    return builder.build()


def jk_latch_qq() -> Circuit:
    builder = CircuitBuilder()
    sg = _jk_core(builder)
    _complement_pair(builder, sg)
    builder.garbage_rest()
    return builder.build()


BUILTIN_CIRCUITS: Dict[str, Callable[[], Circuit]] = {
    "d-latch-q": d_latch_q,
    "d-latch-qq": d_latch_qq,
    "jk-latch-q": jk_latch_q,
    "jk-latch-qq": jk_latch_qq,
}


def get_builtin(name: str) -> Circuit:
    try:
        return BUILTIN_CIRCUITS[name]()
    except KeyError:
        raise UnknownReferenceError(name, BUILTIN_CIRCUITS)
