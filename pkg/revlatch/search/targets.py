from dataclasses import dataclass, replace
from typing import Dict, Mapping, Optional, Tuple

from revlatch.base.errors import InputShapeError, UnknownReferenceError
from revlatch.gates.expression import Expr, Not, parse_expression
from revlatch.netlist.builders import D_LATCH_EQUATION, JK_LATCH_EQUATION, OUTPUT, OUTPUT_BAR, STATE

__all__ = ["TargetSpec", "TARGETS", "get_target"]


@dataclass(frozen=True)
class TargetSpec:
    """
    Behaviour a searched circuit must show: the next value of every state and the
    functions its visible outputs must compute, all over inputs and states.
    """
    name: str
    input_names: Tuple[str, ...]
    state_names: Tuple[str, ...]
    next_state: Tuple[Tuple[str, Expr], ...]
    outputs: Tuple[Tuple[str, Expr], ...] = ()
    allow_complemented_inputs: bool = False
    allow_constants: bool = True
    # gate count the published design claims to be minimal
    claimed_gates: Optional[int] = None

    def __post_init__(self):
        if not self.next_state and not self.outputs:
            raise InputShapeError(f"Target '{self.name}' requires no output")
        if [s for s, _ in self.next_state] != list(self.state_names):
            raise InputShapeError(f"Target '{self.name}' needs one next-state function per state")
        overlap = set(self.input_names) & set(self.state_names)
        if overlap:
            raise InputShapeError(f"Target '{self.name}': {sorted(overlap)} are both inputs and states")
        for _, expr in self.next_state + self.outputs:
            expr.check_symbols(self.variables)

    @classmethod
    def create(cls, name: str, input_names, state_names, next_state: Mapping[str, str],
               outputs: Mapping[str, str] = None, **kwargs) -> "TargetSpec":
        def parsed(mapping):
            return tuple((key, parse_expression(text) if isinstance(text, str) else text)
                         for key, text in (mapping or {}).items())

        return cls(name, tuple(input_names), tuple(state_names), parsed(next_state), parsed(outputs), **kwargs)

    @property
    def variables(self) -> Tuple[str, ...]:
        """Enumeration order: states, then inputs."""
        return self.state_names + self.input_names

    @property
    def required_outputs(self) -> Dict[str, Expr]:
        """Next-state functions (as `next:<state>`) and visible outputs."""
        required = {f"next:{s}": expr for s, expr in self.next_state}
        required.update(dict(self.outputs))
        return required

    @property
    def named_sources(self) -> Tuple[str, ...]:
        """Line ids a candidate may draw from, in enumeration order."""
        complements = tuple(f"{name}_bar" for name in self.input_names) if self.allow_complemented_inputs else ()
        return self.input_names + complements

    def strict(self) -> "TargetSpec":
        return replace(self, allow_complemented_inputs=False)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "inputs": list(self.input_names),
            "states": list(self.state_names),
            "next_state": {s: str(expr) for s, expr in self.next_state},
            "outputs": {name: str(expr) for name, expr in self.outputs},
            "allow_complemented_inputs": self.allow_complemented_inputs,
            "allow_constants": self.allow_constants,
            "claimed_gates": self.claimed_gates,
        }


def _latch(name, input_names, equation, with_complement, claimed, complemented=False) -> TargetSpec:
    next_state = parse_expression(equation)
    outputs = {OUTPUT: next_state}
    if with_complement:
        outputs[OUTPUT_BAR] = Not(next_state)
    return TargetSpec.create(
        name, input_names, (STATE,), {STATE: next_state}, outputs,
        allow_complemented_inputs=complemented, claimed_gates=claimed,
    )


TARGETS: Dict[str, TargetSpec] = {
    "d-latch-q": _latch("d-latch-q", ("E", "D"), D_LATCH_EQUATION, False, 1),
    "d-latch-qq": _latch("d-latch-qq", ("E", "D"), D_LATCH_EQUATION, True, 2),
    "jk-latch-q": _latch("jk-latch-q", ("E", "J", "K"), JK_LATCH_EQUATION, False, 2, complemented=True),
    "jk-latch-qq": _latch("jk-latch-qq", ("E", "J", "K"), JK_LATCH_EQUATION, True, 3, complemented=True),
}


def get_target(name: str) -> TargetSpec:
    try:
        return TARGETS[name]
    except KeyError:
        raise UnknownReferenceError(name, TARGETS)
