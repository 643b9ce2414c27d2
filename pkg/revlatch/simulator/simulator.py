import json
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from revlatch.base.errors import BindingError, CapacityError, InputShapeError
from revlatch.gates.expression import Expr, parse_expression
from revlatch.gates.truth_table import BijectivityVerdict, TruthTable, check_bijective
from revlatch.netlist.circuit import Circuit, LineRole
from revlatch.netlist.refs import PortRef, RefKind
from revlatch.utils import bits_of, full_mask, variable_words

logger = logging.getLogger(__name__)

__all__ = [
    "LatchState",
    "CombinationalResult",
    "SimStep",
    "SimTrace",
    "CharacteristicVerdict",
    "ComplementarityVerdict",
    "StabilityVerdict",
    "enumeration_order",
    "propagate",
    "evaluate_ports",
    "eval_combinational",
    "step",
    "simulate_sequence",
    "check_characteristic",
    "check_complementarity",
    "check_stability",
    "check_composite_bijective",
]

LatchState = Dict[str, int]
Equation = Union[str, Expr]

DEFAULT_MAX_ENUMERATION_LINES = 12


@dataclass(frozen=True)
class CombinationalResult:
    outputs: Dict[str, int]
    next_state: LatchState
    port_values: Dict[str, int]


@dataclass(frozen=True)
class SimStep:
    event: int
    inputs: Dict[str, int]
    state_before: LatchState
    outputs: Dict[str, int]
    state_after: LatchState
    stable: bool = True

    def to_record(self) -> dict:
        return {
            "event": self.event,
            "inputs": self.inputs,
            "state_before": self.state_before,
            "outputs": self.outputs,
            "state_after": self.state_after,
            "stable": self.stable,
        }


@dataclass
class SimTrace:
    steps: List[SimStep] = field(default_factory=list)

    def trajectory(self, state_name: str) -> List[int]:
        return [s.state_after[state_name] for s in self.steps]

    def to_jsonl(self) -> str:
        return "".join(json.dumps(s.to_record(), sort_keys=False) + "\n" for s in self.steps)

    def __len__(self):
        return len(self.steps)


@dataclass(frozen=True)
class CharacteristicVerdict:
    holds: bool
    total: int
    checked: int
    variables: Tuple[str, ...]
    counterexample: Optional[Dict[str, int]] = None
    expected: Optional[Dict[str, int]] = None
    actual: Optional[Dict[str, int]] = None

    def __bool__(self):
        return self.holds

    def describe(self) -> str:
        if self.holds:
            return f"holds ({self.checked}/{self.total})"
        assignment = ", ".join(f"{k}={v}" for k, v in self.counterexample.items())
        return (f"counterexample {assignment}: expected {self.expected}, "
                f"got {self.actual} ({self.checked}/{self.total} checked)")


@dataclass(frozen=True)
class ComplementarityVerdict:
    complementary: bool
    total: int
    counterexample: Optional[Dict[str, int]] = None

    def __bool__(self):
        return self.complementary


@dataclass(frozen=True)
class StabilityVerdict:
    stable: bool
    total: int
    counterexample: Optional[Dict[str, int]] = None

    def __bool__(self):
        return self.stable


def enumeration_order(circuit: Circuit) -> List[str]:
    """State names first, then primary inputs; the first name is the most significant bit."""
    return list(circuit.state_names) + list(circuit.input_names)


def _check_bindings(circuit: Circuit, inputs: Mapping[str, int], state: Mapping[str, int]):
    for kind, expected, given in (("input", circuit.input_names, inputs),
                                  ("state", circuit.state_names, state)):
        missing = [name for name in expected if name not in given]
        if missing:
            raise BindingError(f"missing {kind} binding(s): {', '.join(missing)}")
        unknown = [name for name in given if name not in expected]
        if unknown:
            raise BindingError(f"unknown {kind} name(s): {', '.join(unknown)}")


def _line_words(circuit: Circuit, inputs: Mapping[str, int], mask: int) -> Dict[str, int]:
    values = {}
    for line in circuit.lines:
        if line.is_constant:
            values[line.id] = mask if line.constant_value else 0
        elif line.role == LineRole.primary_input:
            value = inputs[line.input_name] & mask
            values[line.id] = value ^ mask if line.complement_of is not None else value
    return values


def propagate(circuit: Circuit, line_values: Mapping[str, int], state: Mapping[str, int],
              mask: int = 1) -> Dict[PortRef, int]:
    """
    Evaluate every gate once in order. Values are bit-parallel words of width `mask`;
    returns the value of every gate output port.
    """
    values: Dict[PortRef, int] = {}
    for i, instance in enumerate(circuit.gates):
        words = []
        for driver in instance.inputs:
            if driver.kind == RefKind.line:
                words.append(line_values[driver.name])
            elif driver.kind == RefKind.out:
                words.append(values[driver.port_ref])
            else:
                words.append(state[driver.name] & mask)
        for p, word in enumerate(instance.gate.evaluate_words(words, mask)):
            values[PortRef(i, p)] = word
    return values


def _read_outputs(circuit: Circuit, values: Mapping[PortRef, int]):
    outputs = {name: values[port] for name, port in circuit.primary_outputs}
    next_state = {arc.state: values[arc.source] for arc in circuit.feedbacks}
    return outputs, next_state


def eval_combinational(circuit: Circuit, inputs: Mapping[str, int], state: Mapping[str, int]) -> CombinationalResult:
    _check_bindings(circuit, inputs, state)
    line_values = _line_words(circuit, inputs, 1)
    values = propagate(circuit, line_values, state, 1)
    outputs, next_state = _read_outputs(circuit, values)
    port_values = {f"line:{k}": v for k, v in line_values.items()}
    port_values.update({f"out:{p.instance}:{p.port}": v for p, v in values.items()})
    return CombinationalResult(outputs, next_state, port_values)


def step(circuit: Circuit, inputs: Mapping[str, int], state: Mapping[str, int]) -> LatchState:
    return eval_combinational(circuit, inputs, state).next_state


def simulate_sequence(circuit: Circuit, input_events: Sequence[Mapping[str, int]],
                      initial: Mapping[str, int]) -> SimTrace:
    trace = SimTrace()
    state = dict(initial)
    for n, event in enumerate(input_events):
        try:
            result = eval_combinational(circuit, event, state)
            settled = step(circuit, event, result.next_state)
        except BindingError as e:
            raise BindingError(str(e), event_index=n)
        stable = settled == result.next_state
        if not stable:
            logger.warning(
                "event #%d: state %s is not a fixpoint under held inputs %s (next would be %s)",
                n, result.next_state, dict(event), settled,
            )
        trace.steps.append(SimStep(n, dict(event), dict(state), result.outputs, result.next_state, stable))
        state = dict(result.next_state)
    return trace


def _assignment(names: Sequence[str], index: int) -> Dict[str, int]:
    return dict(zip(names, bits_of(index, len(names))))


def _lowest_set_bit(word: int) -> int:
    return (word & -word).bit_length() - 1


def _exhaustive(circuit: Circuit):
    names = enumeration_order(circuit)
    words = variable_words(names)
    mask = full_mask(len(names))
    inputs = {name: words[name] for name in circuit.input_names}
    state = {name: words[name] for name in circuit.state_names}
    return names, words, mask, inputs, state


def _as_equations(circuit: Circuit, equation) -> Dict[str, Expr]:
    if isinstance(equation, Mapping):
        equations = dict(equation)
    else:
        if len(circuit.state_names) != 1:
            raise InputShapeError(
                f"a single equation needs exactly one state, circuit has {circuit.state_names}"
            )
        equations = {circuit.state_names[0]: equation}
    allowed = enumeration_order(circuit)
    result = {}
    for state_name, expr in equations.items():
        if state_name not in circuit.state_names:
            raise InputShapeError(f"'{state_name}' is not a state of the circuit")
        if isinstance(expr, str):
            expr = parse_expression(expr)
        expr.check_symbols(allowed)
        result[state_name] = expr
    return result


def evaluate_ports(circuit: Circuit, names: Sequence[str] = None) -> Tuple[int, Dict[PortRef, int]]:
    """
    Bit-parallel values of every gate output over all assignments of `names`
    (default: enumeration_order). Returns (mask, port -> word).
    """
    names = enumeration_order(circuit) if names is None else list(names)
    missing = [n for n in list(circuit.state_names) + list(circuit.input_names) if n not in names]
    if missing:
        raise BindingError(f"no variable for {', '.join(missing)}")
    words = variable_words(names)
    mask = full_mask(len(names))
    inputs = {name: words[name] for name in circuit.input_names}
    state = {name: words[name] for name in circuit.state_names}
    return mask, propagate(circuit, _line_words(circuit, inputs, mask), state, mask)


def check_characteristic(circuit: Circuit, equation: Union[Equation, Mapping[str, Equation]]) -> CharacteristicVerdict:
    """Compare the next state with `equation` on every input x state assignment."""
    equations = _as_equations(circuit, equation)
    names, words, mask, inputs, state = _exhaustive(circuit)
    values = propagate(circuit, _line_words(circuit, inputs, mask), state, mask)
    _, next_state = _read_outputs(circuit, values)

    diff = 0
    expected_words = {}
    for state_name, expr in equations.items():
        expected_words[state_name] = expr.evaluate(words, mask)
        diff |= expected_words[state_name] ^ next_state[state_name]
    total = 1 << len(names)
    if diff == 0:
        return CharacteristicVerdict(True, total, total, tuple(names))
    index = _lowest_set_bit(diff)
    return CharacteristicVerdict(
        holds=False,
        total=total,
        checked=index + 1,
        variables=tuple(names),
        counterexample=_assignment(names, index),
        expected={k: (w >> index) & 1 for k, w in expected_words.items()},
        actual={k: (next_state[k] >> index) & 1 for k in equations},
    )


def check_complementarity(circuit: Circuit) -> ComplementarityVerdict:
    primary = circuit.primary_outputs
    if len(primary) != 2:
        raise InputShapeError(f"complementarity needs exactly two primary outputs, got {len(primary)}")
    names, _, mask, inputs, state = _exhaustive(circuit)
    values = propagate(circuit, _line_words(circuit, inputs, mask), state, mask)
    (_, first), (_, second) = primary
    same = ~(values[first] ^ values[second]) & mask
    total = 1 << len(names)
    if same == 0:
        return ComplementarityVerdict(True, total)
    return ComplementarityVerdict(False, total, _assignment(names, _lowest_set_bit(same)))


def check_stability(circuit: Circuit) -> StabilityVerdict:
    """step(x, step(x, s)) == step(x, s) for every input x and state s."""
    names, _, mask, inputs, state = _exhaustive(circuit)
    line_values = _line_words(circuit, inputs, mask)
    _, once = _read_outputs(circuit, propagate(circuit, line_values, state, mask))
    _, twice = _read_outputs(circuit, propagate(circuit, line_values, once, mask))
    diff = 0
    for name in once:
        diff |= once[name] ^ twice[name]
    total = 1 << len(names)
    if diff == 0:
        return StabilityVerdict(True, total)
    return StabilityVerdict(False, total, _assignment(names, _lowest_set_bit(diff)))


def check_composite_bijective(circuit: Circuit,
                              max_lines: int = DEFAULT_MAX_ENUMERATION_LINES) -> BijectivityVerdict:
    """
    Cut the feedback arcs and treat every used line (constants included) and every
    feedback target as a free input; the map onto all unconsumed output ports
    must then be a bijection.
    """
    used = [line.id for line in circuit.used_lines()]
    sources = [f"line:{name}" for name in used] + [f"feedback:{s}" for s in circuit.state_names]
    if len(sources) > max_lines:
        raise CapacityError(f"composite check is limited to {max_lines} lines, circuit has {len(sources)}")
    words = variable_words(sources)
    mask = full_mask(len(sources))
    line_values = {name: words[f"line:{name}"] for name in used}
    state = {s: words[f"feedback:{s}"] for s in circuit.state_names}
    values = propagate(circuit, line_values, state, mask)
    free_ports = [port for port, d in circuit.output_ports() if d.kind != RefKind.inp]
    if len(free_ports) != len(sources):
        raise InputShapeError(
            f"{len(sources)} free inputs but {len(free_ports)} unconsumed outputs"
        )
    if not sources:
        return BijectivityVerdict(True)
    rows = np.array(
        [[(values[port] >> j) & 1 for port in free_ports] for j in range(1 << len(sources))],
        dtype=np.uint8,
    )
    return check_bijective(TruthTable(len(sources), rows))
