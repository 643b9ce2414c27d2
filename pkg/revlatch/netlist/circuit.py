from dataclasses import dataclass, replace
from enum import Enum
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from revlatch.gates.gate_spec import GateSpec
from revlatch.netlist.refs import PortRef, Ref, RefKind

__all__ = [
    "LineRole",
    "Line",
    "GateInstance",
    "FeedbackArc",
    "Circuit",
    "CircuitBuilder",
]


class LineRole(str, Enum):
    primary_input = "primary_input"
    constant_zero = "constant_zero"
    constant_one = "constant_one"
    # placeholder wire without a value of its own; may not drive a port
    internal = "internal"


@dataclass(frozen=True)
class Line:
    id: str
    role: LineRole
    # a primary input fed with NOT <complement_of> (e.g. K_bar for K)
    complement_of: Optional[str] = None

    @property
    def is_constant(self) -> bool:
        return self.role in (LineRole.constant_zero, LineRole.constant_one)

    @property
    def constant_value(self) -> Optional[int]:
        if self.role == LineRole.constant_zero:
            return 0
        if self.role == LineRole.constant_one:
            return 1
        return None

    @property
    def input_name(self) -> Optional[str]:
        """Name of the primary input that feeds this line."""
        if self.role != LineRole.primary_input:
            return None
        return self.complement_of if self.complement_of is not None else self.id


@dataclass(frozen=True)
class GateInstance:
    gate: GateSpec
    inputs: Tuple[Ref, ...]
    outputs: Tuple[Optional[Ref], ...]


@dataclass(frozen=True)
class FeedbackArc:
    source: PortRef
    target: PortRef
    state: str


@dataclass(frozen=True)
class Circuit:
    """
    Fan-out-free netlist: gate instances in topological order (feedback arcs
    aside) over declared lines. Immutable; use CircuitBuilder or `replace`.
    """
    lines: Tuple[Line, ...] = ()
    gates: Tuple[GateInstance, ...] = ()
    feedbacks: Tuple[FeedbackArc, ...] = ()

    @property
    def line_map(self) -> Dict[str, Line]:
        return {line.id: line for line in self.lines}

    @property
    def input_names(self) -> List[str]:
        names = []
        for line in self.lines:
            name = line.input_name
            if name is not None and name not in names:
                names.append(name)
        return names

    @property
    def state_names(self) -> List[str]:
        return [arc.state for arc in self.feedbacks]

    def output_ports(self) -> Iterator[Tuple[PortRef, Optional[Ref]]]:
        for i, instance in enumerate(self.gates):
            for p, disposition in enumerate(instance.outputs):
                yield PortRef(i, p), disposition

    def input_ports(self) -> Iterator[Tuple[PortRef, Ref]]:
        for i, instance in enumerate(self.gates):
            for p, driver in enumerate(instance.inputs):
                yield PortRef(i, p), driver

    def ports_of_kind(self, kind: RefKind) -> List[PortRef]:
        return [port for port, d in self.output_ports() if d is not None and d.kind == kind]

    @property
    def primary_outputs(self) -> List[Tuple[str, PortRef]]:
        return [(d.name, port) for port, d in self.output_ports()
                if d is not None and d.kind == RefKind.primary]

    @property
    def garbage_ports(self) -> List[PortRef]:
        return self.ports_of_kind(RefKind.garbage)

    def used_lines(self) -> List[Line]:
        line_map = self.line_map
        used = {d.name for _, d in self.input_ports() if d.kind == RefKind.line}
        return [line_map[name] for name in line_map if name in used]

    @property
    def width(self) -> int:
        """External sources: lines driving a port plus feedback targets."""
        return len(self.used_lines()) + len(self.feedbacks)

    def with_dispositions(self, dispositions: Mapping[PortRef, Ref]) -> "Circuit":
        gates = list(self.gates)
        for port, disposition in dispositions.items():
            instance = gates[port.instance]
            outputs = list(instance.outputs)
            outputs[port.port] = disposition
            gates[port.instance] = replace(instance, outputs=tuple(outputs))
        return replace(self, gates=tuple(gates))


class CircuitBuilder:
    """
    Incremental construction of a Circuit. Wiring an `out:` driver into a new
    gate also sets the producer's disposition to the matching `in:` port.
    """

    def __init__(self):
        self.lines: List[Line] = []
        self._gates: List[Tuple[GateSpec, List[Ref], List[Optional[Ref]]]] = []
        self.feedbacks: List[FeedbackArc] = []
        self._pending_targets: Dict[str, PortRef] = {}
        self._const_count = 0

    def add_line(self, line_id: str, role: LineRole, complement_of: str = None) -> Ref:
        self.lines.append(Line(line_id, LineRole(role), complement_of))
        return Ref.line(line_id)

    def primary_input(self, name: str) -> Ref:
        return self.add_line(name, LineRole.primary_input)

    def complemented_input(self, name: str, line_id: str = None) -> Ref:
        return self.add_line(line_id or f"{name}_bar", LineRole.primary_input, complement_of=name)

    def constant(self, value: int) -> Ref:
        role = LineRole.constant_one if value else LineRole.constant_zero
        line_id = f"c{self._const_count}"
        self._const_count += 1
        return self.add_line(line_id, role)

    def add_gate(self, gate: GateSpec, inputs: Sequence[Ref]) -> int:
        index = len(self._gates)
        for port, driver in enumerate(inputs):
            if driver.kind == RefKind.out:
                self.set_output(driver.instance, driver.port, Ref.inp(index, port))
            elif driver.kind == RefKind.feedback:
                self._pending_targets[driver.name] = PortRef(index, port)
        self._gates.append((gate, list(inputs), [None] * gate.arity))
        return index

    def set_output(self, instance: int, port: int, disposition: Ref):
        self._gates[instance][2][port] = disposition

    def primary_output(self, instance: int, port: int, name: str):
        self.set_output(instance, port, Ref.primary(name))

    def feedback_source(self, state: str, instance: int, port: int):
        target = self._pending_targets.pop(state)
        self.set_output(instance, port, Ref.feedback(state))
        self.feedbacks.append(FeedbackArc(PortRef(instance, port), target, state))

    def garbage_rest(self):
        for _, _, outputs in self._gates:
            for p, disposition in enumerate(outputs):
                if disposition is None:
                    outputs[p] = Ref.garbage()

    def build(self) -> Circuit:
        gates = tuple(
            GateInstance(gate, tuple(inputs), tuple(outputs))
            for gate, inputs, outputs in self._gates
        )
        return Circuit(tuple(self.lines), gates, tuple(self.feedbacks))
