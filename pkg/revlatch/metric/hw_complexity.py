import logging
from dataclasses import dataclass
from enum import Enum
from typing import List

from revlatch.gates.expression import Complexity
from revlatch.netlist.circuit import Circuit
from revlatch.netlist.refs import RefKind

logger = logging.getLogger(__name__)

__all__ = ["HwConvention", "HwTerm", "hw_breakdown", "hw_complexity"]


class HwConvention(str, Enum):
    paper = "paper"
    strict = "strict"


@dataclass(frozen=True)
class HwTerm:
    element: str
    complexity: Complexity
    note: str = ""


def hw_breakdown(circuit: Circuit, convention: HwConvention = HwConvention.paper) -> List[HwTerm]:
    """
    Per-element contributions: one term per gate instance (constant-folded for
    gates that allow it) and one NOT per complemented input line in use.
    """
    convention = HwConvention(convention)
    line_map = circuit.line_map
    terms = []
    for i, instance in enumerate(circuit.gates):
        bindings = {}
        for port, driver in enumerate(instance.inputs):
            if driver.kind == RefKind.line and line_map[driver.name].is_constant:
                bindings[port] = line_map[driver.name].constant_value
        complexity = instance.gate.complexity_with_constants(bindings)
        note = ""
        if instance.gate.fold_constants and bindings:
            if complexity == Complexity(delta=1):
                note = "used as inverter"
            elif complexity == Complexity():
                note = "used as copy"
            if convention == HwConvention.strict and complexity != instance.gate.complexity:
                note += f", folded from {instance.gate.complexity}"
        terms.append(HwTerm(f"{instance.gate.name}#{i}", complexity, note))
    for line in circuit.used_lines():
        if line.complement_of is not None:
            terms.append(HwTerm(f"line:{line.id}", Complexity(delta=1), f"NOT {line.complement_of}"))
    return terms


def hw_complexity(circuit: Circuit, convention: HwConvention = HwConvention.paper) -> Complexity:
    total = Complexity()
    for term in hw_breakdown(circuit, convention):
        total = total + term.complexity
    return total
