import logging
from collections import Counter
from dataclasses import dataclass
from typing import Optional

from revlatch.base.errors import DiagnosticCode, ValidationError
from revlatch.netlist.circuit import Circuit, LineRole
from revlatch.netlist.refs import PortRef, Ref, RefKind

logger = logging.getLogger(__name__)

__all__ = ["ValidationResult", "validate"]


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    code: Optional[DiagnosticCode] = None
    element: Optional[str] = None
    message: str = ""

    def __bool__(self):
        return self.ok

    def raise_for_error(self):
        if not self.ok:
            raise ValidationError(self.code, self.element, self.message)

    def describe(self) -> str:
        if self.ok:
            return "valid"
        return f"invalid [{self.code.value}] {self.element}: {self.message}"


class _Reject(Exception):
    def __init__(self, code, element, message):
        super().__init__(message)
        self.result = ValidationResult(False, code, element, message)


def _port_name(kind: str, port: PortRef) -> str:
    return f"{kind}:{port.instance}:{port.port}"


def _check_lines(circuit: Circuit):
    ids = Counter(line.id for line in circuit.lines)
    for line_id, count in ids.items():
        if count > 1:
            raise _Reject(DiagnosticCode.duplicate_line, f"line:{line_id}", "line declared twice")
    for line in circuit.lines:
        if line.complement_of is not None and line.role != LineRole.primary_input:
            raise _Reject(DiagnosticCode.unknown_line, f"line:{line.id}",
                          "only primary inputs can be complemented")


def _check_arity(circuit: Circuit):
    for i, instance in enumerate(circuit.gates):
        arity = instance.gate.arity
        if len(instance.inputs) != arity or len(instance.outputs) != arity:
            raise _Reject(
                DiagnosticCode.arity_mismatch, f"instance:{i}",
                f"{instance.gate.name} has arity {arity} but {len(instance.inputs)} inputs "
                f"and {len(instance.outputs)} outputs are bound",
            )


def _check_drivers(circuit: Circuit):
    line_map = circuit.line_map
    arcs_by_target = {arc.target: arc for arc in circuit.feedbacks}
    consumers = Counter()
    for port, driver in circuit.input_ports():
        element = _port_name("in", port)
        if driver is None or not isinstance(driver, Ref) or not driver.is_driver:
            raise _Reject(DiagnosticCode.undriven, element, f"'{driver}' is not a driver")
        if driver.kind == RefKind.line:
            line = line_map.get(driver.name)
            if line is None:
                raise _Reject(DiagnosticCode.unknown_line, element, f"undeclared line '{driver.name}'")
            if line.role == LineRole.internal:
                raise _Reject(DiagnosticCode.undriven, element,
                              f"internal line '{driver.name}' carries no value")
        elif driver.kind == RefKind.out:
            if not 0 <= driver.instance < len(circuit.gates) or \
                    not 0 <= driver.port < circuit.gates[driver.instance].gate.arity:
                raise _Reject(DiagnosticCode.port_range, element, f"'{driver}' does not exist")
            if driver.instance >= port.instance:
                raise _Reject(DiagnosticCode.order, element,
                              f"'{driver}' is not produced by an earlier gate and no feedback arc is declared")
        else:
            arc = arcs_by_target.get(port)
            if arc is None or arc.state != driver.name:
                raise _Reject(DiagnosticCode.feedback, element,
                              f"'{driver}' has no matching feedback arc")
        consumers[str(driver)] += 1

    for driver, count in consumers.items():
        if count > 1:
            raise _Reject(DiagnosticCode.fanout, driver, f"drives {count} gate inputs")


def _check_dispositions(circuit: Circuit):
    arcs_by_source = {arc.source: arc for arc in circuit.feedbacks}
    primary_names = Counter()
    for port, disposition in circuit.output_ports():
        element = _port_name("out", port)
        if disposition is None:
            raise _Reject(DiagnosticCode.dangling, element, "output is neither consumed nor marked")
        if not isinstance(disposition, Ref) or not disposition.is_disposition:
            raise _Reject(DiagnosticCode.dangling, element, f"'{disposition}' is not a disposition")
        if disposition.kind == RefKind.inp:
            target = disposition.port_ref
            if not 0 <= target.instance < len(circuit.gates) or \
                    not 0 <= target.port < circuit.gates[target.instance].gate.arity:
                raise _Reject(DiagnosticCode.port_range, element, f"'{disposition}' does not exist")
            consumer_driver = circuit.gates[target.instance].inputs[target.port]
            if consumer_driver != Ref.out(port.instance, port.port):
                raise _Reject(DiagnosticCode.dangling, element,
                              f"marked as feeding '{disposition}' but that input is driven by '{consumer_driver}'")
        elif disposition.kind == RefKind.primary:
            primary_names[disposition.name] += 1
        elif disposition.kind == RefKind.feedback:
            arc = arcs_by_source.get(port)
            if arc is None or arc.state != disposition.name:
                raise _Reject(DiagnosticCode.feedback, element,
                              f"'{disposition}' has no matching feedback arc")

    # every `out:` driver must be acknowledged by its producer
    for port, driver in circuit.input_ports():
        if driver.kind == RefKind.out:
            producer = circuit.gates[driver.instance].outputs[driver.port]
            if producer != Ref.inp(port.instance, port.port):
                raise _Reject(DiagnosticCode.fanout if producer is not None and producer.kind == RefKind.inp
                              else DiagnosticCode.dangling,
                              str(driver), f"consumed by '{_port_name('in', port)}' but marked '{producer}'")

    for name, count in primary_names.items():
        if count > 1:
            raise _Reject(DiagnosticCode.duplicate_output, f"primary:{name}",
                          f"{count} ports share the output name")


def _check_feedbacks(circuit: Circuit):
    states = Counter(arc.state for arc in circuit.feedbacks)
    for state, count in states.items():
        if count > 1:
            raise _Reject(DiagnosticCode.feedback, f"feedback:{state}", "state declared twice")
    for arc in circuit.feedbacks:
        element = f"feedback:{arc.state}"
        for kind, port in (("out", arc.source), ("in", arc.target)):
            if not 0 <= port.instance < len(circuit.gates) or \
                    not 0 <= port.port < circuit.gates[port.instance].gate.arity:
                raise _Reject(DiagnosticCode.port_range, element, f"'{_port_name(kind, port)}' does not exist")
        if circuit.gates[arc.source.instance].outputs[arc.source.port] != Ref.feedback(arc.state):
            raise _Reject(DiagnosticCode.feedback, element,
                          f"source '{_port_name('out', arc.source)}' is not marked 'feedback:{arc.state}'")
        if circuit.gates[arc.target.instance].inputs[arc.target.port] != Ref.feedback(arc.state):
            raise _Reject(DiagnosticCode.feedback, element,
                          f"target '{_port_name('in', arc.target)}' is not driven by 'feedback:{arc.state}'")


def validate(circuit: Circuit) -> ValidationResult:
    """Check every structural rule in order; the first violation is reported."""
    try:
        _check_lines(circuit)
        _check_arity(circuit)
        _check_feedbacks(circuit)
        _check_drivers(circuit)
        _check_dispositions(circuit)
    except _Reject as rejection:
        logger.debug("circuit rejected: %s", rejection.result.describe())
        return rejection.result
    return ValidationResult(True)
