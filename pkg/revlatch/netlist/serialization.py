import json
from pathlib import Path
from typing import Any, Dict, List, Optional

from revlatch.base.errors import NetlistParseError, RevlatchError
from revlatch.gates.gate_spec import GateSpec
from revlatch.gates.library import GateLibrary
from revlatch.netlist.circuit import Circuit, FeedbackArc, GateInstance, Line, LineRole
from revlatch.netlist.refs import Ref, RefKind

__all__ = [
    "circuit_to_dict",
    "serialize",
    "parse",
    "load_circuit",
    "save_circuit",
    "load_gate_library",
]

_TOP_FIELDS = {"gates_custom", "lines", "instances", "feedbacks"}
_REQUIRED_TOP = {"lines", "instances"}


def circuit_to_dict(circuit: Circuit) -> Dict[str, Any]:
    library = GateLibrary.builtin()
    custom = []
    for instance in circuit.gates:
        gate = instance.gate
        if library.get(gate.name) != gate and all(c["name"] != gate.name for c in custom):
            custom.append({"name": gate.name, "arity": gate.arity, "outputs": gate.output_strings()})
    document: Dict[str, Any] = {}
    if custom:
        document["gates_custom"] = custom
    lines = []
    for line in circuit.lines:
        entry = {"id": line.id, "role": line.role.value}
        if line.complement_of is not None:
            entry["complement_of"] = line.complement_of
        lines.append(entry)
    document["lines"] = lines
    document["instances"] = [
        {
            "gate": instance.gate.name,
            "inputs": [str(ref) for ref in instance.inputs],
            "outputs": [None if ref is None else str(ref) for ref in instance.outputs],
        }
        for instance in circuit.gates
    ]
    document["feedbacks"] = [
        {
            "source": str(Ref.out(arc.source.instance, arc.source.port)),
            "target": str(Ref.inp(arc.target.instance, arc.target.port)),
            "state": arc.state,
        }
        for arc in circuit.feedbacks
    ]
    return document


def serialize(circuit: Circuit) -> str:
    return json.dumps(circuit_to_dict(circuit), indent=2, ensure_ascii=False) + "\n"


def _expect(value, kind, field):
    if not isinstance(value, kind):
        expected = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise NetlistParseError(f"expected {expected}, got {type(value).__name__}", field=field)
    return value


def _check_fields(obj: Dict, allowed, required, field):
    unknown = set(obj) - set(allowed)
    if unknown:
        raise NetlistParseError(f"unknown field(s) {', '.join(sorted(unknown))}", field=field)
    missing = set(required) - set(obj)
    if missing:
        raise NetlistParseError(f"missing field(s) {', '.join(sorted(missing))}", field=field)


def _parse_custom_gates(entries, library: GateLibrary):
    for n, entry in enumerate(_expect(entries, list, "gates_custom")):
        field = f"gates_custom[{n}]"
        _check_fields(_expect(entry, dict, field), {"name", "arity", "outputs"},
                      {"name", "arity", "outputs"}, field)
        outputs = _expect(entry["outputs"], list, f"{field}.outputs")
        arity = _expect(entry["arity"], int, f"{field}.arity")
        if arity != len(outputs):
            raise NetlistParseError(f"arity {arity} but {len(outputs)} outputs", field=field)
        name = _expect(entry["name"], str, f"{field}.name")
        texts = [_expect(o, str, f"{field}.outputs[{p}]") for p, o in enumerate(outputs)]
        try:
            library.register(GateSpec.from_strings(name, texts))
        except RevlatchError as e:
            raise NetlistParseError(str(e), field=field)


def _parse_ref(text, field, allow_null=False) -> Optional[Ref]:
    if text is None and allow_null:
        return None
    return Ref.parse(text, field)


def parse(text: str, library: GateLibrary = None) -> Circuit:
    """
    Parse a netlist JSON document. Structural rules (fan-out, dangling ports, ...)
    are left to `validate`; this only rejects malformed documents.
    """
    if library is None:
        library = GateLibrary.builtin()
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise NetlistParseError(e.msg, lineno=e.lineno)
    _check_fields(_expect(document, dict, "<document>"), _TOP_FIELDS, _REQUIRED_TOP, "<document>")

    if "gates_custom" in document:
        _parse_custom_gates(document["gates_custom"], library)

    lines: List[Line] = []
    for n, entry in enumerate(_expect(document["lines"], list, "lines")):
        field = f"lines[{n}]"
        _check_fields(_expect(entry, dict, field), {"id", "role", "complement_of"}, {"id", "role"}, field)
        try:
            role = LineRole(entry["role"])
        except ValueError:
            raise NetlistParseError(f"unknown line role '{entry['role']}'", field=f"{field}.role")
        complement_of = entry.get("complement_of")
        if complement_of is not None:
            _expect(complement_of, str, f"{field}.complement_of")
        lines.append(Line(_expect(entry["id"], str, f"{field}.id"), role, complement_of))

    gates: List[GateInstance] = []
    for n, entry in enumerate(_expect(document["instances"], list, "instances")):
        field = f"instances[{n}]"
        _check_fields(_expect(entry, dict, field), {"gate", "inputs", "outputs"},
                      {"gate", "inputs", "outputs"}, field)
        name = _expect(entry["gate"], str, f"{field}.gate")
        if name not in library:
            raise NetlistParseError(f"unknown gate '{name}'", field=f"{field}.gate")
        inputs = tuple(
            _parse_ref(ref, f"{field}.inputs[{p}]")
            for p, ref in enumerate(_expect(entry["inputs"], list, f"{field}.inputs"))
        )
        outputs = tuple(
            _parse_ref(ref, f"{field}.outputs[{p}]", allow_null=True)
            for p, ref in enumerate(_expect(entry["outputs"], list, f"{field}.outputs"))
        )
        for p, ref in enumerate(inputs):
            if not ref.is_driver:
                raise NetlistParseError(f"'{ref}' can't drive an input", field=f"{field}.inputs[{p}]")
        for p, ref in enumerate(outputs):
            if ref is not None and not ref.is_disposition:
                raise NetlistParseError(f"'{ref}' is not an output disposition", field=f"{field}.outputs[{p}]")
        gates.append(GateInstance(library[name], inputs, outputs))

    feedbacks: List[FeedbackArc] = []
    for n, entry in enumerate(_expect(document.get("feedbacks", []), list, "feedbacks")):
        field = f"feedbacks[{n}]"
        _check_fields(_expect(entry, dict, field), {"source", "target", "state"},
                      {"source", "target", "state"}, field)
        source = Ref.parse(entry["source"], f"{field}.source")
        target = Ref.parse(entry["target"], f"{field}.target")
        if source.kind != RefKind.out:
            raise NetlistParseError("feedback source must be 'out:<i>:<p>'", field=f"{field}.source")
        if target.kind != RefKind.inp:
            raise NetlistParseError("feedback target must be 'in:<i>:<p>'", field=f"{field}.target")
        feedbacks.append(FeedbackArc(source.port_ref, target.port_ref,
                                     _expect(entry["state"], str, f"{field}.state")))

    return Circuit(tuple(lines), tuple(gates), tuple(feedbacks))


def load_circuit(path, library: GateLibrary = None) -> Circuit:
    return parse(Path(path).read_text(encoding="utf8"), library)


def save_circuit(circuit: Circuit, path):
    Path(path).write_text(serialize(circuit), encoding="utf8")


def load_gate_library(path, base: GateLibrary = None) -> GateLibrary:
    """Built-in gates plus the `gates_custom` section of a netlist document."""
    library = base if base is not None else GateLibrary.builtin()
    try:
        document = json.loads(Path(path).read_text(encoding="utf8"))
    except json.JSONDecodeError as e:
        raise NetlistParseError(e.msg, lineno=e.lineno)
    if isinstance(document, dict) and "gates_custom" in document:
        _parse_custom_gates(document["gates_custom"], library)
    return library
