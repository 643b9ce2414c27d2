import json
import unittest
from pathlib import Path

from hypothesis import given, settings

from revlatch.base.errors import DiagnosticCode, NetlistParseError, UnknownReferenceError, ValidationError
from revlatch.gates import FG, SG, TG, GateLibrary, GateSpec
from revlatch.netlist import (BUILTIN_CIRCUITS, Circuit, CircuitBuilder, GateInstance, LineRole, PortRef, Ref,
                              get_builtin, jk_latch_qq, load_circuit, parse, serialize, validate)
from revlatch.tests.utils import circuits

DATA_DIR = Path(__file__).parent / "data"


def _two_gates_sharing_a_line() -> Circuit:
    builder = CircuitBuilder()
    a = builder.primary_input("A")
    b = builder.primary_input("B")
    builder.add_gate(FG, [a, b])
    builder.add_gate(FG, [a, builder.constant(0)])
    builder.garbage_rest()
    return builder.build()


class TestValidation(unittest.TestCase):
    def test_builtins_are_valid(self):
        for name in BUILTIN_CIRCUITS:
            self.assertTrue(validate(get_builtin(name)).ok, name)

    def test_fanout(self):
        result = validate(_two_gates_sharing_a_line())
        self.assertFalse(result.ok)
        self.assertEqual(result.code, DiagnosticCode.fanout)
        self.assertEqual(result.element, "line:A")
        with self.assertRaises(ValidationError):
            result.raise_for_error()

    def test_dangling_output(self):
        builder = CircuitBuilder()
        builder.add_gate(FG, [builder.primary_input("A"), builder.primary_input("B")])
        builder.primary_output(0, 0, "P")
        result = validate(builder.build())
        self.assertEqual(result.code, DiagnosticCode.dangling)
        self.assertEqual(result.element, "out:0:1")

    def test_unknown_and_internal_lines(self):
        builder = CircuitBuilder()
        builder.add_line("W", LineRole.internal)
        builder.add_gate(FG, [Ref.line("W"), Ref.line("missing")])
        builder.garbage_rest()
        circuit = builder.build()
        self.assertEqual(validate(circuit).code, DiagnosticCode.undriven)

        builder = CircuitBuilder()
        builder.add_gate(FG, [builder.primary_input("A"), Ref.line("missing")])
        builder.garbage_rest()
        self.assertEqual(validate(builder.build()).code, DiagnosticCode.unknown_line)

    def test_arity_mismatch(self):
        circuit = Circuit(
            lines=get_builtin("d-latch-q").lines,
            gates=(GateInstance(TG, (Ref.line("E"), Ref.line("D")), (Ref.garbage(),) * 3),),
        )
        result = validate(circuit)
        self.assertEqual(result.code, DiagnosticCode.arity_mismatch)
        self.assertEqual(result.element, "instance:0")

    def test_order(self):
        d_latch = get_builtin("d-latch-qq")
        first, second = d_latch.gates
        # consuming an output of a later gate without a feedback arc
        swapped = Circuit(d_latch.lines, (second, first), ())
        self.assertFalse(validate(swapped).ok)

    def test_feedback_mismatch(self):
        d_latch = get_builtin("d-latch-q")
        broken = Circuit(d_latch.lines, d_latch.gates, ())
        self.assertEqual(validate(broken).code, DiagnosticCode.feedback)

    def test_duplicate_output(self):
        builder = CircuitBuilder()
        builder.add_gate(FG, [builder.primary_input("A"), builder.primary_input("B")])
        builder.primary_output(0, 0, "P")
        builder.primary_output(0, 1, "P")
        result = validate(builder.build())
        self.assertEqual(result.code, DiagnosticCode.duplicate_output)

    def test_duplicate_line(self):
        builder = CircuitBuilder()
        builder.primary_input("A")
        builder.primary_input("A")
        self.assertEqual(validate(builder.build()).code, DiagnosticCode.duplicate_line)


class TestBuilders(unittest.TestCase):
    def test_shapes(self):
        shapes = {
            "d-latch-q": (["SG"], ["E", "D"], ["Q"]),
            "d-latch-qq": (["SG", "FG"], ["E", "D"], ["Q", "Q_bar"]),
            "jk-latch-q": (["FRG", "SG"], ["E", "J", "K"], ["Q"]),
            "jk-latch-qq": (["FRG", "SG", "FG"], ["E", "J", "K"], ["Q", "Q_bar"]),
        }
        for name, (gates, inputs, outputs) in shapes.items():
            circuit = get_builtin(name)
            self.assertEqual([g.gate.name for g in circuit.gates], gates, name)
            self.assertEqual(circuit.input_names, inputs, name)
            self.assertEqual([n for n, _ in circuit.primary_outputs], outputs, name)
            self.assertEqual(circuit.state_names, ["Q"], name)

    def test_feedback_from_third_sg_output(self):
        for name in BUILTIN_CIRCUITS:
            circuit = get_builtin(name)
            sg = next(i for i, g in enumerate(circuit.gates) if g.gate is SG)
            self.assertEqual(circuit.feedbacks[0].source, PortRef(sg, 2), name)

    def test_complemented_k(self):
        circuit = get_builtin("jk-latch-q")
        k_bar = circuit.line_map["K_bar"]
        self.assertEqual(k_bar.complement_of, "K")
        self.assertEqual(k_bar.input_name, "K")

    def test_unknown_builtin(self):
        with self.assertRaises(UnknownReferenceError):
            get_builtin("sr-latch")

    def test_width(self):
        self.assertEqual(get_builtin("d-latch-q").width, 4)
        self.assertEqual(get_builtin("jk-latch-qq").width, 6)


class TestSerialization(unittest.TestCase):
    def test_builtin_round_trip(self):
        for name in BUILTIN_CIRCUITS:
            circuit = get_builtin(name)
            self.assertEqual(parse(serialize(circuit)), circuit, name)

    @settings(max_examples=100, deadline=None)
    @given(circuits())
    def test_random_round_trip(self, circuit):
        self.assertTrue(validate(circuit).ok)
        self.assertEqual(parse(serialize(circuit)), circuit)

    def test_fixture_file(self):
        circuit = load_circuit(DATA_DIR / "jk_latch_qq.json")
        self.assertEqual(circuit, jk_latch_qq())
        self.assertTrue(validate(circuit).ok)

    def test_document_shape(self):
        document = json.loads(serialize(get_builtin("d-latch-q")))
        self.assertEqual(set(document), {"lines", "instances", "feedbacks"})
        self.assertEqual(document["instances"][0]["inputs"], ["line:E", "feedback:Q", "line:D", "line:c0"])
        self.assertEqual(document["instances"][0]["outputs"], ["garbage", "primary:Q", "feedback:Q", "garbage"])
        self.assertEqual(document["feedbacks"], [{"source": "out:0:2", "target": "in:0:1", "state": "Q"}])

    def test_null_output_parses_and_fails_validation(self):
        document = json.loads(serialize(get_builtin("d-latch-q")))
        document["instances"][0]["outputs"][0] = None
        circuit = parse(json.dumps(document))
        self.assertEqual(validate(circuit).code, DiagnosticCode.dangling)

    def test_custom_gate(self):
        builder = CircuitBuilder()
        library = GateLibrary.builtin()
        swap = library.register(GateSpec.from_strings("SWAP", ["B", "A"]))
        builder.add_gate(swap, [builder.primary_input("A"), builder.primary_input("B")])
        builder.garbage_rest()
        circuit = builder.build()
        text = serialize(circuit)
        self.assertIn("gates_custom", json.loads(text))
        self.assertEqual(parse(text), circuit)

    def test_parse_errors(self):
        valid = json.loads(serialize(get_builtin("d-latch-q")))

        with self.assertRaises(NetlistParseError) as cm:
            parse('{"lines": [],\n "instances": [}')
        self.assertEqual(cm.exception.lineno, 2)

        document = dict(valid, extra=1)
        with self.assertRaises(NetlistParseError) as cm:
            parse(json.dumps(document))
        self.assertEqual(cm.exception.field, "<document>")

        document = json.loads(json.dumps(valid))
        document["instances"][0]["gate"] = "XYZ"
        with self.assertRaises(NetlistParseError) as cm:
            parse(json.dumps(document))
        self.assertEqual(cm.exception.field, "instances[0].gate")

        document = json.loads(json.dumps(valid))
        document["instances"][0]["inputs"][1] = "wire:Q"
        with self.assertRaises(NetlistParseError) as cm:
            parse(json.dumps(document))
        self.assertEqual(cm.exception.field, "instances[0].inputs[1]")

        document = json.loads(json.dumps(valid))
        document["lines"][0]["role"] = "clock"
        with self.assertRaises(NetlistParseError) as cm:
            parse(json.dumps(document))
        self.assertEqual(cm.exception.field, "lines[0].role")

        document = json.loads(json.dumps(valid))
        document["instances"][0]["inputs"][0] = "garbage"
        with self.assertRaises(NetlistParseError):
            parse(json.dumps(document))

        document = json.loads(json.dumps(valid))
        document["gates_custom"] = [{"name": "AND2", "arity": 2, "outputs": ["A", "A*B"]}]
        with self.assertRaises(NetlistParseError) as cm:
            parse(json.dumps(document))
        self.assertEqual(cm.exception.field, "gates_custom[0]")
