import unittest
from itertools import product

from revlatch.base.errors import (CapacityError, InputShapeError, NotInvertibleError, UnknownGateError,
                                  UnknownSymbolError)
from revlatch.gates import (BUILTIN_GATES, FG, FRG, NOT, PG, SG, TG, Complexity, GateLibrary, GateSpec,
                            check_bijective, check_nand_universality, eval_gate, get_gate, inverse_gate,
                            pass_through_ports, truth_table)
from revlatch.metric import load_reference_tables


class TestGateLibrary(unittest.TestCase):
    def test_eval_gate(self):
        self.assertEqual(eval_gate(FG, [1, 0]), (1, 1))
        self.assertEqual(eval_gate(TG, [1, 1, 0]), (1, 1, 1))
        self.assertEqual(eval_gate(FRG, [1, 1, 0]), (1, 0, 1))
        self.assertEqual(eval_gate(FRG, [0, 1, 0]), (0, 1, 0))
        self.assertEqual(eval_gate(PG, [1, 1, 1]), (1, 0, 0))
        self.assertEqual(eval_gate(SG, [1, 0, 1, 0]), (1, 1, 1, 0))
        self.assertEqual(eval_gate(NOT, [0]), (1,))

    def test_eval_gate_shape(self):
        with self.assertRaises(InputShapeError):
            eval_gate(SG, [1, 0, 1])
        with self.assertRaises(InputShapeError):
            eval_gate(FG, [1, 2])

    def test_sg_truth_table(self):
        reference = load_reference_tables()["I"]
        table = truth_table(SG)
        self.assertEqual(len(table), 16)
        for text in reference["rows"]:
            pattern, outputs = text.split()
            self.assertEqual("".join(map(str, table.row(int(pattern, 2)))), outputs, pattern)

    def test_builtin_gates_are_bijective(self):
        for name, gate in BUILTIN_GATES.items():
            table = truth_table(gate)
            self.assertTrue(check_bijective(table).bijective, name)
            self.assertEqual(sorted(table.as_indices().tolist()), list(range(1 << gate.arity)))

    def test_not_bijective(self):
        gate = GateSpec.from_strings("AND2", ["A", "A*B"])
        verdict = check_bijective(truth_table(gate))
        self.assertFalse(verdict.bijective)
        self.assertEqual(verdict.witness, (0, 1))
        with self.assertRaises(NotInvertibleError):
            inverse_gate(gate)
        with self.assertRaises(InputShapeError):
            GateLibrary().register(gate)

    def test_inverse(self):
        for gate in BUILTIN_GATES.values():
            self.assertTrue(truth_table(gate).compose(inverse_gate(gate)).is_identity(), gate.name)
        # Fredkin and Toffoli undo themselves
        self.assertEqual(inverse_gate(FRG), truth_table(FRG))
        self.assertEqual(inverse_gate(TG), truth_table(TG))
        self.assertEqual(inverse_gate(FG), truth_table(FG))
        self.assertEqual(inverse_gate(NOT), truth_table(NOT))
        self.assertNotEqual(inverse_gate(SG), truth_table(SG))

    def test_peres_is_toffoli_then_feynman(self):
        fg_on_three = GateSpec.from_strings("FG3", ["A", "A ^ B", "C"])
        self.assertEqual(truth_table(TG).compose(truth_table(fg_on_three)), truth_table(PG))

    def test_nand_universality(self):
        verdict = check_nand_universality(SG)
        self.assertTrue(verdict.universal)
        self.assertEqual(verdict.describe("SG"), "NAND at output 4 under C=0,D=1")
        self.assertEqual([row[1] for row in verdict.rows], [1, 1, 1, 0])

        other = check_nand_universality(SG, {"C": 0, "D": 0})
        self.assertFalse(other.universal)
        self.assertIsNotNone(other.counterexample)
        with self.assertRaises(InputShapeError):
            check_nand_universality(SG, {"C": 0})

    def test_pass_through(self):
        self.assertEqual(pass_through_ports(SG), [0])
        self.assertEqual(pass_through_ports(FRG), [0])
        self.assertEqual(pass_through_ports(TG), [0, 1])
        self.assertEqual(pass_through_ports(NOT), [])
        self.assertEqual(pass_through_ports(PG), [0])
        self.assertEqual(pass_through_ports(FG), [0])
        for gate in (FG, TG, FRG, PG, SG):
            for bits in product((0, 1), repeat=gate.arity):
                self.assertEqual(eval_gate(gate, bits)[0], bits[0], (gate.name, bits))

    def test_sg_middle_outputs_agree_without_d(self):
        for bits in product((0, 1), repeat=4):
            outputs = eval_gate(SG, bits)
            self.assertEqual(outputs[1] == outputs[2], bits[3] == 0, bits)

    def test_complexity(self):
        self.assertEqual(SG.complexity, Complexity(5, 6, 3))
        self.assertEqual(FRG.complexity, Complexity(2, 4, 2))
        self.assertEqual(TG.complexity, Complexity(1, 1, 0))
        self.assertEqual(PG.complexity, Complexity(2, 1, 0))
        self.assertEqual(NOT.complexity, Complexity(0, 0, 1))
        self.assertEqual(FG.complexity_with_constants({1: 0}), Complexity())
        self.assertEqual(FG.complexity_with_constants({1: 1}), Complexity(0, 0, 1))
        self.assertEqual(FG.complexity_with_constants({}), Complexity(1, 0, 0))
        # only gates marked for folding depend on constant bindings
        self.assertEqual(SG.complexity_with_constants({3: 0}), SG.complexity)

    def test_gate_definition_errors(self):
        with self.assertRaises(InputShapeError):
            GateSpec.from_strings("ORG", ["A", "A + B"])
        with self.assertRaises(UnknownSymbolError):
            GateSpec.from_strings("BAD", ["A", "C"])

    def test_arity_capacity(self):
        with self.assertRaises(CapacityError):
            truth_table(SG, max_arity=3)

    def test_library(self):
        library = GateLibrary.builtin(["FG", "SG"])
        self.assertEqual(list(library), ["FG", "SG"])
        self.assertIs(library["SG"], SG)
        with self.assertRaises(UnknownGateError):
            library["TG"]
        with self.assertRaises(UnknownGateError):
            get_gate("XYZ")

        swap = GateSpec.from_strings("SWAP", ["B", "A"])
        library.register(swap)
        self.assertEqual(library.custom_gates(), [swap])
        with self.assertRaises(InputShapeError):
            library.register(GateSpec.from_strings("SWAP", ["A", "B"]))
