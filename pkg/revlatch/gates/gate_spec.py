import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from revlatch.base.errors import InputShapeError
from revlatch.gates.expression import Complexity, Expr, parse_expression
from revlatch.utils import full_mask, variable_words

logger = logging.getLogger(__name__)

__all__ = [
    "INPUT_SYMBOLS",
    "GateSpec",
    "eval_gate",
    "pass_through_ports",
    "UniversalityVerdict",
    "check_nand_universality",
]

INPUT_SYMBOLS = ("A", "B", "C", "D", "E", "F", "G", "H")


@dataclass(frozen=True)
class GateSpec:
    """
    A named k x k gate given by one boolean expression per output over the
    input symbols A, B, C, ... (the first `arity` of INPUT_SYMBOLS).

    `fold_constants` marks gates whose hardware complexity depends on which
    inputs are tied to constants (a Feynman gate with a constant control is a
    copy or an inverter, not an XOR).
    """
    name: str
    arity: int
    outputs: Tuple[Expr, ...]
    fold_constants: bool = False
    description: str = field(default="", compare=False)

    def __post_init__(self):
        if self.arity < 1 or self.arity > len(INPUT_SYMBOLS):
            raise InputShapeError(
                f"Gate '{self.name}': arity must be in [1, {len(INPUT_SYMBOLS)}], got {self.arity}"
            )
        if len(self.outputs) != self.arity:
            raise InputShapeError(
                f"Gate '{self.name}' has arity {self.arity} but {len(self.outputs)} output expressions"
            )
        for expr in self.outputs:
            expr.check_symbols(self.input_symbols)
            if expr.has_or():
                raise InputShapeError(f"Gate '{self.name}': OR is not allowed in gate outputs")

    @classmethod
    def from_strings(cls, name: str, outputs: Sequence[str], fold_constants=False, description=""):
        arity = len(outputs)
        allowed = INPUT_SYMBOLS[:arity]
        exprs = tuple(parse_expression(text, allowed) for text in outputs)
        return cls(name, arity, exprs, fold_constants, description)

    @property
    def input_symbols(self) -> Tuple[str, ...]:
        return INPUT_SYMBOLS[:self.arity]

    @property
    def complexity(self) -> Complexity:
        total = Complexity()
        for expr in self.outputs:
            total = total + expr.operation_counts()
        return total

    def complexity_with_constants(self, bindings: Mapping[int, int]) -> Complexity:
        """Complexity once the inputs in `bindings` (port -> bit) are tied to constants."""
        if not self.fold_constants or not bindings:
            return self.complexity
        env = {self.input_symbols[port]: bit for port, bit in bindings.items()}
        total = Complexity()
        for expr in self.outputs:
            total = total + expr.fold_constants(env).operation_counts()
        return total

    def evaluate_words(self, inputs: Sequence[int], mask: int = 1) -> Tuple[int, ...]:
        env = dict(zip(self.input_symbols, inputs))
        return tuple(expr.evaluate(env, mask) for expr in self.outputs)

    def output_strings(self) -> List[str]:
        return [str(expr) for expr in self.outputs]

    def __str__(self):
        return f"{self.name}({self.arity}x{self.arity})"


def eval_gate(gate: GateSpec, bits: Sequence[int]) -> Tuple[int, ...]:
    if len(bits) != gate.arity:
        raise InputShapeError(
            f"Gate {gate.name} expects {gate.arity} input bits, got {len(bits)}"
        )
    if any(bit not in (0, 1) for bit in bits):
        raise InputShapeError(f"Input bits must be 0 or 1, got {tuple(bits)}")
    return gate.evaluate_words(bits, 1)


def pass_through_ports(gate: GateSpec) -> List[int]:
    """Output positions that always equal the input on the same position."""
    words = variable_words(gate.input_symbols)
    inputs = [words[s] for s in gate.input_symbols]
    outputs = gate.evaluate_words(inputs, full_mask(gate.arity))
    return [i for i, (x, y) in enumerate(zip(inputs, outputs)) if x == y]


@dataclass(frozen=True)
class UniversalityVerdict:
    universal: bool
    output: int
    bindings: Dict[int, int]
    rows: Tuple[Tuple[Tuple[int, ...], int, int], ...]
    counterexample: Optional[Tuple[int, ...]] = None

    def describe(self, gate_name: str) -> str:
        bound = ",".join(f"{INPUT_SYMBOLS[p]}={v}" for p, v in sorted(self.bindings.items()))
        if self.universal:
            return f"NAND at output {self.output + 1} under {bound}"
        return (f"{gate_name} output {self.output + 1} under {bound} is not NAND: "
                f"counterexample inputs {self.counterexample}")


def _normalize_bindings(gate: GateSpec, bindings: Mapping[Union[int, str], int]) -> Dict[int, int]:
    result = {}
    for port, value in bindings.items():
        if isinstance(port, str):
            if port not in gate.input_symbols:
                raise InputShapeError(f"Binding '{port}' is not an input of {gate.name}")
            port = gate.input_symbols.index(port)
        if not 0 <= port < gate.arity:
            raise InputShapeError(f"Binding port {port} is out of range for {gate.name}")
        if value not in (0, 1):
            raise InputShapeError(f"Binding value for port {port} must be 0 or 1")
        result[port] = value
    return result


def check_nand_universality(
        gate: GateSpec,
        const_bindings: Optional[Mapping[Union[int, str], int]] = None,
        output: int = 3,
) -> UniversalityVerdict:
    """
    Tie the ports in `const_bindings` to constants and check that `output`
    computes NAND of the two remaining free inputs.
    """
    if const_bindings is None:
        const_bindings = {"C": 0, "D": 1}
    bindings = _normalize_bindings(gate, const_bindings)
    if not 0 <= output < gate.arity:
        raise InputShapeError(f"Output {output} is out of range for {gate.name}")
    free = [p for p in range(gate.arity) if p not in bindings]
    if len(free) != 2:
        raise InputShapeError(
            f"NAND check needs exactly two free inputs, {gate.name} has {len(free)} after binding"
        )

    rows = []
    counterexample = None
    for a, b in product((0, 1), repeat=2):
        bits = [0] * gate.arity
        for port, value in bindings.items():
            bits[port] = value
        bits[free[0]], bits[free[1]] = a, b
        value = eval_gate(gate, bits)[output]
        expected = 1 - (a & b)
        rows.append(((a, b), value, expected))
        if value != expected and counterexample is None:
            counterexample = (a, b)
    verdict = UniversalityVerdict(
        universal=counterexample is None,
        output=output,
        bindings=bindings,
        rows=tuple(rows),
        counterexample=counterexample,
    )
    logger.debug("NAND check for %s: %s", gate.name, verdict.universal)
    return verdict
