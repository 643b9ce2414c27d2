from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from revlatch.base.errors import CapacityError, InputShapeError, NotInvertibleError
from revlatch.gates.gate_spec import GateSpec
from revlatch.utils import full_mask, variable_words

__all__ = [
    "DEFAULT_MAX_ARITY",
    "TruthTable",
    "BijectivityVerdict",
    "truth_table",
    "check_bijective",
    "inverse_gate",
]

DEFAULT_MAX_ARITY = 8


class TruthTable:
    """
    Output rows of a k-input map, row i holding the output bits for the input
    pattern whose unsigned value is i (input A is the most significant bit).
    """

    def __init__(self, arity: int, rows):
        rows = np.array(rows, dtype=np.uint8)
        if rows.ndim == 1:
            rows = rows.reshape(-1, 1)
        if rows.shape != (1 << arity, arity):
            raise InputShapeError(
                f"Truth table of arity {arity} needs shape {(1 << arity, arity)}, got {rows.shape}"
            )
        if np.any(rows > 1):
            raise InputShapeError("Truth table rows must contain only 0/1")
        rows.setflags(write=False)
        self.arity = arity
        self.rows = rows

    @classmethod
    def from_indices(cls, arity: int, indices: Sequence[int]) -> "TruthTable":
        indices = np.asarray(indices, dtype=np.int64)
        shifts = np.arange(arity - 1, -1, -1)
        return cls(arity, (indices[:, None] >> shifts) & 1)

    def as_indices(self) -> np.ndarray:
        weights = 1 << np.arange(self.arity - 1, -1, -1)
        return self.rows.astype(np.int64) @ weights

    def row(self, index: int) -> Tuple[int, ...]:
        return tuple(int(b) for b in self.rows[index])

    def compose(self, other: "TruthTable") -> "TruthTable":
        """Apply self first, then other."""
        if other.arity != self.arity:
            raise InputShapeError(f"Can't compose arity {self.arity} with arity {other.arity}")
        return TruthTable.from_indices(self.arity, other.as_indices()[self.as_indices()])

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.as_indices(), np.arange(1 << self.arity)))

    def format_rows(self, input_names: Sequence[str] = None, output_names: Sequence[str] = None) -> List[str]:
        """Input bits then output bits, tab separated, first symbol leftmost."""
        lines = []
        if input_names is not None and output_names is not None:
            lines.append("\t".join(list(input_names) + list(output_names)))
        for i in range(len(self)):
            inputs = [(i >> (self.arity - 1 - j)) & 1 for j in range(self.arity)]
            lines.append("\t".join(str(b) for b in inputs + list(self.row(i))))
        return lines

    def __len__(self):
        return self.rows.shape[0]

    def __eq__(self, other):
        if not isinstance(other, TruthTable):
            return NotImplemented
        return self.arity == other.arity and bool(np.array_equal(self.rows, other.rows))

    def __hash__(self):
        return hash((self.arity, self.rows.tobytes()))

    def __repr__(self):
        return f"TruthTable(arity={self.arity}, rows={self.as_indices().tolist()})"


@dataclass(frozen=True)
class BijectivityVerdict:
    bijective: bool
    witness: Optional[Tuple[int, int]] = None

    def __bool__(self):
        return self.bijective


def truth_table(gate: GateSpec, max_arity: int = DEFAULT_MAX_ARITY) -> TruthTable:
    if gate.arity > max_arity:
        raise CapacityError(
            f"Gate {gate.name} has arity {gate.arity}, above the configured maximum {max_arity}"
        )
    words = variable_words(gate.input_symbols)
    outputs = gate.evaluate_words([words[s] for s in gate.input_symbols], full_mask(gate.arity))
    rows = np.array(
        [[(word >> i) & 1 for word in outputs] for i in range(1 << gate.arity)], dtype=np.uint8
    )
    return TruthTable(gate.arity, rows)


def check_bijective(table: TruthTable) -> BijectivityVerdict:
    indices = table.as_indices()
    if len(np.unique(indices)) == len(indices):
        return BijectivityVerdict(True)
    first_seen = {}
    for i, value in enumerate(indices.tolist()):
        if value in first_seen:
            return BijectivityVerdict(False, (first_seen[value], i))
        first_seen[value] = i
    raise AssertionError("unreachable: duplicate rows without a collision")


def inverse_gate(gate: GateSpec, max_arity: int = DEFAULT_MAX_ARITY) -> TruthTable:
    table = truth_table(gate, max_arity)
    verdict = check_bijective(table)
    if not verdict.bijective:
        i, j = verdict.witness
        raise NotInvertibleError(
            f"Gate {gate.name} is not bijective: inputs {i} and {j} share an output"
        )
    return TruthTable.from_indices(gate.arity, np.argsort(table.as_indices()))
