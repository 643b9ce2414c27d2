import logging
from collections.abc import Mapping
from typing import Dict, Iterable, Iterator, List

from revlatch.base.errors import InputShapeError, UnknownGateError
from revlatch.gates.gate_spec import GateSpec
from revlatch.gates.truth_table import DEFAULT_MAX_ARITY, check_bijective, truth_table

logger = logging.getLogger(__name__)

__all__ = [
    "NOT",
    "FG",
    "TG",
    "FRG",
    "PG",
    "SG",
    "BUILTIN_GATES",
    "SEARCH_LIBRARY",
    "STRICT_LIBRARY",
    "GateLibrary",
    "get_gate",
]

NOT = GateSpec.from_strings("NOT", ["!A"], description="1x1 inverter")
FG = GateSpec.from_strings(
    "FG", ["A", "A ^ B"], fold_constants=True,
    description="2x2 Feynman (CNOT): copy with B=0, invert with B=1",
)
TG = GateSpec.from_strings("TG", ["A", "B", "A*B ^ C"], description="3x3 Toffoli")
FRG = GateSpec.from_strings(
    "FRG", ["A", "!A*B ^ A*C", "!A*C ^ A*B"], description="3x3 Fredkin (controlled swap)"
)
PG = GateSpec.from_strings("PG", ["A", "A ^ B", "A*B ^ C"], description="3x3 Peres")
SG = GateSpec.from_strings(
    "SG", ["A", "!A*B ^ A*C", "!A*B ^ A*C ^ D", "A*B ^ !A*C ^ D"],
    description="4x4 1-through gate; NAND of A, B at output 4 with C=0, D=1",
)

BUILTIN_GATES: Dict[str, GateSpec] = {g.name: g for g in (NOT, FG, TG, FRG, PG, SG)}

# libraries the minimality claims are checked against
SEARCH_LIBRARY = ("FG", "TG", "FRG", "PG", "SG")
STRICT_LIBRARY = ("NOT",) + SEARCH_LIBRARY


class GateLibrary(Mapping):
    """Name -> GateSpec registry; only bijective gates can be registered."""

    def __init__(self, gates: Iterable[GateSpec] = (), max_arity: int = DEFAULT_MAX_ARITY):
        self.max_arity = max_arity
        self._gates: Dict[str, GateSpec] = {}
        for gate in gates:
            self.register(gate)

    @classmethod
    def builtin(cls, names: Iterable[str] = None, max_arity: int = DEFAULT_MAX_ARITY):
        if names is None:
            names = BUILTIN_GATES.keys()
        gates = []
        for name in names:
            if name not in BUILTIN_GATES:
                raise UnknownGateError(name)
            gates.append(BUILTIN_GATES[name])
        return cls(gates, max_arity)

    def register(self, gate: GateSpec) -> GateSpec:
        known = self._gates.get(gate.name)
        if known is not None:
            if known != gate:
                raise InputShapeError(f"Gate '{gate.name}' is already defined differently")
            return known
        verdict = check_bijective(truth_table(gate, self.max_arity))
        if not verdict.bijective:
            raise InputShapeError(
                f"Gate '{gate.name}' is not reversible: inputs {verdict.witness} collide"
            )
        self._gates[gate.name] = gate
        logger.debug("registered gate %s", gate)
        return gate

    def custom_gates(self) -> List[GateSpec]:
        return [g for g in self._gates.values() if BUILTIN_GATES.get(g.name) != g]

    def __getitem__(self, name: str) -> GateSpec:
        try:
            return self._gates[name]
        except KeyError:
            raise UnknownGateError(name)

    def __iter__(self) -> Iterator[str]:
        return iter(self._gates)

    def __len__(self):
        return len(self._gates)

    def __repr__(self):
        return f"GateLibrary({', '.join(self._gates)})"


def get_gate(name: str) -> GateSpec:
    try:
        return BUILTIN_GATES[name]
    except KeyError:
        raise UnknownGateError(name)
