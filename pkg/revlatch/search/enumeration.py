"""
Bounded enumeration of fan-out-free latch candidates.

A candidate is a cascade of library gates. Every gate input is bound to one of:
an unused named line (primary input, or its complement when allowed), an unused
state (the target of that state's feedback arc), a fresh constant line, or an
unconsumed output of an earlier gate. Every state is consumed exactly once and
fed back from one unconsumed output; the other unconsumed outputs are garbage.
The lines of a candidate (used lines plus feedback targets) may not exceed
`max_lines`. Constants are created in port order, so no two candidates differ
only by line naming.
"""
import os
from dataclasses import dataclass
from itertools import permutations
from math import comb, perm
from typing import FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Tuple, Union

from revlatch.base.errors import CapacityError, InputShapeError
from revlatch.gates.gate_spec import GateSpec
from revlatch.gates.library import GateLibrary
from revlatch.netlist.circuit import Circuit, CircuitBuilder
from revlatch.netlist.refs import PortRef, Ref
from revlatch.search.targets import TargetSpec
from revlatch.utils import full_mask, variable_words
from revlatch.utils.parse_config import MAX_LINES_ENV

__all__ = [
    "MAX_LINES_ENV",
    "SearchBounds",
    "default_capacity",
    "check_bounds",
    "Wiring",
    "enumerate_wirings",
    "build_candidate",
    "enumerate_candidates",
    "count_single_gate_wirings",
]


class SearchBounds(NamedTuple):
    max_gates: int
    max_lines: int


def default_capacity() -> SearchBounds:
    max_lines = os.environ.get(MAX_LINES_ENV)
    if max_lines is None:
        return SearchBounds(3, 6)
    try:
        return SearchBounds(3, int(max_lines))
    except ValueError:
        raise CapacityError(f"{MAX_LINES_ENV} must be an integer, got '{max_lines}'")


def check_bounds(bounds: SearchBounds, capacity: SearchBounds = None):
    capacity = capacity if capacity is not None else default_capacity()
    if bounds.max_gates < 0 or bounds.max_lines < 0:
        raise InputShapeError(f"Search bounds must be non-negative, got {tuple(bounds)}")
    if bounds.max_gates > capacity.max_gates or bounds.max_lines > capacity.max_lines:
        raise CapacityError(
            f"Search bounds (gates={bounds.max_gates}, lines={bounds.max_lines}) exceed the capacity "
            f"(gates={capacity.max_gates}, lines={capacity.max_lines})"
        )


# ("line", id) | ("state", name) | ("const", bit) | ("out", PortRef)
Source = Tuple[str, Union[str, int, PortRef]]


@dataclass(frozen=True)
class Wiring:
    """A gate cascade with its input bindings and the word of every unconsumed output."""
    gates: Tuple[Tuple[GateSpec, Tuple[Source, ...]], ...]
    free: Tuple[Tuple[PortRef, int], ...]
    used: FrozenSet[str]
    width: int

    def feedback_choices(self, n_states: int) -> Iterator[Tuple[int, ...]]:
        """Indices into `free` for the feedback source of each state."""
        return permutations(range(len(self.free)), n_states)

    def key(self) -> Tuple:
        """Behavioural identity: gate multiset and the unconsumed output words."""
        return tuple(sorted(g.name for g, _ in self.gates)), tuple(sorted(w for _, w in self.free))


class _Pool:
    def __init__(self, target: TargetSpec):
        self.target = target
        self.words = variable_words(target.variables)
        self.mask = full_mask(len(target.variables))
        self.named = target.named_sources + target.state_names
        self.constants = (0, 1) if target.allow_constants else ()

    def word(self, source: Source, free_words) -> int:
        kind, value = source
        if kind == "const":
            return self.mask if value else 0
        if kind == "out":
            return free_words[value]
        if kind == "state":
            return self.words[value]
        if value in self.words:
            return self.words[value]
        # complemented input line "<name>_bar"
        return self.words[value[:-len("_bar")]] ^ self.mask

    def source(self, name: str) -> Source:
        return ("state", name) if name in self.target.state_names else ("line", name)


def _port_bindings(pool: _Pool, arity: int, used: FrozenSet[str], free: List[PortRef],
                   width: int, max_lines: int):
    """Yields (sources, used, consumed outputs, width) for every binding of `arity` ports."""
    if arity == 0:
        yield (), used, frozenset(), width
        return
    for sources, used_rest, consumed, width_rest in _port_bindings(pool, arity - 1, used, free, width, max_lines):
        if width_rest < max_lines:
            for name in pool.named:
                if name not in used_rest:
                    yield sources + (pool.source(name),), used_rest | {name}, consumed, width_rest + 1
            for bit in pool.constants:
                yield sources + (("const", bit),), used_rest, consumed, width_rest + 1
        for port in free:
            if port not in consumed:
                yield sources + (("out", port),), used_rest, consumed | {port}, width_rest


def enumerate_wirings(library: GateLibrary, bounds: SearchBounds, target: TargetSpec,
                      n_gates: int, prune: bool = False, first_gates: Iterable[str] = None) -> Iterator[Wiring]:
    """
    Every wiring of exactly `n_gates` gates in which each state is consumed once.
    With `prune`, partial cascades whose unconsumed words and used lines repeat an
    earlier one are skipped; the first representative is always kept.
    `first_gates` restricts the choice for the first gate (used to report progress).
    """
    pool = _Pool(target)
    states = set(target.state_names)
    seen = set()

    def extend(depth, gates, free, used, width):
        if depth == n_gates:
            if n_gates > 0 and not states <= used:
                return
            yield Wiring(tuple(gates), tuple(free), used, width)
            return
        names = first_gates if depth == 0 and first_gates is not None else library
        free_ports = [port for port, _ in free]
        free_words = dict(free)
        for name in names:
            gate = library[name]
            for sources, used_next, consumed, width_next in _port_bindings(
                    pool, gate.arity, used, free_ports, width, bounds.max_lines):
                words = [pool.word(source, free_words) for source in sources]
                outputs = gate.evaluate_words(words, pool.mask)
                index = len(gates)
                free_next = [item for item in free if item[0] not in consumed]
                free_next += [(PortRef(index, p), word) for p, word in enumerate(outputs)]
                if prune:
                    key = (depth, tuple(sorted(w for _, w in free_next)), used_next, width_next)
                    if key in seen:
                        continue
                    seen.add(key)
                yield from extend(depth + 1, gates + [(gate, sources)], free_next, used_next, width_next)

    yield from extend(0, [], [], frozenset(), 0)


def build_candidate(wiring: Wiring, target: TargetSpec, feedback: Tuple[int, ...],
                    outputs: Optional[dict] = None) -> Circuit:
    """
    Materialize a wiring: `feedback[i]` indexes the free output feeding state i,
    `outputs` maps output names to free ports that become primary outputs.
    """
    builder = CircuitBuilder()
    lines = {}
    for gate, sources in wiring.gates:
        drivers = []
        for kind, value in sources:
            if kind == "line":
                if value not in lines:
                    if value in target.input_names:
                        lines[value] = builder.primary_input(value)
                    else:
                        lines[value] = builder.complemented_input(value[:-len("_bar")], value)
                drivers.append(lines[value])
            elif kind == "state":
                drivers.append(Ref.feedback(value))
            elif kind == "const":
                drivers.append(builder.constant(value))
            else:
                drivers.append(Ref.out(value.instance, value.port))
        builder.add_gate(gate, drivers)
    for state, index in zip(target.state_names, feedback):
        port = wiring.free[index][0]
        builder.feedback_source(state, port.instance, port.port)
    for name, port in (outputs or {}).items():
        builder.primary_output(port.instance, port.port, name)
    builder.garbage_rest()
    return builder.build()


def enumerate_candidates(library: GateLibrary, bounds: SearchBounds, target: TargetSpec,
                         capacity: SearchBounds = None) -> Iterator[Circuit]:
    """Every candidate with 0..max_gates gates, in search order; 0 gates is the empty circuit."""
    check_bounds(bounds, capacity)
    n_states = len(target.state_names)
    yield Circuit()
    for n_gates in range(1, bounds.max_gates + 1):
        for wiring in enumerate_wirings(library, bounds, target, n_gates):
            for feedback in wiring.feedback_choices(n_states):
                yield build_candidate(wiring, target, feedback)


def count_single_gate_wirings(library: GateLibrary, bounds: SearchBounds, target: TargetSpec) -> int:
    """
    Closed form for the number of candidates enumerate_candidates yields with
    max_gates=1: the empty circuit plus, per gate of arity k within max_lines,
    the state placements, the injective choices of named lines for the remaining
    ports (constants fill the rest) and the feedback source choices.
    """
    n_states = len(target.state_names)
    n_named = len(target.named_sources)
    n_const = 2 if target.allow_constants else 0
    total = 1
    if bounds.max_gates < 1:
        return total
    for name in library:
        k = library[name].arity
        if k > bounds.max_lines or k < n_states:
            continue
        rest = k - n_states
        fills = sum(comb(rest, j) * perm(n_named, j) * n_const ** (rest - j) for j in range(rest + 1))
        total += perm(k, n_states) * fills * perm(k, n_states)
    return total
