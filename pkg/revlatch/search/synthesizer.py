import json
import logging
import time
from dataclasses import dataclass, field, replace
from enum import Enum
from math import perm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from tqdm import tqdm

from revlatch.gates.library import SEARCH_LIBRARY, STRICT_LIBRARY, GateLibrary
from revlatch.netlist.circuit import Circuit
from revlatch.netlist.refs import PortRef, RefKind
from revlatch.netlist.serialization import circuit_to_dict
from revlatch.search.enumeration import SearchBounds, Wiring, build_candidate, check_bounds, enumerate_wirings
from revlatch.search.targets import TargetSpec, get_target
from revlatch.simulator import evaluate_ports
from revlatch.utils import full_mask, variable_words, write_json

logger = logging.getLogger(__name__)

__all__ = [
    "Verdict",
    "ClaimStatus",
    "Realization",
    "realizes",
    "SearchResult",
    "min_gates",
    "run_target",
]


class Verdict(str, Enum):
    found = "found"
    exhausted = "exhausted"


class ClaimStatus(str, Enum):
    confirmed = "confirmed"
    # nothing below the claim exists within the explored bounds
    consistent = "consistent"
    refuted = "refuted"
    unattained = "unattained"
    unclaimed = "unclaimed"


@dataclass(frozen=True)
class Realization:
    ok: bool
    outputs: Dict[str, PortRef] = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def _expected_words(target: TargetSpec):
    words = variable_words(target.variables)
    mask = full_mask(len(target.variables))
    next_words = {s: expr.evaluate(words, mask) for s, expr in target.next_state}
    output_words = [(name, expr.evaluate(words, mask)) for name, expr in target.outputs]
    return next_words, output_words


def _match_outputs(output_words, free: Sequence[Tuple[PortRef, int]]) -> Optional[Dict[str, PortRef]]:
    taken = set()
    mapping = {}
    for name, word in output_words:
        port = next((p for p, w in free if w == word and p not in taken), None)
        if port is None:
            return None
        taken.add(port)
        mapping[name] = port
    return mapping


def realizes(candidate: Circuit, target: TargetSpec) -> Realization:
    """
    True iff every feedback arc carries its state's next-state function and every
    required output is available on a distinct garbage or primary port.
    """
    if sorted(candidate.state_names) != sorted(target.state_names):
        return Realization(False)
    if not set(candidate.input_names) <= set(target.input_names):
        return Realization(False)
    _, values = evaluate_ports(candidate, target.variables)
    next_words, output_words = _expected_words(target)
    for arc in candidate.feedbacks:
        if values[arc.source] != next_words[arc.state]:
            return Realization(False)
    free = [(port, values[port]) for port, d in candidate.output_ports()
            if d is not None and d.kind in (RefKind.garbage, RefKind.primary)]
    mapping = _match_outputs(output_words, free)
    if mapping is None:
        return Realization(False)
    return Realization(True, mapping)


@dataclass
class SearchResult:
    target: TargetSpec
    library: Tuple[str, ...]
    bounds: SearchBounds
    verdict: Verdict
    min_gates: Optional[int] = None
    witness: Optional[Circuit] = None
    explored: int = 0
    distinct: int = 0
    wall_time: float = 0.0
    label: str = "default"

    @property
    def claim_status(self) -> ClaimStatus:
        claim = self.target.claimed_gates
        if claim is None:
            return ClaimStatus.unclaimed
        if self.verdict == Verdict.found:
            if self.min_gates == claim:
                return ClaimStatus.confirmed
            return ClaimStatus.refuted if self.min_gates < claim else ClaimStatus.unattained
        return ClaimStatus.consistent if self.bounds.max_gates < claim else ClaimStatus.unattained

    @property
    def ok(self) -> bool:
        return self.claim_status in (ClaimStatus.confirmed, ClaimStatus.consistent, ClaimStatus.unclaimed)

    def describe(self) -> str:
        head = f"{self.target.name} [{self.label}, library {','.join(self.library)}, " \
               f"gates<={self.bounds.max_gates}, lines<={self.bounds.max_lines}]"
        if self.verdict == Verdict.found:
            body = f"found with {self.min_gates} gate(s)"
        else:
            body = f"exhausted: no realization with <= {self.bounds.max_gates} gate(s)"
        claim = self.target.claimed_gates
        claim_text = f"published minimum {claim}: {self.claim_status.value}" if claim is not None else ""
        stats = f"explored {self.explored}, distinct {self.distinct}, {self.wall_time:.2f}s"
        return "; ".join(filter(None, [head, body, claim_text, stats]))

    def to_dict(self) -> dict:
        return {
            "spec": self.target.to_dict(),
            "label": self.label,
            "library": list(self.library),
            "bounds": {"max_gates": self.bounds.max_gates, "max_lines": self.bounds.max_lines},
            "verdict": self.verdict.value,
            "min_gates": self.min_gates,
            "claim_status": self.claim_status.value,
            "witness": circuit_to_dict(self.witness) if self.witness is not None else None,
            "explored": self.explored,
            "distinct": self.distinct,
            "wall_time": round(self.wall_time, 4),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def save(self, fname):
        write_json(self.to_dict(), fname)


def _realize_wiring(wiring: Wiring, n_states: int, next_words: Dict[str, int], output_words,
                    target: TargetSpec):
    for feedback in wiring.feedback_choices(n_states):
        if any(wiring.free[i][1] != next_words[s] for s, i in zip(target.state_names, feedback)):
            continue
        chosen = set(feedback)
        rest = [item for i, item in enumerate(wiring.free) if i not in chosen]
        mapping = _match_outputs(output_words, rest)
        if mapping is not None:
            return feedback, mapping
    return None


def _as_library(library: Union[GateLibrary, Iterable[str], None]) -> GateLibrary:
    if library is None:
        return GateLibrary.builtin(SEARCH_LIBRARY)
    if isinstance(library, GateLibrary):
        return library
    return GateLibrary.builtin(library)


def min_gates(target: TargetSpec, library: Union[GateLibrary, Iterable[str]] = None,
              bounds: SearchBounds = SearchBounds(1, 6), capacity: SearchBounds = None,
              progress: bool = False, label: str = "default") -> SearchResult:
    """
    Smallest number of gates (up to bounds.max_gates) of a circuit realizing `target`.
    Gate counts are tried in increasing order and candidates in enumeration order,
    so the witness is deterministic.
    """
    check_bounds(bounds, capacity)
    library = _as_library(library)
    n_states = len(target.state_names)
    next_words, output_words = _expected_words(target)
    start = time.perf_counter()
    explored, keys = 0, set()

    def result(verdict, n_gates=None, witness=None):
        return SearchResult(target, tuple(library), bounds, verdict, n_gates, witness,
                            explored, len(keys), time.perf_counter() - start, label)

    # the empty circuit has no state path at all
    explored += 1
    for n_gates in range(1, bounds.max_gates + 1):
        for first in tqdm(list(library), desc=f"{target.name}: {n_gates} gate(s)", disable=not progress):
            for wiring in enumerate_wirings(library, bounds, target, n_gates, prune=True, first_gates=[first]):
                explored += perm(len(wiring.free), n_states)
                keys.add(wiring.key())
                found = _realize_wiring(wiring, n_states, next_words, output_words, target)
                if found is None:
                    continue
                feedback, outputs = found
                witness = build_candidate(wiring, target, feedback, outputs)
                search = result(Verdict.found, n_gates, witness)
                logger.info("%s: realized with %d gate(s) after %d candidates (%.2fs)",
                            target.name, n_gates, explored, search.wall_time)
                _log_claim(search)
                return search
        logger.info("%s: no realization with %d gate(s); explored %d, distinct %d (%.2fs)",
                    target.name, n_gates, explored, len(keys), time.perf_counter() - start)
    search = result(Verdict.exhausted)
    _log_claim(search)
    return search


def _log_claim(search: SearchResult):
    status = search.claim_status
    if status == ClaimStatus.refuted:
        logger.warning("%s [%s]: published minimum %d refuted by a %d-gate witness",
                       search.target.name, search.label, search.target.claimed_gates, search.min_gates)
    elif status == ClaimStatus.unattained:
        logger.warning("%s [%s]: published minimum %d not attained within %s",
                       search.target.name, search.label, search.target.claimed_gates, tuple(search.bounds))


def run_target(name: str, bounds: SearchBounds = SearchBounds(1, 6),
               library: Sequence[str] = SEARCH_LIBRARY, strict_library: Sequence[str] = STRICT_LIBRARY,
               capacity: SearchBounds = None, progress: bool = False,
               allow_complemented: Optional[bool] = None) -> List[SearchResult]:
    """
    Default run, plus a strict run (no complemented inputs, NOT gate available)
    for targets that allow complemented inputs. `allow_complemented` replaces
    both with a single run over `library` with complemented inputs on or off.
    """
    target = get_target(name)
    if allow_complemented is not None:
        target = replace(target, allow_complemented_inputs=allow_complemented)
        label = "complemented" if allow_complemented else "plain"
        return [min_gates(target, library, bounds, capacity, progress, label=label)]
    results = [min_gates(target, library, bounds, capacity, progress, label="default")]
    if target.allow_complemented_inputs:
        results.append(min_gates(target.strict(), strict_library, bounds, capacity, progress, label="strict"))
    return results
