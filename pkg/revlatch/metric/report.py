import json
import logging
from dataclasses import asdict, dataclass
from typing import Dict, List, Mapping, Optional, Union

import pandas as pd

from revlatch.base.errors import UnknownReferenceError
from revlatch.gates.expression import Complexity
from revlatch.gates.library import get_gate
from revlatch.gates.truth_table import truth_table
from revlatch.metric.hw_complexity import HwConvention, hw_complexity
from revlatch.metric.utils import delay, garbage_count, gate_count
from revlatch.netlist.circuit import Circuit
from revlatch.utils import ROOT_PATH, read_json

logger = logging.getLogger(__name__)

__all__ = [
    "REFERENCE_TABLES_PATH",
    "ReportRow",
    "ComparisonReport",
    "load_reference_tables",
    "compare_report",
    "compare_truth_table",
]

REFERENCE_TABLES_PATH = ROOT_PATH / "revlatch" / "configs" / "reference_tables.json"

THIS_WORK = "this work"

_METRICS = {
    "gate_count": lambda circuit, convention: gate_count(circuit),
    "garbage_count": lambda circuit, convention: garbage_count(circuit),
    "delay": lambda circuit, convention: delay(circuit),
    "hw_complexity": lambda circuit, convention: str(hw_complexity(circuit, convention)),
}


@dataclass(frozen=True)
class ReportRow:
    design: str
    metric: str
    computed: Optional[str]
    paper: Optional[str]
    # None for reference-only rows (cited designs nothing is computed for)
    match: Optional[bool]
    note: str = ""


@dataclass(frozen=True)
class ComparisonReport:
    table: str
    caption: str
    rows: List[ReportRow]

    @property
    def ok(self) -> bool:
        return all(row.match or row.note for row in self.rows if row.match is not None)

    @property
    def mismatches(self) -> List[ReportRow]:
        return [row for row in self.rows if row.match is False and not row.note]

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame([asdict(row) for row in self.rows],
                             columns=["design", "metric", "computed", "paper", "match", "note"])
        return frame.fillna("-")

    def to_text(self) -> str:
        header = f"Table {self.table}: {self.caption}" if self.caption else f"Table {self.table}"
        verdict = "all computed cells match" if self.ok else f"{len(self.mismatches)} mismatch(es)"
        return f"{header}\n{self.to_frame().to_string(index=False)}\n{verdict}"

    def to_dict(self) -> dict:
        return {
            "table": self.table,
            "caption": self.caption,
            "ok": self.ok,
            "rows": [asdict(row) for row in self.rows],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)


def load_reference_tables(path=REFERENCE_TABLES_PATH) -> Dict[str, dict]:
    return read_json(path)


def _reference(reference: Union[str, Mapping], tables: Mapping[str, dict] = None) -> dict:
    if not isinstance(reference, str):
        return dict(reference)
    tables = tables if tables is not None else load_reference_tables()
    if reference not in tables:
        raise UnknownReferenceError(reference, tables)
    return tables[reference]


def _normalize(metric: str, value) -> str:
    if metric == "hw_complexity":
        return str(Complexity.parse(value)) if isinstance(value, str) else str(value)
    return str(value)


def compare_report(
        circuit: Circuit,
        reference: Union[str, Mapping],
        convention: Union[str, HwConvention] = HwConvention.paper,
        design: str = None,
        tables: Mapping[str, dict] = None,
) -> ComparisonReport:
    """
    Compare computed costs of `circuit` against a published table (by id, e.g. "III")
    or a mapping with `this_work`, optional `prior_work` and `known_gaps` entries.
    """
    convention = HwConvention(convention)
    table_id = reference if isinstance(reference, str) else "custom"
    table = _reference(reference, tables)
    design = design or table.get("design", THIS_WORK)
    known_gaps = table.get("known_gaps", {})

    rows = []
    for metric, claimed in table.get("this_work", {}).items():
        if metric not in _METRICS:
            raise UnknownReferenceError(metric, _METRICS)
        computed = _METRICS[metric](circuit, convention)
        claimed = _normalize(metric, claimed)
        match = str(computed) == claimed
        note = ""
        if not match:
            if metric in known_gaps:
                note = known_gaps[metric]
                logger.info("%s %s: computed %s, published %s (%s)", design, metric, computed, claimed, note)
            else:
                logger.warning("%s %s: computed %s, published %s", design, metric, computed, claimed)
        elif convention == HwConvention.strict and metric in known_gaps:
            note = known_gaps[metric]
        rows.append(ReportRow(design, metric, str(computed), claimed, match, note))

    for prior, values in table.get("prior_work", {}).items():
        for metric, claimed in values.items():
            rows.append(ReportRow(prior, metric, None, _normalize(metric, claimed), None))
    return ComparisonReport(table_id, table.get("caption", ""), rows)


def compare_truth_table(table_id: str = "I", tables: Mapping[str, dict] = None) -> ComparisonReport:
    table = _reference(table_id, tables)
    if table.get("kind") != "truth_table":
        raise UnknownReferenceError(table_id, [k for k, t in (tables or load_reference_tables()).items()
                                               if t.get("kind") == "truth_table"])
    gate = get_gate(table["gate"])
    computed = truth_table(gate)
    rows = []
    for text in table["rows"]:
        pattern, claimed = text.split()
        bits = computed.row(int(pattern, 2))
        value = "".join(map(str, bits))
        match = value == claimed
        if not match:
            logger.warning("%s row %s: computed %s, published %s", gate.name, pattern, value, claimed)
        rows.append(ReportRow(gate.name, pattern, value, claimed, match))
    return ComparisonReport(table_id, table.get("caption", ""), rows)
