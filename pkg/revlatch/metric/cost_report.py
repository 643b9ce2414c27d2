from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence

from revlatch.base.base_metric import BaseMetric
from revlatch.gates.expression import Complexity
from revlatch.metric.cost_metrics import (ConstantInputsMetric, DelayMetric, GarbageCountMetric,
                                          GateCountMetric, HardwareComplexityMetric)
from revlatch.netlist.circuit import Circuit

__all__ = ["CostReport", "default_metrics", "cost_report"]


@dataclass(frozen=True)
class CostReport:
    gate_count: Optional[int] = None
    garbage_count: Optional[int] = None
    constant_inputs: Optional[int] = None
    delay: Optional[int] = None
    hw_complexity: Optional[Complexity] = None
    extra: Dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> dict:
        result = {key: value for key, value in asdict(self).items() if key != "extra"}
        if self.hw_complexity is not None:
            result["hw_complexity"] = str(self.hw_complexity)
        result.update(self.extra)
        return {key: value for key, value in result.items() if value is not None}

    def to_text(self) -> str:
        return "\n".join(f"{key}: {value}" for key, value in self.to_dict().items())


def default_metrics(convention: str = "paper") -> List[BaseMetric]:
    return [
        GateCountMetric(),
        GarbageCountMetric(),
        ConstantInputsMetric(),
        DelayMetric(),
        HardwareComplexityMetric(convention),
    ]


def cost_report(circuit: Circuit, metrics: Sequence[BaseMetric] = None) -> CostReport:
    if metrics is None:
        metrics = default_metrics()
    known, extra = {}, {}
    for metric in metrics:
        key = getattr(metric, "key", metric.name)
        value = metric(circuit)
        if key in CostReport.__dataclass_fields__ and key != "extra":
            known[key] = value
        else:
            extra[metric.name] = value
    return CostReport(**known, extra=extra)
