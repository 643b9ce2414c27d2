from revlatch.metric.cost_metrics import (ConstantInputsMetric, DelayMetric, GarbageCountMetric,
                                          GateCountMetric, HardwareComplexityMetric)
from revlatch.metric.cost_report import CostReport, cost_report, default_metrics
from revlatch.metric.hw_complexity import HwConvention, HwTerm, hw_breakdown, hw_complexity
from revlatch.metric.report import (ComparisonReport, ReportRow, compare_report, compare_truth_table,
                                    load_reference_tables)
from revlatch.metric.utils import constant_inputs, critical_path, delay, delay_graph, garbage_count, gate_count

__all__ = [
    "GateCountMetric",
    "GarbageCountMetric",
    "ConstantInputsMetric",
    "DelayMetric",
    "HardwareComplexityMetric",
    "CostReport",
    "cost_report",
    "default_metrics",
    "HwConvention",
    "HwTerm",
    "hw_breakdown",
    "hw_complexity",
    "ComparisonReport",
    "ReportRow",
    "compare_report",
    "compare_truth_table",
    "load_reference_tables",
    "gate_count",
    "garbage_count",
    "constant_inputs",
    "delay",
    "delay_graph",
    "critical_path",
]
