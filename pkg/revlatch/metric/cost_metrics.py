from revlatch.base.base_metric import BaseMetric
from revlatch.metric.utils import constant_inputs, delay, gate_count, garbage_count
from revlatch.metric.hw_complexity import HwConvention, hw_complexity

__all__ = [
    "GateCountMetric",
    "GarbageCountMetric",
    "ConstantInputsMetric",
    "DelayMetric",
    "HardwareComplexityMetric",
]


class GateCountMetric(BaseMetric):
    key = "gate_count"

    def __call__(self, circuit, **kwargs):
        return gate_count(circuit)


class GarbageCountMetric(BaseMetric):
    key = "garbage_count"

    def __call__(self, circuit, **kwargs):
        return garbage_count(circuit)


class ConstantInputsMetric(BaseMetric):
    key = "constant_inputs"

    def __call__(self, circuit, **kwargs):
        return constant_inputs(circuit)


class DelayMetric(BaseMetric):
    key = "delay"

    def __call__(self, circuit, **kwargs):
        return delay(circuit)


class HardwareComplexityMetric(BaseMetric):
    key = "hw_complexity"

    def __init__(self, convention: str = HwConvention.paper, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.convention = HwConvention(convention)

    def __call__(self, circuit, **kwargs):
        return hw_complexity(circuit, self.convention)
