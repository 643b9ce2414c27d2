from typing import List

import networkx as nx

from revlatch.netlist.circuit import Circuit
from revlatch.netlist.refs import RefKind

__all__ = [
    "SOURCE",
    "SINK",
    "gate_count",
    "garbage_count",
    "constant_inputs",
    "delay_graph",
    "delay",
    "critical_path",
]

SOURCE = "inputs"
SINK = "outputs"


def gate_count(circuit: Circuit) -> int:
    return len(circuit.gates)


def garbage_count(circuit: Circuit) -> int:
    # feedback-consumed outputs are state, not garbage
    return len(circuit.garbage_ports)


def constant_inputs(circuit: Circuit) -> int:
    return sum(1 for line in circuit.used_lines() if line.is_constant)


def delay_graph(circuit: Circuit) -> nx.DiGraph:
    """
    Gate-level DAG between a virtual input node and a virtual output node. Edges into
    a gate weigh 1, edges into the output node weigh 0; feedback arcs are left out.
    Only gates on some input-to-output path are kept.
    """
    graph = nx.DiGraph()
    graph.add_nodes_from([SOURCE, SINK])
    for i, instance in enumerate(circuit.gates):
        graph.add_node(i, gate=instance.gate.name)
        for driver in instance.inputs:
            if driver.kind == RefKind.line:
                graph.add_edge(SOURCE, i, weight=1)
            elif driver.kind == RefKind.out:
                graph.add_edge(driver.instance, i, weight=1)
        if any(d is not None and d.kind == RefKind.primary for d in instance.outputs):
            graph.add_edge(i, SINK, weight=0)
    keep = (nx.descendants(graph, SOURCE) & nx.ancestors(graph, SINK)) | {SOURCE, SINK}
    return graph.subgraph(keep).copy()


def delay(circuit: Circuit) -> int:
    """Maximum number of gates on a path from any input line to any output line."""
    graph = delay_graph(circuit)
    if SINK not in nx.descendants(graph, SOURCE):
        return 0
    return int(nx.dag_longest_path_length(graph, weight="weight"))


def critical_path(circuit: Circuit) -> List[int]:
    graph = delay_graph(circuit)
    if SINK not in nx.descendants(graph, SOURCE):
        return []
    return [node for node in nx.dag_longest_path(graph, weight="weight") if isinstance(node, int)]
