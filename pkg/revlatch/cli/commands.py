import json
import logging
import sys
from enum import IntEnum

import revlatch.metric as module_metric
from revlatch.base.errors import BindingError, UnknownReferenceError
from revlatch.gates import (GateLibrary, check_bijective, check_nand_universality, inverse_gate,
                            truth_table)
from revlatch.metric import compare_report, compare_truth_table, cost_report, hw_breakdown, load_reference_tables
from revlatch.netlist import get_builtin, load_circuit, load_gate_library, save_circuit, serialize, validate
from revlatch.search import SearchBounds, run_target
from revlatch.simulator import (check_characteristic, check_complementarity, check_stability,
                                simulate_sequence)
from revlatch.utils import parse_assignment, parse_events
from revlatch.utils.parse_config import ConfigParser

logger = logging.getLogger(__name__)

__all__ = [
    "ExitStatus",
    "cmd_gate",
    "cmd_circuit",
    "cmd_simulate",
    "cmd_reproduce",
    "cmd_search",
]


class ExitStatus(IntEnum):
    ok = 0
    usage = 1
    check_failed = 2
    capacity = 3


def _emit(text: str, out=None):
    print(text, file=out or sys.stdout)


def _library(args, config: ConfigParser) -> GateLibrary:
    base = GateLibrary.builtin(max_arity=config["gates"]["max_arity"])
    if getattr(args, "file", None):
        return load_gate_library(args.file, base)
    return base


def _load(args, config: ConfigParser):
    # custom gates of a netlist travel inside the document
    return load_circuit(args.file, GateLibrary.builtin(max_arity=config["gates"]["max_arity"]))


def cmd_gate(args, config: ConfigParser, out=None) -> ExitStatus:
    library = _library(args, config)
    gate = library[args.gate]
    max_arity = config["gates"]["max_arity"]

    if args.action == "table":
        table = truth_table(gate, max_arity)
        if getattr(args, "json", False):
            _emit(json.dumps({"gate": gate.name, "inputs": list(gate.input_symbols),
                              "outputs": gate.output_strings(),
                              "rows": [list(table.row(i)) for i in range(len(table))]}), out)
        else:
            _emit("\n".join(table.format_rows(gate.input_symbols, gate.output_strings())), out)
        return ExitStatus.ok

    if args.action == "verify":
        verdict = check_bijective(truth_table(gate, max_arity))
        if getattr(args, "json", False):
            _emit(json.dumps({"gate": gate.name, "bijective": verdict.bijective,
                              "witness": list(verdict.witness) if verdict.witness else None}), out)
        elif verdict.bijective:
            _emit(f"{gate.name}: bijective ({1 << gate.arity} patterns)", out)
        else:
            i, j = verdict.witness
            _emit(f"{gate.name}: not bijective, inputs {i} and {j} share an output", out)
        return ExitStatus.ok if verdict.bijective else ExitStatus.check_failed

    if args.action == "inverse":
        table = inverse_gate(gate, max_arity)
        names = [f"{s}'" for s in gate.input_symbols]
        _emit("\n".join(table.format_rows(names, gate.input_symbols)), out)
        return ExitStatus.ok

    # nand
    bindings = parse_assignment(args.bind) if args.bind else None
    verdict = check_nand_universality(gate, bindings, args.output - 1)
    for (a, b), value, expected in verdict.rows:
        _emit(f"{a}\t{b}\t{value}\t(NAND {expected})", out)
    _emit(verdict.describe(gate.name), out)
    return ExitStatus.ok if verdict.universal else ExitStatus.check_failed


def cmd_circuit(args, config: ConfigParser, out=None) -> ExitStatus:
    if args.action == "builtin":
        circuit = get_builtin(args.name)
        if args.output:
            save_circuit(circuit, args.output)
            logger.info("wrote %s to %s", args.name, args.output)
        else:
            _emit(serialize(circuit).rstrip("\n"), out)
        return ExitStatus.ok

    circuit = _load(args, config)
    result = validate(circuit)
    if args.action == "validate":
        _emit(result.describe(), out)
        return ExitStatus.ok if result.ok else ExitStatus.usage
    result.raise_for_error()

    # metrics
    convention = config["metrics_convention"]
    metrics = [
        config.init_obj(entry, module_metric, **({} if "convention" in entry.get("args", {})
                                                 else {"convention": convention}))
        for entry in config["metrics"]
    ]
    report = cost_report(circuit, metrics)
    if getattr(args, "json", False):
        _emit(json.dumps(report.to_dict(), ensure_ascii=False), out)
        return ExitStatus.ok
    _emit(report.to_text(), out)
    for term in hw_breakdown(circuit, convention):
        note = f"  ({term.note})" if term.note else ""
        _emit(f"  {term.element}: {term.complexity}{note}", out)
    return ExitStatus.ok


def cmd_simulate(args, config: ConfigParser, out=None) -> ExitStatus:
    if not args.inputs and not args.check:
        raise ValueError("simulate needs --inputs and/or --check")
    circuit = _load(args, config)
    validate(circuit).raise_for_error()
    status = ExitStatus.ok

    if args.inputs:
        if args.init is None:
            raise BindingError(f"--inputs needs an explicit --init, e.g. {','.join(s + '=0' for s in circuit.state_names)}")
        trace = simulate_sequence(circuit, parse_events(args.inputs), parse_assignment(args.init))
        records = trace.to_jsonl()
        _emit(records.rstrip("\n"), out)
        if args.trace_out:
            with open(args.trace_out, "wt", encoding="utf8") as handle:
                handle.write(records)

    if args.check:
        verdict = check_characteristic(circuit, args.check)
        _emit(verdict.describe(), out)
        if not verdict.holds:
            status = ExitStatus.check_failed
        stability = check_stability(circuit)
        if not stability.stable:
            logger.warning("state is not a fixpoint under held inputs at %s", stability.counterexample)
        if len(circuit.primary_outputs) == 2:
            complementarity = check_complementarity(circuit)
            _emit(f"outputs complementary: {complementarity.complementary}", out)
    return status


def cmd_reproduce(args, config: ConfigParser, out=None) -> ExitStatus:
    tables = load_reference_tables()
    convention = config["metrics_convention"]
    if args.table not in tables:
        raise UnknownReferenceError(args.table, tables)
    if tables[args.table].get("kind") == "truth_table":
        report = compare_truth_table(args.table, tables)
    else:
        report = compare_report(get_builtin(tables[args.table]["design"]), args.table, convention, tables=tables)
    _emit(report.to_json() if getattr(args, "json", False) else report.to_text(), out)
    return ExitStatus.ok if report.ok else ExitStatus.check_failed


def cmd_search(args, config: ConfigParser, out=None) -> ExitStatus:
    search = config["search"]
    capacity = SearchBounds(search["capacity"]["max_gates"], search["capacity"]["max_lines"])
    bounds = SearchBounds(search["max_gates"], search["max_lines"])
    allow = getattr(args, "allow_complemented", None)
    results = run_target(args.target, bounds, search["library"], search["strict_library"],
                         capacity, progress=search.get("progress", False),
                         allow_complemented=None if allow is None else allow == "true")
    for result in results:
        result.save(config.save_dir / f"search_{args.target}_{result.label}.json")
        _emit(result.to_json() if getattr(args, "json", False) else result.describe(), out)
    return ExitStatus.ok if all(r.ok for r in results) else ExitStatus.check_failed
