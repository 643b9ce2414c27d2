import argparse
import collections
import sys

from revlatch.base.errors import CapacityError, NotInvertibleError, RevlatchError
from revlatch.cli.commands import ExitStatus, cmd_circuit, cmd_gate, cmd_reproduce, cmd_search, cmd_simulate
from revlatch.netlist import BUILTIN_CIRCUITS
from revlatch.search import TARGETS
from revlatch.utils.parse_config import ConfigParser

__all__ = ["CustomArgs", "OPTIONS", "build_parser", "run", "main"]

# custom cli options to modify configuration from default values given in json file.
CustomArgs = collections.namedtuple("CustomArgs", "flags type target")


def _gate_names(text: str):
    return [name.strip() for name in text.split(",") if name.strip()]

OPTIONS = [
    CustomArgs(["--max-gates"], type=int, target="search;max_gates"),
    CustomArgs(["--max-lines"], type=int, target="search;max_lines"),
    CustomArgs(["--library"], type=_gate_names, target="search;library"),
    CustomArgs(["--convention"], type=str, target="metrics_convention"),
]

COMMANDS = {
    "gate": cmd_gate,
    "circuit": cmd_circuit,
    "simulate": cmd_simulate,
    "reproduce": cmd_reproduce,
    "search": cmd_search,
}


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(int(ExitStatus.usage), f"{self.prog}: error: {message}\n")


def _add_option(parser, name, **kwargs):
    option = next(opt for opt in OPTIONS if opt.flags[0] == name)
    parser.add_argument(*option.flags, type=option.type, default=None, **kwargs)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="revlatch", description="Reversible gate and latch toolkit")
    parser.add_argument(
        "-c",
        "--config",
        default=None,
        type=str,
        help="config file path (default: revlatch/config.json)",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    gate = commands.add_parser("gate", help="inspect a gate")
    gate.add_argument("action", choices=["table", "verify", "inverse", "nand"])
    gate.add_argument("gate", help="gate name, e.g. SG")
    gate.add_argument("--file", default=None, help="netlist whose custom gates are loaded")
    gate.add_argument("--bind", default=None, help="constant inputs for `nand`, e.g. C=0,D=1")
    gate.add_argument("--output", type=int, default=4, help="1-based output checked by `nand`")
    gate.add_argument("--json", action="store_true")

    circuit = commands.add_parser("circuit", help="validate, measure or export netlists")
    circuit_actions = circuit.add_subparsers(dest="action", required=True)
    validate = circuit_actions.add_parser("validate")
    validate.add_argument("file")
    metrics = circuit_actions.add_parser("metrics")
    metrics.add_argument("file")
    metrics.add_argument("--json", action="store_true")
    _add_option(metrics, "--convention", choices=["paper", "strict"])
    builtin = circuit_actions.add_parser("builtin")
    builtin.add_argument("name", choices=list(BUILTIN_CIRCUITS))
    builtin.add_argument("-o", "--output", default=None, help="netlist file to write (default: stdout)")

    simulate = commands.add_parser("simulate", help="simulate a latch netlist")
    simulate.add_argument("file")
    simulate.add_argument("--inputs", default=None, help='events, e.g. "E=1,D=1;E=0,D=0"')
    simulate.add_argument("--init", default=None, help="initial state, e.g. Q=0 (required with --inputs)")
    simulate.add_argument("--check", default=None, help='characteristic equation, e.g. "D*E + !E*Q"')
    simulate.add_argument("--trace-out", default=None, help="write the JSON-lines trace to this file")

    reproduce = commands.add_parser("reproduce", help="recompute a published table")
    reproduce.add_argument("table", help="I, II, III, IV or V")
    reproduce.add_argument("--json", action="store_true")
    _add_option(reproduce, "--convention", choices=["paper", "strict"])

    search = commands.add_parser("search", help="bounded minimum gate count search")
    search.add_argument("--target", required=True, choices=list(TARGETS), help="latch to search for")
    search.add_argument("--json", action="store_true")
    _add_option(search, "--max-gates")
    _add_option(search, "--max-lines")
    _add_option(search, "--library", help="comma separated gate names, e.g. FG,TG,SG")
    search.add_argument("--allow-complemented", choices=["true", "false"], default=None,
                        help="single run with complemented inputs on or off (default: the target's runs)")
    return parser


def run(args, config: ConfigParser, out=None) -> int:
    logger = config.get_logger("cli", config["runner"]["verbosity"])
    try:
        return int(COMMANDS[args.command](args, config, out))
    except CapacityError as e:
        logger.error("%s", e)
        return int(ExitStatus.capacity)
    except NotInvertibleError as e:
        logger.error("%s", e)
        return int(ExitStatus.check_failed)
    except (RevlatchError, ValueError, KeyError, OSError) as e:
        logger.error("%s", e)
        return int(ExitStatus.usage)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = ConfigParser.from_args(args, OPTIONS)
    except CapacityError as e:
        print(f"error: {e}", file=sys.stderr)
        return int(ExitStatus.capacity)
    except (RevlatchError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return int(ExitStatus.usage)
    return run(args, config)
