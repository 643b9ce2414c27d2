import platform
import shutil
from contextlib import contextmanager
from itertools import product
from time import sleep
from typing import Dict, Iterator, Sequence

from hypothesis import assume
from hypothesis import strategies as st

from revlatch.gates import BUILTIN_GATES
from revlatch.netlist import CircuitBuilder, PortRef, Ref
from revlatch.utils.parse_config import ConfigParser


@contextmanager
def clear_log_folder_after_use(config_parser: ConfigParser):
    # this context manager deletes the run and log folders whether the body was executed successfully or not
    try:
        yield config_parser
    finally:
        if platform.system() == "Windows":
            # unittest on windows keeps a delete lock on the log directories; skip the cleanup
            # and wait 1s to get a different run id.
            sleep(1)
        else:
            shutil.rmtree(config_parser.save_dir)
            shutil.rmtree(config_parser.log_dir)


def assignments(names: Sequence[str]) -> Iterator[Dict[str, int]]:
    """Every assignment of `names`, first name most significant."""
    for bits in product((0, 1), repeat=len(names)):
        yield dict(zip(names, bits))


@st.composite
def circuits(draw, max_gates: int = 3, state: str = "Q"):
    """Random valid fan-out-free circuits over the built-in gates, with at most one feedback arc."""
    builder = CircuitBuilder()
    free = []
    n_inputs = 0
    wants_state = draw(st.booleans())
    state_placed = False
    for index in range(draw(st.integers(0, max_gates))):
        gate = draw(st.sampled_from(sorted(BUILTIN_GATES.values(), key=lambda g: g.name)))
        drivers = []
        for _ in range(gate.arity):
            options = ["input", "complement", "zero", "one"]
            if free:
                options.append("out")
            if wants_state and not state_placed:
                options.append("state")
            choice = draw(st.sampled_from(options))
            if choice == "input":
                drivers.append(builder.primary_input(f"X{n_inputs}"))
                n_inputs += 1
            elif choice == "complement":
                drivers.append(builder.complemented_input(f"X{n_inputs}"))
                n_inputs += 1
            elif choice in ("zero", "one"):
                drivers.append(builder.constant(int(choice == "one")))
            elif choice == "out":
                port = draw(st.sampled_from(list(free)))
                free.remove(port)
                drivers.append(Ref.out(port.instance, port.port))
            else:
                drivers.append(Ref.feedback(state))
                state_placed = True
        builder.add_gate(gate, drivers)
        free.extend(PortRef(index, p) for p in range(gate.arity))

    if state_placed:
        assume(free)
        source = draw(st.sampled_from(list(free)))
        free.remove(source)
        builder.feedback_source(state, source.instance, source.port)
    for k, port in enumerate(free):
        if draw(st.booleans()):
            builder.primary_output(port.instance, port.port, f"Y{k}")
    builder.garbage_rest()
    return builder.build()
