import json
from collections import OrderedDict
from pathlib import Path
from typing import Dict, List, Sequence

ROOT_PATH = Path(__file__).absolute().resolve().parent.parent.parent


def read_json(fname):
    fname = Path(fname)
    with fname.open("rt", encoding="utf8") as handle:
        return json.load(handle, object_hook=OrderedDict)


def write_json(content, fname):
    fname = Path(fname)
    with fname.open("wt", encoding="utf8") as handle:
        json.dump(content, handle, indent=4, sort_keys=False, ensure_ascii=False)


def bits_of(index: int, width: int) -> List[int]:
    """Bits of `index`, most significant first."""
    return [(index >> (width - 1 - i)) & 1 for i in range(width)]


def variable_words(names: Sequence[str]) -> Dict[str, int]:
    """
    Bit-parallel encoding of all 2^n assignments of `names`.

    Bit j of the word of the i-th name is the value that name takes in assignment j,
    with the first name being the most significant bit of j.
    """
    n = len(names)
    words = {}
    for i, name in enumerate(names):
        shift = n - 1 - i
        word = 0
        for j in range(1 << n):
            if (j >> shift) & 1:
                word |= 1 << j
        words[name] = word
    return words


def full_mask(n_vars: int) -> int:
    return (1 << (1 << n_vars)) - 1


def parse_assignment(text: str) -> Dict[str, int]:
    """'E=1,D=0' -> {'E': 1, 'D': 0}"""
    result = {}
    for item in filter(None, (part.strip() for part in text.split(","))):
        if "=" not in item:
            raise ValueError(f"Can't parse binding '{item}': expected NAME=0|1")
        name, value = (s.strip() for s in item.split("=", 1))
        if value not in ("0", "1") or not name:
            raise ValueError(f"Can't parse binding '{item}': expected NAME=0|1")
        result[name] = int(value)
    return result


def parse_events(text: str) -> List[Dict[str, int]]:
    """'E=1,D=1;E=0,D=0' -> list of assignments"""
    return [parse_assignment(chunk) for chunk in text.split(";") if chunk.strip()]
