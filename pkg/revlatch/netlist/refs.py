import re
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from revlatch.base.errors import NetlistParseError

__all__ = ["RefKind", "Ref", "PortRef"]


class RefKind(str, Enum):
    line = "line"
    out = "out"
    inp = "in"
    garbage = "garbage"
    primary = "primary"
    feedback = "feedback"


@dataclass(frozen=True, order=True)
class PortRef:
    instance: int
    port: int


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_+']*")


@dataclass(frozen=True)
class Ref:
    """
    A driver of a gate input or a disposition of a gate output.

    drivers:       line:<id>  out:<i>:<p>  feedback:<state>
    dispositions:  in:<i>:<p>  garbage  primary:<name>  feedback:<state>
    """
    kind: RefKind
    name: Optional[str] = None
    instance: Optional[int] = None
    port: Optional[int] = None

    @classmethod
    def line(cls, line_id: str) -> "Ref":
        return cls(RefKind.line, name=line_id)

    @classmethod
    def out(cls, instance: int, port: int) -> "Ref":
        return cls(RefKind.out, instance=instance, port=port)

    @classmethod
    def inp(cls, instance: int, port: int) -> "Ref":
        return cls(RefKind.inp, instance=instance, port=port)

    @classmethod
    def garbage(cls) -> "Ref":
        return cls(RefKind.garbage)

    @classmethod
    def primary(cls, name: str) -> "Ref":
        return cls(RefKind.primary, name=name)

    @classmethod
    def feedback(cls, state: str) -> "Ref":
        return cls(RefKind.feedback, name=state)

    @property
    def port_ref(self) -> PortRef:
        return PortRef(self.instance, self.port)

    @property
    def is_driver(self) -> bool:
        return self.kind in (RefKind.line, RefKind.out, RefKind.feedback)

    @property
    def is_disposition(self) -> bool:
        return self.kind in (RefKind.inp, RefKind.garbage, RefKind.primary, RefKind.feedback)

    @classmethod
    def parse(cls, text: str, field: str = None) -> "Ref":
        if not isinstance(text, str):
            raise NetlistParseError(f"expected a reference string, got {text!r}", field=field)
        kind, _, rest = text.partition(":")
        if kind == RefKind.garbage.value and not rest:
            return cls.garbage()
        if kind in (RefKind.out.value, RefKind.inp.value):
            match = re.fullmatch(r"(\d+):(\d+)", rest)
            if match is None:
                raise NetlistParseError(f"malformed port reference '{text}'", field=field)
            instance, port = int(match.group(1)), int(match.group(2))
            return cls.out(instance, port) if kind == RefKind.out.value else cls.inp(instance, port)
        if kind in (RefKind.line.value, RefKind.primary.value, RefKind.feedback.value):
            if not _NAME_RE.fullmatch(rest):
                raise NetlistParseError(f"malformed name in reference '{text}'", field=field)
            return cls(RefKind(kind), name=rest)
        raise NetlistParseError(f"unknown reference '{text}'", field=field)

    def __str__(self):
        if self.kind == RefKind.garbage:
            return "garbage"
        if self.kind in (RefKind.out, RefKind.inp):
            return f"{self.kind.value}:{self.instance}:{self.port}"
        return f"{self.kind.value}:{self.name}"
