from enum import Enum

__all__ = [
    "RevlatchError",
    "InputShapeError",
    "CapacityError",
    "NotInvertibleError",
    "ExpressionSyntaxError",
    "UnknownSymbolError",
    "UnknownGateError",
    "BindingError",
    "NetlistParseError",
    "DiagnosticCode",
    "ValidationError",
    "UnknownReferenceError",
]


class RevlatchError(Exception):
    """Root of every error raised by the toolkit."""


class InputShapeError(RevlatchError, ValueError):
    pass


class CapacityError(RevlatchError):
    pass


class NotInvertibleError(RevlatchError):
    pass


class ExpressionSyntaxError(RevlatchError, ValueError):
    def __init__(self, message, text=None, position=None):
        if text is not None and position is not None:
            message = f"{message} (at {position} in '{text}')"
        super().__init__(message)
        self.text = text
        self.position = position


class UnknownSymbolError(RevlatchError, KeyError):
    def __init__(self, symbols, allowed=()):
        self.symbols = sorted(symbols)
        self.allowed = list(allowed)
        super().__init__(
            f"Unknown symbol(s) {', '.join(self.symbols)}; "
            f"expected one of {', '.join(self.allowed) or '(none)'}"
        )

    def __str__(self):
        return self.args[0]


class UnknownGateError(RevlatchError, KeyError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"Unknown gate '{name}'")

    def __str__(self):
        return self.args[0]


class BindingError(RevlatchError, KeyError):
    def __init__(self, message, event_index=None):
        if event_index is not None:
            message = f"event #{event_index}: {message}"
        super().__init__(message)
        self.event_index = event_index

    def __str__(self):
        return self.args[0]


class NetlistParseError(RevlatchError, ValueError):
    def __init__(self, message, lineno=None, field=None):
        location = []
        if lineno is not None:
            location.append(f"line {lineno}")
        if field is not None:
            location.append(f"field '{field}'")
        if location:
            message = f"{' '.join(location)}: {message}"
        super().__init__(message)
        self.lineno = lineno
        self.field = field


class DiagnosticCode(str, Enum):
    arity_mismatch = "arity-mismatch"
    unknown_line = "unknown-line"
    duplicate_line = "duplicate-line"
    port_range = "port-range"
    fanout = "fan-out"
    dangling = "dangling-port"
    order = "cyclic-order"
    feedback = "feedback-mismatch"
    undriven = "undriven-port"
    duplicate_output = "duplicate-output"


class ValidationError(RevlatchError):
    def __init__(self, code: DiagnosticCode, element: str, message: str):
        super().__init__(f"[{code.value}] {element}: {message}")
        self.code = code
        self.element = element


class UnknownReferenceError(RevlatchError, KeyError):
    def __init__(self, name, known=()):
        self.name = name
        super().__init__(f"Unknown reference '{name}'; known: {', '.join(known)}")

    def __str__(self):
        return self.args[0]
