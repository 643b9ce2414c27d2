"""
Boolean expressions over named symbols.

Grammar (loosest binding first):

    expr  := xor ('+' xor)*          OR
    xor   := term ('^' term)*        XOR
    term  := unary ('*' unary)*      AND
    unary := '!' unary | atom "'"*   NOT (prefix or postfix)
    atom  := NAME | '0' | '1' | '(' expr ')'

Every value is evaluated bit-parallel: a symbol is bound to an integer word and
`mask` gives the word width, so one evaluation covers all assignments at once.
A scalar evaluation is the special case `mask=1`.
"""
import re
from dataclasses import dataclass
from typing import FrozenSet, List, Mapping, NamedTuple, Tuple

from revlatch.base.errors import ExpressionSyntaxError, UnknownSymbolError

__all__ = [
    "Complexity",
    "Expr",
    "Var",
    "Const",
    "Not",
    "And",
    "Xor",
    "Or",
    "parse_expression",
]


class Complexity(NamedTuple):
    """Hardware complexity as counts of two-input XOR (α), two-input AND (β) and NOT (δ)."""
    alpha: int = 0
    beta: int = 0
    delta: int = 0

    def __add__(self, other):
        return Complexity(*(a + b for a, b in zip(self, other)))

    def __str__(self):
        return f"{self.alpha}α+{self.beta}β+{self.delta}δ"

    @classmethod
    def parse(cls, text: str) -> "Complexity":
        match = re.fullmatch(r"\s*(\d+)\s*α\s*\+\s*(\d+)\s*β\s*\+\s*(\d+)\s*δ\s*", text)
        if match is None:
            raise ValueError(f"Can't parse hardware complexity '{text}'")
        return cls(*map(int, match.groups()))


class Expr:
    def evaluate(self, env: Mapping[str, int], mask: int = 1) -> int:
        raise NotImplementedError()

    def symbols(self) -> FrozenSet[str]:
        raise NotImplementedError()

    def operation_counts(self) -> Complexity:
        raise NotImplementedError()

    def fold_constants(self, bindings: Mapping[str, int]) -> "Expr":
        raise NotImplementedError()

    def has_or(self) -> bool:
        return False

    def check_symbols(self, allowed) -> None:
        unknown = self.symbols() - set(allowed)
        if unknown:
            raise UnknownSymbolError(unknown, allowed)


@dataclass(frozen=True)
class Var(Expr):
    name: str

    def evaluate(self, env, mask=1):
        try:
            return env[self.name] & mask
        except KeyError:
            raise UnknownSymbolError({self.name}, env.keys())

    def symbols(self):
        return frozenset({self.name})

    def operation_counts(self):
        return Complexity()

    def fold_constants(self, bindings):
        if self.name in bindings:
            return Const(bindings[self.name])
        return self

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const(Expr):
    value: int

    def evaluate(self, env, mask=1):
        return mask if self.value else 0

    def symbols(self):
        return frozenset()

    def operation_counts(self):
        return Complexity()

    def fold_constants(self, bindings):
        return self

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Not(Expr):
    operand: Expr

    def evaluate(self, env, mask=1):
        return self.operand.evaluate(env, mask) ^ mask

    def symbols(self):
        return self.operand.symbols()

    def operation_counts(self):
        return self.operand.operation_counts() + Complexity(delta=1)

    def fold_constants(self, bindings):
        operand = self.operand.fold_constants(bindings)
        if isinstance(operand, Const):
            return Const(1 - operand.value)
        if isinstance(operand, Not):
            return operand.operand
        return Not(operand)

    def has_or(self):
        return self.operand.has_or()

    def __str__(self):
        if isinstance(self.operand, (Var, Const)):
            return f"!{self.operand}"
        return f"!({self.operand})"


@dataclass(frozen=True)
class _Binary(Expr):
    left: Expr
    right: Expr

    symbol = "?"
    precedence = 0

    def symbols(self):
        return self.left.symbols() | self.right.symbols()

    def has_or(self):
        return self.left.has_or() or self.right.has_or()

    def _wrap(self, child: Expr, right_side: bool) -> str:
        child_prec = getattr(child, "precedence", 10)
        if child_prec < self.precedence or (right_side and child_prec == self.precedence):
            return f"({child})"
        return str(child)

    def __str__(self):
        return f"{self._wrap(self.left, False)}{self.symbol}{self._wrap(self.right, True)}"


@dataclass(frozen=True)
class And(_Binary):
    symbol = "*"
    precedence = 3

    def evaluate(self, env, mask=1):
        return self.left.evaluate(env, mask) & self.right.evaluate(env, mask)

    def operation_counts(self):
        return self.left.operation_counts() + self.right.operation_counts() + Complexity(beta=1)

    def fold_constants(self, bindings):
        left, right = self.left.fold_constants(bindings), self.right.fold_constants(bindings)
        for a, b in ((left, right), (right, left)):
            if isinstance(a, Const):
                return b if a.value else Const(0)
        return And(left, right)


@dataclass(frozen=True)
class Xor(_Binary):
    symbol = " ^ "
    precedence = 2

    def evaluate(self, env, mask=1):
        return self.left.evaluate(env, mask) ^ self.right.evaluate(env, mask)

    def operation_counts(self):
        return self.left.operation_counts() + self.right.operation_counts() + Complexity(alpha=1)

    def fold_constants(self, bindings):
        left, right = self.left.fold_constants(bindings), self.right.fold_constants(bindings)
        if isinstance(left, Const) and isinstance(right, Const):
            return Const(left.value ^ right.value)
        for a, b in ((left, right), (right, left)):
            if isinstance(a, Const):
                return Not(b).fold_constants({}) if a.value else b
        return Xor(left, right)


@dataclass(frozen=True)
class Or(_Binary):
    symbol = " + "
    precedence = 1

    def evaluate(self, env, mask=1):
        return self.left.evaluate(env, mask) | self.right.evaluate(env, mask)

    def operation_counts(self):
        # OR has no term of its own in the (α, β, δ) triple
        return self.left.operation_counts() + self.right.operation_counts()

    def fold_constants(self, bindings):
        left, right = self.left.fold_constants(bindings), self.right.fold_constants(bindings)
        for a, b in ((left, right), (right, left)):
            if isinstance(a, Const):
                return Const(1) if a.value else b
        return Or(left, right)

    def has_or(self):
        return True


_TOKEN_RE = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<const>[01])|(?P<op>[!'*^+()]))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    position = 0
    text = text.rstrip()
    while position < len(text):
        match = _TOKEN_RE.match(text, position)
        if match is None or match.end() == position:
            raise ExpressionSyntaxError("unexpected character", text, position)
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), match.start(kind)))
        position = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def accept(self, op: str) -> bool:
        token = self.peek()
        if token is not None and token[0] == "op" and token[1] == op:
            self.pos += 1
            return True
        return False

    def error(self, message):
        token = self.peek()
        position = token[2] if token is not None else len(self.text)
        return ExpressionSyntaxError(message, self.text, position)

    def parse(self) -> Expr:
        if not self.tokens:
            raise ExpressionSyntaxError("empty expression", self.text, 0)
        expr = self.parse_or()
        if self.peek() is not None:
            raise self.error("unexpected token")
        return expr

    def parse_or(self):
        expr = self.parse_xor()
        while self.accept("+"):
            expr = Or(expr, self.parse_xor())
        return expr

    def parse_xor(self):
        expr = self.parse_and()
        while self.accept("^"):
            expr = Xor(expr, self.parse_and())
        return expr

    def parse_and(self):
        expr = self.parse_unary()
        while self.accept("*"):
            expr = And(expr, self.parse_unary())
        return expr

    def parse_unary(self):
        if self.accept("!"):
            return Not(self.parse_unary())
        expr = self.parse_atom()
        while self.accept("'"):
            expr = Not(expr)
        return expr

    def parse_atom(self):
        token = self.peek()
        if token is None:
            raise self.error("unexpected end of expression")
        kind, value, _ = token
        if kind == "name":
            self.pos += 1
            return Var(value)
        if kind == "const":
            self.pos += 1
            return Const(int(value))
        if self.accept("("):
            expr = self.parse_or()
            if not self.accept(")"):
                raise self.error("expected ')'")
            return expr
        raise self.error(f"unexpected '{value}'")


def parse_expression(text: str, allowed_symbols=None) -> Expr:
    expr = _Parser(text).parse()
    if allowed_symbols is not None:
        expr.check_symbols(allowed_symbols)
    return expr

