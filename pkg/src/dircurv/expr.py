"""Expression language for scalar fields on R^n.

Grammar (authoritative):

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := '-' factor | atom ('^' INT)?
    atom   := NUMBER | 'x' INT | '(' expr ')'

Variables are written ``x1`` .. ``xn``; ``^`` takes a non-negative integer
literal only, which keeps the language polynomial-closed under
differentiation.  ASTs are immutable after construction and every operation
here is a pure function, so trees can be shared freely across threads.

There is deliberately no simplification pass: ``differentiate`` returns the
raw product/quotient-rule tree and ``evaluate`` walks it in a fixed
left-to-right order, so results are bit-for-bit reproducible.
"""

from __future__ import annotations

import re

from .errors import (
    DivisionByZeroError,
    ExpressionSyntaxError,
    NonIntegerExponentError,
    UnknownVariableError,
)

__all__ = [
    "Expression", "Number", "Variable", "Add", "Sub", "Mul", "Div", "Pow", "Neg",
    "parse", "differentiate", "evaluate", "to_text", "substitute",
]


def _wrap(value) -> "Expression":
    if isinstance(value, Expression):
        return value
    return Number(value)


class Expression:
    """Base node.  Subclasses implement _eval, _diff, __str__ and _prec."""

    __slots__ = ()
    _prec = 5  # atoms; binary nodes override

    def __add__(self, other):
        return Add(self, _wrap(other))

    def __radd__(self, other):
        return Add(_wrap(other), self)

    def __sub__(self, other):
        return Sub(self, _wrap(other))

    def __rsub__(self, other):
        return Sub(_wrap(other), self)

    def __mul__(self, other):
        return Mul(self, _wrap(other))

    def __rmul__(self, other):
        return Mul(_wrap(other), self)

    def __truediv__(self, other):
        return Div(self, _wrap(other))

    def __rtruediv__(self, other):
        return Div(_wrap(other), self)

    def __pow__(self, exponent):
        return Pow(self, exponent)

    def __neg__(self):
        return Neg(self)

    def __repr__(self):
        return f"{type(self).__name__}({self})"

    def _fmt(self, child: "Expression", min_prec: int) -> str:
        text = str(child)
        prec = child._prec
        if isinstance(child, Number) and text.startswith("-"):
            prec = 0  # a bare negative literal must be re-parenthesised
        return f"({text})" if prec < min_prec else text


class Number(Expression):
    """A real constant."""

    __slots__ = ("value",)

    def __init__(self, value):
        object.__setattr__(self, "value", float(value))

    def __setattr__(self, name, value):
        raise AttributeError("expression nodes are immutable")

    def _eval(self, x):
        return self.value

    def _diff(self, k):
        return Number(0.0)

    def __str__(self):
        return repr(self.value)


class Variable(Expression):
    """The coordinate x_index, with 1-based index."""

    __slots__ = ("index",)

    def __init__(self, index: int):
        object.__setattr__(self, "index", int(index))

    def __setattr__(self, name, value):
        raise AttributeError("expression nodes are immutable")

    def _eval(self, x):
        return x[self.index - 1]

    def _diff(self, k):
        return Number(1.0 if self.index == k else 0.0)

    def __str__(self):
        return f"x{self.index}"


class _Binary(Expression):
    __slots__ = ("left", "right")

    def __init__(self, left: Expression, right: Expression):
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    def __setattr__(self, name, value):
        raise AttributeError("expression nodes are immutable")


class Add(_Binary):
    _prec = 1

    def _eval(self, x):
        return self.left._eval(x) + self.right._eval(x)

    def _diff(self, k):
        return Add(self.left._diff(k), self.right._diff(k))

    def __str__(self):
        return f"{self._fmt(self.left, 1)} + {self._fmt(self.right, 2)}"


class Sub(_Binary):
    _prec = 1

    def _eval(self, x):
        return self.left._eval(x) - self.right._eval(x)

    def _diff(self, k):
        return Sub(self.left._diff(k), self.right._diff(k))

    def __str__(self):
        return f"{self._fmt(self.left, 1)} - {self._fmt(self.right, 2)}"


class Mul(_Binary):
    _prec = 2

    def _eval(self, x):
        return self.left._eval(x) * self.right._eval(x)

    def _diff(self, k):
        # product rule, children kept in source order
        return Add(Mul(self.left._diff(k), self.right),
                   Mul(self.left, self.right._diff(k)))

    def __str__(self):
        return f"{self._fmt(self.left, 2)}*{self._fmt(self.right, 3)}"


class Div(_Binary):
    _prec = 2

    def _eval(self, x):
        denom = self.right._eval(x)
        if denom == 0.0:
            raise DivisionByZeroError(str(self.right))
        return self.left._eval(x) / denom

    def _diff(self, k):
        # (u/v)' = (u'v - uv') / v^2
        return Div(Sub(Mul(self.left._diff(k), self.right),
                       Mul(self.left, self.right._diff(k))),
                   Pow(self.right, 2))

    def __str__(self):
        return f"{self._fmt(self.left, 2)}/{self._fmt(self.right, 3)}"


class Pow(Expression):
    """Integer power with non-negative exponent."""

    __slots__ = ("base", "exponent")
    _prec = 4

    def __init__(self, base: Expression, exponent: int):
        exponent = int(exponent)
        if exponent < 0:
            raise ValueError("exponent must be non-negative")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "exponent", exponent)

    def __setattr__(self, name, value):
        raise AttributeError("expression nodes are immutable")

    def _eval(self, x):
        # binary exponentiation on floats: deterministic and libm-free
        result = 1.0
        b = self.base._eval(x)
        e = self.exponent
        while e:
            if e & 1:
                result = result * b
            e >>= 1
            if e:
                b = b * b
        return result

    def _diff(self, k):
        if self.exponent == 0:
            return Number(0.0)
        return Mul(Mul(Number(float(self.exponent)), Pow(self.base, self.exponent - 1)),
                   self.base._diff(k))

    def __str__(self):
        return f"{self._fmt(self.base, 5)}^{self.exponent}"


class Neg(Expression):
    __slots__ = ("child",)
    _prec = 3

    def __init__(self, child: Expression):
        object.__setattr__(self, "child", child)

    def __setattr__(self, name, value):
        raise AttributeError("expression nodes are immutable")

    def _eval(self, x):
        return -self.child._eval(x)

    def _diff(self, k):
        return Neg(self.child._diff(k))

    def __str__(self):
        return f"-{self._fmt(self.child, 3)}"


# --- tokenizer / parser -----------------------------------------------------

_NUMBER_RE = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_VAR_RE = re.compile(r"x(\d+)")


class _Token:
    __slots__ = ("kind", "text", "position", "value")

    def __init__(self, kind, text, position, value=None):
        self.kind = kind          # 'num' | 'var' | one of +-*/^() | 'end'
        self.text = text
        self.position = position  # 1-based character position
        self.value = value


def _tokenize(text: str, n: int) -> list[_Token]:
    tokens = []
    pos = 0
    length = len(text)
    while pos < length:
        ch = text[pos]
        if ch in " \t\r\n":
            pos += 1
            continue
        if ch in "+-*/^()":
            tokens.append(_Token(ch, ch, pos + 1))
            pos += 1
            continue
        m = _VAR_RE.match(text, pos)
        if m:
            index = int(m.group(1))
            if index < 1 or index > n:
                raise UnknownVariableError(index, n, pos + 1)
            tokens.append(_Token("var", m.group(0), pos + 1, index))
            pos = m.end()
            continue
        m = _NUMBER_RE.match(text, pos)
        if m:
            tokens.append(_Token("num", m.group(0), pos + 1, float(m.group(0))))
            pos = m.end()
            continue
        if ch == "x":
            raise ExpressionSyntaxError("expected a variable index after 'x'", pos + 2)
        raise ExpressionSyntaxError(f"unexpected character {ch!r}", pos + 1)
    tokens.append(_Token("end", "", length + 1))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.at = 0

    def peek(self) -> _Token:
        return self.tokens[self.at]

    def advance(self) -> _Token:
        tok = self.tokens[self.at]
        self.at += 1
        return tok

    def parse_expr(self) -> Expression:
        node = self.parse_term()
        while self.peek().kind in "+-":
            op = self.advance().kind
            rhs = self.parse_term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def parse_term(self) -> Expression:
        node = self.parse_factor()
        while self.peek().kind in "*/":
            op = self.advance().kind
            rhs = self.parse_factor()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def parse_factor(self) -> Expression:
        if self.peek().kind == "-":
            self.advance()
            return Neg(self.parse_factor())
        node = self.parse_atom()
        if self.peek().kind == "^":
            self.advance()
            node = Pow(node, self.parse_exponent())
        return node

    def parse_exponent(self) -> int:
        tok = self.peek()
        if tok.kind == "num":
            if not tok.text.isdigit():
                raise NonIntegerExponentError(
                    f"exponent must be a non-negative integer literal, got {tok.text!r}",
                    tok.position,
                )
            self.advance()
            return int(tok.text)
        if tok.kind == "-":
            raise NonIntegerExponentError(
                "exponent must be a non-negative integer literal, got a negative sign",
                tok.position,
            )
        raise ExpressionSyntaxError("expected an integer exponent after '^'", tok.position)

    def parse_atom(self) -> Expression:
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            return Number(tok.value)
        if tok.kind == "var":
            self.advance()
            return Variable(tok.value)
        if tok.kind == "(":
            self.advance()
            node = self.parse_expr()
            closing = self.peek()
            if closing.kind != ")":
                raise ExpressionSyntaxError("expected ')'", closing.position)
            self.advance()
            return node
        what = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ExpressionSyntaxError(f"expected a number, variable or '(', got {what}", tok.position)


def parse(text: str, n: int) -> Expression:
    """Parse ``text`` over variables x1..xn into an expression tree."""
    parser = _Parser(_tokenize(text, n))
    node = parser.parse_expr()
    trailing = parser.peek()
    if trailing.kind != "end":
        raise ExpressionSyntaxError(f"unexpected trailing input {trailing.text!r}", trailing.position)
    return node


def differentiate(e: Expression, k: int) -> Expression:
    """Exact symbolic partial derivative of ``e`` with respect to x_k."""
    if k < 1:
        raise ValueError("variable index must be >= 1")
    return e._diff(k)


def evaluate(e: Expression, x) -> float:
    """Evaluate ``e`` at the point ``x`` (indexable, 0-based storage for x1..xn)."""
    return float(e._eval(x))


def to_text(e: Expression) -> str:
    """Render ``e`` in the input grammar; ``parse(to_text(e), n)`` evaluates identically."""
    return str(e)


def substitute(e: Expression, replacements: dict[int, Expression]) -> Expression:
    """Return a copy of ``e`` with each Variable(i) in ``replacements`` swapped out."""
    if isinstance(e, Variable):
        return replacements.get(e.index, e)
    if isinstance(e, Number):
        return e
    if isinstance(e, _Binary):
        return type(e)(substitute(e.left, replacements), substitute(e.right, replacements))
    if isinstance(e, Pow):
        return Pow(substitute(e.base, replacements), e.exponent)
    if isinstance(e, Neg):
        return Neg(substitute(e.child, replacements))
    raise TypeError(f"not an expression node: {e!r}")
