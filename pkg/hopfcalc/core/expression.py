"""
Expression parser and renderer for elements of an instance.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' INT)?
    atom   := INT ('/' INT)? | generator | '(' expr ')'

A bare rational stands for that multiple of the unit. `*` with a scalar
operand scales; between two non-scalar operands it is the instance product.
Generator literals are instance-specific and are recognised by the
instance's GeneratorSyntax before numbers and parentheses.
"""
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional

from .errors import (
    ExpressionSyntaxError,
    HopfCalcError,
    ProductNotAllowedError,
    UnknownGeneratorError,
)
from .freemod import BasisKey, Element, Tensor, format_scalar, scale

logger = logging.getLogger(__name__)

_NUMBER = re.compile(r"\d+")
_OPERATORS = "+-*/^()"


class GeneratorSyntax:
    """Recognises and resolves the generator literals of one instance."""

    def __init__(self, pattern: str, resolve: Callable[[str], BasisKey]):
        self._regex = re.compile(pattern)
        self._resolve = resolve

    def scan(self, src: str, pos: int) -> Optional[int]:
        """End offset of a literal starting at pos, or None."""
        match = self._regex.match(src, pos)
        return match.end() if match else None

    def resolve(self, literal: str, position: int) -> BasisKey:
        try:
            return self._resolve(literal)
        except (ValueError, LookupError, HopfCalcError) as e:
            raise UnknownGeneratorError(literal, position) from e


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "gen", "op" or "end"
    text: str
    position: int


def tokenize(src: str, syntax: GeneratorSyntax) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while pos < len(src):
        if src[pos].isspace():
            pos += 1
            continue
        end = syntax.scan(src, pos)
        if end is not None and end > pos:
            tokens.append(Token("gen", src[pos:end], pos))
            pos = end
            continue
        number = _NUMBER.match(src, pos)
        if number:
            tokens.append(Token("num", number.group(), pos))
            pos = number.end()
            continue
        if src[pos] in _OPERATORS:
            tokens.append(Token("op", src[pos], pos))
            pos += 1
            continue
        raise ExpressionSyntaxError(f"unexpected character {src[pos]!r}", pos)
    tokens.append(Token("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str, inst, allow_product: bool):
        self.inst = inst
        self.allow_product = allow_product
        self.tokens = tokenize(src, inst.syntax)
        self.index = 0

    # ---------- token helpers ----------
    def peek(self) -> Token:
        return self.tokens[self.index]

    def take(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def at_op(self, *ops: str) -> bool:
        token = self.peek()
        return token.kind == "op" and token.text in ops

    def expect_number(self) -> Token:
        token = self.take()
        if token.kind != "num":
            raise ExpressionSyntaxError("expected an integer", token.position)
        return token

    # ---------- grammar ----------
    def parse(self) -> Element:
        value = self.expr()
        token = self.peek()
        if token.kind != "end":
            raise ExpressionSyntaxError(f"unexpected {token.text!r}", token.position)
        return value

    def expr(self) -> Element:
        sign = "+"
        if self.at_op("+", "-"):
            sign = self.take().text
        value = self.term()
        if sign == "-":
            value = -value
        while self.at_op("+", "-"):
            op = self.take().text
            right = self.term()
            value = value + right if op == "+" else value - right
        return value

    def term(self) -> Element:
        value = self.factor()
        while self.at_op("*"):
            self.take()
            value = self.times(value, self.factor())
        return value

    def factor(self) -> Element:
        base = self.atom()
        if self.at_op("^"):
            self.take()
            exponent = int(self.expect_number().text)
            result = Element.basis(self.inst.unit)
            for _ in range(exponent):
                result = self.times(result, base)
            return result
        return base

    def atom(self) -> Element:
        token = self.take()
        if token.kind == "num":
            value = Fraction(int(token.text))
            if self.at_op("/"):
                self.take()
                denominator = self.expect_number()
                if int(denominator.text) == 0:
                    raise ExpressionSyntaxError("zero denominator", denominator.position)
                value /= int(denominator.text)
            return Element.basis(self.inst.unit, value)
        if token.kind == "gen":
            return Element.basis(self.inst.syntax.resolve(token.text, token.position))
        if token.kind == "op" and token.text == "(":
            value = self.expr()
            closing = self.take()
            if not (closing.kind == "op" and closing.text == ")"):
                raise ExpressionSyntaxError("expected ')'", closing.position)
            return value
        if token.kind == "end":
            raise ExpressionSyntaxError("unexpected end of input", token.position)
        raise ExpressionSyntaxError(f"unexpected {token.text!r}", token.position)

    def times(self, left: Element, right: Element) -> Element:
        unit = self.inst.unit
        if all(k == unit for k in left.terms):
            return scale(left.coefficient(unit), right)
        if all(k == unit for k in right.terms):
            return scale(right.coefficient(unit), left)
        if not self.allow_product:
            raise ProductNotAllowedError("the product of two generators needs an algebra structure")
        return self.inst.multiply(left, right)


def parse_expression(src: str, inst, allow_product: bool = True) -> Element:
    """Parse src into an Element of inst. `inst` needs `unit`, `syntax` and, for products, `multiply`."""
    logger.debug(f"parsing {src!r} in {getattr(inst, 'name', inst)}")
    return _Parser(src, inst, allow_product).parse()


# ---------- rendering ----------

def _signed_terms(pieces, collapse_unit: bool) -> str:
    parts: List[str] = []
    for literal, coeff in pieces:
        magnitude = abs(coeff)
        if collapse_unit and literal == "1":
            body = format_scalar(magnitude)
        elif magnitude == 1:
            body = literal
        else:
            body = f"{format_scalar(magnitude)}*{literal}"
        if not parts:
            parts.append(f"-{body}" if coeff < 0 else body)
        else:
            parts.append(f"- {body}" if coeff < 0 else f"+ {body}")
    return " ".join(parts) if parts else "0"


def render_element(a: Element) -> str:
    """Terms in basis order; reparses to an equal Element."""
    return _signed_terms(((key.render(), c) for key, c in a.items()), collapse_unit=True)


def render_tensor(t: Tensor) -> str:
    return _signed_terms((("⊗".join(k.render() for k in keys), c) for keys, c in t.items()), collapse_unit=False)
