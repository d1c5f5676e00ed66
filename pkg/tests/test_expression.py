import logging
from fractions import Fraction

import pytest

from hopfcalc.core.errors import ExpressionSyntaxError, ProductNotAllowedError, UnknownGeneratorError
from hopfcalc.core.expression import parse_expression, render_element, render_tensor, tokenize
from hopfcalc.core.freemod import Element, Tensor
from helpers import CHERRY, DOT, LADDER2, el, forest, weighted, word, x


def test_scalars_and_generators(poly, shuffle):
    assert parse_expression("3/4", poly) == el((x(0), Fraction(3, 4)))
    assert parse_expression("x^2 - 2*x + 1", poly) == el((x(2), 1), (x(1), -2), (x(0), 1))
    assert parse_expression("-ab + 1/2*ba", shuffle) == el((word("ab"), -1), (word("ba"), Fraction(1, 2)))


def test_products_use_the_instance(shuffle, poly, quasishuffle, ck):
    assert parse_expression("a*b", shuffle) == el((word("ab"), 1), (word("ba"), 1))
    assert parse_expression("(x + 1)^2", poly) == el((x(2), 1), (x(1), 2), (x(0), 1))
    assert parse_expression("(1)*(1)", quasishuffle) == el((weighted(1, 1), 2), (weighted(2), 1))
    assert parse_expression("T[]*T[T[]]", ck) == Element.basis(forest(DOT, LADDER2))
    assert parse_expression("T[ T[], T[] ]", ck) == Element.basis(forest(CHERRY))


def test_power_zero_is_the_unit(shuffle):
    assert parse_expression("ab^0", shuffle) == Element.basis(word(""))


def test_syntax_errors_carry_positions(poly):
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_expression("x + ", poly)
    assert info.value.position == 4
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_expression("x $ 1", poly)
    assert info.value.position == 2
    with pytest.raises(ExpressionSyntaxError):
        parse_expression("(x + 1", poly)
    with pytest.raises(ExpressionSyntaxError):
        parse_expression("1/0", poly)
    with pytest.raises(ExpressionSyntaxError):
        parse_expression("x^y", poly)


def test_unknown_generators(shuffle, ck, quasishuffle):
    with pytest.raises(UnknownGeneratorError) as info:
        parse_expression("ab + ac", shuffle)
    assert info.value.literal == "ac"
    assert info.value.position == 5
    with pytest.raises(UnknownGeneratorError):
        parse_expression("T[T[]", ck)
    with pytest.raises(UnknownGeneratorError):
        parse_expression("(0)", quasishuffle)


def test_products_can_be_refused(poly, shuffle):
    assert parse_expression("2*ab", shuffle, allow_product=False) == el((word("ab"), 2))
    with pytest.raises(ProductNotAllowedError):
        parse_expression("a*b", shuffle, allow_product=False)
    with pytest.raises(ProductNotAllowedError):
        parse_expression("x^2", poly, allow_product=False)


def test_tokenizer_prefers_generators(quasishuffle):
    tokens = tokenize("(1)(2) + (3 + 1)", quasishuffle.syntax)
    assert [t.kind for t in tokens][:3] == ["gen", "op", "op"]
    assert tokens[0].text == "(1)(2)"


def test_render_element():
    assert render_element(Element.zero()) == "0"
    assert render_element(el((word(""), 2), (word("ab"), -1), (word("ba"), Fraction(1, 2)))) == "2 - ab + 1/2*ba"
    assert render_element(el((x(1), -3))) == "-3*x"
    assert render_element(el((x(0), -1))) == "-1"


def test_render_tensor():
    assert render_tensor(Tensor.zero(3)) == "0"
    t = Tensor(2, {(x(0), x(1)): 1, (x(1), x(0)): 2})
    assert render_tensor(t) == "1⊗x + 2*x⊗1"
    assert render_tensor(Tensor.pure(word("a"), word("b"), word("c"), coeff=-1)) == "-a⊗b⊗c"


def test_rendered_elements_reparse(instance):
    basis = instance.enumerate_basis(4)
    coefficients = [Fraction(1), Fraction(-2, 3), Fraction(5), Fraction(-1)]
    a = Element({key: coefficients[i % 4] for i, key in enumerate(basis)})
    assert parse_expression(render_element(a), instance) == a
    for key in basis:
        assert parse_expression(render_element(Element.basis(key)), instance) == Element.basis(key)


def test_parsing_is_logged_at_debug(poly, caplog):
    with caplog.at_level(logging.DEBUG, logger="hopfcalc.core.expression"):
        parse_expression("x + 1", poly)
    assert "parsing 'x + 1' in poly" in caplog.messages
