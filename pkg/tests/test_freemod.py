from fractions import Fraction

import pytest

from hopfcalc.core.errors import DegreeError, FreeModuleError, UndefinedBasisError
from hopfcalc.core.freemod import (
    Element,
    Tensor,
    add,
    apply_at,
    audit_normal_form,
    format_scalar,
    linear_extend,
    scale,
    sum_vectors,
    tensor_of,
    tensor_product,
    to_scalar,
)
from helpers import el, x


def test_zero_coefficients_are_pruned():
    a = Element({x(1): 0, x(2): Fraction(0, 5)})
    assert a.is_zero()
    assert a == Element.zero()
    assert a == 0
    assert audit_normal_form(Element({x(1): 3, x(2): 0}))


def test_addition_cancels_to_zero():
    a = el((x(1), 2), (x(3), Fraction(-1, 2)))
    assert (a - a).is_zero()
    assert add(a, -a) == Element.zero()
    assert len(a + a) == 2
    assert (a + a).coefficient(x(3)) == Fraction(-1)


def test_scale_by_rationals():
    a = el((x(1), 3))
    assert scale(Fraction(1, 3), a) == Element.basis(x(1))
    assert scale(0, a).is_zero()
    assert 2 * a == a * 2 == el((x(1), 6))


@pytest.mark.parametrize("value,expected", [(3, Fraction(3)), ("3/4", Fraction(3, 4)), (Fraction(-1, 2), Fraction(-1, 2))])
def test_to_scalar_accepts_exact_values(value, expected):
    assert to_scalar(value) == expected


@pytest.mark.parametrize("value", [0.5, True, "1/0", "half", None])
def test_to_scalar_refuses_inexact_or_malformed(value):
    with pytest.raises(FreeModuleError):
        to_scalar(value)


def test_format_scalar():
    assert format_scalar(Fraction(4, 2)) == "2"
    assert format_scalar(Fraction(-3, 6)) == "-1/2"


def test_degree():
    a = el((x(1), 1), (x(4), -2))
    assert a.degree() == 4
    assert not a.is_homogeneous()
    with pytest.raises(DegreeError):
        Element.zero().degree()


def test_items_follow_basis_order():
    a = el((x(3), 1), (x(0), 1), (x(1), 1))
    assert [k for k, _ in a.items()] == [x(0), x(1), x(3)]


def test_tensor_arity_is_enforced():
    with pytest.raises(FreeModuleError):
        Tensor(2, {(x(1),): 1})
    with pytest.raises(FreeModuleError):
        Tensor(0)
    with pytest.raises(FreeModuleError):
        add(Tensor.pure(x(1), x(1)), Tensor.pure(x(1)))


def test_adding_element_and_tensor_fails():
    with pytest.raises(FreeModuleError):
        add(Element.basis(x(1)), Tensor.pure(x(1), x(0)))


def test_tensor_product_is_bilinear():
    a = el((x(0), 1), (x(1), 2))
    b = el((x(1), 3))
    t = tensor_product(a, b)
    assert t.arity == 2
    assert t.coefficient(x(0), x(1)) == 3
    assert t.coefficient(x(1), x(1)) == 6
    assert tensor_of(a, b, b).arity == 3
    assert tensor_product(Element.zero(), b) == Tensor.zero(2)


def test_sum_vectors_keeps_arity_of_empty_sums():
    assert sum_vectors([], arity=3) == Tensor.zero(3)
    assert sum_vectors([]) == Element.zero()


def test_linear_extend_undefined_key():
    table = {x(1): Element.basis(x(2))}
    assert linear_extend(table.__getitem__, el((x(1), 5))) == el((x(2), 5))
    with pytest.raises(UndefinedBasisError) as info:
        linear_extend(table.__getitem__, Element.basis(x(3)))
    assert info.value.key == x(3)


def test_linear_extend_zero_result_kind():
    assert linear_extend(lambda k: Tensor.pure(k, k), Element.zero(), arity=2) == Tensor.zero(2)


def test_apply_at_replaces_expands_and_removes_slots():
    t = Tensor.pure(x(1), x(2))
    doubled = apply_at(lambda k: Element.basis(k, 2), t, 1)
    assert doubled == Tensor.pure(x(1), x(2), coeff=2)

    expanded = apply_at(lambda k: Tensor.pure(k, k), t, 2)
    assert expanded == Tensor.pure(x(1), x(2), x(2))

    removed = apply_at(lambda k: 1, t, 1, width=0)
    assert removed == Tensor.pure(x(2))


def test_apply_at_bounds_and_zero_width():
    t = Tensor.pure(x(1), x(2))
    with pytest.raises(FreeModuleError):
        apply_at(Element.basis, t, 3)
    with pytest.raises(FreeModuleError):
        apply_at(lambda k: 1, Tensor.pure(x(1)), 1, width=0)
    assert apply_at(lambda k: Tensor.pure(k, k), Tensor.zero(2), 1, width=2) == Tensor.zero(3)
