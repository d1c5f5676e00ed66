from math import comb

import pytest

from hopfcalc.core.errors import InvalidInstanceError, UnknownInstanceError
from hopfcalc.core.freemod import Element, Tensor, apply_at
from hopfcalc.core.instances import (
    INSTANCE_NAMES,
    ForestKey,
    PolynomialKey,
    WeightedWordKey,
    build_instance,
    enumerate_basis,
)
from hopfcalc.core.instances.forests import (
    EMPTY,
    admissible_cuts,
    canonical_tree,
    parse_tree,
    rooted_forests,
    rooted_trees,
    tree_size,
)
from hopfcalc.core.instances.words import quasi_shuffle_counts, shuffle_counts
from helpers import CHERRY, DOT, LADDER2, LADDER3, el, forest, weighted, word, x


# ---------- registry ----------

def test_every_registered_name_builds():
    for name in INSTANCE_NAMES:
        inst = build_instance(name)
        assert inst.name == name
        assert inst.coalgebra.counit_map(inst.unit) == 1


def test_unknown_instance():
    with pytest.raises(UnknownInstanceError):
        build_instance("tensor")


def test_instance_parameters_are_validated():
    assert len(build_instance("shuffle", alphabet_size=3).enumerate_basis(1)) == 4
    with pytest.raises(InvalidInstanceError):
        build_instance("shuffle", alphabet_size=27)
    with pytest.raises(InvalidInstanceError):
        build_instance("quasishuffle", max_weight=0)
    with pytest.raises(InvalidInstanceError):
        WeightedWordKey((0,))
    with pytest.raises(InvalidInstanceError):
        PolynomialKey(-1)


# ---------- basis enumeration ----------

def test_basis_counts(poly, shuffle, quasishuffle, ck):
    assert len(poly.enumerate_basis(3)) == 4
    assert len(shuffle.enumerate_basis(2)) == 7
    assert len(quasishuffle.enumerate_basis(2)) == 1 + 3 + 9
    assert len(ck.enumerate_basis(3)) == 8


def test_registry_enumeration_matches_the_instance(instance):
    assert enumerate_basis(instance, 3) == instance.enumerate_basis(3)
    assert enumerate_basis(instance, 0) == [instance.unit]


def test_forest_and_tree_counts():
    assert [len(rooted_forests(n)) for n in range(7)] == [1, 1, 2, 4, 9, 20, 48]
    assert [len(rooted_trees(n)) for n in range(1, 7)] == [1, 1, 2, 4, 9, 20]
    for n in range(1, 6):
        assert all(tree_size(t) == n for t in rooted_trees(n))


def test_basis_is_sorted_by_degree(ck, shuffle):
    for inst in (ck, shuffle):
        basis = inst.enumerate_basis(4)
        assert basis == sorted(basis)
        assert [k.degree for k in basis] == sorted(k.degree for k in basis)
        assert basis[0] == inst.unit


# ---------- rendering ----------

def test_literals():
    assert x(0).render() == "1"
    assert x(1).render() == "x"
    assert x(3).render() == "x^3"
    assert word("").render() == "1"
    assert word("ab").render() == "ab"
    assert weighted(1, 2).render() == "(1)(2)"
    assert forest(CHERRY).render() == "T[T[],T[]]"
    assert forest(LADDER2, DOT).render() == "T[]*T[T[]]"
    assert EMPTY.render() == "1"


# ---------- words ----------

def test_shuffle_multiplicities_sum_to_binomial():
    for u, v in [("a", "b"), ("aa", "bbb"), ("ab", "ab"), ("abb", "ba")]:
        counts = shuffle_counts(tuple(u), tuple(v))
        assert sum(c for _, c in counts) == comb(len(u) + len(v), len(u))
        assert all(len(w) == len(u) + len(v) for w, _ in counts)


def test_shuffle_examples(shuffle):
    a = Element.basis(word("a"))
    assert shuffle.multiply(a, Element.basis(word("ab"))) == el((word("aab"), 2), (word("aba"), 1))
    assert shuffle.multiply(a, Element.basis(word("ba"))) == el((word("aba"), 1), (word("baa"), 2))
    assert shuffle.multiply(Element.basis(word("aa")), Element.basis(word("b"))) == el(
        (word("aab"), 1), (word("aba"), 1), (word("baa"), 1)
    )


def test_quasi_shuffle_merges_weights():
    assert dict(quasi_shuffle_counts((1,), (1,))) == {(1, 1): 2, (2,): 1}
    assert dict(quasi_shuffle_counts((1,), (2,))) == {(1, 2): 1, (2, 1): 1, (3,): 1}
    # weights beyond max_weight are still valid products
    assert (4, 2) in dict(quasi_shuffle_counts((3, 2), (1,)))


def test_deconcatenation(shuffle, quasishuffle):
    assert shuffle.coalgebra.coproduct(Element.basis(word("ab"))) == Tensor(
        2, {(word(""), word("ab")): 1, (word("a"), word("b")): 1, (word("ab"), word("")): 1}
    )
    delta = quasishuffle.coalgebra.coproduct(Element.basis(weighted(2, 1)))
    assert delta.coefficient(weighted(2), weighted(1)) == 1
    assert len(delta) == 3


def test_broken_coproduct_differs_only_at_ab(shuffle, broken):
    for key in shuffle.enumerate_basis(3):
        b = Element.basis(key)
        difference = broken.coalgebra.coproduct(b) - shuffle.coalgebra.coproduct(b)
        if key == word("ab"):
            assert difference == Tensor.pure(word("a"), word("b"))
        else:
            assert difference.is_zero()


# ---------- forests ----------

def test_canonical_trees_ignore_child_order():
    assert canonical_tree(((), ((),))) == canonical_tree((((),), ()))
    assert forest(LADDER2, DOT) == forest(DOT, LADDER2)
    assert parse_tree("T[T[T[]],T[]]") == parse_tree("T[ T[], T[T[]] ]")


def test_parse_tree_rejects_garbage():
    for text in ("T[", "T[]]", "T[T[]T[]]", "X[]"):
        with pytest.raises(ValueError):
            parse_tree(text)


def test_admissible_cuts_of_small_trees():
    assert admissible_cuts(DOT) == (((), ()),)
    assert len(admissible_cuts(LADDER2)) == 2
    # cherry: empty cut, either leaf, both leaves
    assert len(admissible_cuts(CHERRY)) == 4


def test_cherry_coproduct(ck):
    c = forest(CHERRY)
    expected = Tensor(
        2,
        {
            (c, EMPTY): 1,
            (EMPTY, c): 1,
            (forest(DOT), forest(LADDER2)): 2,
            (forest(DOT, DOT), forest(DOT)): 1,
        },
    )
    assert ck.coalgebra.coproduct(Element.basis(c)) == expected
    assert ck.coalgebra.reduced_coproduct(Element.basis(c)) == Tensor(
        2, {(forest(DOT), forest(LADDER2)): 2, (forest(DOT, DOT), forest(DOT)): 1}
    )


def test_ladder_coproduct(ck):
    delta = ck.coalgebra.reduced_coproduct(Element.basis(forest(LADDER3)))
    assert delta == Tensor(2, {(forest(DOT), forest(LADDER2)): 1, (forest(LADDER2), forest(DOT)): 1})


def _graft(key: ForestKey) -> Element:
    return Element.basis(ForestKey.of((key.trees,)))


def test_coproduct_satisfies_grafting_recursion(ck):
    # Δ B₊(f) = B₊(f)⊗1 + (id⊗B₊)Δ(f)
    cg = ck.coalgebra
    for n in range(1, 6):
        for tree in rooted_trees(n):
            t = ForestKey((tree,))
            children = Element.basis(ForestKey(tree))
            expected = Tensor.pure(t, EMPTY) + apply_at(_graft, cg.coproduct(children), 2)
            assert cg.coproduct(Element.basis(t)) == expected


def test_ck_coproduct_is_multiplicative(ck):
    cg = ck.coalgebra
    dot = Element.basis(forest(DOT))
    ladder = Element.basis(forest(LADDER2))
    product = ck.multiply(dot, ladder)
    assert cg.coproduct(product) == ck.multiply_tensors(cg.coproduct(dot), cg.coproduct(ladder))
