"""Key builders used across the test modules."""
from hopfcalc.core.freemod import Element
from hopfcalc.core.instances import ForestKey, PolynomialKey, WeightedWordKey, WordKey

DOT = ()
LADDER2 = ((),)
LADDER3 = (((),),)
CHERRY = ((), ())


def x(n: int) -> PolynomialKey:
    return PolynomialKey(n)


def word(text: str) -> WordKey:
    return WordKey(tuple(text))


def weighted(*weights: int) -> WeightedWordKey:
    return WeightedWordKey(tuple(weights))


def forest(*trees) -> ForestKey:
    return ForestKey.of(trees)


def el(*pairs) -> Element:
    """el((key, coeff), ...) with repeated keys summed."""
    acc = {}
    for key, coeff in pairs:
        acc[key] = acc.get(key, 0) + coeff
    return Element(acc)
