"""
Free-module substrate: exact scalars, sparse elements, tensor powers and the
linear extension of maps defined on basis elements.

Elements and tensors are immutable. Every constructor prunes zero
coefficients, so equality is plain equality of the term maps.
"""
from abc import ABC, abstractmethod
from collections import defaultdict
from fractions import Fraction
from numbers import Rational
from types import MappingProxyType
from typing import Any, Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from .errors import DegreeError, FreeModuleError, UndefinedBasisError

Scalar = Fraction


def to_scalar(value: Any) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction. Floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise FreeModuleError(f"not a rational scalar: {value!r}")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise FreeModuleError(f"not a rational scalar: {value!r}") from e
    raise FreeModuleError(f"not a rational scalar: {value!r}")


def format_scalar(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class BasisKey(ABC):
    """
    Canonical label of one basis element of an instance.

    Subclasses are frozen dataclasses holding a canonical payload. Keys are
    ordered by degree first, then by the subclass sort key; the order is
    total within one instance and identical across runs.
    """

    __slots__ = ()

    @property
    @abstractmethod
    def degree(self) -> int:
        ...

    @abstractmethod
    def sort_key(self) -> Tuple:
        ...

    @abstractmethod
    def render(self) -> str:
        """Literal accepted by the expression parser of the owning instance."""

    def _order(self) -> Tuple:
        return (self.degree, self.sort_key())

    def __lt__(self, other: "BasisKey") -> bool:
        if not isinstance(other, BasisKey):
            return NotImplemented
        return self._order() < other._order()

    def __le__(self, other: "BasisKey") -> bool:
        if not isinstance(other, BasisKey):
            return NotImplemented
        return self._order() <= other._order()

    def __gt__(self, other: "BasisKey") -> bool:
        if not isinstance(other, BasisKey):
            return NotImplemented
        return self._order() > other._order()

    def __ge__(self, other: "BasisKey") -> bool:
        if not isinstance(other, BasisKey):
            return NotImplemented
        return self._order() >= other._order()


def _pruned(acc: Mapping[Any, Fraction]) -> Dict[Any, Fraction]:
    return {k: v for k, v in acc.items() if v}


class Element:
    """Finitely supported rational combination of basis keys."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[BasisKey, Any]] = None):
        cleaned: Dict[BasisKey, Fraction] = {}
        for key, coeff in (terms or {}).items():
            if not isinstance(key, BasisKey):
                raise FreeModuleError(f"element term is not a basis key: {key!r}")
            c = to_scalar(coeff)
            if c:
                cleaned[key] = c
        self._terms = MappingProxyType(cleaned)
        self._hash = None

    @classmethod
    def zero(cls) -> "Element":
        return cls()

    @classmethod
    def basis(cls, key: BasisKey, coeff: Any = 1) -> "Element":
        return cls({key: coeff})

    @classmethod
    def _from_accumulator(cls, acc: Mapping[BasisKey, Fraction]) -> "Element":
        element = cls.__new__(cls)
        element._terms = MappingProxyType(_pruned(acc))
        element._hash = None
        return element

    @property
    def terms(self) -> Mapping[BasisKey, Fraction]:
        return self._terms

    def items(self) -> List[Tuple[BasisKey, Fraction]]:
        """Terms in basis-key order."""
        return sorted(self._terms.items(), key=lambda kv: kv[0])

    def keys(self) -> List[BasisKey]:
        return sorted(self._terms)

    def coefficient(self, key: BasisKey) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Maximum degree over the support. Undefined for zero."""
        if not self._terms:
            raise DegreeError("the zero element has no degree")
        return max(key.degree for key in self._terms)

    def is_homogeneous(self) -> bool:
        return len({key.degree for key in self._terms}) <= 1

    def as_tensor(self) -> "Tensor":
        return Tensor(1, {(key,): coeff for key, coeff in self._terms.items()})

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[BasisKey]:
        return iter(self.keys())

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, Element):
            return dict(self._terms) == dict(other._terms)
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        return add(self, other)

    def __sub__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        return add(self, scale(-1, other))

    def __neg__(self) -> "Element":
        return scale(-1, self)

    def __mul__(self, k: Any) -> "Element":
        if isinstance(k, (Element, Tensor)):
            return NotImplemented
        return scale(k, self)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        if not self._terms:
            return "Element(0)"
        body = " + ".join(f"{format_scalar(c)}*{k.render()}" for k, c in self.items())
        return f"Element({body})"


class Tensor:
    """Finitely supported rational combination of basis-key tuples of one fixed arity."""

    __slots__ = ("arity", "_terms", "_hash")

    def __init__(self, arity: int, terms: Optional[Mapping[Tuple[BasisKey, ...], Any]] = None):
        if not isinstance(arity, int) or arity < 1:
            raise FreeModuleError(f"tensor arity must be a positive integer, got {arity!r}")
        cleaned: Dict[Tuple[BasisKey, ...], Fraction] = {}
        for keys, coeff in (terms or {}).items():
            keys = tuple(keys)
            if len(keys) != arity:
                raise FreeModuleError(f"term {keys!r} does not have arity {arity}")
            c = to_scalar(coeff)
            if c:
                cleaned[keys] = c
        self.arity = arity
        self._terms = MappingProxyType(cleaned)
        self._hash = None

    @classmethod
    def zero(cls, arity: int) -> "Tensor":
        return cls(arity)

    @classmethod
    def pure(cls, *keys: BasisKey, coeff: Any = 1) -> "Tensor":
        return cls(len(keys), {tuple(keys): coeff})

    @classmethod
    def _from_accumulator(cls, arity: int, acc: Mapping[Tuple[BasisKey, ...], Fraction]) -> "Tensor":
        tensor = cls.__new__(cls)
        tensor.arity = arity
        tensor._terms = MappingProxyType(_pruned(acc))
        tensor._hash = None
        return tensor

    @property
    def terms(self) -> Mapping[Tuple[BasisKey, ...], Fraction]:
        return self._terms

    def items(self) -> List[Tuple[Tuple[BasisKey, ...], Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0])

    def coefficient(self, *keys: BasisKey) -> Fraction:
        return self._terms.get(tuple(keys), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def as_element(self) -> Element:
        if self.arity != 1:
            raise FreeModuleError(f"cannot view an arity-{self.arity} tensor as an element")
        return Element._from_accumulator({keys[0]: c for keys, c in self._terms.items()})

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, Tensor):
            return self.arity == other.arity and dict(self._terms) == dict(other._terms)
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other: "Tensor") -> "Tensor":
        if not isinstance(other, Tensor):
            return NotImplemented
        return add(self, other)

    def __sub__(self, other: "Tensor") -> "Tensor":
        if not isinstance(other, Tensor):
            return NotImplemented
        return add(self, scale(-1, other))

    def __neg__(self) -> "Tensor":
        return scale(-1, self)

    def __mul__(self, k: Any) -> "Tensor":
        if isinstance(k, (Element, Tensor)):
            return NotImplemented
        return scale(k, self)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        if not self._terms:
            return f"Tensor[{self.arity}](0)"
        body = " + ".join(
            f"{format_scalar(c)}*" + "⊗".join(k.render() for k in keys) for keys, c in self.items()
        )
        return f"Tensor[{self.arity}]({body})"


Vector = Union[Element, Tensor]


def add(a: Vector, b: Vector) -> Vector:
    """Coefficient-wise sum, zero terms pruned."""
    if isinstance(a, Element) and isinstance(b, Element):
        acc: Dict[Any, Fraction] = dict(a.terms)
        for key, coeff in b.terms.items():
            acc[key] = acc.get(key, Fraction(0)) + coeff
        return Element._from_accumulator(acc)
    if isinstance(a, Tensor) and isinstance(b, Tensor):
        if a.arity != b.arity:
            raise FreeModuleError(f"cannot add tensors of arity {a.arity} and {b.arity}")
        acc = dict(a.terms)
        for keys, coeff in b.terms.items():
            acc[keys] = acc.get(keys, Fraction(0)) + coeff
        return Tensor._from_accumulator(a.arity, acc)
    raise FreeModuleError(f"cannot add {type(a).__name__} and {type(b).__name__}")


def scale(k: Any, a: Vector) -> Vector:
    k = to_scalar(k)
    if isinstance(a, Element):
        if not k:
            return Element.zero()
        return Element._from_accumulator({key: k * c for key, c in a.terms.items()})
    if isinstance(a, Tensor):
        if not k:
            return Tensor.zero(a.arity)
        return Tensor._from_accumulator(a.arity, {keys: k * c for keys, c in a.terms.items()})
    raise FreeModuleError(f"cannot scale {type(a).__name__}")


def sum_vectors(vectors: Iterable[Vector], arity: Optional[int] = None) -> Vector:
    """Sum of elements (arity None) or of tensors of the given arity."""
    acc: Dict[Any, Fraction] = defaultdict(Fraction)
    for v in vectors:
        if isinstance(v, Element) and arity is None:
            for key, c in v.terms.items():
                acc[key] += c
        elif isinstance(v, Tensor) and v.arity == arity:
            for keys, c in v.terms.items():
                acc[keys] += c
        else:
            raise FreeModuleError(f"cannot sum {v!r} into arity {arity}")
    if arity is None:
        return Element._from_accumulator(acc)
    return Tensor._from_accumulator(arity, acc)


def _as_tensor(v: Vector) -> Tensor:
    if isinstance(v, Element):
        return v.as_tensor()
    if isinstance(v, Tensor):
        return v
    raise FreeModuleError(f"not a tensor: {v!r}")


def tensor_product(a: Vector, b: Vector) -> Tensor:
    """Bilinear extension of tuple concatenation. Elements count as arity-1 tensors."""
    ta, tb = _as_tensor(a), _as_tensor(b)
    acc: Dict[Tuple[BasisKey, ...], Fraction] = defaultdict(Fraction)
    for ka, ca in ta.terms.items():
        for kb, cb in tb.terms.items():
            acc[ka + kb] += ca * cb
    return Tensor._from_accumulator(ta.arity + tb.arity, acc)


def tensor_of(*vectors: Vector) -> Tensor:
    """Left-to-right tensor product of several factors."""
    if not vectors:
        raise FreeModuleError("tensor_of needs at least one factor")
    result = _as_tensor(vectors[0])
    for v in vectors[1:]:
        result = tensor_product(result, v)
    return result


BasisMap = Callable[[BasisKey], Any]

_UNSET = object()


def _evaluate(f: BasisMap, key: BasisKey) -> Any:
    try:
        value = f(key)
    except UndefinedBasisError:
        raise
    except LookupError as e:
        raise UndefinedBasisError(key) from e
    if value is None:
        raise UndefinedBasisError(key)
    return value


def linear_extend(f: BasisMap, a: Element, arity: Any = _UNSET) -> Vector:
    """
    Σ coeff·f(key) over the terms of a.

    f returns Elements or Tensors of one fixed arity. The kind of a zero
    result is taken from `arity` (None for Element); without it a zero
    result is the zero Element.
    """
    result_arity = arity
    acc: Dict[Any, Fraction] = defaultdict(Fraction)
    for key, coeff in a.terms.items():
        value = _evaluate(f, key)
        if isinstance(value, Element):
            value_arity = None
        elif isinstance(value, Tensor):
            value_arity = value.arity
        else:
            raise FreeModuleError(f"map returned {type(value).__name__} on {key!r}")
        if result_arity is _UNSET:
            result_arity = value_arity
        elif result_arity != value_arity:
            raise FreeModuleError(f"map changes arity on {key!r}: {value_arity} vs {result_arity}")
        for term_key, c in value.terms.items():
            acc[term_key] += coeff * c
    if result_arity is _UNSET or result_arity is None:
        return Element._from_accumulator(acc)
    return Tensor._from_accumulator(result_arity, acc)


def apply_at(f: BasisMap, t: Tensor, position: int, width: Optional[int] = None) -> Tensor:
    """
    Apply f in slot `position` (1-based) of t, identity elsewhere.

    f may return an Element (slot replaced), a Tensor of arity r (slot
    expanded to r slots) or a scalar (slot removed, as the counit does).
    `width` is the number of slots f produces; it fixes the arity of a
    zero result and is checked against every value f returns.
    """
    if not 1 <= position <= t.arity:
        raise FreeModuleError(f"slot {position} out of range for arity {t.arity}")
    index = position - 1
    cache: Dict[BasisKey, Tuple[int, Mapping[Tuple[BasisKey, ...], Fraction]]] = {}
    acc: Dict[Tuple[BasisKey, ...], Fraction] = defaultdict(Fraction)
    inserted: Optional[int] = width
    for keys, coeff in t.terms.items():
        key = keys[index]
        if key not in cache:
            value = _evaluate(f, key)
            if isinstance(value, Element):
                cache[key] = (1, {(k,): c for k, c in value.terms.items()})
            elif isinstance(value, Tensor):
                cache[key] = (value.arity, value.terms)
            else:
                cache[key] = (0, {(): to_scalar(value)})
        slots, image = cache[key]
        if inserted is None:
            inserted = slots
        elif inserted != slots:
            raise FreeModuleError(f"map changes arity on {key!r}")
        head, tail = keys[:index], keys[index + 1:]
        for middle, c in image.items():
            if c:
                acc[head + middle + tail] += coeff * c
    if inserted is None:
        # zero input and no width given: treat f as an endomorphism
        inserted = 1
    new_arity = t.arity - 1 + inserted
    if new_arity < 1:
        raise FreeModuleError("applying a scalar-valued map to an arity-1 tensor leaves no slot")
    return Tensor._from_accumulator(new_arity, acc)


def audit_normal_form(v: Vector) -> bool:
    """True when no zero coefficient is stored and every tuple has the tensor arity."""
    if isinstance(v, Element):
        return all(c != 0 and isinstance(k, BasisKey) for k, c in v.terms.items())
    if isinstance(v, Tensor):
        return all(c != 0 and len(k) == v.arity for k, c in v.terms.items())
    return False
