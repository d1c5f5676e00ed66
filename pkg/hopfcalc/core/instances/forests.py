"""
Connes–Kreimer Hopf algebra of rooted forests.

A tree is the tuple of its child subtrees, children sorted by `tree_order`;
the single vertex is (). A forest is a sorted tuple of trees and the empty
forest is the unit. Δ is computed by enumerating admissible cuts, pruned
part in the first slot and root part in the second.
"""
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from ..coalgebra import CoalgebraStructure
from ..expression import GeneratorSyntax
from ..freemod import BasisKey, Element, Tensor
from ..hopf import BialgebraInstance

Tree = Tuple["Tree", ...]
Forest = Tuple[Tree, ...]


@lru_cache(maxsize=None)
def tree_size(tree: Tree) -> int:
    return 1 + sum(tree_size(child) for child in tree)


@lru_cache(maxsize=None)
def tree_order(tree: Tree) -> Tuple:
    """(vertex count, orders of the children); injective on canonical trees."""
    return (tree_size(tree), tuple(tree_order(child) for child in tree))


def canonical_tree(tree: Tree) -> Tree:
    return tuple(sorted((canonical_tree(child) for child in tree), key=tree_order))


def canonical_forest(trees: Iterable[Tree]) -> Forest:
    return tuple(sorted((canonical_tree(t) for t in trees), key=tree_order))


def render_tree(tree: Tree) -> str:
    return "T[" + ",".join(render_tree(child) for child in tree) + "]"


@dataclass(frozen=True)
class ForestKey(BasisKey):
    trees: Forest

    @classmethod
    def of(cls, trees: Iterable[Tree]) -> "ForestKey":
        return cls(canonical_forest(trees))

    @property
    def degree(self) -> int:
        return sum(tree_size(t) for t in self.trees)

    def sort_key(self) -> Tuple:
        return tuple(tree_order(t) for t in self.trees)

    def render(self) -> str:
        return "*".join(render_tree(t) for t in self.trees) or "1"


EMPTY = ForestKey(())


# ---------- enumeration ----------

@lru_cache(maxsize=None)
def rooted_trees(n: int) -> Tuple[Tree, ...]:
    """Canonical trees on n vertices: a root over every forest on n − 1 vertices."""
    if n < 1:
        return ()
    return tuple(sorted(rooted_forests(n - 1), key=tree_order))


@lru_cache(maxsize=None)
def rooted_forests(n: int) -> Tuple[Forest, ...]:
    """Canonical forests on exactly n vertices, as non-decreasing sequences of trees."""
    candidates = [t for size in range(1, n + 1) for t in rooted_trees(size)]
    candidates.sort(key=tree_order)

    def multisets(remaining: int, start: int) -> Iterator[Forest]:
        if remaining == 0:
            yield ()
            return
        for i in range(start, len(candidates)):
            size = tree_size(candidates[i])
            if size <= remaining:
                for rest in multisets(remaining - size, i):
                    yield (candidates[i],) + rest

    return tuple(multisets(n, 0))


def _enumerate(degree_bound: int) -> List[ForestKey]:
    keys = [ForestKey(f) for n in range(degree_bound + 1) for f in rooted_forests(n)]
    return sorted(keys)


# ---------- coproduct ----------

@lru_cache(maxsize=None)
def admissible_cuts(tree: Tree) -> Tuple[Tuple[Forest, Tree], ...]:
    """
    Every admissible cut of `tree` as (pruned trees, trunk), the empty cut
    included. Each child edge is either cut, pruning the whole child, or
    kept, recursing into the child.
    """
    per_child: List[List[Tuple[Forest, Optional[Tree]]]] = []
    for child in tree:
        options: List[Tuple[Forest, Optional[Tree]]] = [((child,), None)]
        options.extend(admissible_cuts(child))
        per_child.append(options)

    cuts: List[Tuple[Forest, Tree]] = [((), ())]
    for options in per_child:
        cuts = [
            (pruned + extra, trunk + ((kept,) if kept is not None else ()))
            for pruned, trunk in cuts
            for extra, kept in options
        ]
    return tuple((canonical_forest(pruned), canonical_tree(trunk)) for pruned, trunk in cuts)


@lru_cache(maxsize=None)
def _tree_coproduct(tree: Tree) -> Tuple[Tuple[Tuple[ForestKey, ForestKey], int], ...]:
    acc: Counter = Counter()
    acc[(ForestKey((tree,)), EMPTY)] += 1
    for pruned, trunk in admissible_cuts(tree):
        acc[(ForestKey(pruned), ForestKey((trunk,)))] += 1
    return tuple(acc.items())


def _coproduct(key: ForestKey) -> Tensor:
    # Δ is multiplicative over the trees of the forest
    acc: Dict[Tuple[Forest, Forest], int] = {((), ()): 1}
    for tree in key.trees:
        nxt: Counter = Counter()
        for (left, right), c in acc.items():
            for (p, r), d in _tree_coproduct(tree):
                nxt[(left + p.trees, right + r.trees)] += c * d
        acc = nxt
    return Tensor(2, {(ForestKey.of(left), ForestKey.of(right)): c for (left, right), c in acc.items()})


def _counit(key: ForestKey) -> int:
    return 0 if key.trees else 1


def _product(left: ForestKey, right: ForestKey) -> Element:
    return Element.basis(ForestKey.of(left.trees + right.trees))


# ---------- literals ----------

def parse_tree(text: str) -> Tree:
    """Parse `T[...]` literals; raises ValueError on anything else."""
    source = "".join(text.split())
    tree, end = _parse_tree_at(source, 0)
    if end != len(source):
        raise ValueError(text)
    return canonical_tree(tree)


def _parse_tree_at(source: str, pos: int) -> Tuple[Tree, int]:
    if not source.startswith("T[", pos):
        raise ValueError(source)
    pos += 2
    children: List[Tree] = []
    if source.startswith("]", pos):
        return (), pos + 1
    while True:
        child, pos = _parse_tree_at(source, pos)
        children.append(child)
        if source.startswith(",", pos):
            pos += 1
        elif source.startswith("]", pos):
            return tuple(children), pos + 1
        else:
            raise ValueError(source)


class TreeSyntax(GeneratorSyntax):
    """Tree literals nest brackets, so the scanner matches them by depth."""

    def __init__(self):
        super().__init__(r"T\[", lambda literal: ForestKey((parse_tree(literal),)))

    def scan(self, src: str, pos: int) -> Optional[int]:
        if not src.startswith("T[", pos):
            return None
        depth = 0
        for i in range(pos + 1, len(src)):
            if src[i] == "[":
                depth += 1
            elif src[i] == "]":
                depth -= 1
                if depth == 0:
                    return i + 1
        return len(src)


def connes_kreimer_instance() -> BialgebraInstance:
    coalgebra = CoalgebraStructure(
        name="ck",
        coproduct_map=_coproduct,
        counit_map=_counit,
        coaugmentation_unit=EMPTY,
        enumerate_basis=_enumerate,
    )
    return BialgebraInstance(
        name="ck",
        coalgebra=coalgebra,
        product_map=_product,
        commutative=True,
        description="Connes–Kreimer Hopf algebra of rooted forests, Δ by admissible cuts",
        syntax=TreeSyntax(),
    )
