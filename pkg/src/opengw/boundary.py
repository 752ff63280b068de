"""Boundary components of a resolution level.

The boundary of a product of moduli spaces splits vertex by vertex (Leibniz
rule), and each vertex contributes one component per boundary pair of its
specification. Components with both sides sturdy become trees of the next
level; components with a wobbly side are paired off by an involution that
transposes two superfluous labels.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

from .errors import InvariantViolation, SpecError
from .spec_core import Label, ModuliSpec, SplitKind, iter_splits
from .trees import LabeledTree, contract_edge

__all__ = [
    "Tag",
    "Side",
    "BoundaryComponent",
    "boundary_components",
    "sturdy_boundary_as_trees",
    "wobbly_involution",
    "tree_node_indices",
]


class Tag(Enum):
    STURDY = "sturdy"
    WOBBLY = "wobbly"


class Side(Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class BoundaryComponent:
    """One boundary pair ``(left, right)`` at vertex ``vertex`` of ``parent``.

    For a wobbly component, ``sigma_order`` is the sigma sequence of the
    wobbly side in the order currently chosen; it starts in increasing
    index order and is the only datum the involution changes.
    """

    parent: LabeledTree
    vertex: int
    left: ModuliSpec
    right: ModuliSpec
    edge_index: int
    tag: Tag
    sigma_order: Optional[tuple[Label, ...]] = None

    def __post_init__(self):
        wobbly = [s for s in (self.left, self.right) if not s.is_sturdy]
        if len(wobbly) > 1:
            raise InvariantViolation(f"both sides wobbly: {self.left!r}, {self.right!r}")
        expected = Tag.WOBBLY if wobbly else Tag.STURDY
        if self.tag is not expected:
            raise SpecError(f"tag {self.tag.value} does not match the sides")
        if wobbly:
            if self.sigma_order is None or sorted(self.sigma_order) != list(wobbly[0].sigma):
                raise SpecError("sigma_order must be an ordering of the wobbly side's sigma")
        elif self.sigma_order is not None:
            raise SpecError("sturdy components carry no sigma_order")

    @property
    def wobbly_side(self) -> Optional[Side]:
        if self.tag is Tag.STURDY:
            return None
        return Side.LEFT if not self.left.is_sturdy else Side.RIGHT

    def erase_order(self) -> "BoundaryComponent":
        """The same component with sigma back in increasing order."""
        if self.sigma_order is None:
            return self
        return replace(self, sigma_order=tuple(sorted(self.sigma_order)))

    def to_json(self) -> dict:
        out = {
            "parent": self.parent.to_json(),
            "vertex": self.vertex,
            "left": self.left.to_json(),
            "right": self.right.to_json(),
            "tag": self.tag.value,
            "edge_index": self.edge_index,
        }
        if self.sigma_order is not None:
            out["wobbly_side"] = self.wobbly_side.value
            out["sigma_order"] = [x.to_json() for x in self.sigma_order]
        return out


def tree_node_indices(tree: LabeledTree) -> set[int]:
    """Every node index used by a tree: its edges and any node labels it resolves."""
    out = set(tree.edges)
    for v in tree.vertices:
        out |= v.node_indices()
    return out


def _check_r(tree: LabeledTree, r) -> None:
    if not isinstance(r, int) or isinstance(r, bool) or r < 1:
        raise SpecError(f"node index must be a positive integer, got {r!r}")
    used = tree_node_indices(tree)
    if used and r <= max(used):
        raise SpecError(f"node index {r} must exceed every node index in the tree (max {max(used)})")


def boundary_components(tree: LabeledTree, r: int) -> list[BoundaryComponent]:
    """One component per vertex and per boundary pair of that vertex at node ``r``."""
    _check_r(tree, r)
    out = []
    for i, v in enumerate(tree.vertices):
        for left, right, kind in iter_splits(v, r):
            if kind is SplitKind.STURDY_STURDY:
                out.append(BoundaryComponent(tree, i, left, right, r, Tag.STURDY))
            else:
                side = left if not left.is_sturdy else right
                out.append(BoundaryComponent(tree, i, left, right, r, Tag.WOBBLY, side.sigma))
    return out


def sturdy_boundary_as_trees(tree: LabeledTree, r: int) -> list[LabeledTree]:
    """Trees on ``rho + {r}`` obtained by splitting one vertex along a sturdy pair."""
    out = []
    for c in boundary_components(tree, r):
        if c.tag is not Tag.STURDY:
            continue
        rest = [v for i, v in enumerate(tree.vertices) if i != c.vertex]
        grown = LabeledTree.build(rest + [c.left, c.right], tree.edges + (r,))
        if contract_edge(grown, r) != tree:
            raise InvariantViolation(f"splitting vertex {c.vertex} does not contract back")
        out.append(grown)
    return out


def wobbly_involution(c: BoundaryComponent) -> BoundaryComponent:
    """Transpose the first two entries of the wobbly side's sigma sequence."""
    if c.tag is not Tag.WOBBLY:
        raise SpecError("wobbly_involution applies to wobbly components only")
    seq = list(c.sigma_order)
    if len(seq) < 2:
        raise InvariantViolation(f"wobbly side has fewer than two superfluous labels: {seq!r}")
    seq[0], seq[1] = seq[1], seq[0]
    return replace(c, sigma_order=tuple(seq))
