"""Sturdy labeled trees indexing the components of a resolution.

A tree has oriented edges labeled by a finite set ``rho`` of positive
integers. Edge ``j`` runs from the vertex whose sigma holds ``*'_j`` (the
tail) to the vertex whose k holds ``*''_j`` (the head). Every vertex carries
a sturdy moduli specification.

Vertex data is fully distinguishing, so a tree is determined by its set of
vertex specifications. We store the vertices in the canonical recursive
order: split at the maximal edge, list the tail-side subtree before the
head-side subtree, recurse.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import InvariantViolation, SpecError
from .spec_core import (
    Label,
    ModuliSpec,
    PreModuliSpec,
    SplitKind,
    is_basic,
    iter_splits,
    node_in,
    node_out,
)

__all__ = [
    "LabeledTree",
    "TreeView",
    "canonical_order",
    "enumerate_trees",
    "max_resolution_depth",
    "contract_edge",
    "smoothing_sequence",
    "sym_act",
    "is_odd_even",
    "is_sorted_odd_even",
    "sorting_permutation",
    "filter_view",
]


def _edge_ends(vertices: Sequence[ModuliSpec], edges: Iterable[int]):
    edges = tuple(edges)
    wanted = set(edges)
    hs: dict[int, list[int]] = {j: [] for j in edges}
    ts: dict[int, list[int]] = {j: [] for j in edges}
    for i, v in enumerate(vertices):
        for x in v.k:
            if x.is_node_in and x.index in wanted:
                hs[x.index].append(i)
        for x in v.sigma:
            if x.index in wanted:
                ts[x.index].append(i)
    head, tail = {}, {}
    for j in edges:
        if len(hs[j]) != 1 or len(ts[j]) != 1:
            raise SpecError(f"edge {j} needs exactly one head and one tail, found {len(hs[j])} and {len(ts[j])}")
        if hs[j][0] == ts[j][0]:
            raise SpecError(f"edge {j} is a loop")
        head[j], tail[j] = hs[j][0], ts[j][0]
    return head, tail


def _component(start: int, adjacency: dict[int, list[int]]) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adjacency.get(u, ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def canonical_order(vertices: Sequence[ModuliSpec], edges: Iterable[int]) -> tuple[ModuliSpec, ...]:
    """Order ``vertices`` recursively by splitting at the maximal edge."""
    edges = sorted(edges)
    vertices = list(vertices)
    head, tail = _edge_ends(vertices, edges)

    def order(vs: frozenset, es: list[int]) -> list[int]:
        if not es:
            if len(vs) != 1:
                raise SpecError("vertex and edge sets do not form a tree")
            return list(vs)
        r, rest = es[-1], es[:-1]
        adjacency: dict[int, list[int]] = {}
        for j in rest:
            adjacency.setdefault(tail[j], []).append(head[j])
            adjacency.setdefault(head[j], []).append(tail[j])
        left = frozenset(_component(tail[r], adjacency))
        right = vs - left
        if head[r] not in right or not left <= vs:
            raise SpecError("vertex and edge sets do not form a tree")
        return (order(left, [j for j in rest if tail[j] in left])
                + order(right, [j for j in rest if tail[j] in right]))

    if len(vertices) != len(edges) + 1:
        raise SpecError(f"{len(vertices)} vertices and {len(edges)} edges cannot form a tree")
    idx = order(frozenset(range(len(vertices))), edges)
    if sorted(idx) != list(range(len(vertices))):
        raise SpecError("vertex and edge sets do not form a tree")
    return tuple(vertices[i] for i in idx)


@dataclass(frozen=True)
class LabeledTree:
    """A sturdy ``(s, rho)``-labeled tree in canonical vertex order.

    Use :meth:`build` to construct from vertices in any order.
    """

    edges: tuple[int, ...]
    vertices: tuple[ModuliSpec, ...]

    def __post_init__(self):
        self._validate()
        if canonical_order(self.vertices, self.edges) != self.vertices:
            raise SpecError("vertices are not in canonical order")

    def _validate(self):
        if list(self.edges) != sorted(set(self.edges)):
            raise SpecError(f"edges must be sorted and distinct, got {self.edges!r}")
        for v in self.vertices:
            if not isinstance(v, ModuliSpec):
                raise SpecError(f"vertex {v!r} is not a ModuliSpec")
            if not v.is_sturdy:
                raise SpecError(f"vertex {v!r} is not sturdy")

    def __hash__(self):
        try:
            return self.__dict__["_hash_cache"]
        except KeyError:
            h = hash((self.edges, self.vertices))
            object.__setattr__(self, "_hash_cache", h)
            return h

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, LabeledTree):
            return NotImplemented
        return hash(self) == hash(other) and self.edges == other.edges and self.vertices == other.vertices

    @classmethod
    def build(cls, vertices: Iterable[ModuliSpec], edges: Iterable[int]) -> "LabeledTree":
        edges = tuple(sorted(edges))
        ordered = canonical_order(list(vertices), edges)
        # canonical_order already checked the tree structure; skip recomputing it.
        tree = object.__new__(cls)
        object.__setattr__(tree, "edges", edges)
        object.__setattr__(tree, "vertices", ordered)
        tree._validate()
        return tree

    @classmethod
    def single(cls, spec: ModuliSpec) -> "LabeledTree":
        return cls((), (spec,))

    @property
    def r(self) -> int:
        return len(self.edges)

    def _ends(self):
        # Cached outside the dataclass fields so equality and hashing ignore it.
        try:
            return self.__dict__["_ends_cache"]
        except KeyError:
            ends = _edge_ends(self.vertices, self.edges)
            object.__setattr__(self, "_ends_cache", ends)
            return ends

    @property
    def head(self) -> dict[int, int]:
        return dict(self._ends()[0])

    @property
    def tail(self) -> dict[int, int]:
        return dict(self._ends()[1])

    def ambient(self) -> ModuliSpec:
        """Reconstruct the ``(s, rho)`` data: the specification being resolved."""
        ins = {node_in(j) for j in self.edges}
        outs = {node_out(j) for j in self.edges}
        k = [x for v in self.vertices for x in v.k if x not in ins]
        l = [x for v in self.vertices for x in v.l]
        sigma = [x for v in self.vertices for x in v.sigma if x not in outs]
        return ModuliSpec.make(k, l, sum(v.beta for v in self.vertices), sigma)

    def to_json(self) -> dict:
        head, tail = self._ends()
        return {
            "edges": list(self.edges),
            "vertices": [v.to_json() for v in self.vertices],
            "head": {str(j): head[j] for j in self.edges},
            "tail": {str(j): tail[j] for j in self.edges},
        }

    @classmethod
    def from_json(cls, obj) -> "LabeledTree":
        if not isinstance(obj, dict):
            raise SpecError(f"tree must be an object, got {obj!r}")
        for field in ("edges", "vertices"):
            if not isinstance(obj.get(field), list):
                raise SpecError(f"tree field {field!r} must be a list")
        edges = obj["edges"]
        if not all(isinstance(j, int) and not isinstance(j, bool) and j >= 1 for j in edges):
            raise SpecError(f"tree field 'edges' must hold positive integers, got {edges!r}")
        tree = cls.build([ModuliSpec.from_json(v) for v in obj["vertices"]], edges)
        # head/tail are derived data; if present they must agree.
        for field, table in (("head", tree.head), ("tail", tree.tail)):
            if field in obj:
                given = obj[field]
                if not isinstance(given, dict) or {int(j): i for j, i in given.items()} != table:
                    raise SpecError(f"tree field {field!r} disagrees with the vertex labels")
        return tree

    def __repr__(self):
        return f"LabeledTree(edges={list(self.edges)}, vertices={list(self.vertices)})"


@lru_cache(maxsize=None)
def _trees(spec: ModuliSpec, rho: tuple[int, ...]) -> tuple[LabeledTree, ...]:
    if not rho:
        return (LabeledTree.single(spec),)
    # Each of the len(rho)+1 vertices needs k+2l+3beta >= 3, and the edges add len(rho) node-in labels.
    if len(spec.k) + len(rho) + 2 * len(spec.l) + 3 * spec.beta < 3 * (len(rho) + 1):
        return ()
    r, rest = rho[-1], rho[:-1]
    out = []
    pairs = [(a, b) for a, b, kind in iter_splits(spec, r) if kind is SplitKind.STURDY_STURDY]
    for mask in range(1 << len(rest)):
        rho1 = tuple(j for i, j in enumerate(rest) if mask >> i & 1)
        rho2 = tuple(j for i, j in enumerate(rest) if not mask >> i & 1)
        for s1, s2 in pairs:
            for t1 in _trees(s1, rho1):
                for t2 in _trees(s2, rho2):
                    out.append(LabeledTree(rho, t1.vertices + t2.vertices))
    return tuple(out)


def _key(tree: LabeledTree):
    return tuple(repr(v) for v in tree.vertices)


def enumerate_trees(base, rho: Iterable[int]) -> list[LabeledTree]:
    """All sturdy ``((base, ()), rho)``-labeled trees.

    ``base`` is a basic ``PreModuliSpec`` or, more generally, a sturdy
    ``ModuliSpec``. The recursion splits on the maximal edge of ``rho`` and
    grafts the two resulting subtrees; it produces each isomorphism type
    exactly once. Output is sorted by a canonical key.
    """
    if isinstance(base, PreModuliSpec):
        if not is_basic(base):
            raise SpecError(f"{base!r} is not basic")
        spec = ModuliSpec(base, ())
    elif isinstance(base, ModuliSpec):
        if not base.is_sturdy:
            raise SpecError(f"{base!r} is not sturdy")
        spec = base
    else:
        raise SpecError(f"expected a moduli specification, got {base!r}")
    rho = tuple(sorted(set(rho)))
    if len(rho) != len(list(rho)) or any(not isinstance(j, int) or j < 1 for j in rho):
        raise SpecError(f"rho must be a set of positive integers, got {rho!r}")
    clash = spec.node_indices() & set(rho)
    if clash:
        raise SpecError(f"edge indices {sorted(clash)} collide with node labels of {spec!r}")
    return sorted(_trees(spec, rho), key=_key)


def max_resolution_depth(base: PreModuliSpec) -> int:
    """Largest ``r`` for which ``enumerate_trees(base, [1..r])`` can be non-empty.

    Each of the ``r + 1`` vertices is stable and together they carry
    ``k + r`` orienting labels, so ``k + r + 2l + 3beta >= 3(r + 1)``.
    """
    if not is_basic(base):
        raise SpecError(f"{base!r} is not basic")
    return (len(base.k) + 2 * len(base.l) + 3 * base.beta - 3) // 2


@lru_cache(maxsize=1 << 16)
def contract_edge(tree: LabeledTree, e: int) -> LabeledTree:
    """Merge the two ends of edge ``e``, dropping ``*'_e`` and ``*''_e``."""
    if e not in tree.edges:
        raise SpecError(f"edge {e} not in tree edges {list(tree.edges)}")
    head, tail = tree.head, tree.tail
    t, h = tree.vertices[tail[e]], tree.vertices[head[e]]
    try:
        merged = ModuliSpec.make(
            [x for x in t.k + h.k if x != node_in(e)],
            t.l + h.l,
            t.beta + h.beta,
            [x for x in t.sigma + h.sigma if x != node_out(e)],
        )
    except SpecError as exc:
        raise InvariantViolation(f"contracting edge {e} gives an invalid vertex: {exc}") from exc
    if not merged.is_sturdy:
        raise InvariantViolation(f"contracting edge {e} gives a wobbly vertex {merged!r}")
    rest = [v for i, v in enumerate(tree.vertices) if i not in (head[e], tail[e])]
    return LabeledTree.build(rest + [merged], [j for j in tree.edges if j != e])


def smoothing_sequence(tree: LabeledTree) -> list[LabeledTree]:
    """``[T0, T1, ..., Tr]`` where ``Tj`` contracts edge ``j`` of ``T(j-1)``."""
    if tree.edges != tuple(range(1, tree.r + 1)):
        raise SpecError(f"smoothing needs edges 1..r, got {list(tree.edges)}")
    seq = [tree]
    for j in tree.edges:
        seq.append(contract_edge(seq[-1], j))
    return seq


def _as_mapping(perm, edges: tuple[int, ...]) -> dict[int, int]:
    if isinstance(perm, Mapping):
        mapping = dict(perm)
    else:
        # A sequence lists the images of the sorted edges.
        perm = list(perm)
        if len(perm) != len(edges):
            raise SpecError(f"permutation {perm!r} has the wrong length for edges {list(edges)}")
        mapping = dict(zip(edges, perm))
    if set(mapping) != set(edges) or sorted(mapping.values()) != sorted(edges):
        raise SpecError(f"{perm!r} is not a bijection of {list(edges)}")
    return mapping


def sym_act(perm, tree: LabeledTree) -> LabeledTree:
    """Relabel edge ``j`` as ``perm[j]`` (``perm`` a dict or image sequence)."""
    mapping = _as_mapping(perm, tree.edges)
    return LabeledTree.build([v.relabel(mapping) for v in tree.vertices], tree.edges)


def is_odd_even(tree: LabeledTree) -> bool:
    """Even-degree vertices have no sigma, odd-degree vertices have no k."""
    return all(not v.sigma if v.beta % 2 == 0 else not v.k for v in tree.vertices)


def _prefix_connected(tree: LabeledTree) -> bool:
    head, tail = tree.head, tree.tail
    touched: set[int] = set()
    for j in tree.edges:
        ends = {head[j], tail[j]}
        if touched and not ends & touched:
            return False
        touched |= ends
    return True


def _sigma_contiguous(tree: LabeledTree) -> bool:
    edges = set(tree.edges)
    for v in tree.vertices:
        idx = sorted(x.index for x in v.sigma if x.index in edges)
        if idx and idx[-1] - idx[0] + 1 != len(idx):
            return False
    return True


def is_sorted_odd_even(tree: LabeledTree) -> bool:
    """Odd-even, initial edge segments connected, sigma indices contiguous.

    Edges are taken in increasing order, so a tree with edges ``{a..r}``
    is judged on the segments ``a..b``.
    """
    return is_odd_even(tree) and _prefix_connected(tree) and _sigma_contiguous(tree)


def sorting_permutation(tree: LabeledTree) -> dict[int, int]:
    """Some ``tau`` with ``sym_act(tau, tree)`` sorted odd-even.

    Depth-first search over the order in which edges receive the labels
    ``1..r``: each new edge must touch the edges already placed, and a
    vertex's outgoing edges must be labeled consecutively.
    """
    if not is_odd_even(tree):
        raise SpecError("sorting_permutation needs an odd-even tree")
    edges = tree.edges
    head, tail = tree.head, tree.tail
    remaining_out = {}
    for j in edges:
        remaining_out[tail[j]] = remaining_out.get(tail[j], 0) + 1

    order: list[int] = []
    touched: set[int] = set()

    def search() -> bool:
        if len(order) == len(edges):
            return True
        current = tail[order[-1]] if order else None
        for j in edges:
            if j in order:
                continue
            t = tail[j]
            if order and not {t, head[j]} & touched:
                continue
            # Leaving a vertex with outgoing edges still unplaced breaks contiguity.
            if current is not None and t != current and remaining_out[current] > 0:
                continue
            saved = set(touched)
            order.append(j)
            touched.update((t, head[j]))
            remaining_out[t] -= 1
            if search():
                return True
            remaining_out[t] += 1
            touched.clear()
            touched.update(saved)
            order.pop()
        return False

    if not search():
        raise InvariantViolation(f"no sorting permutation found for {tree!r}")
    tau = {j: edges[pos] for pos, j in enumerate(order)}
    if not is_sorted_odd_even(sym_act(tau, tree)):
        raise InvariantViolation("sorting permutation search returned an unsorted tree")
    return tau


@dataclass(frozen=True)
class TreeView:
    """Label data of a tree with some superfluous labels forgotten.

    Vertices are plain ``(k, l, beta, sigma)`` tuples: forgetting labels can
    break sturdiness, so no specification invariants are imposed.
    """

    edges: tuple[int, ...]
    vertices: tuple[tuple[tuple[Label, ...], tuple[Label, ...], int, tuple[Label, ...]], ...]


def filter_view(tree: LabeledTree, keep: Iterable[int]) -> TreeView:
    """Replace each vertex sigma by ``sigma & {*'_j : j in keep}``."""
    keep = set(keep)
    return TreeView(
        tree.edges,
        tuple((v.k, v.l, v.beta, tuple(x for x in v.sigma if x.index in keep)) for v in tree.vertices),
    )
