"""Exhaustive property checks over a bounded range of base specifications.

Each suite returns a :class:`SuiteResult` listing how many cases were
checked and a description of every failure. The CLI's ``verify`` command
is a thin wrapper around these.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from .boundary import Tag, boundary_components, wobbly_involution
from .invariants import invariant_degree_closed, invariant_degree_direct
from .signs import odd_vertex_count, sorted_odd_even_theta, sorted_odd_even_zeta, theta, zeta
from .spec_core import PreModuliSpec, is_basic
from .trees import (
    LabeledTree,
    contract_edge,
    enumerate_trees,
    is_odd_even,
    is_sorted_odd_even,
    max_resolution_depth,
    smoothing_sequence,
    sorting_permutation,
    sym_act,
)

__all__ = ["Bounds", "SuiteResult", "SUITES", "run_suite", "basic_bases", "trees_in_range"]


@dataclass(frozen=True)
class Bounds:
    max_k: int = 3
    max_l: int = 2
    max_beta: int = 3
    max_r: int = 3
    ms: tuple[int, ...] = (1, 2, 3)


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        if self.ok:
            return f"{self.name}: all {self.checked} cases agree"
        return f"{self.name}: {len(self.failures)} of {self.checked} cases disagree"


def basic_bases(b: Bounds) -> Iterator[PreModuliSpec]:
    for k, l, beta in itertools.product(range(b.max_k + 1), range(b.max_l + 1), range(b.max_beta + 1)):
        pre = PreModuliSpec(range(1, k + 1), range(1, l + 1), beta)
        if is_basic(pre):
            yield pre


def trees_in_range(b: Bounds) -> Iterator[tuple[PreModuliSpec, int, LabeledTree]]:
    for base in basic_bases(b):
        for r in range(b.max_r + 1):
            for t in enumerate_trees(base, range(1, r + 1)):
                yield base, r, t


def _sorted_odd_even(b: Bounds) -> SuiteResult:
    res = SuiteResult("sorted-odd-even")
    for _, r, t in trees_in_range(b):
        if not is_sorted_odd_even(t):
            continue
        o = odd_vertex_count(t)
        for m in b.ms:
            res.checked += 1
            got = (theta(t, m), zeta(t, m))
            want = (sorted_odd_even_theta(o, m), sorted_odd_even_zeta(r, o, m))
            if got != want:
                res.failures.append(f"m={m} {t!r}: (theta, zeta)={got}, closed form {want}")
    return res


def _smoothing_closure(b: Bounds) -> SuiteResult:
    res = SuiteResult("smoothing-closure")
    cache: dict[tuple, set] = {}
    for base, r, t in trees_in_range(b):
        if is_sorted_odd_even(t):
            for a, step in enumerate(smoothing_sequence(t)[1:], start=1):
                res.checked += 1
                if not is_sorted_odd_even(step):
                    res.failures.append(f"step {a} of {t!r} is not sorted odd-even: {step!r}")
        for e in t.edges:
            res.checked += 1
            reduced = tuple(j for j in t.edges if j != e)
            key = (base, reduced)
            if key not in cache:
                cache[key] = set(enumerate_trees(base, reduced))
            if contract_edge(t, e) not in cache[key]:
                res.failures.append(f"contracting edge {e} of {t!r} leaves the enumeration")
    return res


def _depth_bound(b: Bounds) -> SuiteResult:
    res = SuiteResult("depth-bound")
    for base in basic_bases(b):
        depth = max_resolution_depth(base)
        for r in range(depth + 1, max(b.max_r, depth + 1) + 1):
            res.checked += 1
            if enumerate_trees(base, range(1, r + 1)):
                res.failures.append(f"{base!r} has trees at r={r} > {depth}")
    return res


def _involution(b: Bounds) -> SuiteResult:
    res = SuiteResult("involution")
    for _, r, t in trees_in_range(b):
        for c in boundary_components(t, r + 1):
            if c.tag is not Tag.WOBBLY:
                continue
            res.checked += 1
            image = wobbly_involution(c)
            if wobbly_involution(image) != c:
                res.failures.append(f"not an involution at {c!r}")
            if image == c:
                res.failures.append(f"fixed point at {c!r}")
            if image.erase_order() != c.erase_order():
                res.failures.append(f"erasing order does not equalize {c!r}")
    return res


def _degree(b: Bounds) -> SuiteResult:
    res = SuiteResult("degree")
    for k, beta, m in itertools.product(range(b.max_k + 1), range(b.max_beta + 1), b.ms):
        res.checked += 1
        d1 = invariant_degree_direct(k, (), beta, m)
        d2 = invariant_degree_closed(k, (), beta, m)
        if d1 != d2:
            res.failures.append(f"k={k} beta={beta} m={m}: direct {d1}, closed {d2}")
    return res


def _sym_action(b: Bounds) -> SuiteResult:
    res = SuiteResult("sym-action")
    for base in basic_bases(b):
        for r in range(b.max_r + 1):
            edges = tuple(range(1, r + 1))
            trees = enumerate_trees(base, edges)
            # maps each tree to its enumerated instance, so later comparisons are by identity
            tree_set = {t: t for t in trees}
            perms = [tuple(p) for p in itertools.permutations(edges)]
            # images[p][t] = sym_act(p, t), computed directly for every tree in the set
            images = {}
            for p in perms:
                mapping = dict(zip(edges, p))
                images[p] = {}
                for t in trees:
                    image = sym_act(mapping, t)
                    images[p][t] = tree_set.get(image, image)
            identity = edges
            for t in trees:
                res.checked += 1
                if images[identity][t] != t:
                    res.failures.append(f"identity moves {t!r}")
                for p in perms:
                    if images[p][t] not in tree_set:
                        res.failures.append(f"{p} maps {t!r} outside the enumeration")
                        continue
                    for q in perms:
                        # relabel by q, then by p: edge j ends up as p[q[j]]
                        pq = tuple(p[q[i] - 1] for i in range(r))
                        inner = images[q][t]
                        if inner not in tree_set or images[p][inner] != images[pq][t]:
                            res.failures.append(f"composition law fails for {p}, {q} on {t!r}")
                if is_odd_even(t):
                    tau = sorting_permutation(t)
                    if not is_sorted_odd_even(sym_act(tau, t)):
                        res.failures.append(f"sorting permutation fails on {t!r}")
    return res


SUITES: dict[str, Callable[[Bounds], SuiteResult]] = {
    "sorted-odd-even": _sorted_odd_even,
    "smoothing-closure": _smoothing_closure,
    "depth-bound": _depth_bound,
    "involution": _involution,
    "degree": _degree,
    "sym-action": _sym_action,
}


def run_suite(name: str, bounds: Bounds) -> SuiteResult:
    return SUITES[name](bounds)
