"""Generate-and-filter oracle for resolution trees.

Independent of the package's recursion: every tree shape on ``r + 1``
vertices (via Pruefer codes), every labeling and orientation of its edges,
and every distribution of the plain labels and the degree over vertices.
Candidates are filtered by the per-vertex conditions (stable underlying
pre-specification, orientable) and quotiented by isomorphism. Vertices
carry fully distinguishing label data, so the frozenset of vertex tuples is
a complete invariant.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

# Vertex tuple: (plain k, node-in k, l, beta, node-out sigma), each label set a sorted tuple of ints.


def pruefer_trees(n: int):
    """Edge lists of all labeled trees on vertices ``0..n-1``."""
    if n == 1:
        yield []
        return
    if n == 2:
        yield [(0, 1)]
        return
    for code in itertools.product(range(n), repeat=n - 2):
        degree = [1] * n
        for x in code:
            degree[x] += 1
        edges = []
        for x in code:
            leaf = min(i for i in range(n) if degree[i] == 1)
            edges.append((leaf, x))
            degree[leaf] -= 1
            degree[x] -= 1
        u, v = [i for i in range(n) if degree[i] == 1]
        edges.append((u, v))
        yield edges


@lru_cache(maxsize=None)
def skeletons(rho: tuple[int, ...]) -> tuple[tuple[tuple[tuple[int, ...], tuple[int, ...]], ...], ...]:
    """Oriented, edge-labeled trees up to isomorphism.

    Each vertex is ``(node-in indices, node-out indices)``; edge ``j`` puts
    ``j`` into the node-out set of its tail and the node-in set of its head.
    """
    n = len(rho) + 1
    seen = set()
    for edges in pruefer_trees(n):
        for labels in itertools.permutations(rho):
            for flips in itertools.product((False, True), repeat=len(edges)):
                ins = [[] for _ in range(n)]
                outs = [[] for _ in range(n)]
                for (u, v), j, flip in zip(edges, labels, flips):
                    tail, head = (v, u) if flip else (u, v)
                    outs[tail].append(j)
                    ins[head].append(j)
                verts = frozenset((tuple(sorted(a)), tuple(sorted(b))) for a, b in zip(ins, outs))
                seen.add(verts)
    return tuple(tuple(sorted(s)) for s in sorted(seen, key=sorted))


def _assignments(items, n):
    """Every function from ``items`` to ``range(n)``, as per-vertex tuples."""
    for choice in itertools.product(range(n), repeat=len(items)):
        buckets = [[] for _ in range(n)]
        for x, c in zip(items, choice):
            buckets[c].append(x)
        yield [tuple(b) for b in buckets]


def _compositions(total, n):
    if n == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, n - 1):
            yield (first,) + rest


def oracle_trees(k: int, l: int, beta: int, rho) -> set[frozenset]:
    """All trees for the base with plain labels ``1..k``, ``1..l`` and degree ``beta``."""
    rho = tuple(sorted(rho))
    out = set()
    ks, ls = tuple(range(1, k + 1)), tuple(range(1, l + 1))
    for skel in skeletons(rho):
        n = len(skel)
        for betas in _compositions(beta, n):
            for kdist in _assignments(ks, n):
                kcount = [len(kdist[i]) + len(skel[i][0]) for i in range(n)]
                if any((kcount[i] + betas[i]) % 2 == 0 for i in range(n)):
                    continue
                for ldist in _assignments(ls, n):
                    if all(kcount[i] + 2 * len(ldist[i]) + 3 * betas[i] >= 3 for i in range(n)):
                        out.add(
                            frozenset(
                                (kdist[i], skel[i][0], ldist[i], betas[i], skel[i][1]) for i in range(n)
                            )
                        )
    return out


def tree_key(tree) -> frozenset:
    """The oracle's canonical form of a package ``LabeledTree``."""
    verts = []
    for v in tree.vertices:
        plain_k = tuple(x.index for x in v.k if x.is_plain)
        in_k = tuple(x.index for x in v.k if x.is_node_in)
        verts.append((plain_k, in_k, tuple(x.index for x in v.l), v.beta, tuple(x.index for x in v.sigma)))
    return frozenset(verts)
