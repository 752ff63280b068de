"""Orientation signs along smoothing sequences.

Signs are plain ints in ``{+1, -1}``. ``theta`` and ``zeta`` compare the
coherent orientation maps on a resolution component with the naive
factor-wise products; both are accumulated one contraction at a time along
the smoothing sequence of a tree.
"""

from __future__ import annotations

from math import comb
from typing import Iterable, Mapping, Sequence

from .errors import InvariantViolation, SpecError
from .spec_core import Label, check_ambient, node_out
from .trees import LabeledTree, contract_edge, smoothing_sequence

__all__ = [
    "parity_sign",
    "shuffle_sign",
    "perm_sign",
    "w_factor",
    "xi",
    "xi_check",
    "xi_factors",
    "theta",
    "zeta",
    "sorted_odd_even_theta",
    "sorted_odd_even_zeta",
    "sorted_odd_even_ff",
    "odd_vertex_count",
]


def parity_sign(n: int) -> int:
    """``(-1) ** n``."""
    return -1 if n % 2 else 1


def shuffle_sign(a: Sequence[Label], b: Sequence[Label]) -> int:
    """Sign of the permutation sorting the concatenation ``a + b``.

    >>> from opengw.spec_core import node_out as o
    >>> shuffle_sign([o(1), o(4)], [o(2), o(3)])
    1
    """
    a, b = list(a), list(b)
    for name, seq in (("a", a), ("b", b)):
        if seq != sorted(seq) or len(set(seq)) != len(seq):
            raise SpecError(f"shuffle operand {name} must be sorted and duplicate-free: {seq!r}")
    if set(a) & set(b):
        raise SpecError(f"shuffle operands overlap: {sorted(set(a) & set(b))!r}")
    inversions = sum(1 for x in a for y in b if x > y)
    return parity_sign(inversions)


def perm_sign(perm) -> int:
    """Sign of a permutation given as a dict or as a sequence of images."""
    if isinstance(perm, Mapping):
        keys = sorted(perm)
        images = [perm[x] for x in keys]
    else:
        images = list(perm)
        keys = sorted(images)
    if sorted(images) != keys or len(set(keys)) != len(keys):
        raise SpecError(f"{perm!r} is not a bijection")
    rank = {x: i for i, x in enumerate(keys)}
    p = [rank[y] for y in images]
    inversions = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return parity_sign(inversions)


def w_factor(m: int, beta1: int, beta2: int) -> int:
    """Gluing sign ``(-1)^(beta1*beta2)`` for odd ``m``, ``+1`` for even ``m``."""
    check_ambient(m)
    if m % 2 == 1:
        return parity_sign(beta1 * beta2)
    return 1


def xi_factors(step: LabeledTree, a: int, m: int) -> dict[str, int]:
    """The four sign factors of one smoothing step at edge ``a``.

    ``step`` has edges ``a..r``. Returns the factors under the keys
    ``position`` ((-1)^(r-a)), ``gluing`` ((-1)^(k' + (1+m) beta' beta'')),
    ``leibniz`` (sigma sizes before the merged vertex) and ``shuffle``.
    """
    check_ambient(m)
    edges = step.edges
    if not edges or edges[0] != a:
        raise SpecError(f"edge {a} is not the minimal edge of {list(edges)}")
    r = edges[-1]
    if edges != tuple(range(a, r + 1)):
        raise SpecError(f"smoothing step must have edges {a}..{r}, got {list(edges)}")
    tail = step.vertices[step.tail[a]]
    head = step.vertices[step.head[a]]
    k1, b1, b2 = len(tail.k), tail.beta, head.beta

    contracted = contract_edge(step, a)
    pos = [i for i, v in enumerate(contracted.vertices) if v not in step.vertices]
    if len(pos) != 1:
        raise InvariantViolation("could not locate the merged vertex after contraction")
    before = sum(len(v.sigma) for v in contracted.vertices[: pos[0]])

    return {
        "position": parity_sign(r - a),
        "gluing": parity_sign(k1 + (1 + m) * b1 * b2),
        "leibniz": parity_sign(before),
        "shuffle": shuffle_sign([x for x in tail.sigma if x != node_out(a)], head.sigma),
    }


def xi_check(step: LabeledTree, a: int, m: int) -> int:
    f = xi_factors(step, a, m)
    return f["position"] * f["gluing"]


def xi(step: LabeledTree, a: int, m: int) -> int:
    f = xi_factors(step, a, m)
    return f["position"] * f["gluing"] * f["leibniz"] * f["shuffle"]


def theta(tree: LabeledTree, m: int) -> int:
    """Product of ``xi`` over the smoothing sequence."""
    out = 1
    for a, step in enumerate(smoothing_sequence(tree)[:-1], start=1):
        out *= xi(step, a, m)
    return out


def zeta(tree: LabeledTree, m: int) -> int:
    """Product of ``xi_check`` over the smoothing sequence."""
    out = 1
    for a, step in enumerate(smoothing_sequence(tree)[:-1], start=1):
        out *= xi_check(step, a, m)
    return out


def odd_vertex_count(tree: LabeledTree) -> int:
    return sum(v.beta % 2 for v in tree.vertices)


def sorted_odd_even_theta(o: int, m: int) -> int:
    check_ambient(m)
    return parity_sign((1 + m) * comb(o, 2))


def sorted_odd_even_zeta(r: int, o: int, m: int) -> int:
    check_ambient(m)
    return parity_sign(comb(r, 2) + (1 + m) * comb(o, 2))


def sorted_odd_even_ff(r: int) -> int:
    return parity_sign(comb(r, 2))
