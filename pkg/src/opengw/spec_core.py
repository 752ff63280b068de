"""Labels and moduli specifications.

A moduli specification ``((k, l, beta), sigma)`` indexes a moduli space of
stable disc maps: ``k`` are the orienting boundary labels, ``l`` the interior
labels, ``beta`` the disc degree and ``sigma`` the superfluous boundary labels
left behind by resolved nodes.

Label sets are stored as sorted, duplicate-free tuples so that every
sign-relevant ordering is canonical.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

from .errors import InvariantViolation, SpecError

__all__ = [
    "PLAIN",
    "NODE_IN",
    "NODE_OUT",
    "Label",
    "plain",
    "node_in",
    "node_out",
    "PreModuliSpec",
    "ModuliSpec",
    "Kind",
    "SplitKind",
    "check_ambient",
    "is_stable",
    "is_orientable",
    "is_basic",
    "classify",
    "combined",
    "dim_moduli",
    "split_boundary",
    "iter_splits",
    "basic_spec",
]

MAX_BETA = 2**31 - 1

# Label kinds; the numeric value is the primary sort key.
PLAIN = 0
NODE_IN = 1
NODE_OUT = 2

_KIND_NAMES = {PLAIN: "plain", NODE_IN: "node_in", NODE_OUT: "node_out"}


@dataclass(frozen=True, order=True)
class Label:
    """A marked point: plain ``n``, node head ``*''_i`` or node tail ``*'_i``.

    Ordering is by ``(kind, index)``, so plain labels precede node-in labels
    and node-out labels compare among themselves by index.
    """

    kind: int
    index: int

    def __post_init__(self):
        if self.kind not in _KIND_NAMES:
            raise SpecError(f"unknown label kind {self.kind!r}")
        if not isinstance(self.index, int) or isinstance(self.index, bool) or self.index < 1:
            raise SpecError(f"label index must be a positive integer, got {self.index!r}")

    @property
    def is_plain(self) -> bool:
        return self.kind == PLAIN

    @property
    def is_node_in(self) -> bool:
        return self.kind == NODE_IN

    @property
    def is_node_out(self) -> bool:
        return self.kind == NODE_OUT

    def relabel(self, mapping) -> "Label":
        """Send node labels ``*_j`` to ``*_{mapping[j]}``; plain labels are fixed."""
        if self.kind == PLAIN or self.index not in mapping:
            return self
        return Label(self.kind, mapping[self.index])

    def to_json(self) -> dict:
        return {_KIND_NAMES[self.kind]: self.index}

    @classmethod
    def from_json(cls, obj) -> "Label":
        if isinstance(obj, int) and not isinstance(obj, bool):
            return cls(PLAIN, obj)
        if not isinstance(obj, dict) or len(obj) != 1:
            raise SpecError(f"label must be an object with one key, got {obj!r}")
        (key, value), = obj.items()
        for kind, name in _KIND_NAMES.items():
            if key == name:
                if not isinstance(value, int) or isinstance(value, bool):
                    raise SpecError(f"label {key!r} needs an integer index, got {value!r}")
                return cls(kind, value)
        raise SpecError(f"unknown label key {key!r}")

    def __repr__(self):
        if self.kind == PLAIN:
            return str(self.index)
        if self.kind == NODE_IN:
            return f"*''{self.index}"
        return f"*'{self.index}"


def plain(n: int) -> Label:
    return Label(PLAIN, n)


def node_in(i: int) -> Label:
    return Label(NODE_IN, i)


def node_out(i: int) -> Label:
    return Label(NODE_OUT, i)


def _label_tuple(labels: Iterable, field: str, allowed: tuple[int, ...]) -> tuple[Label, ...]:
    out = []
    for x in labels:
        if isinstance(x, int) and not isinstance(x, bool):
            x = plain(x)
        if not isinstance(x, Label):
            raise SpecError(f"{field}: expected a Label, got {x!r}")
        if x.kind not in allowed:
            raise SpecError(f"{field}: label {x!r} of kind {_KIND_NAMES[x.kind]} not allowed")
        out.append(x)
    result = tuple(sorted(out))
    if len(set(result)) != len(result):
        raise SpecError(f"{field}: duplicate labels in {list(out)!r}")
    return result


def _check_beta(beta) -> int:
    if not isinstance(beta, int) or isinstance(beta, bool) or beta < 0:
        raise SpecError(f"beta must be a non-negative integer, got {beta!r}")
    if beta > MAX_BETA:
        raise SpecError(f"beta {beta} exceeds {MAX_BETA}")
    return beta


def check_ambient(m) -> int:
    """Validate the half-dimension ``m`` of ``L = RP^{2m}``."""
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise SpecError(f"m must be a positive integer, got {m!r}")
    return m


@dataclass(frozen=True)
class PreModuliSpec:
    """The triple ``(k, l, beta)``.

    ``k`` may hold plain and node-in labels, ``l`` plain labels only.
    Plain integers are accepted and converted to plain labels.
    """

    k: tuple[Label, ...]
    l: tuple[Label, ...]
    beta: int

    def __init__(self, k=(), l=(), beta=0):
        object.__setattr__(self, "k", _label_tuple(k, "k", (PLAIN, NODE_IN)))
        object.__setattr__(self, "l", _label_tuple(l, "l", (PLAIN,)))
        object.__setattr__(self, "beta", _check_beta(beta))

    def __repr__(self):
        return f"({list(self.k)}, {list(self.l)}, {self.beta})"


@dataclass(frozen=True)
class ModuliSpec:
    """A pair ``(pre, sigma)`` with ``pre`` orientable and combined stability.

    Construction validates every type invariant and raises ``SpecError``.
    """

    pre: PreModuliSpec
    sigma: tuple[Label, ...]

    def __init__(self, pre: PreModuliSpec, sigma=()):
        if not isinstance(pre, PreModuliSpec):
            raise SpecError(f"pre must be a PreModuliSpec, got {pre!r}")
        sigma = _label_tuple(sigma, "sigma", (NODE_OUT,))
        object.__setattr__(self, "pre", pre)
        object.__setattr__(self, "sigma", sigma)
        if not is_orientable(pre):
            raise SpecError(f"{self!r}: k + beta must be odd")
        n = len(pre.k) + len(sigma) + 2 * len(pre.l) + 3 * pre.beta
        if n < 3:
            raise SpecError(f"{self!r}: k + |sigma| + 2l + 3beta = {n} < 3")

    def __hash__(self):
        try:
            return self.__dict__["_hash_cache"]
        except KeyError:
            h = hash((self.pre.k, self.pre.l, self.pre.beta, self.sigma))
            object.__setattr__(self, "_hash_cache", h)
            return h

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, ModuliSpec):
            return NotImplemented
        return hash(self) == hash(other) and self.sigma == other.sigma and self.pre == other.pre

    @classmethod
    def make(cls, k=(), l=(), beta=0, sigma=()) -> "ModuliSpec":
        return cls(PreModuliSpec(k, l, beta), sigma)

    @property
    def k(self) -> tuple[Label, ...]:
        return self.pre.k

    @property
    def l(self) -> tuple[Label, ...]:
        return self.pre.l

    @property
    def beta(self) -> int:
        return self.pre.beta

    @property
    def is_sturdy(self) -> bool:
        return is_stable(self.pre)

    def labels(self) -> tuple[Label, ...]:
        return self.k + self.l + self.sigma

    def node_indices(self) -> set[int]:
        return {x.index for x in self.k + self.sigma if not x.is_plain}

    def relabel(self, mapping) -> "ModuliSpec":
        return ModuliSpec.make(
            [x.relabel(mapping) for x in self.k],
            self.l,
            self.beta,
            [x.relabel(mapping) for x in self.sigma],
        )

    def to_json(self) -> dict:
        return {
            "k": [x.to_json() for x in self.k],
            "l": [x.to_json() for x in self.l],
            "beta": self.beta,
            "sigma": [x.to_json() for x in self.sigma],
        }

    @classmethod
    def from_json(cls, obj) -> "ModuliSpec":
        if not isinstance(obj, dict):
            raise SpecError(f"moduli specification must be an object, got {obj!r}")
        unknown = set(obj) - {"k", "l", "beta", "sigma"}
        if unknown:
            raise SpecError(f"unknown field(s) {sorted(unknown)} in moduli specification")
        for field in ("k", "l", "sigma"):
            if not isinstance(obj.get(field, []), list):
                raise SpecError(f"field {field!r} must be a list")
        if "beta" not in obj:
            raise SpecError("field 'beta' is required")
        return cls.make(
            [Label.from_json(x) for x in obj.get("k", [])],
            [Label.from_json(x) for x in obj.get("l", [])],
            obj["beta"],
            [Label.from_json(x) for x in obj.get("sigma", [])],
        )

    def __repr__(self):
        return f"({self.pre!r}, {list(self.sigma)})"


class Kind(Enum):
    STURDY = "sturdy"
    WOBBLY = "wobbly"


class SplitKind(Enum):
    STURDY_STURDY = "sturdy"
    ONE_WOBBLY = "wobbly"


def is_stable(pre: PreModuliSpec) -> bool:
    return len(pre.k) + 2 * len(pre.l) + 3 * pre.beta >= 3


def is_orientable(pre: PreModuliSpec) -> bool:
    return (len(pre.k) + pre.beta) % 2 == 1


def is_basic(pre: PreModuliSpec) -> bool:
    return is_stable(pre) and is_orientable(pre)


def basic_spec(k: int, l: int, beta: int) -> PreModuliSpec:
    """The basic specification ``([k], [l], beta)`` on plain labels."""
    pre = PreModuliSpec(range(1, k + 1), range(1, l + 1), beta)
    if not is_basic(pre):
        raise SpecError(f"({k}, {l}, {beta}) is not basic (needs k+2l+3beta >= 3 and k+beta odd)")
    return pre


def classify(spec: ModuliSpec) -> Kind:
    if not isinstance(spec, ModuliSpec):
        raise SpecError(f"expected a ModuliSpec, got {spec!r}")
    if is_stable(spec.pre):
        return Kind.STURDY
    # Unstable but combined-stable and orientable forces this shape.
    if not (len(spec.k) == 1 and not spec.l and spec.beta == 0 and len(spec.sigma) >= 2):
        raise InvariantViolation(f"wobbly specification {spec!r} has an unexpected shape")
    return Kind.WOBBLY


def combined(spec: ModuliSpec) -> PreModuliSpec:
    """``(k + sigma, l, beta)``; sigma labels are kept as node-out labels."""
    return _Combined(spec.k + spec.sigma, spec.l, spec.beta)


@dataclass(frozen=True)
class _Combined(PreModuliSpec):
    # k may carry node-out labels here, so bypass the usual kind check.
    def __init__(self, k, l, beta):
        object.__setattr__(self, "k", _label_tuple(k, "k", (PLAIN, NODE_IN, NODE_OUT)))
        object.__setattr__(self, "l", _label_tuple(l, "l", (PLAIN,)))
        object.__setattr__(self, "beta", _check_beta(beta))


def dim_moduli(spec: ModuliSpec, m: int) -> int:
    check_ambient(m)
    return 2 * m + (2 * m + 1) * spec.beta - 3 + len(spec.k) + len(spec.sigma) + 2 * len(spec.l)


def _subsets(items: tuple) -> Iterator[tuple[tuple, tuple]]:
    n = len(items)
    for mask in range(1 << n):
        left = tuple(items[i] for i in range(n) if mask >> i & 1)
        right = tuple(items[i] for i in range(n) if not mask >> i & 1)
        yield left, right


def _try_spec(k, l, beta, sigma):
    try:
        return ModuliSpec.make(k, l, beta, sigma)
    except SpecError:
        return None


def iter_splits(spec: ModuliSpec, r: int) -> Iterator[tuple[ModuliSpec, ModuliSpec, SplitKind]]:
    """Yield every valid boundary pair of ``spec`` at a new node ``r``.

    Only requires that ``*'_r`` and ``*''_r`` are not already present.
    ``spec`` must be sturdy: a wobbly parent such as ``(([1], [], 0), [*'1,
    *'2, *'3])`` has splits with both sides wobbly, which the two split
    kinds cannot express.
    """
    if not isinstance(r, int) or isinstance(r, bool) or r < 1:
        raise SpecError(f"node index must be a positive integer, got {r!r}")
    if not spec.is_sturdy:
        raise SpecError(f"boundary pairs are enumerated for sturdy specifications only, got {spec!r}")
    if node_in(r) in spec.k or node_out(r) in spec.sigma:
        raise SpecError(f"node index {r} collides with labels of {spec!r}")
    for k1, k2 in _subsets(spec.k):
        for l1, l2 in _subsets(spec.l):
            for s1, s2 in _subsets(spec.sigma):
                for b1 in range(spec.beta + 1):
                    b2 = spec.beta - b1
                    # Cheap parity filter before building specs.
                    if (len(k1) + b1) % 2 == 0 or (len(k2) + 1 + b2) % 2 == 0:
                        continue
                    left = _try_spec(k1, l1, b1, s1 + (node_out(r),))
                    if left is None:
                        continue
                    right = _try_spec(k2 + (node_in(r),), l2, b2, s2)
                    if right is None:
                        continue
                    wobbly = (not left.is_sturdy) + (not right.is_sturdy)
                    if wobbly == 2:
                        raise InvariantViolation(f"both sides wobbly: {left!r}, {right!r}")
                    # classify() asserts the wobbly shape.
                    classify(left)
                    classify(right)
                    kind = SplitKind.STURDY_STURDY if wobbly == 0 else SplitKind.ONE_WOBBLY
                    yield left, right, kind


def split_boundary(spec: ModuliSpec, r: int) -> list[tuple[ModuliSpec, ModuliSpec, SplitKind]]:
    """All pairs ``(s', s'')`` with ``s'`` holding ``*'_r`` and ``s''`` holding ``*''_r``.

    The label sets, interior labels and degree of ``spec`` are distributed
    over the two sides in every possible way; pairs where either side fails
    the specification invariants are dropped.

    >>> s = ModuliSpec.make([1, 2], [], 1)
    >>> [kind.value for _, _, kind in split_boundary(s, 1)]
    ['sturdy']
    """
    return list(iter_splits(spec, r))
