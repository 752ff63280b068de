"""Bookkeeping for equivariant open Gromov-Witten invariants ``I(k, l, beta)``.

Only metadata is computed here: the degree of an invariant by two routes,
the rules that force it to vanish, and the ledger of resolution trees (with
their orientation signs) over which the invariant's integral is summed.
Numeric values need fixed-point data that this package does not model.

For ``m = 1`` the degree-zero invariants are twice Welschinger's signed
counts of real rational curves; reports carry that as an annotation only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import factorial
from typing import Iterable, Optional

from .errors import SpecError
from .signs import theta, zeta
from .spec_core import basic_spec, check_ambient
from .trees import LabeledTree, enumerate_trees, max_resolution_depth

__all__ = [
    "ConstraintTuple",
    "Reason",
    "Vanishing",
    "InvariantDescriptor",
    "LedgerLevel",
    "omega_degree",
    "invariant_degree_direct",
    "invariant_degree_closed",
    "is_trivially_zero",
    "resolution_ledger",
    "describe",
    "WELSCHINGER_NOTE",
]

WELSCHINGER_NOTE = (
    "m=1: degree-zero invariants equal twice Welschinger's signed count of real rational curves"
)


def _nonneg(x, name: str) -> int:
    if not isinstance(x, int) or isinstance(x, bool) or x < 0:
        raise SpecError(f"{name} must be a non-negative integer, got {x!r}")
    return x


@dataclass(frozen=True)
class ConstraintTuple:
    """Interior constraints ``l_vec = (l_0, l_1, ...)``: ``l_d`` copies of ``H^d``.

    Trailing zeros are dropped, so the value does not depend on how far the
    vector was padded.
    """

    l_vec: tuple[int, ...] = ()

    def __post_init__(self):
        vec = [_nonneg(x, "l_vec entry") for x in self.l_vec]
        while vec and vec[-1] == 0:
            vec.pop()
        object.__setattr__(self, "l_vec", tuple(vec))

    @classmethod
    def from_d(cls, ds: Iterable[int]) -> "ConstraintTuple":
        """From the exponents ``(d_1, ..., d_l)`` in any order."""
        ds = [_nonneg(d, "constraint exponent") for d in ds]
        vec = [0] * (max(ds) + 1 if ds else 0)
        for d in ds:
            vec[d] += 1
        return cls(tuple(vec))

    @property
    def d(self) -> tuple[int, ...]:
        return tuple(d for d, n in enumerate(self.l_vec) for _ in range(n))

    @property
    def l(self) -> int:
        return sum(self.l_vec)

    def padded(self, m: int) -> list[int]:
        self.check(m)
        return list(self.l_vec) + [0] * (2 * m + 1 - len(self.l_vec))

    def check(self, m: int) -> None:
        check_ambient(m)
        if len(self.l_vec) > 2 * m + 1:
            raise SpecError(f"constraint H^{len(self.l_vec) - 1} exceeds H^{2 * m} for m={m}")


def _constraints(c) -> ConstraintTuple:
    if isinstance(c, ConstraintTuple):
        return c
    if c is None:
        return ConstraintTuple()
    return ConstraintTuple(tuple(c))


def omega_degree(k: int, constraints, m: int) -> int:
    """``2m*k + sum_j 2*d_j``: ``k`` point classes on L and the ``H^{d_j}``."""
    c = _constraints(constraints)
    c.check(m)
    return 2 * m * _nonneg(k, "k") + sum(2 * d for d in c.d)


def invariant_degree_direct(k: int, constraints, beta: int, m: int) -> int:
    """``omega_degree`` minus the dimension of the moduli space."""
    c = _constraints(constraints)
    dim = 2 * m + (2 * m + 1) * _nonneg(beta, "beta") - 3 + k + 2 * c.l
    return omega_degree(k, c, m) - dim


def invariant_degree_closed(k: int, constraints, beta: int, m: int) -> int:
    """``sum_j (2j-1) l_j + (2m-1) k - (2m+1)(beta+1) + 4``.

    Equals :func:`invariant_degree_direct` plus ``l``.
    """
    c = _constraints(constraints)
    c.check(m)
    _nonneg(k, "k")
    _nonneg(beta, "beta")
    return sum((2 * j - 1) * n for j, n in enumerate(c.l_vec)) + (2 * m - 1) * k - (2 * m + 1) * (beta + 1) + 4


class Reason(Enum):
    UNSTABLE = "Unstable"
    WRONG_PARITY = "WrongParity"
    NEGATIVE_DEGREE = "NegativeDegree"


@dataclass(frozen=True)
class Vanishing:
    flag: bool
    reason: Optional[Reason] = None

    def __bool__(self):
        return self.flag

    def to_json(self) -> dict:
        return {"flag": self.flag, "reason": self.reason.value if self.reason else None}


def is_trivially_zero(k: int, constraints, beta: int, m: int) -> Vanishing:
    """Vanishing by stability, then orientability, then negative degree."""
    c = _constraints(constraints)
    _nonneg(k, "k")
    _nonneg(beta, "beta")
    if k + 2 * c.l + 3 * beta < 3:
        return Vanishing(True, Reason.UNSTABLE)
    if (k + beta) % 2 == 0:
        return Vanishing(True, Reason.WRONG_PARITY)
    if invariant_degree_direct(k, c, beta, m) < 0:
        return Vanishing(True, Reason.NEGATIVE_DEGREE)
    return Vanishing(False)


@dataclass(frozen=True)
class LedgerLevel:
    """Trees with ``r`` edges and their signs; ``weight`` is ``1/r!``."""

    r: int
    weight: Fraction
    entries: tuple[tuple[LabeledTree, int, int], ...]

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "weight": f"{self.weight.numerator}/{self.weight.denominator}",
            "trees": [{"tree": t.to_json(), "theta": th, "zeta": ze} for t, th, ze in self.entries],
        }


def resolution_ledger(k: int, constraints, beta: int, m: int) -> list[LedgerLevel]:
    """One level per ``r`` from 0 to the depth bound."""
    c = _constraints(constraints)
    c.check(m)
    base = basic_spec(k, c.l, beta)
    levels = []
    for r in range(max_resolution_depth(base) + 1):
        trees = enumerate_trees(base, range(1, r + 1))
        entries = tuple((t, theta(t, m), zeta(t, m)) for t in trees)
        levels.append(LedgerLevel(r, Fraction(1, factorial(r)), entries))
    return levels


@dataclass(frozen=True)
class InvariantDescriptor:
    k: int
    constraints: ConstraintTuple
    beta: int
    m: int
    deg_direct: int
    deg_closed: int
    zero: Vanishing
    notes: tuple[str, ...] = field(default=())

    @property
    def degree(self) -> int:
        return self.deg_direct

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "l_vec": self.constraints.padded(self.m),
            "beta": self.beta,
            "m": self.m,
            "deg_direct": self.deg_direct,
            "deg_closed": self.deg_closed,
            "zero": self.zero.to_json(),
            "notes": list(self.notes),
        }


def describe(k: int, constraints, beta: int, m: int) -> InvariantDescriptor:
    c = _constraints(constraints)
    return InvariantDescriptor(
        k,
        c,
        beta,
        m,
        invariant_degree_direct(k, c, beta, m),
        invariant_degree_closed(k, c, beta, m),
        is_trivially_zero(k, c, beta, m),
        (WELSCHINGER_NOTE,) if m == 1 else (),
    )
