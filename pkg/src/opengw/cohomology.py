"""Equivariant cohomology of CP^2m as exact integer polynomials.

Generators are ``H`` (the equivariant hyperplane class), the weights
``a0 .. a{2m}`` and the real-torus weights ``l1 .. lm``, all of degree 2.
The ring is the quotient by the monic relation ``prod_i (H - a_i)``, so
every class has a unique representative of H-degree at most ``2m``.

Polynomials use a sparse ``{exponent vector: int}`` map. The text form is
a signed sum of terms such as ``-3*H^2*a0*l1^2``.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Mapping, Union

from .errors import SpecError
from .spec_core import check_ambient

__all__ = [
    "EquivariantPolynomial",
    "MIXED",
    "variables",
    "gen",
    "const",
    "add",
    "sub",
    "negate",
    "mul",
    "degree",
    "relation_poly",
    "normal_form",
    "restrict_weights",
    "parse_poly",
    "format_poly",
]


class _Mixed:
    """Marker returned by :func:`degree` for inhomogeneous input."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "MIXED"


MIXED = _Mixed()


@lru_cache(maxsize=None)
def variables(m: int) -> tuple[str, ...]:
    """Generator names in monomial order: ``H, a0..a{2m}, l1..lm``."""
    check_ambient(m)
    return ("H",) + tuple(f"a{i}" for i in range(2 * m + 1)) + tuple(f"l{i}" for i in range(1, m + 1))


@lru_cache(maxsize=None)
def _var_index(m: int) -> dict[str, int]:
    return {name: i for i, name in enumerate(variables(m))}


class EquivariantPolynomial:
    __slots__ = ("m", "terms", "_hash")

    def __init__(self, m: int, terms: Mapping[tuple[int, ...], int] = None):
        check_ambient(m)
        n = len(variables(m))
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != n or any(not isinstance(e, int) or e < 0 for e in exps):
                raise SpecError(f"bad exponent vector {exps!r} for m={m}")
            if not isinstance(c, int) or isinstance(c, bool):
                raise SpecError(f"coefficients must be integers, got {c!r}")
            if c:
                clean[exps] = c
        self.m = m
        self.terms = clean
        self._hash = None

    def _check(self, other) -> "EquivariantPolynomial":
        if isinstance(other, int) and not isinstance(other, bool):
            return const(other, self.m)
        if not isinstance(other, EquivariantPolynomial):
            return NotImplemented
        if other.m != self.m:
            raise SpecError(f"ambient mismatch: m={self.m} vs m={other.m}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return EquivariantPolynomial(self.m, out)

    __radd__ = __add__

    def __neg__(self):
        return EquivariantPolynomial(self.m, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return EquivariantPolynomial(self.m, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise SpecError(f"exponent must be a non-negative integer, got {n!r}")
        out = const(1, self.m)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = const(other, self.m)
        if not isinstance(other, EquivariantPolynomial):
            return NotImplemented
        return self.m == other.m and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.m, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def h_degree(self) -> int:
        """Largest exponent of H, or -1 for the zero polynomial."""
        return max((e[0] for e in self.terms), default=-1)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"EquivariantPolynomial(m={self.m}, {format_poly(self)!r})"


Poly = EquivariantPolynomial


def const(c: int, m: int) -> Poly:
    return Poly(m, {(0,) * len(variables(m)): c})


def gen(name: str, m: int) -> Poly:
    """The generator called ``name`` (``"H"``, ``"a0"``, ``"l1"``, ...)."""
    idx = _var_index(m).get(name)
    if idx is None:
        raise SpecError(f"unknown generator {name!r} for m={m}")
    e = [0] * len(variables(m))
    e[idx] = 1
    return Poly(m, {tuple(e): 1})


def add(p: Poly, q: Poly) -> Poly:
    return p + q


def sub(p: Poly, q: Poly) -> Poly:
    return p - q


def negate(p: Poly) -> Poly:
    return -p


def mul(p: Poly, q: Poly) -> Poly:
    return p * q


def degree(p: Poly) -> Union[int, _Mixed, None]:
    """``2 * total exponent`` if homogeneous, ``MIXED`` if not, ``None`` for zero."""
    totals = {sum(e) for e in p.terms}
    if not totals:
        return None
    if len(totals) > 1:
        return MIXED
    return 2 * totals.pop()


@lru_cache(maxsize=None)
def relation_poly(m: int) -> Poly:
    """``prod_{i=0}^{2m} (H - a_i)``, expanded."""
    h = gen("H", m)
    out = const(1, m)
    for i in range(2 * m + 1):
        out = out * (h - gen(f"a{i}", m))
    return out


@lru_cache(maxsize=None)
def _reduced_power(m: int, n: int) -> Poly:
    """Normal form of ``H^n``."""
    top = 2 * m + 1
    if n < top:
        return gen("H", m) ** n
    prev = _reduced_power(m, n - 1) * gen("H", m)
    # prev has H-degree at most top; one subtraction of the monic relation clears it.
    lead = _h_coefficient(prev, top)
    return prev - lead * relation_poly(m)


def _h_coefficient(p: Poly, a: int) -> Poly:
    out = {}
    for e, c in p.terms.items():
        if e[0] == a:
            out[(0,) + e[1:]] = c
    return Poly(p.m, out)


def normal_form(p: Poly) -> Poly:
    """Remainder of ``p`` on division by ``relation_poly`` in the variable H."""
    top = 2 * p.m + 1
    if p.h_degree() < top:
        return p
    out: dict[tuple[int, ...], int] = {}
    for e, c in p.terms.items():
        if e[0] < top:
            out[e] = out.get(e, 0) + c
            continue
        rest = (0,) + e[1:]
        for e2, c2 in _reduced_power(p.m, e[0]).terms.items():
            key = tuple(a + b for a, b in zip(rest, e2))
            out[key] = out.get(key, 0) + c * c2
    return Poly(p.m, out)


@lru_cache(maxsize=None)
def _weight_images(m: int) -> tuple[Poly, ...]:
    images = [const(0, m)]
    for i in range(1, 2 * m + 1):
        if i <= m:
            images.append(gen(f"l{i}", m))
        else:
            images.append(-gen(f"l{2 * m + 1 - i}", m))
    return tuple(images)


def restrict_weights(p: Poly) -> Poly:
    """Substitute ``a0 -> 0``, ``a_i -> l_i`` and ``a_{2m+1-i} -> -l_i``."""
    m = p.m
    images = _weight_images(m)
    n_alpha = 2 * m + 1
    out = const(0, m)
    for e, c in p.terms.items():
        alpha = e[1 : 1 + n_alpha]
        stripped = (e[0],) + (0,) * n_alpha + e[1 + n_alpha :]
        term = Poly(m, {stripped: c})
        for img, k in zip(images, alpha):
            if k:
                term = term * img**k
        out = out + term
    return out


def format_poly(p: Poly) -> str:
    """Canonical text: terms in decreasing lexicographic exponent order."""
    if not p.terms:
        return "0"
    names = variables(p.m)
    parts = []
    for e in sorted(p.terms, reverse=True):
        c = p.terms[e]
        factors = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k]
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]\w*)|(\^)|(\*)|([+-]))")


def _tokens(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise SpecError(f"unexpected character {text[pos:].lstrip()[:1]!r} at offset {pos}")
        kind = ("int", "name", "pow", "star", "sign")[mt.lastindex - 1]
        out.append((kind, mt.group(mt.lastindex)))
        pos = mt.end()
    return out


def parse_poly(text: str, m: int) -> Poly:
    """Parse the text form produced by :func:`format_poly`.

    Grammar: ``poly := [sign] term (sign term)*``; ``term := factor ("*" factor)*``;
    ``factor := INT | NAME ["^" INT]``. Each generator may appear at most
    once per term and at most one integer coefficient is allowed, first.
    """
    if not isinstance(text, str):
        raise SpecError(f"polynomial text must be a string, got {text!r}")
    index = _var_index(m)
    toks = _tokens(text)
    if not toks:
        raise SpecError("empty polynomial text")
    n = len(variables(m))
    terms: dict[tuple[int, ...], int] = {}
    i = 0
    first = True
    while i < len(toks):
        sign = 1
        if toks[i][0] == "sign":
            sign = -1 if toks[i][1] == "-" else 1
            i += 1
        elif not first:
            raise SpecError(f"expected '+' or '-' before {toks[i][1]!r}")
        first = False
        coeff = None
        exps = [0] * n
        seen = set()
        while True:
            if i >= len(toks):
                raise SpecError("polynomial text ends in the middle of a term")
            kind, val = toks[i]
            if kind == "int":
                if coeff is not None or seen:
                    raise SpecError(f"coefficient {val} must come first in its term")
                coeff = int(val)
                i += 1
            elif kind == "name":
                if val not in index:
                    raise SpecError(f"unknown generator {val!r} for m={m}")
                if val in seen:
                    raise SpecError(f"generator {val!r} repeated within a term")
                seen.add(val)
                i += 1
                power = 1
                if i < len(toks) and toks[i][0] == "pow":
                    if i + 1 >= len(toks) or toks[i + 1][0] != "int":
                        raise SpecError(f"'^' after {val!r} must be followed by an integer")
                    power = int(toks[i + 1][1])
                    i += 2
                exps[index[val]] = power
            else:
                raise SpecError(f"unexpected {val!r} where a factor was expected")
            if i < len(toks) and toks[i][0] == "star":
                i += 1
                continue
            break
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + sign * (1 if coeff is None else coeff)
    return Poly(m, terms)
