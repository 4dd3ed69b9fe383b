"""The pro-p Iwahori-Hecke algebra in characteristic p.

Basis elements T_w are indexed by W(1).  Products are built from three
rules: T_u T_v = T_{uv} when lengths add, T_s T_v = c_s T_v when s shortens
v (the q T_{s^2} term vanishes since q = 0 in the coefficients), and
length-zero basis elements multiply as group elements.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Protocol

from .field import GF
from .linalg import Matrix
from .weyl import (
    GroupDatum,
    ProPWeylElement,
    WeylError,
    affine_generator,
    affine_names,
    elements_up_to_length,
    identity,
    is_length_zero,
    is_positive,
    length,
    length_zero_factorization,
    pi_element,
    quadratic_support,
    reduced_word,
)


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class HeckeAlgebraDescriptor:
    datum: GroupDatum
    field: GF

    def __post_init__(self) -> None:
        if self.field.p != self.datum.p:
            raise AlgebraError("coefficient field must have the same characteristic as the residue field")

    @classmethod
    def make(cls, kind: str, p: int, e: int = 1, n: int = 2) -> "HeckeAlgebraDescriptor":
        datum = GroupDatum(kind, p, n if kind == "Torus" else 2)
        return cls(datum, GF(p, e))

    @property
    def p(self) -> int:
        return self.datum.p

    def quadratic(self, i: int) -> tuple[ProPWeylElement, ...]:
        return quadratic_support(self.datum, i)

    def __str__(self) -> str:
        return f"H({self.datum}, p={self.p}, q={self.field.q})"


class HeckeElement:
    """Finitely supported combination of basis elements T_w."""

    __slots__ = ("desc", "terms")

    def __init__(self, desc: HeckeAlgebraDescriptor, terms: Mapping[ProPWeylElement, int] | Iterable[tuple[ProPWeylElement, int]] = ()):
        self.desc = desc
        F = desc.field
        acc: dict[ProPWeylElement, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            if w.datum != desc.datum:
                raise AlgebraError("basis element from a different group datum")
            acc[w] = F.add(acc.get(w, 0), c)
        self.terms = {w: c for w, c in sorted(acc.items(), key=lambda kv: kv[0].sort_key()) if c}

    @classmethod
    def basis(cls, desc: HeckeAlgebraDescriptor, w: ProPWeylElement, c: int = 1) -> "HeckeElement":
        return cls(desc, {w: c})

    @classmethod
    def one(cls, desc: HeckeAlgebraDescriptor) -> "HeckeElement":
        return cls.basis(desc, identity(desc.datum))

    def _check(self, other: "HeckeElement") -> None:
        if self.desc != other.desc:
            raise AlgebraError("elements of different algebras")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, HeckeElement) and self.desc == other.desc and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        self._check(other)
        return HeckeElement(self.desc, list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + other.scale(self.desc.field.neg(1))

    def scale(self, c: int) -> "HeckeElement":
        F = self.desc.field
        return HeckeElement(self.desc, {w: F.mul(c, x) for w, x in self.terms.items()})

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        return mul(self, other)

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*T[{w}]" if c != 1 else f"T[{w}]" for w, c in self.terms.items())


def quadratic_coefficient(desc: HeckeAlgebraDescriptor, i: int) -> HeckeElement:
    return HeckeElement(desc, [(t, 1) for t in desc.quadratic(i)])


@lru_cache(maxsize=None)
def _left_generator(i: int, v: ProPWeylElement) -> tuple[tuple[ProPWeylElement, int], ...]:
    """T_{s_i} T_v as (basis, integer coefficient) pairs."""
    datum = v.datum
    s = affine_generator(datum, i)
    sv = s * v
    if length(sv) == length(v) + 1:
        return ((sv, 1),)
    return tuple((t * v, 1) for t in quadratic_support(datum, i))


@lru_cache(maxsize=None)
def basis_product(u: ProPWeylElement, v: ProPWeylElement) -> tuple[tuple[ProPWeylElement, int], ...]:
    """T_u T_v with integer coefficients (reduced into the field by the caller)."""
    if u.datum != v.datum:
        raise AlgebraError("basis elements of different groups")
    omega, word = reduced_word(u)
    current: dict[ProPWeylElement, int] = {v: 1}
    for i in reversed(word):
        nxt: dict[ProPWeylElement, int] = {}
        for x, c in current.items():
            for y, d in _left_generator(i, x):
                nxt[y] = nxt.get(y, 0) + c * d
        current = nxt
    out: dict[ProPWeylElement, int] = {}
    for x, c in current.items():
        y = omega * x
        out[y] = out.get(y, 0) + c
    return tuple(sorted(out.items(), key=lambda kv: kv[0].sort_key()))


def mul(x: HeckeElement, y: HeckeElement) -> HeckeElement:
    x._check(y)
    F = x.desc.field
    acc: list[tuple[ProPWeylElement, int]] = []
    for u, a in x.terms.items():
        for v, b in y.terms.items():
            ab = F.mul(a, b)
            for w, c in basis_product(u, v):
                acc.append((w, F.mul(ab, F(c))))
    return HeckeElement(x.desc, acc)


def theta_embed(x: HeckeElement, ambient: HeckeAlgebraDescriptor) -> HeckeElement:
    """Relabel T^M_m as T_m for m in the positive monoid."""
    from .weyl import embed_torus  # local import keeps the public surface in one place

    if not x.desc.datum.is_torus:
        raise AlgebraError("theta is defined on the torus algebra")
    terms = []
    for t, c in x.terms.items():
        g = embed_torus(ambient.datum, t)
        if not is_positive(g):
            raise AlgebraError(f"{t} is not in the positive monoid")
        terms.append((g, c))
    return HeckeElement(ambient, terms)


class ModuleLike(Protocol):
    desc: HeckeAlgebraDescriptor
    dim: int
    gens: Mapping[str, Matrix]


def length_zero_matrix(omega: ProPWeylElement, m: ModuleLike) -> Matrix:
    F = m.desc.field
    out = Matrix.identity(F, m.dim)
    for name, k in length_zero_factorization(omega):
        if k:
            out = out @ (m.gens[name] ** k)
    return out


def evaluate_on_module(w: ProPWeylElement, m: ModuleLike) -> Matrix:
    """Matrix of T_w acting on row vectors of m."""
    if w.datum != m.desc.datum:
        raise AlgebraError("element and module belong to different groups")
    omega, word = reduced_word(w) if not w.datum.is_torus else (w, ())
    out = length_zero_matrix(omega, m)
    for i in word:
        out = out @ m.gens[f"s{i}"]
    return out


def act(x: HeckeElement, m: ModuleLike) -> Matrix:
    F = m.desc.field
    out = Matrix.zeros(F, m.dim)
    for w, c in x.terms.items():
        out = out + evaluate_on_module(w, m).scale(c)
    return out


def canonical_elements(desc: HeckeAlgebraDescriptor, max_length: int) -> list[ProPWeylElement]:
    """Elements (length-zero part 1 or Pi) of length <= max_length, for table dumps."""
    datum = desc.datum
    omegas = [identity(datum)]
    if datum.kind == "GL2":
        omegas.append(pi_element(datum))
    out = []
    for om in omegas:
        layer = [om]
        seen = {om}
        out.append(om)
        for _ in range(max_length):
            nxt = []
            for x in layer:
                for i in (0, 1):
                    y = x * affine_generator(datum, i)
                    if length(y) == length(x) + 1 and y not in seen:
                        seen.add(y)
                        nxt.append(y)
            out.extend(nxt)
            layer = nxt
    return sorted(set(out), key=lambda w: (length(w), w.sort_key()))


def structure_constants(desc: HeckeAlgebraDescriptor, max_length: int) -> list[str]:
    lines = []
    els = canonical_elements(desc, max_length)
    F = desc.field
    for u in els:
        for v in els:
            prod = HeckeElement(desc, [(w, F(c)) for w, c in basis_product(u, v)])
            lines.append(f"T[{u}] * T[{v}] = {prod!r}")
    return lines


__all__ = [
    "AlgebraError",
    "HeckeAlgebraDescriptor",
    "HeckeElement",
    "act",
    "basis_product",
    "canonical_elements",
    "elements_up_to_length",
    "evaluate_on_module",
    "is_length_zero",
    "mul",
    "quadratic_coefficient",
    "structure_constants",
    "theta_embed",
    "affine_names",
    "WeylError",
]
