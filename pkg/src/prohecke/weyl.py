"""The pro-p extended affine Weyl group W(1) for SL2, GL2 and split tori.

An element is a monomial matrix whose nonzero entry in row i sits in column
perm[i] and equals units[i] * p**vals[i], with units[i] in 1..p-1 standing
for a Teichmueller representative.  Products are taken in the monomial
monoid, so the unit parts multiply in F_p^x and valuations add.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .field import is_prime


class WeylError(ValueError):
    pass


KINDS = ("SL2", "GL2", "Torus")


@dataclass(frozen=True)
class GroupDatum:
    kind: str
    p: int
    n: int = 2  # matrix size; the rank for a torus

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise WeylError(f"unknown group kind {self.kind!r}")
        if not is_prime(self.p) or self.p < 5:
            raise WeylError(f"p must be a prime >= 5, got {self.p}")
        if self.kind in ("SL2", "GL2") and self.n != 2:
            raise WeylError(f"{self.kind} has matrix size 2")
        if self.kind == "Torus" and self.n < 1:
            raise WeylError("a torus needs rank >= 1")

    @classmethod
    def sl2(cls, p: int) -> "GroupDatum":
        return cls("SL2", p, 2)

    @classmethod
    def gl2(cls, p: int) -> "GroupDatum":
        return cls("GL2", p, 2)

    @classmethod
    def torus(cls, n: int, p: int) -> "GroupDatum":
        return cls("Torus", p, n)

    @property
    def is_torus(self) -> bool:
        return self.kind == "Torus"

    def __str__(self) -> str:
        return f"Torus({self.n})" if self.is_torus else self.kind


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    for g in range(2, p):
        if len({pow(g, k, p) for k in range(p - 1)}) == p - 1:
            return g
    raise WeylError(f"no primitive root mod {p}")  # pragma: no cover


@lru_cache(maxsize=None)
def _unit_logs(p: int) -> dict[int, int]:
    g = primitive_root(p)
    return {pow(g, k, p): k for k in range(p - 1)}


def unit_log(u: int, p: int) -> int:
    return _unit_logs(p)[u % p]


def _perm_sign(perm: tuple[int, ...]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


@dataclass(frozen=True)
class ProPWeylElement:
    datum: GroupDatum
    perm: tuple[int, ...]
    vals: tuple[int, ...]
    units: tuple[int, ...]

    def __post_init__(self) -> None:
        n, p = self.datum.n, self.datum.p
        if not (len(self.perm) == len(self.vals) == len(self.units) == n):
            raise WeylError("entry data has the wrong size")
        if sorted(self.perm) != list(range(n)):
            raise WeylError(f"{self.perm} is not a permutation")
        if any(not 1 <= u < p for u in self.units):
            raise WeylError(f"units must lie in 1..{p - 1}")
        if self.datum.is_torus and self.perm != tuple(range(n)):
            raise WeylError("torus elements are diagonal")
        if self.datum.kind == "SL2":
            det_unit = _perm_sign(self.perm)
            for u in self.units:
                det_unit = det_unit * u
            if det_unit % p != 1 or sum(self.vals) != 0:
                raise WeylError("SL2 elements have determinant 1")

    # -- group law
    def __mul__(self, other: "ProPWeylElement") -> "ProPWeylElement":
        if self.datum != other.datum:
            raise WeylError("elements over different group data")
        p = self.datum.p
        perm = tuple(other.perm[j] for j in self.perm)
        vals = tuple(a + other.vals[j] for a, j in zip(self.vals, self.perm))
        units = tuple(u * other.units[j] % p for u, j in zip(self.units, self.perm))
        return ProPWeylElement(self.datum, perm, vals, units)

    def inverse(self) -> "ProPWeylElement":
        n, p = self.datum.n, self.datum.p
        perm = [0] * n
        vals = [0] * n
        units = [0] * n
        for i, j in enumerate(self.perm):
            perm[j] = i
            vals[j] = -self.vals[i]
            units[j] = pow(self.units[i], p - 2, p)
        return ProPWeylElement(self.datum, tuple(perm), tuple(vals), tuple(units))

    def __pow__(self, k: int) -> "ProPWeylElement":
        base = self if k >= 0 else self.inverse()
        result = identity(self.datum)
        for _ in range(abs(k)):
            result = result * base
        return result

    # -- predicates and views
    @property
    def is_diagonal(self) -> bool:
        return self.perm == tuple(range(self.datum.n))

    @property
    def is_finite_torus(self) -> bool:
        return self.is_diagonal and all(a == 0 for a in self.vals)

    def image(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Image in the extended affine Weyl group (units forgotten)."""
        return (self.perm, self.vals)

    def entries(self) -> list[list[tuple[int, int] | None]]:
        n = self.datum.n
        out: list[list[tuple[int, int] | None]] = [[None] * n for _ in range(n)]
        for i, j in enumerate(self.perm):
            out[i][j] = (self.units[i], self.vals[i])
        return out

    def sort_key(self) -> tuple:
        return (self.perm, self.vals, self.units)

    def __str__(self) -> str:
        def fmt(u: int, a: int) -> str:
            if a == 0:
                return str(u)
            pp = "p" if a == 1 else f"p^{a}"
            return pp if u == 1 else f"{u}{pp}"
        if self.is_diagonal:
            return "diag(" + ",".join(fmt(u, a) for u, a in zip(self.units, self.vals)) + ")"
        rows = []
        for row in self.entries():
            rows.append("[" + ",".join("0" if e is None else fmt(*e) for e in row) + "]")
        return "[" + ",".join(rows) + "]"


# -- constructors

def identity(datum: GroupDatum) -> ProPWeylElement:
    n = datum.n
    return ProPWeylElement(datum, tuple(range(n)), (0,) * n, (1,) * n)


def diag(datum: GroupDatum, units: tuple[int, ...] | list[int], vals: tuple[int, ...] | list[int] | None = None) -> ProPWeylElement:
    n, p = datum.n, datum.p
    vals = (0,) * n if vals is None else tuple(vals)
    return ProPWeylElement(datum, tuple(range(n)), vals, tuple(u % p for u in units))


def antidiag(datum: GroupDatum, top: tuple[int, int], bottom: tuple[int, int]) -> ProPWeylElement:
    """[[0, top], [bottom, 0]] with entries given as (unit, valuation)."""
    if datum.n != 2:
        raise WeylError("antidiag is for 2x2 data")
    p = datum.p
    return ProPWeylElement(datum, (1, 0), (top[1], bottom[1]), (top[0] % p, bottom[0] % p))


def affine_generator(datum: GroupDatum, i: int) -> ProPWeylElement:
    """The fixed lift of the simple affine reflection s_i (i = 0 or 1)."""
    p = datum.p
    if datum.kind == "SL2":
        if i == 1:
            return antidiag(datum, (1, 0), (-1, 0))
        if i == 0:
            return antidiag(datum, (-1, -1), (1, 1))
    elif datum.kind == "GL2":
        if i == 1:
            return antidiag(datum, (1, 0), (1, 0))
        if i == 0:
            pi = pi_element(datum)
            return pi * affine_generator(datum, 1) * pi.inverse()
    raise WeylError(f"no affine generator s{i} for {datum}")


def pi_element(datum: GroupDatum) -> ProPWeylElement:
    if datum.kind != "GL2":
        raise WeylError("the length-zero element Pi exists only for GL2")
    return antidiag(datum, (1, 0), (1, 1))


def sl2_type_lift(datum: GroupDatum, i: int) -> ProPWeylElement:
    """Lift of s_i lying in the derived group; squares to the coroot image of -1."""
    if datum.kind == "SL2":
        return affine_generator(datum, i)
    if datum.kind == "GL2":
        if i == 1:
            return antidiag(datum, (1, 0), (-1, 0))
        if i == 0:
            return antidiag(datum, (-1, -1), (1, 1))
    raise WeylError(f"no affine generator s{i} for {datum}")


def coroot(datum: GroupDatum, i: int, u: int) -> ProPWeylElement:
    """Image of the unit u under the coroot attached to s_i."""
    p = datum.p
    inv = pow(u, p - 2, p)
    if datum.kind not in ("SL2", "GL2"):
        raise WeylError("coroots are defined for rank-one groups")
    if i == 1:
        return diag(datum, (u, inv))
    if i == 0:
        return diag(datum, (inv, u))
    raise WeylError(f"no coroot for s{i}")


def quadratic_support(datum: GroupDatum, i: int) -> tuple[ProPWeylElement, ...]:
    """Finite-torus elements t whose T_t sum to the quadratic coefficient of T_{s_i}.

    Writing the fixed lift as n_i * t0 with n_i in the derived group, the set
    is the coroot image of F_p^x translated by t0.
    """
    s = affine_generator(datum, i)
    t0 = sl2_type_lift(datum, i).inverse() * s
    if not t0.is_finite_torus:
        raise WeylError("lift does not differ from the derived-group lift by a finite-torus element")
    out = {coroot(datum, i, u) * t0 for u in range(1, datum.p)}
    return tuple(sorted(out, key=ProPWeylElement.sort_key))


def finite_torus(datum: GroupDatum) -> Iterator[ProPWeylElement]:
    p, n = datum.p, datum.n
    if datum.kind == "SL2":
        for u in range(1, p):
            yield diag(datum, (u, pow(u, p - 2, p)))
        return
    def rec(prefix: tuple[int, ...]):
        if len(prefix) == n:
            yield diag(datum, prefix)
            return
        for u in range(1, p):
            yield from rec(prefix + (u,))
    yield from rec(())


def length_zero_generators(datum: GroupDatum) -> dict[str, ProPWeylElement]:
    """Named generators of the length-zero subgroup (and of the whole group for a torus)."""
    g = primitive_root(datum.p)
    if datum.kind == "SL2":
        return {"t": diag(datum, (g, pow(g, datum.p - 2, datum.p)))}
    if datum.kind == "GL2":
        return {"t1": diag(datum, (g, 1)), "t2": diag(datum, (1, g)), "pi": pi_element(datum)}
    gens: dict[str, ProPWeylElement] = {}
    n = datum.n
    for k in range(n):
        gens[f"u{k + 1}"] = diag(datum, tuple(g if j == k else 1 for j in range(n)))
    for k in range(n):
        gens[f"p{k + 1}"] = diag(datum, (1,) * n, tuple(1 if j == k else 0 for j in range(n)))
    return gens


def affine_names(datum: GroupDatum) -> tuple[str, ...]:
    return () if datum.is_torus else ("s0", "s1")


def generators(datum: GroupDatum) -> dict[str, ProPWeylElement]:
    out: dict[str, ProPWeylElement] = {}
    for name in affine_names(datum):
        out[name] = affine_generator(datum, int(name[1]))
    out.update(length_zero_generators(datum))
    return out


@dataclass(frozen=True)
class GeneratorSet:
    datum: GroupDatum
    affine: tuple[ProPWeylElement, ...]
    length_zero: tuple[tuple[str, ProPWeylElement], ...] = field(default=())

    @classmethod
    def of(cls, datum: GroupDatum) -> "GeneratorSet":
        aff = tuple(affine_generator(datum, i) for i in range(2)) if not datum.is_torus else ()
        return cls(datum, aff, tuple(length_zero_generators(datum).items()))


# -- length and reduced words

def is_length_zero_image(datum: GroupDatum, perm: tuple[int, ...], vals: tuple[int, ...]) -> bool:
    if datum.is_torus:
        return True
    if datum.kind == "SL2":
        return perm == (0, 1) and vals[0] == 0
    # GL2: the powers of Pi
    if perm == (0, 1):
        return vals[0] == vals[1]
    return vals[1] == vals[0] + 1


def _image_mul(a: tuple[tuple[int, ...], tuple[int, ...]], b: tuple[tuple[int, ...], tuple[int, ...]]):
    perm = tuple(b[0][j] for j in a[0])
    vals = tuple(x + b[1][j] for x, j in zip(a[1], a[0]))
    return (perm, vals)


_length_cache: dict[tuple, int] = {}


def length(w: ProPWeylElement) -> int:
    """Length in the affine Weyl group, by breadth-first search towards the length-zero subgroup."""
    datum = w.datum
    if datum.is_torus:
        return 0
    start = w.image()
    key = (datum, start)
    if key in _length_cache:
        return _length_cache[key]
    gens = [affine_generator(datum, i).image() for i in (0, 1)]
    seen = {start}
    frontier = deque([(start, 0)])
    while frontier:
        x, d = frontier.popleft()
        if is_length_zero_image(datum, *x):
            _length_cache[key] = d
            return d
        for s in gens:
            y = _image_mul(x, s)
            if y not in seen:
                seen.add(y)
                frontier.append((y, d + 1))
    raise WeylError("length search exhausted")  # pragma: no cover


def closed_form_length(w: ProPWeylElement) -> int:
    """Iwahori-Matsumoto style formula for rank one, used as a cross-check."""
    if w.datum.is_torus:
        return 0
    a, b = w.vals
    if w.is_diagonal:
        return abs(a - b)
    return abs(a - b + 1)


def is_length_zero(w: ProPWeylElement) -> bool:
    return is_length_zero_image(w.datum, *w.image())


def reduced_word(w: ProPWeylElement) -> tuple[ProPWeylElement, tuple[int, ...]]:
    """(omega, word) with w = omega * s_{word[0]} * ... and len(word) = length(w)."""
    datum = w.datum
    word: list[int] = []
    x = w
    ell = length(x)
    while ell > 0:
        for i in (0, 1):
            s = affine_generator(datum, i)
            y = x * s.inverse()
            if length(y) == ell - 1:
                word.append(i)
                x = y
                ell -= 1
                break
        else:  # pragma: no cover - a descent always exists
            raise WeylError("no right descent found")
    word.reverse()
    return x, tuple(word)


def recompose(omega: ProPWeylElement, word: tuple[int, ...]) -> ProPWeylElement:
    x = omega
    for i in word:
        x = x * affine_generator(omega.datum, i)
    return x


def length_zero_factorization(omega: ProPWeylElement) -> list[tuple[str, int]]:
    """Exponents of named length-zero generators whose ordered product is omega."""
    datum = omega.datum
    if not is_length_zero(omega):
        raise WeylError(f"{omega} does not have length zero")
    p = datum.p
    if datum.kind == "SL2":
        return [("t", unit_log(omega.units[0], p))]
    if datum.kind == "GL2":
        if omega.is_diagonal:
            k = 2 * omega.vals[0]
        else:
            k = 2 * omega.vals[0] + 1
        t = pi_element(datum) ** (-k) * omega
        if not t.is_finite_torus:  # pragma: no cover
            raise WeylError("bad length-zero decomposition")
        return [("pi", k), ("t1", unit_log(t.units[0], p)), ("t2", unit_log(t.units[1], p))]
    out = [(f"u{k + 1}", unit_log(u, p)) for k, u in enumerate(omega.units)]
    out += [(f"p{k + 1}", a) for k, a in enumerate(omega.vals)]
    return out


# -- positivity and the localization element

def is_positive(t: ProPWeylElement) -> bool:
    """Membership in the monoid contracting the upper unipotent radical."""
    if not t.is_diagonal:
        raise WeylError(f"{t} is not a torus element")
    return all(t.vals[i] >= t.vals[i + 1] for i in range(len(t.vals) - 1))


def z_element(datum: GroupDatum) -> ProPWeylElement:
    if datum.kind == "GL2":
        return diag(datum, (1, 1), (0, 1))
    if datum.kind == "SL2":
        return diag(datum, (1, 1), (-1, 1))
    raise WeylError("localization element is defined for SL2 and GL2")


def elements_up_to_length(datum: GroupDatum, max_length: int, pi_range: int = 1) -> list[ProPWeylElement]:
    """All elements of length <= max_length, with Pi-powers in [-pi_range, pi_range] for GL2."""
    omegas = list(finite_torus(datum))
    if datum.kind == "GL2":
        pi = pi_element(datum)
        omegas = [pi ** k * t for k in range(-pi_range, pi_range + 1) for t in omegas]
    out = set(omegas)
    layer = set(omegas)
    for _ in range(max_length):
        nxt = set()
        for x in layer:
            for i in (0, 1):
                y = x * affine_generator(datum, i)
                if length(y) == length(x) + 1:
                    nxt.add(y)
        out |= nxt
        layer = nxt
    return sorted(out, key=lambda w: (length(w), w.sort_key()))


# -- the diagonal torus as a Levi subgroup

def torus_of(datum: GroupDatum) -> GroupDatum:
    if datum.kind == "GL2":
        return GroupDatum.torus(2, datum.p)
    if datum.kind == "SL2":
        return GroupDatum.torus(1, datum.p)
    raise WeylError(f"{datum} has no proper torus Levi here")


def embed_torus(ambient: GroupDatum, t: ProPWeylElement) -> ProPWeylElement:
    """Image of a torus element in the ambient group (x -> diag(x, x^-1) for SL2)."""
    if t.datum != torus_of(ambient):
        raise WeylError("torus element does not belong to the Levi of this group")
    if ambient.kind == "GL2":
        return diag(ambient, t.units, t.vals)
    u, a = t.units[0], t.vals[0]
    return diag(ambient, (u, pow(u, ambient.p - 2, ambient.p)), (a, -a))


def torus_part(g: ProPWeylElement) -> ProPWeylElement:
    """Inverse of embed_torus on diagonal elements."""
    if not g.is_diagonal:
        raise WeylError(f"{g} is not diagonal")
    T = torus_of(g.datum)
    if g.datum.kind == "GL2":
        return diag(T, g.units, g.vals)
    return diag(T, g.units[:1], g.vals[:1])
