"""Finite-dimensional right modules over the Hecke algebras and their tori.

A module stores one matrix per named generator and acts on row vectors:
v . T_x . T_y = v @ A_x @ A_y.  Every constructor runs the relation audit,
so an inconsistent set of matrices never becomes a module.

Convention for torus characters: the module attached to a smooth character
chi lets T_t act by chi(t)^-1.  This follows the action of T_g on I1-invariants
through g^-1 and fixes all signs below (duals, twists, supersingular labels).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .algebra import (
    AlgebraError,
    HeckeAlgebraDescriptor,
    HeckeElement,
    evaluate_on_module,
    length_zero_matrix,
)
from .field import GF
from .linalg import Matrix, complement_basis, restrict
from .weyl import (
    GroupDatum,
    ProPWeylElement,
    affine_generator,
    affine_names,
    generators,
    is_length_zero,
    length_zero_generators,
    reduced_word,
    torus_of,
    unit_log,
    z_element,
    _perm_sign,
)


class ModuleError(ValueError):
    pass


# ---------------------------------------------------------------- characters

@dataclass(frozen=True)
class SmoothCharacter:
    """chi(diag(x_i p^{a_i})) = prod xbar_i^{r_i} c_i^{a_i} on a split torus of rank n."""
    field: GF
    r: tuple[int, ...]
    c: tuple[int, ...]

    def __post_init__(self) -> None:
        p = self.field.p
        if len(self.r) != len(self.c):
            raise ModuleError("exponent and unramified data have different ranks")
        object.__setattr__(self, "r", tuple(x % (p - 1) for x in self.r))
        if any(x == 0 for x in self.c):
            raise ModuleError("unramified values must be units")

    @classmethod
    def trivial(cls, field: GF, n: int) -> "SmoothCharacter":
        return cls(field, (0,) * n, (1,) * n)

    @property
    def rank(self) -> int:
        return len(self.r)

    def value(self, t: ProPWeylElement) -> int:
        F = self.field
        if not t.is_diagonal or t.datum.n != self.rank:
            raise ModuleError(f"{t} is not an element of a rank-{self.rank} torus")
        out = 1
        for u, a, r, c in zip(t.units, t.vals, self.r, self.c):
            out = F.mul(out, F.pow(F(u), r))
            out = F.mul(out, F.pow(c, a))
        return out

    def __mul__(self, other: "SmoothCharacter") -> "SmoothCharacter":
        F = self.field
        return SmoothCharacter(F, tuple(a + b for a, b in zip(self.r, other.r)),
                               tuple(F.mul(a, b) for a, b in zip(self.c, other.c)))

    def inverse(self) -> "SmoothCharacter":
        F = self.field
        return SmoothCharacter(F, tuple(-a for a in self.r), tuple(F.inv(a) for a in self.c))

    def conjugate(self) -> "SmoothCharacter":
        """chi^s: coordinates swapped (rank 2) or inverted (rank 1, the torus of SL2)."""
        if self.rank == 2:
            return SmoothCharacter(self.field, self.r[::-1], self.c[::-1])
        if self.rank == 1:
            return self.inverse()
        raise ModuleError("conjugation is defined for the tori of SL2 and GL2")

    def is_trivial(self) -> bool:
        return all(x == 0 for x in self.r) and all(x == 1 for x in self.c)

    def finite_part_equal(self, other: "SmoothCharacter") -> bool:
        return self.r == other.r

    def __str__(self) -> str:
        return f"chi(r={list(self.r)}, c={list(self.c)})"


class GroupCharacter:
    """A character of W(1) (equivalently of G trivial on I1), evaluated on elements."""

    def __init__(self, datum: GroupDatum, field: GF, fn: Callable[[ProPWeylElement], int], name: str = "xi"):
        self.datum = datum
        self.field = field
        self._fn = fn
        self.name = name
        self._check()

    def value(self, w: ProPWeylElement) -> int:
        return self._fn(w)

    def _check(self) -> None:
        gens = list(generators(self.datum).values())
        F = self.field
        for a in gens:
            if self.value(a) == 0:
                raise ModuleError(f"{self.name} vanishes on {a}")
            for b in gens:
                if F.mul(self.value(a), self.value(b)) != self.value(a * b):
                    raise ModuleError(f"{self.name} is not multiplicative on the generators")

    @classmethod
    def trivial(cls, datum: GroupDatum, field: GF) -> "GroupCharacter":
        return cls(datum, field, lambda w: 1, "trivial")

    @classmethod
    def det(cls, datum: GroupDatum, field: GF, r: int = 0, c: int = 1, name: str | None = None) -> "GroupCharacter":
        """psi o det with psi(x p^a) = xbar^r c^a."""
        p = datum.p

        def fn(w: ProPWeylElement) -> int:
            unit = _perm_sign(w.perm)
            for u in w.units:
                unit = unit * u
            return field.mul(field.pow(field(unit % p), r), field.pow(c, sum(w.vals)))

        return cls(datum, field, fn, name or f"det-char(r={r}, c={c})")

    @classmethod
    def from_generator_values(cls, datum: GroupDatum, field: GF, values: Mapping[str, int], name: str = "custom") -> "GroupCharacter":
        missing = set(generators(datum)) - set(values)
        if missing:
            raise ModuleError(f"missing generator values {sorted(missing)}")
        from .weyl import length_zero_factorization

        def fn(w: ProPWeylElement) -> int:
            om, word = reduced_word(w)
            out = 1
            for g, k in length_zero_factorization(om):
                out = field.mul(out, field.pow(values[g], k))
            for i in word:
                out = field.mul(out, values[f"s{i}"])
            return out

        ch = cls(datum, field, fn, name)
        for i in (0, 1) if not datum.is_torus else ():
            s = affine_generator(datum, i)
            if field.pow(values[f"s{i}"], 2) != ch.value(s * s):
                raise ModuleError(f"{name} is not a homomorphism: value on s{i} squared disagrees")
        for g, w in length_zero_generators(datum).items():
            if w.is_finite_torus and field.pow(values[g], datum.p - 1) != 1:
                raise ModuleError(f"{name} has the wrong order on {g}")
        return ch

    @classmethod
    def from_smooth(cls, datum: GroupDatum, chi: SmoothCharacter) -> "GroupCharacter":
        if not datum.is_torus:
            raise ModuleError("a smooth character is a group character of the torus only")
        return cls(datum, chi.field, chi.value, str(chi))


# ------------------------------------------------------------------- modules

class HeckeModule:
    """dim-dimensional right module given by generator matrices."""

    def __init__(self, desc: HeckeAlgebraDescriptor, gens: Mapping[str, Matrix], label: str = "", dim: int | None = None, audit: bool = True):
        self.desc = desc
        expected = list(generators(desc.datum))
        if sorted(gens) != sorted(expected):
            raise ModuleError(f"generator names {sorted(gens)} differ from {sorted(expected)}")
        if dim is None:
            dim = next(iter(gens.values())).nrows
        self.dim = dim
        self.gens = {k: gens[k] for k in expected}
        self.label = label or "module"
        self._cache: dict[ProPWeylElement, Matrix] = {}
        if audit:
            problems = relation_audit(self)
            if problems:
                raise ModuleError(f"relation audit failed for {self.label}: " + "; ".join(problems))

    @property
    def field(self) -> GF:
        return self.desc.field

    def evaluate(self, w: ProPWeylElement) -> Matrix:
        m = self._cache.get(w)
        if m is None:
            m = evaluate_on_module(w, self)
            self._cache[w] = m
        return m

    def act(self, x: HeckeElement) -> Matrix:
        out = Matrix.zeros(self.field, self.dim)
        for w, c in x.terms.items():
            out = out + self.evaluate(w).scale(c)
        return out

    def relabel(self, label: str) -> "HeckeModule":
        return HeckeModule(self.desc, self.gens, label, self.dim, audit=False)

    def __repr__(self) -> str:
        return f"<{self.label}: dim {self.dim} over {self.desc}>"

    def pretty(self) -> str:
        lines = [f"module {self.label}", f"  algebra {self.desc}", f"  dim {self.dim}"]
        for k, A in self.gens.items():
            lines.append(f"  {k} = {A.tolist()}")
        return "\n".join(lines)


def _finite_torus_names(datum: GroupDatum) -> list[str]:
    return [k for k, w in length_zero_generators(datum).items() if w.is_finite_torus]


def relation_audit(m: HeckeModule) -> list[str]:
    """Defining relations of the algebra, checked on the generator matrices."""
    desc, F, n = m.desc, m.field, m.dim
    datum = desc.datum
    problems: list[str] = []
    for k, A in m.gens.items():
        if A.shape != (n, n):
            return [f"{k} has shape {A.shape}, expected {(n, n)}"]
    I = Matrix.identity(F, n)
    lz = length_zero_generators(datum)
    for k in lz:
        if not m.gens[k].is_invertible():
            problems.append(f"{k} is not invertible")
    if problems:
        return problems
    for k in _finite_torus_names(datum):
        if m.gens[k] ** (datum.p - 1) != I:
            problems.append(f"{k} does not have order dividing p-1")
    # multiplicativity on pairs of length-zero generators
    for (a, wa), (b, wb) in itertools.product(lz.items(), repeat=2):
        if m.gens[a] @ m.gens[b] != m.evaluate(wa * wb):
            problems.append(f"length-zero relation for ({a}, {b}) fails")
    if datum.is_torus:
        return problems
    for i in (0, 1):
        s = affine_generator(datum, i)
        A = m.gens[f"s{i}"]
        # conjugation by length-zero generators permutes the affine generators
        for k, om in lz.items():
            conj = om * s * om.inverse()
            for j in (0, 1):
                t = conj * affine_generator(datum, j).inverse()
                if t.is_finite_torus:
                    break
            else:  # pragma: no cover
                raise ModuleError("conjugate of an affine generator is not an affine generator")
            lhs = m.gens[k] @ A
            rhs = m.evaluate(t) @ m.gens[f"s{j}"] @ m.gens[k]
            if lhs != rhs:
                problems.append(f"conjugation relation for ({k}, s{i}) fails")
        # quadratic relation with q = 0
        C = Matrix.zeros(F, n)
        for t in desc.quadratic(i):
            C = C + m.evaluate(t)
        if A @ A != C @ A:
            problems.append(f"quadratic relation for s{i} fails")
    return problems


def _check_same(m: HeckeModule, n: HeckeModule) -> None:
    if m.desc != n.desc:
        raise ModuleError(f"{m.label} and {n.label} are modules over different algebras")


# -------------------------------------------------------------- constructors

def _affine_and_lz(desc: HeckeAlgebraDescriptor) -> tuple[tuple[str, ...], tuple[str, ...]]:
    return affine_names(desc.datum), tuple(length_zero_generators(desc.datum))


def character_module(desc: HeckeAlgebraDescriptor, values: Mapping[str, int], label: str) -> HeckeModule:
    F = desc.field
    return HeckeModule(desc, {k: Matrix(F, [[v]]) for k, v in values.items()}, label)


def make_character(desc: HeckeAlgebraDescriptor, kind: str, values: Mapping[str, int] | None = None) -> HeckeModule:
    F = desc.field
    aff, lz = _affine_and_lz(desc)
    if kind == "triv":
        return character_module(desc, {**{k: 0 for k in aff}, **{k: 1 for k in lz}}, "chi_triv" if aff else "1_T")
    if kind == "sign":
        if not aff:
            raise ModuleError("the sign character needs affine generators")
        return character_module(desc, {**{k: F.neg(1) for k in aff}, **{k: 1 for k in lz}}, "chi_sign")
    if kind == "sign_star":
        sign = make_character(desc, "sign")
        nr = GroupCharacter.det(desc.datum, F, r=0, c=F.neg(1), name="nr(-1) o det")
        return make_twist(sign, nr).relabel("chi_sign_star")
    if kind == "custom":
        if values is None:
            raise ModuleError("custom characters need values")
        return character_module(desc, values, "custom")
    raise ModuleError(f"unknown character kind {kind!r}")


def torus_descriptor(desc: HeckeAlgebraDescriptor) -> HeckeAlgebraDescriptor:
    return HeckeAlgebraDescriptor(torus_of(desc.datum), desc.field)


def torus_module(tdesc: HeckeAlgebraDescriptor, chi: SmoothCharacter, label: str | None = None) -> HeckeModule:
    """The one-dimensional torus-algebra module of chi: T_t acts by chi(t)^-1."""
    if not tdesc.datum.is_torus or tdesc.datum.n != chi.rank:
        raise ModuleError("character rank does not match the torus")
    F = tdesc.field
    vals = {k: F.inv(chi.value(w)) for k, w in length_zero_generators(tdesc.datum).items()}
    return character_module(tdesc, vals, label or str(chi))


def module_character(m: HeckeModule) -> SmoothCharacter:
    """Inverse of torus_module on one-dimensional torus modules."""
    datum = m.desc.datum
    if not datum.is_torus or m.dim != 1:
        raise ModuleError("not a one-dimensional torus module")
    F = m.field
    r, c = [], []
    for k in range(datum.n):
        val = F.inv(m.gens[f"u{k + 1}"][0, 0])
        # val = xbar^r with x the primitive root used in the generator
        for e in range(datum.p - 1):
            if F.pow(F(_gen_unit(datum)), e) == val:
                r.append(e)
                break
        else:
            raise ModuleError("finite part is not a power of the Teichmueller character")
        c.append(F.inv(m.gens[f"p{k + 1}"][0, 0]))
    return SmoothCharacter(F, tuple(r), tuple(c))


def _gen_unit(datum: GroupDatum) -> int:
    from .weyl import primitive_root

    return primitive_root(datum.p)


def make_dual(m: HeckeModule) -> HeckeModule:
    gens = {}
    for k, w in generators(m.desc.datum).items():
        gens[k] = m.evaluate(w.inverse()).T()
    return HeckeModule(m.desc, gens, f"({m.label})^dual", m.dim)


def make_twist(m: HeckeModule, xi: GroupCharacter) -> HeckeModule:
    if xi.datum != m.desc.datum:
        raise ModuleError("twisting character lives on a different group")
    gens = {k: m.gens[k].scale(xi.value(w.inverse())) for k, w in generators(m.desc.datum).items()}
    return HeckeModule(m.desc, gens, f"{m.label}({xi.name})", m.dim)


def orientation_character(desc: HeckeAlgebraDescriptor) -> GroupCharacter:
    """Trivial for the split groups handled here."""
    return GroupCharacter.trivial(desc.datum, desc.field)


def direct_sum(mods: Sequence[HeckeModule], label: str | None = None) -> HeckeModule:
    if not mods:
        raise ModuleError("empty direct sum")
    for x in mods[1:]:
        _check_same(mods[0], x)
    desc = mods[0].desc
    gens = {k: Matrix.block_diag(desc.field, [x.gens[k] for x in mods]) for k in mods[0].gens}
    return HeckeModule(desc, gens, label or " + ".join(x.label for x in mods), sum(x.dim for x in mods), audit=False)


def power(m: HeckeModule, k: int) -> HeckeModule:
    if k == 0:
        return zero_module(m.desc)
    return direct_sum([m] * k, f"{m.label}^{k}" if k > 1 else m.label)


def zero_module(desc: HeckeAlgebraDescriptor) -> HeckeModule:
    F = desc.field
    return HeckeModule(desc, {k: Matrix(F, [], 0) for k in generators(desc.datum)}, "0", 0, audit=False)


def change_basis(m: HeckeModule, B: Matrix, label: str | None = None) -> HeckeModule:
    """Module in the basis given by the rows of B."""
    Binv = B.inverse()
    return HeckeModule(m.desc, {k: B @ A @ Binv for k, A in m.gens.items()}, label or m.label, m.dim, audit=False)


def generated_submodule(m: HeckeModule, vectors: Matrix) -> Matrix:
    """Row basis of the smallest submodule containing the given rows."""
    F = m.field
    basis = vectors.row_space()
    while True:
        if basis.nrows == 0:
            return basis
        images = basis
        for A in m.gens.values():
            images = images.stack(basis @ A)
        new = images.row_space()
        if new.nrows == basis.nrows:
            return basis
        basis = new


def submodule(m: HeckeModule, basis: Matrix, label: str | None = None) -> HeckeModule:
    gens = {k: restrict(basis, A) for k, A in m.gens.items()}
    return HeckeModule(m.desc, gens, label or f"sub({m.label})", basis.nrows, audit=False)


def quotient(m: HeckeModule, basis: Matrix, label: str | None = None) -> HeckeModule:
    F = m.field
    C = complement_basis(basis)
    if C.nrows == 0:
        return zero_module(m.desc)
    full = basis.stack(C) if basis.nrows else C
    k = basis.nrows
    Finv = full.inverse()
    gens = {}
    for name, A in m.gens.items():
        B = full @ A @ Finv
        gens[name] = B.submatrix(range(k, m.dim), range(k, m.dim))
    return HeckeModule(m.desc, gens, label or f"quot({m.label})", m.dim - k, audit=False)


# --------------------------------------------------------------- hom spaces

@dataclass(frozen=True)
class HomSpace:
    domain: HeckeModule
    codomain: HeckeModule
    basis: tuple[Matrix, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def hom_space(m: HeckeModule, n: HeckeModule) -> HomSpace:
    """Matrices X (dim m x dim n) with A_m(g) X = X A_n(g) for every generator g."""
    _check_same(m, n)
    F = m.field
    dm, dn = m.dim, n.dim
    nv = dm * dn
    if nv == 0:
        return HomSpace(m, n, ())
    rows: list[list[int]] = []
    for k in m.gens:
        Am, An = m.gens[k].rows, n.gens[k].rows
        for i in range(dm):
            for j in range(dn):
                row = [0] * nv
                for l in range(dm):
                    if Am[i][l]:
                        row[l * dn + j] = F.add(row[l * dn + j], Am[i][l])
                for l in range(dn):
                    if An[l][j]:
                        row[i * dn + l] = F.sub(row[i * dn + l], An[l][j])
                rows.append(row)
    kernel = Matrix(F, rows, nv).nullspace()
    basis = tuple(Matrix(F, [v[i * dn:(i + 1) * dn] for i in range(dm)], dn) for v in kernel.rows)
    for X in basis:
        for k in m.gens:
            assert m.gens[k] @ X == X @ n.gens[k]
    return HomSpace(m, n, basis)


@dataclass(frozen=True)
class IsoResult:
    status: str  # "iso" | "not_iso" | "inconclusive"
    witness: Matrix | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        if self.status == "inconclusive":
            raise ModuleError(f"isomorphism test inconclusive: {self.reason}")
        return self.status == "iso"

    @property
    def value(self) -> bool | None:
        return None if self.status == "inconclusive" else self.status == "iso"


ENUMERATION_BUDGET = 5000
RANDOM_TRIES = 400


def _combo(F: GF, basis: Sequence[Matrix], coeffs: Sequence[int]) -> Matrix:
    out = Matrix.zeros(F, basis[0].nrows, basis[0].ncols)
    for c, X in zip(coeffs, basis):
        if c:
            out = out + X.scale(c)
    return out


def _verified(m: HeckeModule, n: HeckeModule, X: Matrix) -> IsoResult:
    if not X.is_invertible() or any(m.gens[k] @ X != X @ n.gens[k] for k in m.gens):
        raise ModuleError("internal error: isomorphism witness failed verification")  # pragma: no cover
    return IsoResult("iso", X)


def is_isomorphic(m: HeckeModule, n: HeckeModule, seed: int = 0) -> IsoResult:
    _check_same(m, n)
    F = m.field
    if m.dim != n.dim:
        return IsoResult("not_iso", reason=f"dimensions {m.dim} != {n.dim}")
    if m.dim == 0:
        return IsoResult("iso", Matrix(F, [], 0))
    H = hom_space(m, n)
    k = H.dim
    if k == 0:
        return IsoResult("not_iso", reason="Hom is zero")
    # an isomorphism identifies Hom(m, n), Hom(n, m), End(m) and End(n)
    dims = (k, hom_space(n, m).dim, hom_space(m, m).dim, hom_space(n, n).dim)
    if len(set(dims)) > 1:
        return IsoResult("not_iso", reason=f"Hom/End dimensions {dims} differ")
    if F.q ** k <= ENUMERATION_BUDGET:
        # projective enumeration: first nonzero coefficient equal to 1
        for lead in range(k):
            for tail in itertools.product(range(F.q), repeat=k - lead - 1):
                coeffs = (0,) * lead + (1,) + tail
                X = _combo(F, H.basis, coeffs)
                if X.is_invertible():
                    return _verified(m, n, X)
        return IsoResult("not_iso", reason=f"no invertible element among all of Hom (dim {k})")
    rng = random.Random(seed)
    for _ in range(RANDOM_TRIES):
        X = _combo(F, H.basis, [rng.randrange(F.q) for _ in range(k)])
        if X.is_invertible():
            return _verified(m, n, X)
    return IsoResult("inconclusive", reason=f"dim Hom = {k} exceeds the enumeration budget and random search found no isomorphism")


# ------------------------------------------------------- composition factors

def _lines(F: GF, d: int):
    for lead in range(d):
        for tail in itertools.product(range(F.q), repeat=d - lead - 1):
            yield (0,) * lead + (1,) + tail


def minimal_submodule(m: HeckeModule) -> Matrix:
    """Row basis of a simple submodule: the smallest cyclic submodule over all lines."""
    F = m.field
    best: Matrix | None = None
    for v in _lines(F, m.dim):
        S = generated_submodule(m, Matrix(F, [v], m.dim))
        if best is None or S.nrows < best.nrows:
            best = S
            if best.nrows == 1:
                break
    assert best is not None
    return best


def is_simple(m: HeckeModule, budget: int = 4) -> bool:
    if m.dim == 0:
        return False
    if m.dim > budget:
        raise ModuleError(f"simplicity test budget exceeded (dim {m.dim} > {budget})")
    return minimal_submodule(m).nrows == m.dim


def composition_factors(m: HeckeModule, budget: int = 4) -> list[HeckeModule]:
    """Factors of a composition series, bottom (socle side) first."""
    if m.dim > budget:
        raise ModuleError(f"composition series budget exceeded (dim {m.dim} > {budget})")
    out: list[HeckeModule] = []
    cur = m
    while cur.dim:
        S = minimal_submodule(cur)
        out.append(submodule(cur, S, f"factor{len(out)}({m.label})"))
        cur = quotient(cur, S)
    return out


def same_factors(a: Sequence[HeckeModule], b: Sequence[HeckeModule], ordered: bool = False) -> bool:
    """Multiset (or sequence) equality of simple modules up to isomorphism."""
    if len(a) != len(b):
        return False
    if ordered:
        return all(bool(is_isomorphic(x, y)) for x, y in zip(a, b))
    remaining = list(b)
    for x in a:
        for i, y in enumerate(remaining):
            if bool(is_isomorphic(x, y)):
                del remaining[i]
                break
        else:
            return False
    return True


# ------------------------------------------------------------ classification

def z_inverse_matrix(m: HeckeModule) -> Matrix:
    return m.evaluate(z_element(m.desc.datum).inverse())


def is_supersingular(m: HeckeModule) -> bool:
    """Simple module with T_{z^-1} nilpotent that is not a submodule of any Ind(chi).

    Nilpotence alone does not suffice: chi_triv kills every T_w of positive
    length, yet it is the socle of Ind(1_T).
    """
    if not z_inverse_matrix(m).is_nilpotent():
        return False
    from .functors import LeviDatum, induced_containing

    return not induced_containing(LeviDatum.torus(m.desc), m)


def finite_torus_matrix(desc: HeckeAlgebraDescriptor, exps: Sequence[int], which: str) -> int:
    """Value on a finite-torus generator of the character t -> prod xbar_i^{exps_i}."""
    F = desc.field
    w = length_zero_generators(desc.datum)[which]
    out = 1
    for u, e in zip(w.units, exps):
        out = F.mul(out, F.pow(F(u), e))
    return out


def _torus_values(desc: HeckeAlgebraDescriptor, exps: Sequence[int]) -> dict[str, int]:
    return {k: finite_torus_matrix(desc, exps, k) for k in _finite_torus_names(desc.datum)}


def _conjugate_exps(desc: HeckeAlgebraDescriptor, exps: Sequence[int]) -> tuple[int, ...]:
    # exponents on the ambient diagonal entries: (a, b) -> (b, a)
    return tuple(exps[::-1])


def _try_module(desc, gens, label) -> HeckeModule | None:
    try:
        return HeckeModule(desc, gens, label)
    except ModuleError:
        return None


def _dedupe(mods: Iterable[HeckeModule]) -> list[HeckeModule]:
    reps: list[HeckeModule] = []
    for x in mods:
        if not any(bool(is_isomorphic(x, y)) for y in reps):
            reps.append(x)
    return reps


def classify_simples(desc: HeckeAlgebraDescriptor, dim: int, exps: Sequence[int], pi_square: int = 1) -> list[HeckeModule]:
    """Simple modules of the given dimension, up to isomorphism.

    exps are exponents (a, b) on the two diagonal entries: a finite-torus
    element diag(x, y) acts on the first basis vector by xbar^a ybar^b.  For
    SL2 only the first entry matters.  pi_square is the scalar action of
    Pi^2 (GL2 only).
    """
    if dim not in (1, 2):
        raise ModuleError(f"classification supports dimensions 1 and 2, not {dim}")
    F = desc.field
    datum = desc.datum
    if datum.kind not in ("SL2", "GL2"):
        raise ModuleError("classification is implemented for SL2 and GL2")
    # the SL2 generator diag(g, g^-1) should see xbar^a only through its first entry
    exps = tuple(exps) if datum.kind == "GL2" else (exps[0], 0)
    nu = _torus_values(desc, exps)
    nu_s = _torus_values(desc, _conjugate_exps(desc, exps))
    found: list[HeckeModule] = []
    pis = [x for x in F.units() if F.mul(x, x) == pi_square] if datum.kind == "GL2" else [None]
    if dim == 1:
        # Pi conjugates the torus by s, so GL2 characters need nu = nu^s
        if datum.kind == "GL2" and nu != nu_s:
            return []
        for a0, a1 in itertools.product(F.elements(), repeat=2):
            for lam in pis:
                vals = {"s0": a0, "s1": a1, **nu}
                if lam is not None:
                    vals["pi"] = lam
                mod = _try_module(desc, {k: Matrix(F, [[v]]) for k, v in vals.items()}, "simple")
                if mod is not None:
                    found.append(mod)
        return _dedupe(found)
    torus = {k: Matrix.diag(F, [nu[k], nu_s[k]]) for k in nu}
    if nu != nu_s:
        # torus eigenlines are swapped by s0, s1 and Pi; scale so that Pi = [[0,1],[z,0]]
        off = [Matrix(F, [[0, a], [b, 0]]) for a in F.elements() for b in F.elements()]
        pi_mats = [Matrix(F, [[0, 1], [pi_square, 0]])] if datum.kind == "GL2" else [None]
        for S1 in off:
            for P in pi_mats:
                if P is not None:
                    S0 = P @ S1 @ P.inverse()
                    cands = [S0]
                else:
                    cands = off
                for S0 in cands:
                    gens = {"s0": S0, "s1": S1, **torus}
                    if P is not None:
                        gens["pi"] = P
                    mod = _try_module(desc, gens, "simple")
                    if mod is not None and is_simple(mod):
                        found.append(mod)
        return _dedupe(found)
    # scalar torus: s1 satisfies A^2 = gamma A with gamma scalar, so it is
    # conjugate to one of a few normal forms; then search the other generators
    scalar = {k: v[0, 0] for k, v in torus.items()}
    gamma = [F.sum(finite_torus_value(desc, scalar, t) for t in desc.quadratic(i)) for i in (0, 1)]
    all2 = [Matrix(F, [[a, b], [c, d]]) for a, b, c, d in itertools.product(F.elements(), repeat=4)]
    for S1 in quadratic_normal_forms(F, gamma[1]):
        if datum.kind == "GL2":
            zeta = Matrix.scalar(F, 2, pi_square)
            for P in all2:
                if P @ P != zeta or not P.is_invertible():
                    continue
                gens = {"s0": P @ S1 @ P.inverse(), "s1": S1, "pi": P, **torus}
                mod = _try_module(desc, gens, "simple")
                if mod is not None and is_simple(mod):
                    found.append(mod)
        else:
            for S0 in all2:
                if S0 @ S0 != S0.scale(gamma[0]):
                    continue
                gens = {"s0": S0, "s1": S1, **torus}
                mod = _try_module(desc, gens, "simple")
                if mod is not None and is_simple(mod):
                    found.append(mod)
    return _dedupe(found)


def finite_torus_value(desc: HeckeAlgebraDescriptor, scalar: Mapping[str, int], t: ProPWeylElement) -> int:
    """Value on a finite-torus element of the scalar action given on the generators."""
    from .weyl import length_zero_factorization

    F = desc.field
    out = 1
    for g, k in length_zero_factorization(t):
        if g in scalar:
            out = F.mul(out, F.pow(scalar[g], k))
    return out


def quadratic_normal_forms(F: GF, gamma: int) -> list[Matrix]:
    """Conjugacy representatives of 2x2 matrices with A^2 = gamma A."""
    if gamma:
        return [Matrix.zeros(F, 2), Matrix.scalar(F, 2, gamma), Matrix.diag(F, [gamma, 0])]
    return [Matrix.zeros(F, 2), Matrix(F, [[0, 1], [0, 0]])]


def supersingular_gl2(desc: HeckeAlgebraDescriptor, r: int, pi_square: int = 1) -> HeckeModule:
    """The two-dimensional supersingular module whose torus eigenvalues are xbar^-r, ybar^-r."""
    if desc.datum.kind != "GL2":
        raise ModuleError("m(r,0,1) lives over GL2")
    cands = [x for x in classify_simples(desc, 2, (-r, 0), pi_square) if is_supersingular(x)]
    if len(cands) != 1:
        raise ModuleError(f"expected one supersingular module for r={r}, found {len(cands)}")
    return cands[0].relabel(f"m({r},0,1)")


def supersingular_sl2(desc: HeckeAlgebraDescriptor, r: int) -> HeckeModule:
    """The character m_r of the SL2 algebra, 0 <= r <= p-1.

    For 0 < r < p-1 the torus acts by xbar^-r and both T_s act by 0.  The two
    supersingular characters with trivial torus part are labelled by which
    affine generator acts by -1: m_0 has T_s0 = -1, m_{p-1} has T_s1 = -1.
    """
    p = desc.p
    if desc.datum.kind != "SL2":
        raise ModuleError("m_r lives over SL2")
    if not 0 <= r <= p - 1:
        raise ModuleError("r must lie in 0..p-1")
    cands = [x for x in classify_simples(desc, 1, (-r,)) if is_supersingular(x)]
    F = desc.field
    if r in (0, p - 1):
        want = {"s0": F.neg(1), "s1": 0} if r == 0 else {"s0": 0, "s1": F.neg(1)}
        cands = [x for x in cands if all(x.gens[k][0, 0] == v for k, v in want.items())]
    if len(cands) != 1:
        raise ModuleError(f"expected one supersingular character for r={r}, found {len(cands)}")
    return cands[0].relabel(f"m_{r}")


def torus_characters_trivial_on(desc: HeckeAlgebraDescriptor, names: Iterable[str]) -> list[HeckeModule]:
    """All characters of the algebra taking the value 1 on the named length-zero generators."""
    F = desc.field
    names = set(names)
    aff, lz = _affine_and_lz(desc)
    free_lz = [k for k in lz if k not in names]
    out = []
    for aff_vals in itertools.product(F.elements(), repeat=len(aff)):
        for lz_vals in itertools.product(list(F.units()), repeat=len(free_lz)):
            vals = {**dict(zip(aff, aff_vals)), **{k: 1 for k in names}, **dict(zip(free_lz, lz_vals))}
            mod = _try_module(desc, {k: Matrix(F, [[v]]) for k, v in vals.items()}, "character")
            if mod is not None:
                out.append(mod)
    return out
