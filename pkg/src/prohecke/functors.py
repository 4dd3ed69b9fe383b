"""Parabolic induction from the torus, its right adjoint, and the adjunction check.

Ind(n) = n (x) H over the positive torus algebra has the basis n(x)1, n(x)T_s1,
and the action of each generator on that basis follows from the relations
(see _induce_blocks).  Every induced module is audited against the
defining universal property Hom_H(Ind n, m) = Hom_{H_T^+}(n, m), where
H_T^+ acts on m through theta.

R(m) is the eventual image E of T_{z^-1} on m.  On E, T^M_t acts as
(T_{z^-1}|_E)^{-j} T_{z^-j t}|_E with j >= 0 minimal such that z^-j t is
positive.  The action is recomputed with j + 1 as a consistency audit.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import HeckeAlgebraDescriptor
from .linalg import Matrix, eventual_image, restrict
from .modules import (
    HeckeModule,
    ModuleError,
    SmoothCharacter,
    hom_space,
    torus_descriptor,
    torus_module,
    zero_module,
)
from .weyl import (
    ProPWeylElement,
    affine_generator,
    diag,
    embed_torus,
    is_positive,
    length_zero_generators,
    pi_element,
    torus_of,
    torus_part,
    z_element,
)


class FunctorError(ValueError):
    pass


@dataclass(frozen=True)
class LeviDatum:
    ambient: HeckeAlgebraDescriptor
    levi: HeckeAlgebraDescriptor
    z: ProPWeylElement

    @classmethod
    def torus(cls, ambient: HeckeAlgebraDescriptor) -> "LeviDatum":
        levi = torus_descriptor(ambient)
        datum = cls(ambient, levi, z_element(ambient.datum))
        datum.check()
        return datum

    def check(self) -> None:
        if not is_positive(self.z.inverse()):
            raise FunctorError("z^-1 must be positive")
        # the positive monoid and z generate the torus: every valuation vector
        # becomes positive after multiplying by a power of z^-1
        D = self.ambient.datum
        vals = [(a, b) for a in range(-3, 4) for b in range(-3, 4)] if D.kind == "GL2" else [(a, -a) for a in range(-3, 4)]
        for v in vals:
            t = diag(D, (1, 1), v)
            if self.positive_shift(t) is None:
                raise FunctorError(f"{t} is not reached from the positive monoid by powers of z")

    def positive_shift(self, t: ProPWeylElement, limit: int = 64) -> int | None:
        """Least j >= 0 with z^-j t positive."""
        zi = self.z.inverse()
        x = t
        for j in range(limit):
            if is_positive(x):
                return j
            x = zi * x
        return None

    def embed(self, t: ProPWeylElement) -> ProPWeylElement:
        return embed_torus(self.ambient.datum, t)

    def conj(self, t: ProPWeylElement) -> ProPWeylElement:
        """s1 t s1^-1 for an ambient diagonal element."""
        s = affine_generator(self.ambient.datum, 1)
        return s * t * s.inverse()

    def positive_generators(self) -> list[ProPWeylElement]:
        """Generators of the positive monoid (as a monoid; central elements with inverses)."""
        D = self.ambient.datum
        gens = [w for w in length_zero_generators(D).values() if w.is_finite_torus]
        gens.append(self.z.inverse())
        if D.kind == "GL2":
            c = diag(D, (1, 1), (1, 1))
            gens += [c, c.inverse()]
        return gens


def _N(n: HeckeModule, levi: LeviDatum, t: ProPWeylElement) -> Matrix:
    return n.evaluate(torus_part(t))


def _sum_N(n: HeckeModule, levi: LeviDatum, ts) -> Matrix:
    out = Matrix.zeros(n.field, n.dim)
    for t in ts:
        out = out + _N(n, levi, t)
    return out


def _induce_blocks(levi: LeviDatum, n: HeckeModule) -> dict[str, Matrix]:
    D = levi.ambient.datum
    F = levi.ambient.field
    k = n.dim
    Z = Matrix.zeros(F, k)
    I = Matrix.identity(F, k)
    gens: dict[str, Matrix] = {}
    for name, t in length_zero_generators(D).items():
        if t.is_finite_torus:
            gens[name] = Matrix.block_diag(F, [_N(n, levi, t), _N(n, levi, levi.conj(t))])
    c1 = _sum_N(n, levi, levi.ambient.quadratic(1))
    gens["s1"] = Matrix.blocks(F, [[Z, I], [Z, c1]])
    s1 = affine_generator(D, 1)
    if D.kind == "GL2":
        pi = pi_element(D)
        Nz = _N(n, levi, levi.z)
        Nsp = _N(n, levi, s1 * pi)
        gens["pi"] = Matrix.blocks(F, [[Z, Nz], [Nsp, Z]])
        gens["s0"] = gens["pi"] @ gens["s1"] @ gens["pi"].inverse()
    else:
        c0 = _sum_N(n, levi, [levi.conj(t) for t in levi.ambient.quadratic(0)])
        s0 = affine_generator(D, 0)
        Nzi = _N(n, levi, s1 * s0)
        gens["s0"] = Matrix.blocks(F, [[c0, Z], [Nzi, Z]])
    return gens


def positive_hom_dim(levi: LeviDatum, n: HeckeModule, m: HeckeModule) -> int:
    """dim Hom over the positive torus algebra from n to m viewed through theta."""
    F = m.field
    rows = []
    dn, dm = n.dim, m.dim
    nv = dn * dm
    if nv == 0:
        return 0
    for t in levi.positive_generators():
        Nn = _N(n, levi, t).rows
        Mm = m.evaluate(t).rows
        for i in range(dn):
            for j in range(dm):
                row = [0] * nv
                for l in range(dn):
                    if Nn[i][l]:
                        row[l * dm + j] = F.add(row[l * dm + j], Nn[i][l])
                for l in range(dm):
                    if Mm[l][j]:
                        row[i * dm + l] = F.sub(row[i * dm + l], Mm[l][j])
                rows.append(row)
    return nv - Matrix(F, rows, nv).rank()


def induce(levi: LeviDatum, n: HeckeModule | SmoothCharacter, label: str | None = None, audit_against: list[HeckeModule] | None = None) -> HeckeModule:
    if isinstance(n, SmoothCharacter):
        n = torus_module(levi.levi, n)
    if n.desc != levi.levi:
        raise FunctorError("module does not live over the torus algebra of this Levi datum")
    if n.dim == 0:
        return zero_module(levi.ambient)
    try:
        ind = HeckeModule(levi.ambient, _induce_blocks(levi, n), label or f"Ind({n.label})")
    except ModuleError as exc:  # pragma: no cover - would flag a presentation bug
        raise FunctorError(f"induced module fails the relation audit: {exc}") from exc
    if ind.dim != 2 * n.dim:  # pragma: no cover
        raise FunctorError("induced module has the wrong dimension")
    # cyclic generation by n (x) 1 and the universal property against itself
    from .modules import generated_submodule

    head = Matrix(ind.field, [[1 if j == i else 0 for j in range(ind.dim)] for i in range(n.dim)], ind.dim)
    if generated_submodule(ind, head).nrows != ind.dim:  # pragma: no cover
        raise FunctorError("induced module is not generated by n (x) 1")
    for m in [ind] + list(audit_against or []):
        if hom_space(ind, m).dim != positive_hom_dim(levi, n, m):
            raise FunctorError(f"universal property of Ind fails against {m.label}")
    return ind


def right_adjoint(levi: LeviDatum, m: HeckeModule, label: str | None = None) -> HeckeModule:
    if m.desc != levi.ambient:
        raise FunctorError("module does not live over the ambient algebra")
    if m.dim == 0:
        return zero_module(levi.levi)
    A = m.evaluate(levi.z.inverse())
    E = eventual_image(A)
    if E.dim == 0:
        return zero_module(levi.levi)
    AEinv = E.restriction.inverse()
    zi = levi.z.inverse()
    gens: dict[str, Matrix] = {}
    for name, tT in length_zero_generators(levi.levi.datum).items():
        t = levi.embed(tT)
        j = levi.positive_shift(t)
        if j is None:  # pragma: no cover
            raise FunctorError(f"{t} cannot be made positive")
        mats = []
        for jj in (j, j + 1):
            pos = zi ** jj * t
            mats.append((AEinv ** jj) @ restrict(E.basis, m.evaluate(pos)))
        if mats[0] != mats[1]:
            raise FunctorError(f"decomposition audit failed for {name}")
        gens[name] = mats[0]
    return HeckeModule(levi.levi, gens, label or f"R({m.label})", E.dim)


@dataclass(frozen=True)
class AdjunctionReport:
    n_label: str
    m_label: str
    lhs: int  # dim Hom_H(Ind n, m)
    rhs: int  # dim Hom_{H_T}(n, R m)
    lhs_basis: tuple[Matrix, ...]
    rhs_basis: tuple[Matrix, ...]

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def adjunction_check(levi: LeviDatum, n: HeckeModule | SmoothCharacter, m: HeckeModule) -> AdjunctionReport:
    if isinstance(n, SmoothCharacter):
        n = torus_module(levi.levi, n)
    left = hom_space(induce(levi, n), m)
    right = hom_space(n, right_adjoint(levi, m))
    return AdjunctionReport(n.label, m.label, left.dim, right.dim, left.basis, right.basis)


def characters_with_finite_part(levi: LeviDatum, exps: tuple[int, ...]) -> list[SmoothCharacter]:
    """All smooth characters of the torus with the given finite exponents."""
    import itertools

    F = levi.ambient.field
    n = levi.levi.datum.n
    return [SmoothCharacter(F, exps, cs) for cs in itertools.product(list(F.units()), repeat=n)]


def induced_containing(levi: LeviDatum, m: HeckeModule) -> list[SmoothCharacter]:
    """Characters chi with Hom(m, Ind chi) != 0, searched over finite parts seen on m."""
    import itertools

    p = levi.ambient.p
    n = levi.levi.datum.n
    out = []
    for exps in itertools.product(range(p - 1), repeat=n):
        chi0 = SmoothCharacter(levi.ambient.field, exps, (1,) * n)
        # the finite torus of Ind chi has eigencharacters chi^-1 and (chi^s)^-1; m must share one
        if not _shares_torus_eigenvalue(levi, m, chi0):
            continue
        for chi in characters_with_finite_part(levi, exps):
            if hom_space(m, induce(levi, chi)).dim:
                out.append(chi)
    return out


def _shares_torus_eigenvalue(levi: LeviDatum, m: HeckeModule, chi: SmoothCharacter) -> bool:
    from .modules import generated_submodule  # noqa: F401  (kept local to avoid a cycle)

    F = m.field
    D = levi.ambient.datum
    lz = [(k, t) for k, t in length_zero_generators(D).items() if t.is_finite_torus]
    for variant in (chi, chi.conjugate()):
        rows = []
        for k, t in lz:
            val = F.inv(variant.value(torus_part(t)))
            rows.extend((m.gens[k] - Matrix.scalar(F, m.dim, val)).T().rows)
        # common eigenvector for the finite torus with these eigenvalues
        if Matrix(F, rows, m.dim).rank() < m.dim:
            return True
    return False
