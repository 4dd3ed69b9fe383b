"""Second code path for the classification of small simple modules.

Independent of the module and algebra layers: 2x2 matrices are 4-tuples of
ints mod p, relations are written out by hand from the presentation
(finite torus, length-zero conjugation, Pi^2 central, quadratic relations),
and isomorphism classes are canonical forms under full GL2(F_p) conjugation.
Used to cross-check classify_simples at p = 5.
"""
from __future__ import annotations

import itertools
from typing import Iterator

Mat = tuple[int, int, int, int]


def _mm(a: Mat, b: Mat, p: int) -> Mat:
    return (
        (a[0] * b[0] + a[1] * b[2]) % p,
        (a[0] * b[1] + a[1] * b[3]) % p,
        (a[2] * b[0] + a[3] * b[2]) % p,
        (a[2] * b[1] + a[3] * b[3]) % p,
    )


def _det(a: Mat, p: int) -> int:
    return (a[0] * a[3] - a[1] * a[2]) % p


def _inv(a: Mat, p: int) -> Mat:
    di = pow(_det(a, p), p - 2, p)
    return (a[3] * di % p, -a[1] * di % p, -a[2] * di % p, a[0] * di % p)


def _scale(c: int, a: Mat, p: int) -> Mat:
    return tuple(c * x % p for x in a)  # type: ignore[return-value]


def _primitive_root(p: int) -> int:
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in range(2, p) if (p - 1) % q == 0 and all(q % r for r in range(2, q))):
            return g
    return 1


def _all_mats(p: int) -> Iterator[Mat]:
    return itertools.product(range(p), repeat=4)  # type: ignore[return-value]


def _gl2(p: int) -> list[Mat]:
    return [m for m in _all_mats(p) if _det(m, p)]


def _canonical(gens: tuple[Mat, ...], p: int, group: list[Mat]) -> tuple[Mat, ...]:
    best = None
    for P in group:
        Pi = _inv(P, p)
        conj = tuple(_mm(_mm(Pi, X, p), P, p) for X in gens)
        if best is None or conj < best:
            best = conj
    return best  # type: ignore[return-value]


def _has_common_line(gens: tuple[Mat, ...], p: int) -> bool:
    # row convention: a line <v> is stable when v @ X is a multiple of v
    for v in [(1, y) for y in range(p)] + [(0, 1)]:
        ok = True
        for X in gens:
            w = ((v[0] * X[0] + v[1] * X[2]) % p, (v[0] * X[1] + v[1] * X[3]) % p)
            if (v[0] * w[1] - v[1] * w[0]) % p:
                ok = False
                break
        if ok:
            return True
    return False


def _gl2_torus(x: int, y: int, exps: tuple[int, int], p: int) -> Mat:
    a, b = exps
    return (pow(x, a % (p - 1), p) * pow(y, b % (p - 1), p) % p, 0, 0, pow(x, b % (p - 1), p) * pow(y, a % (p - 1), p) % p)


def _sl2_torus(x: int, a: int, p: int) -> Mat:
    return (pow(x, a % (p - 1), p), 0, 0, pow(x, -a % (p - 1), p))


def _gl2_c(exps: tuple[int, int], p: int) -> Mat:
    # sum of the torus action over diag(x, -1/x)
    out = (0, 0, 0, 0)
    for x in range(1, p):
        t = _gl2_torus(x, (-pow(x, p - 2, p)) % p, exps, p)
        out = tuple((u + v) % p for u, v in zip(out, t))  # type: ignore[assignment]
    return out


def _sl2_c(a: int, p: int) -> Mat:
    out = (0, 0, 0, 0)
    for x in range(1, p):
        t = _sl2_torus(x, a, p)
        out = tuple((u + v) % p for u, v in zip(out, t))  # type: ignore[assignment]
    return out


def enumerate_gl2(p: int, dim: int, exps: tuple[int, int], pi_square: int = 1) -> set[tuple[Mat, ...]]:
    """Canonical forms (t1, t2, s0, s1, pi) of simple GL2 modules, as 2x2 blocks.

    Dimension 1 modules are embedded as the top-left entry of a 2x2 matrix
    with zeros elsewhere so both dimensions share a format.
    """
    g = _primitive_root(p)
    if dim == 1:
        out = set()
        nu = _gl2_torus(g, 1, exps, p)[0], _gl2_torus(1, g, exps, p)[0]
        nu_s = _gl2_torus(g, 1, exps, p)[3], _gl2_torus(1, g, exps, p)[3]
        c = _gl2_c(exps, p)[0]
        for s1, lam in itertools.product(range(p), range(1, p)):
            if lam * lam % p != pi_square % p or s1 * s1 % p != c * s1 % p:
                continue
            if nu != nu_s:  # Pi conjugates the torus through the swap
                continue
            one = lambda v: (v % p, 0, 0, 0)  # noqa: E731
            out.add((one(nu[0]), one(nu[1]), one(s1), one(s1), one(lam)))
        return out
    t1, t2 = _gl2_torus(g, 1, exps, p), _gl2_torus(1, g, exps, p)
    t1s, t2s = _gl2_torus(1, g, exps, p), _gl2_torus(g, 1, exps, p)
    c1 = _gl2_c(exps, p)
    zeta = (pi_square % p, 0, 0, pi_square % p)
    s1s = [S for S in _all_mats(p)
           if _mm(S, S, p) == _mm(c1, S, p)
           and _mm(S, t1, p) == _mm(t1s, S, p) and _mm(S, t2, p) == _mm(t2s, S, p)]
    pis = [P for P in _gl2(p)
           if _mm(P, P, p) == zeta and _mm(P, t1, p) == _mm(t1s, P, p) and _mm(P, t2, p) == _mm(t2s, P, p)]
    group = _gl2(p)
    out = set()
    for S1, P in itertools.product(s1s, pis):
        S0 = _mm(_mm(P, S1, p), _inv(P, p), p)
        c0 = _mm(_mm(P, c1, p), _inv(P, p), p)
        if _mm(S0, S0, p) != _mm(c0, S0, p):
            continue
        gens = (t1, t2, S0, S1, P)
        if _has_common_line(gens, p):
            continue
        out.add(_canonical(gens, p, group))
    return out


def enumerate_sl2(p: int, dim: int, a: int) -> set[tuple[Mat, ...]]:
    """Canonical forms (t, s0, s1) of simple SL2 modules with torus exponent a."""
    g = _primitive_root(p)
    t = _sl2_torus(g, a, p)
    ts = _sl2_torus(g, -a, p)
    c = _sl2_c(a, p)
    if dim == 1:
        out = set()
        for s0, s1 in itertools.product(range(p), repeat=2):
            if any(s * s % p != c[0] * s % p for s in (s0, s1)):
                continue
            if t[0] != ts[0] and (s0 or s1):
                continue
            one = lambda v: (v % p, 0, 0, 0)  # noqa: E731
            out.add((one(t[0]), one(s0), one(s1)))
        return out
    ss = [S for S in _all_mats(p) if _mm(S, S, p) == _mm(c, S, p) and _mm(S, t, p) == _mm(ts, S, p)]
    group = _gl2(p)
    out = set()
    for S0, S1 in itertools.product(ss, repeat=2):
        gens = (t, S0, S1)
        if _has_common_line(gens, p):
            continue
        out.add(_canonical(gens, p, group))
    return out


def canonical_form(m) -> tuple[Mat, ...]:
    """Canonical form of a module produced by the main code path, in the format above."""
    p = m.desc.p
    order = ("t1", "t2", "s0", "s1", "pi") if m.desc.datum.kind == "GL2" else ("t", "s0", "s1")
    gens = []
    for k in order:
        A = m.gens[k]
        if m.dim == 1:
            gens.append((A[0, 0], 0, 0, 0))
        else:
            gens.append((A[0, 0], A[0, 1], A[1, 0], A[1, 1]))
    gens = tuple(gens)
    if m.dim == 1:
        return gens
    return _canonical(gens, p, _gl2(p))
