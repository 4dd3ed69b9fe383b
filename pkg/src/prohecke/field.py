"""Finite fields GF(p^e) with elements encoded as small Python ints.

For e = 1 an element is its residue in 0..p-1.  For e > 1 the integer
sum(c_k * p^k) stands for the polynomial sum(c_k * X^k) modulo a fixed
monic irreducible polynomial of degree e, chosen as the lexicographically
first one.  Multiplication goes through log/exp tables.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterator


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    # coefficient lists, low degree first; mod is monic of degree e
    e = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, e - 1, -1):
        c = prod[k]
        if c:
            for j in range(e + 1):
                prod[k - e + j] = (prod[k - e + j] - c * mod[j]) % p
    return (prod + [0] * e)[:e]


def _has_root_free_factorisation(mod: list[int], p: int) -> bool:
    """True iff the monic polynomial has no factor of degree <= e/2 (brute force)."""
    e = len(mod) - 1
    for d in range(1, e // 2 + 1):
        # enumerate monic polynomials of degree d
        for code in range(p ** d):
            g = [(code // p ** k) % p for k in range(d)] + [1]
            if _poly_rem(mod, g, p) == [0] * d:
                return False
    return True


def _poly_rem(a: list[int], g: list[int], p: int) -> list[int]:
    d = len(g) - 1
    r = list(a)
    inv_lead = pow(g[-1], p - 2, p)
    for k in range(len(r) - 1, d - 1, -1):
        c = r[k] * inv_lead % p
        if c:
            for j in range(d + 1):
                r[k - d + j] = (r[k - d + j] - c * g[j]) % p
    return (r + [0] * d)[:d]


@lru_cache(maxsize=None)
def _irreducible(p: int, e: int) -> tuple[int, ...]:
    for code in range(p ** e):
        mod = [(code // p ** k) % p for k in range(e)] + [1]
        if mod[0] == 0:
            continue
        if _has_root_free_factorisation(mod, p):
            return tuple(mod)
    raise FieldError(f"no irreducible polynomial of degree {e} over F_{p}")


class GF:
    """The field with q = p^e elements."""

    def __init__(self, p: int, e: int = 1):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if e < 1:
            raise FieldError("degree must be positive")
        self.p = p
        self.e = e
        self.q = p ** e
        self.modulus: tuple[int, ...] = (0, 1) if e == 1 else _irreducible(p, e)
        self._build_tables()

    # -- construction helpers
    def _digits(self, a: int) -> list[int]:
        return [(a // self.p ** k) % self.p for k in range(self.e)]

    def _from_digits(self, ds: list[int]) -> int:
        return sum(d * self.p ** k for k, d in enumerate(ds))

    def _slow_mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        return self._from_digits(_poly_mulmod(self._digits(a), self._digits(b), list(self.modulus), self.p))

    def _build_tables(self) -> None:
        q = self.q
        for g in range(2, q) if q > 2 else [1]:
            exp = [1]
            x = g
            while x != 1:
                exp.append(x)
                x = self._slow_mul(x, g)
            if len(exp) == q - 1:
                break
        else:  # pragma: no cover - every finite field has a primitive element
            raise FieldError("no primitive element")
        self.generator = g
        self._exp = exp
        self._log = {v: k for k, v in enumerate(exp)}

    # -- arithmetic
    def __eq__(self, other: object) -> bool:
        return isinstance(other, GF) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self) -> int:
        return hash((self.p, self.e))

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __call__(self, n: int) -> int:
        """Image of an integer (prime-field element)."""
        return n % self.p

    def elements(self) -> Iterator[int]:
        return iter(range(self.q))

    def units(self) -> Iterator[int]:
        return iter(range(1, self.q))

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        return self._from_digits([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a: int) -> int:
        if self.e == 1:
            return -a % self.p
        return self._from_digits([-x % self.p for x in self._digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[-self._log[a] % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if n == 0 else 0
        return self._exp[self._log[a] * n % (self.q - 1)]

    def log(self, a: int) -> int:
        """Discrete log with respect to self.generator."""
        return self._log[a]

    def exp(self, k: int) -> int:
        return self._exp[k % (self.q - 1)]

    def prime_generator(self) -> int:
        """A generator of the prime field's unit group F_p^x."""
        return self.exp((self.q - 1) // (self.p - 1))

    def prime_log(self, u: int) -> int:
        """Log of u in F_p^x with respect to prime_generator(); u is an int in 1..p-1."""
        k = self._log[u % self.p]
        return k // ((self.q - 1) // (self.p - 1))

    def sum(self, xs) -> int:
        total = 0
        for x in xs:
            total = self.add(total, x)
        return total
