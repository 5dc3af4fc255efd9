"""Prime-field arithmetic and dense univariate polynomials over F_q.

Field elements are plain Python ints in ``[0, q)``. A :class:`Polynomial`
stores its coefficients lowest degree first together with an explicit
degree bound; equality is by value, ignoring trailing zero coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DuplicateAbscissa, FieldMismatch, NoPrimeInRange

MAX_MODULUS = 1 << 61

# Deterministic for every n < 3.3e24, which covers the whole 64-bit range.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def find_prime(lo: int, hi: int) -> int:
    """Return the smallest prime ``p`` with ``lo <= p <= hi``."""
    if lo < 2 or hi < lo:
        raise NoPrimeInRange(f"invalid range [{lo}, {hi}]")
    for p in range(lo, hi + 1):
        if is_prime(p):
            return p
    raise NoPrimeInRange(f"no prime in [{lo}, {hi}]")


@dataclass(frozen=True)
class PrimeField:
    q: int

    def __post_init__(self):
        if not (2 <= self.q <= MAX_MODULUS) or not is_prime(self.q):
            raise ValueError(f"modulus {self.q} is not a prime <= 2^61")

    def __contains__(self, x) -> bool:
        return isinstance(x, int) and not isinstance(x, bool) and 0 <= x < self.q

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.q

    def mul(self, a: int, b: int) -> int:
        return a * b % self.q

    def neg(self, a: int) -> int:
        return -a % self.q

    def inv(self, a: int) -> int:
        if a % self.q == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, self.q - 2, self.q)

    def random(self, rng) -> int:
        return rng.randrange(self.q)


@dataclass(frozen=True, eq=False)
class Polynomial:
    field: PrimeField
    coeffs: tuple
    degree_bound: int

    def __post_init__(self):
        if len(self.coeffs) > self.degree_bound + 1:
            raise ValueError(
                f"{len(self.coeffs)} coefficients exceed degree bound {self.degree_bound}"
            )

    @classmethod
    def of(cls, field: PrimeField, coeffs: Iterable[int], degree_bound: int | None = None):
        q = field.q
        cs = tuple(c % q for c in coeffs)
        if degree_bound is None:
            degree_bound = max(len(cs) - 1, 0)
        return cls(field, cs, degree_bound)

    @classmethod
    def zero(cls, field: PrimeField, degree_bound: int = 0):
        return cls(field, (), degree_bound)

    def trimmed(self) -> tuple:
        cs = self.coeffs
        end = len(cs)
        while end and cs[end - 1] == 0:
            end -= 1
        return cs[:end]

    def degree(self) -> int:
        """Actual degree; -1 for the zero polynomial."""
        return len(self.trimmed()) - 1

    def padded(self) -> tuple:
        """Coefficients padded with zeros to ``degree_bound + 1`` entries."""
        return self.coeffs + (0,) * (self.degree_bound + 1 - len(self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self.trimmed() == other.trimmed()

    def __hash__(self):
        return hash((self.field.q, self.trimmed()))

    def __call__(self, x: int) -> int:
        return poly_eval(self, x)

    def __add__(self, other):
        return poly_add(self, other)

    def __sub__(self, other):
        return poly_sub(self, other)

    def __mul__(self, other):
        if isinstance(other, int):
            return poly_scale(self, other)
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __neg__(self):
        return poly_scale(self, -1)

    def __repr__(self):
        return f"Polynomial(q={self.field.q}, coeffs={list(self.coeffs)}, bound={self.degree_bound})"


def _same_field(a: Polynomial, b: Polynomial) -> PrimeField:
    if a.field != b.field:
        raise FieldMismatch(f"F_{a.field.q} vs F_{b.field.q}")
    return a.field


def poly_eval(p: Polynomial, x: int) -> int:
    q = p.field.q
    acc = 0
    for c in reversed(p.coeffs):
        acc = (acc * x + c) % q
    return acc


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    f = _same_field(a, b)
    q = f.q
    n = max(len(a.coeffs), len(b.coeffs))
    ac = a.coeffs + (0,) * (n - len(a.coeffs))
    bc = b.coeffs + (0,) * (n - len(b.coeffs))
    return Polynomial(f, tuple((x + y) % q for x, y in zip(ac, bc)),
                      max(a.degree_bound, b.degree_bound))


def poly_sub(a: Polynomial, b: Polynomial) -> Polynomial:
    f = _same_field(a, b)
    q = f.q
    n = max(len(a.coeffs), len(b.coeffs))
    ac = a.coeffs + (0,) * (n - len(a.coeffs))
    bc = b.coeffs + (0,) * (n - len(b.coeffs))
    return Polynomial(f, tuple((x - y) % q for x, y in zip(ac, bc)),
                      max(a.degree_bound, b.degree_bound))


def poly_scale(p: Polynomial, k: int) -> Polynomial:
    q = p.field.q
    return Polynomial(p.field, tuple(c * k % q for c in p.coeffs), p.degree_bound)


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    f = _same_field(a, b)
    q = f.q
    bound = a.degree_bound + b.degree_bound
    if not a.coeffs or not b.coeffs:
        return Polynomial(f, (), bound)
    out = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                out[i + j] += x * y
    return Polynomial(f, tuple(c % q for c in out), bound)


def poly_sum(field: PrimeField, polys: Iterable[Polynomial], degree_bound: int = 0) -> Polynomial:
    q = field.q
    acc: list[int] = []
    for p in polys:
        if p.field != field:
            raise FieldMismatch(f"F_{p.field.q} vs F_{field.q}")
        degree_bound = max(degree_bound, p.degree_bound)
        if len(p.coeffs) > len(acc):
            acc.extend([0] * (len(p.coeffs) - len(acc)))
        for i, c in enumerate(p.coeffs):
            acc[i] += c
    return Polynomial(field, tuple(c % q for c in acc), degree_bound)


def _basis_numerators(field: PrimeField, xs: Sequence[int]) -> list[list[int]]:
    """Coefficient vectors of the Lagrange basis polynomials for abscissae ``xs``."""
    q = field.q
    k = len(xs)
    # Full product prod_j (x - x_j), then synthetic division per basis element.
    full = [1]
    for xj in xs:
        nxt = [0] * (len(full) + 1)
        for i, c in enumerate(full):
            nxt[i + 1] = (nxt[i + 1] + c) % q
            nxt[i] = (nxt[i] - c * xj) % q
        full = nxt
    basis = []
    for i, xi in enumerate(xs):
        # full / (x - xi)
        quot = [0] * k
        carry = 0
        for d in range(k, 0, -1):
            carry = (full[d] + carry * xi) % q
            quot[d - 1] = carry
        denom = 1
        for j, xj in enumerate(xs):
            if j != i:
                denom = denom * (xi - xj) % q
        inv = pow(denom, q - 2, q)
        basis.append([c * inv % q for c in quot])
    return basis


@lru_cache(maxsize=256)
def lagrange_basis(q: int, xs: tuple) -> tuple:
    """Cached Lagrange basis coefficient vectors over F_q for distinct ``xs``."""
    field = PrimeField(q)
    if len({x % q for x in xs}) != len(xs):
        raise DuplicateAbscissa(f"abscissae {xs} are not distinct mod {q}")
    return tuple(tuple(row) for row in _basis_numerators(field, [x % q for x in xs]))


def poly_interpolate(field: PrimeField, points: Sequence[tuple[int, int]]) -> Polynomial:
    """Unique polynomial of degree < len(points) through ``points``."""
    if not points:
        return Polynomial.zero(field)
    if len(points) > field.q:
        raise DuplicateAbscissa("more points than field elements")
    xs = tuple(x % field.q for x, _ in points)
    basis = lagrange_basis(field.q, xs)
    q = field.q
    k = len(points)
    out = [0] * k
    for (_, y), row in zip(points, basis):
        y %= q
        if y:
            for d in range(k):
                out[d] += y * row[d]
    return Polynomial(field, tuple(c % q for c in out), k - 1)


def random_poly(field: PrimeField, degree_bound: int, rng) -> Polynomial:
    """Polynomial with ``degree_bound + 1`` independent uniform coefficients."""
    if degree_bound < 0:
        raise ValueError("degree_bound must be >= 0")
    q = field.q
    return Polynomial(field, tuple(rng.randrange(q) for _ in range(degree_bound + 1)), degree_bound)
