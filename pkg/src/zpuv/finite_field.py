"""Arithmetic in Z_p and in Z_p[x].

Polynomials are dense coefficient tuples in ascending degree order with no
trailing zeros, so ``a_0 + a_1 x + ... + a_n x^n`` is ``(a_0, ..., a_n)`` and
the zero polynomial is ``()``.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

MAX_P = 257
FACTOR_DEGREE_GUARD = 64

# degree of the zero polynomial
NEG_INF = -math.inf


class SearchBoundExceeded(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not 2 <= self.p <= MAX_P:
            raise ValueError(f"modulus must be an integer in [2, {MAX_P}], got {self.p!r}")
        if not _is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse mod p")
        return pow(a, -1, self.p)

    def elements(self) -> range:
        return range(self.p)


@functools.lru_cache(maxsize=None)
def field(p: int) -> PrimeField:
    return PrimeField(p)


class FpPoly:
    """Polynomial over Z_p in canonical ascending form."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Iterable[int] = (), p: int | PrimeField = 2):
        fld = p if isinstance(p, PrimeField) else field(p)
        cs = [int(c) % fld.p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "field", fld)

    def __setattr__(self, name, value):
        raise AttributeError("FpPoly is immutable")

    # constructors

    @classmethod
    def zero(cls, p) -> FpPoly:
        return cls((), p)

    @classmethod
    def one(cls, p) -> FpPoly:
        return cls((1,), p)

    @classmethod
    def monomial(cls, n: int, p, c: int = 1) -> FpPoly:
        return cls([0] * n + [c], p)

    @classmethod
    def xn_minus(cls, n: int, p, c: int = 1) -> FpPoly:
        """x^n - c."""
        return cls([-c] + [0] * (n - 1) + [1], p) if n > 0 else cls([1 - c], p)

    # basic properties

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def degree(self) -> int | float:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lead == 1

    def monic(self) -> FpPoly:
        if not self.coeffs:
            return self
        inv = self.field.inv(self.lead)
        return FpPoly([c * inv for c in self.coeffs], self.field)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def padded(self, n: int) -> tuple[int, ...]:
        """Coefficient tuple of exact length n (requires deg < n)."""
        if len(self.coeffs) > n:
            raise ValueError(f"degree {self.degree} does not fit in {n} slots")
        return self.coeffs + (0,) * (n - len(self.coeffs))

    # arithmetic

    def _check(self, other: FpPoly) -> None:
        if self.field != other.field:
            raise ValueError(f"field mismatch: Z_{self.p} vs Z_{other.p}")

    def _coerce(self, other) -> FpPoly:
        if isinstance(other, int):
            return FpPoly((other,), self.field)
        if isinstance(other, FpPoly):
            self._check(other)
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return FpPoly((self[i] + other[i] for i in range(n)), self.field)

    __radd__ = __add__

    def __neg__(self) -> FpPoly:
        return FpPoly((-c for c in self.coeffs), self.field)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return FpPoly((), self.field)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return FpPoly(out, self.field)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> FpPoly:
        result = FpPoly.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: FpPoly):
        return poly_divmod(self, other)

    def __floordiv__(self, other: FpPoly) -> FpPoly:
        return poly_divmod(self, other)[0]

    def __mod__(self, other: FpPoly) -> FpPoly:
        return poly_divmod(self, other)[1]

    def shift(self, k: int) -> FpPoly:
        """Multiply by x^k."""
        return FpPoly((0,) * k + self.coeffs, self.field) if self.coeffs else self

    def reduce_cyclic(self, n: int, c: int = 1) -> FpPoly:
        """Reduce modulo x^n - c by folding high coefficients."""
        if n <= 0:
            return FpPoly((), self.field)
        out = [0] * n
        for i, a in enumerate(self.coeffs):
            q, r = divmod(i, n)
            out[r] += a * pow(c, q, self.p)
        return FpPoly(out, self.field)

    # comparison / hashing

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = FpPoly((other,), self.field)
        if not isinstance(other, FpPoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.p, self.coeffs))

    def sort_key(self) -> tuple:
        return (len(self.coeffs), self.coeffs)

    def __repr__(self) -> str:
        return f"FpPoly({list(self.coeffs)}, p={self.p})"

    def __str__(self) -> str:
        return format_poly(self.coeffs)


def format_poly(coeffs: Sequence, var: str = "x") -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        cs = str(c)
        if i == 0:
            terms.append(cs)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            terms.append(mono if cs == "1" else f"({cs}){mono}" if "+" in cs else f"{cs}{mono}")
    return " + ".join(terms) if terms else "0"


def poly_divmod(num: FpPoly, den: FpPoly) -> tuple[FpPoly, FpPoly]:
    """Euclidean division: num = den*quot + rem, deg rem < deg den."""
    num._check(den)
    if den.is_zero():
        raise ZeroDivisionError("zero divisor polynomial")
    p = num.p
    rem = list(num.coeffs)
    dd = len(den.coeffs) - 1
    if len(rem) - 1 < dd:
        return FpPoly((), num.field), num
    inv = num.field.inv(den.lead)
    quot = [0] * (len(rem) - dd)
    for i in range(len(rem) - 1, dd - 1, -1):
        c = rem[i] * inv % p
        if c:
            quot[i - dd] = c
            for j, d in enumerate(den.coeffs):
                rem[i - dd + j] = (rem[i - dd + j] - c * d) % p
    return FpPoly(quot, num.field), FpPoly(rem[:dd], num.field)


def poly_gcd(a: FpPoly, b: FpPoly) -> FpPoly:
    """Monic gcd; gcd(a, 0) = monic(a)."""
    a._check(b)
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, poly_divmod(a, b)[1]
    return a.monic()


def gcd_many(*polys: FpPoly) -> FpPoly:
    nonzero = [f for f in polys if not f.is_zero()]
    if not nonzero:
        raise ValueError("gcd of zero polynomials is undefined")
    return functools.reduce(poly_gcd, nonzero[1:], nonzero[0].monic())


def divides(a: FpPoly, b: FpPoly) -> bool:
    if a.is_zero():
        raise ValueError("divisibility by the zero polynomial is undefined")
    return poly_divmod(b, a)[1].is_zero()


def exact_div(num: FpPoly, den: FpPoly) -> FpPoly:
    q, r = poly_divmod(num, den)
    if not r.is_zero():
        raise ArithmeticError(f"{den} does not divide {num}")
    return q


def _monic_polys(degree: int, fld: PrimeField):
    for tail in itertools.product(range(fld.p), repeat=degree):
        yield FpPoly(tail + (1,), fld)


def factor_xn_minus_1(n: int, fld: PrimeField) -> list[tuple[FpPoly, int]]:
    """Irreducible factorisation of x^n - 1 as (factor, multiplicity) pairs.

    Writes n = p^k m with p not dividing m, factors the squarefree x^m - 1 by
    degree-by-degree trial division, then raises every multiplicity by p^k.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > FACTOR_DEGREE_GUARD:
        raise SearchBoundExceeded(f"search bound exceeded: n={n} > {FACTOR_DEGREE_GUARD}")
    p = fld.p
    m, mult = n, 1
    while m % p == 0:
        m //= p
        mult *= p
    rest = FpPoly.xn_minus(m, fld)
    factors: list[tuple[FpPoly, int]] = []
    d = 1
    while rest.degree > 0:
        if 2 * d > rest.degree:
            factors.append((rest.monic(), mult))
            break
        for cand in _monic_polys(d, fld):
            q, r = poly_divmod(rest, cand)
            if r.is_zero():
                factors.append((cand, mult))
                rest = q
        d += 1
    factors.sort(key=lambda fm: fm[0].sort_key())
    return factors


def divisors_of_xn_minus_1(n: int, fld: PrimeField | int) -> list[FpPoly]:
    """All monic divisors of x^n - 1, sorted by (degree, coefficients)."""
    if isinstance(fld, int):
        fld = field(fld)
    factors = factor_xn_minus_1(n, fld)
    out = []
    for exps in itertools.product(*(range(e + 1) for _, e in factors)):
        f = FpPoly.one(fld)
        for (g, _), e in zip(factors, exps):
            f = f * g**e
        out.append(f)
    out.sort(key=FpPoly.sort_key)
    return out


def all_polys(max_degree: int, fld: PrimeField | int) -> list[FpPoly]:
    """Every polynomial of degree <= max_degree, including zero."""
    if isinstance(fld, int):
        fld = field(fld)
    if max_degree < 0:
        return [FpPoly.zero(fld)]
    return [FpPoly(cs, fld) for cs in itertools.product(range(fld.p), repeat=max_degree + 1)]
