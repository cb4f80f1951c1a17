"""The local ring R = Z_p + uZ_p + vZ_p with u^2 = v^2 = uv = vu = 0.

An element ``a + ub + vc`` is an :class:`RElem`.  Polynomials over R are kept
as three Z_p[x] components, ``A + uB + vC``, which makes products cheap:
``(A1 + uB1 + vC1)(A2 + uB2 + vC2) = A1A2 + u(A1B2 + B1A2) + v(A1C2 + C1A2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .finite_field import NEG_INF, FpPoly, PrimeField, field, format_poly


@dataclass(frozen=True)
class RElem:
    a: int
    b: int
    c: int
    p: int

    def __post_init__(self):
        field(self.p)
        object.__setattr__(self, "a", self.a % self.p)
        object.__setattr__(self, "b", self.b % self.p)
        object.__setattr__(self, "c", self.c % self.p)

    @classmethod
    def zero(cls, p: int) -> RElem:
        return cls(0, 0, 0, p)

    @classmethod
    def one(cls, p: int) -> RElem:
        return cls(1, 0, 0, p)

    @classmethod
    def u(cls, p: int) -> RElem:
        return cls(0, 1, 0, p)

    @classmethod
    def v(cls, p: int) -> RElem:
        return cls(0, 0, 1, p)

    @classmethod
    def all(cls, p: int) -> list[RElem]:
        return [cls(a, b, c, p) for a in range(p) for b in range(p) for c in range(p)]

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def _coerce(self, other) -> RElem:
        if isinstance(other, int):
            return RElem(other, 0, 0, self.p)
        if isinstance(other, RElem):
            if other.p != self.p:
                raise ValueError(f"ring mismatch: p={self.p} vs p={other.p}")
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RElem(self.a + o.a, self.b + o.b, self.c + o.c, self.p)

    __radd__ = __add__

    def __neg__(self) -> RElem:
        return RElem(-self.a, -self.b, -self.c, self.p)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return relem_mul(self, o)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> RElem:
        if n < 0:
            return relem_inverse(self) ** (-n)
        result, base = RElem.one(self.p), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self.a or self.b or self.c)

    def __str__(self) -> str:
        parts = []
        if self.a:
            parts.append(str(self.a))
        if self.b:
            parts.append("u" if self.b == 1 else f"{self.b}u")
        if self.c:
            parts.append("v" if self.c == 1 else f"{self.c}v")
        return "+".join(parts) if parts else "0"


def relem_mul(x: RElem, y: RElem) -> RElem:
    return RElem(x.a * y.a, x.a * y.b + x.b * y.a, x.a * y.c + x.c * y.a, x.p)


def is_unit(x: RElem) -> bool:
    return x.a != 0


def relem_inverse(x: RElem) -> RElem:
    """(a + ub + vc)^-1 = a^-1 - u a^-2 b - v a^-2 c."""
    if not is_unit(x):
        raise ZeroDivisionError(f"{x} is not a unit of R")
    ai = pow(x.a, -1, x.p)
    return RElem(ai, -ai * ai * x.b, -ai * ai * x.c, x.p)


def rho(x: RElem) -> int:
    return x.a


def phi(x: RElem) -> tuple[int, int]:
    """Reduction mod v onto Z_p[u]; returns (a, b) for a + ub."""
    return (x.a, x.b)


def phi_mul(x: tuple[int, int], y: tuple[int, int], p: int) -> tuple[int, int]:
    """Product in Z_p[u] with u^2 = 0."""
    return (x[0] * y[0] % p, (x[0] * y[1] + x[1] * y[0]) % p)


class RPoly:
    """Polynomial over R stored as free, u- and v-components in Z_p[x]."""

    __slots__ = ("free", "upart", "vpart")

    def __init__(self, free: FpPoly, upart: FpPoly | None = None, vpart: FpPoly | None = None):
        fld = free.field
        upart = upart if upart is not None else FpPoly.zero(fld)
        vpart = vpart if vpart is not None else FpPoly.zero(fld)
        if upart.field != fld or vpart.field != fld:
            raise ValueError("component fields differ")
        object.__setattr__(self, "free", free)
        object.__setattr__(self, "upart", upart)
        object.__setattr__(self, "vpart", vpart)

    def __setattr__(self, name, value):
        raise AttributeError("RPoly is immutable")

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[RElem | tuple | int], p: int) -> RPoly:
        a, b, c = [], [], []
        for e in coeffs:
            if isinstance(e, RElem):
                e = e.as_tuple()
            elif isinstance(e, int):
                e = (e, 0, 0)
            a.append(e[0])
            b.append(e[1])
            c.append(e[2])
        return cls(FpPoly(a, p), FpPoly(b, p), FpPoly(c, p))

    @classmethod
    def lift(cls, f: FpPoly) -> RPoly:
        return cls(f)

    @classmethod
    def zero(cls, p: int) -> RPoly:
        return cls(FpPoly.zero(p))

    @classmethod
    def one(cls, p: int) -> RPoly:
        return cls(FpPoly.one(p))

    @classmethod
    def constant(cls, e: RElem) -> RPoly:
        return cls.from_coeffs([e], e.p)

    @classmethod
    def x(cls, p: int) -> RPoly:
        return cls(FpPoly.monomial(1, p))

    @classmethod
    def xn_minus(cls, n: int, lam: RElem) -> RPoly:
        """x^n - lam."""
        if n == 0:
            return cls.one(lam.p) - cls.constant(lam)
        return cls.from_coeffs([-lam] + [0] * (n - 1) + [1], lam.p)

    @property
    def p(self) -> int:
        return self.free.p

    @property
    def field(self) -> PrimeField:
        return self.free.field

    @property
    def degree(self) -> int | float:
        return max(self.free.degree, self.upart.degree, self.vpart.degree)

    def __len__(self) -> int:
        d = self.degree
        return 0 if d == NEG_INF else int(d) + 1

    def __getitem__(self, i: int) -> RElem:
        return RElem(self.free[i], self.upart[i], self.vpart[i], self.p)

    @property
    def coeffs(self) -> tuple[RElem, ...]:
        return tuple(self[i] for i in range(len(self)))

    @property
    def lead(self) -> RElem:
        return self[len(self) - 1] if len(self) else RElem.zero(self.p)

    def is_zero(self) -> bool:
        return self.free.is_zero() and self.upart.is_zero() and self.vpart.is_zero()

    def is_fp(self) -> bool:
        """True when there is no nilpotent part."""
        return self.upart.is_zero() and self.vpart.is_zero()

    def _coerce(self, other) -> RPoly:
        if isinstance(other, int):
            return RPoly(FpPoly((other,), self.field))
        if isinstance(other, FpPoly):
            return RPoly(other)
        if isinstance(other, RElem):
            return RPoly.constant(other)
        if isinstance(other, RPoly):
            if other.p != self.p:
                raise ValueError(f"ring mismatch: p={self.p} vs p={other.p}")
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RPoly(self.free + o.free, self.upart + o.upart, self.vpart + o.vpart)

    __radd__ = __add__

    def __neg__(self) -> RPoly:
        return RPoly(-self.free, -self.upart, -self.vpart)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RPoly(
            self.free * o.free,
            self.free * o.upart + self.upart * o.free,
            self.free * o.vpart + self.vpart * o.free,
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> RPoly:
        result, base = RPoly.one(self.p), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def times_u(self) -> RPoly:
        z = FpPoly.zero(self.field)
        return RPoly(z, self.free, z)

    def times_v(self) -> RPoly:
        z = FpPoly.zero(self.field)
        return RPoly(z, z, self.free)

    def shift(self, k: int) -> RPoly:
        return RPoly(self.free.shift(k), self.upart.shift(k), self.vpart.shift(k))

    def scale(self, e: RElem) -> RPoly:
        return self * RPoly.constant(e)

    def reduce(self, beta: int, lam: RElem) -> RPoly:
        """Reduce modulo x^beta - lam (x^beta is rewritten as lam)."""
        if beta < 1:
            raise ValueError("beta must be >= 1")
        out = [RElem.zero(self.p)] * beta
        lam_pows = [RElem.one(self.p)]
        for i, c in enumerate(self.coeffs):
            q, r = divmod(i, beta)
            while len(lam_pows) <= q:
                lam_pows.append(lam_pows[-1] * lam)
            out[r] = out[r] + c * lam_pows[q]
        return RPoly.from_coeffs(out, self.p)

    def padded(self, n: int) -> tuple[RElem, ...]:
        if len(self) > n:
            raise ValueError(f"degree {self.degree} does not fit in {n} slots")
        return self.coeffs + (RElem.zero(self.p),) * (n - len(self))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, FpPoly, RElem)):
            other = self._coerce(other)
        if not isinstance(other, RPoly):
            return NotImplemented
        return (self.free, self.upart, self.vpart) == (other.free, other.upart, other.vpart)

    def __hash__(self) -> int:
        return hash((self.free, self.upart, self.vpart))

    def __repr__(self) -> str:
        return f"RPoly({[e.as_tuple() for e in self.coeffs]}, p={self.p})"

    def __str__(self) -> str:
        return format_poly([str(e) if e else 0 for e in self.coeffs])


def rho_poly(f: RPoly) -> FpPoly:
    return f.free


def phi_poly(f: RPoly) -> tuple[FpPoly, FpPoly]:
    return (f.free, f.upart)


def is_regular(f: RPoly) -> bool:
    """Non-zero-divisor test in R[x]: some coefficient has a nonzero free part."""
    return not f.free.is_zero()


def rpoly_divmod_leadunit(num: RPoly, den: RPoly) -> tuple[RPoly, RPoly]:
    """Division by a polynomial whose leading coefficient is a unit of R."""
    if num.p != den.p:
        raise ValueError("ring mismatch")
    if den.is_zero():
        raise ZeroDivisionError("zero divisor polynomial")
    lead = den.lead
    if not is_unit(lead):
        raise ValueError("leading coefficient not invertible")
    inv = relem_inverse(lead)
    dd = len(den) - 1
    rem = list(num.coeffs)
    if len(rem) - 1 < dd:
        return RPoly.zero(num.p), num
    dcoeffs = den.coeffs
    quot = [RElem.zero(num.p)] * (len(rem) - dd)
    for i in range(len(rem) - 1, dd - 1, -1):
        c = rem[i] * inv
        if c:
            quot[i - dd] = c
            for j, d in enumerate(dcoeffs):
                rem[i - dd + j] = rem[i - dd + j] - c * d
    return RPoly.from_coeffs(quot, num.p), RPoly.from_coeffs(rem[:dd], num.p)


def rpoly_divides(den: RPoly, num: RPoly) -> bool:
    return rpoly_divmod_leadunit(num, den)[1].is_zero()


def rpoly_exact_div(num: RPoly, den: RPoly) -> RPoly:
    q, r = rpoly_divmod_leadunit(num, den)
    if not r.is_zero():
        raise ArithmeticError(f"{den} does not divide {num}")
    return q


def rpoly_mul_mod(f: RPoly, g: RPoly, beta: int, lam: RElem) -> RPoly:
    if not is_unit(lam):
        raise ValueError(f"lambda={lam} is not a unit")
    return (f * g).reduce(beta, lam)


def as_rpoly(f: FpPoly | RPoly) -> RPoly:
    return f if isinstance(f, RPoly) else RPoly(f)


def rpoly_str(coeffs: Sequence[RElem]) -> str:
    return format_poly([str(e) if e else 0 for e in coeffs])
