"""The ambient module Z_p[x]/<x^alpha - 1> x R[x]/<x^beta - lam>.

Codewords are :class:`PairPoly` values.  The coordinate ("vector") view of a
word is available through :meth:`PairPoly.symbols` and, for the enumeration
engine, :meth:`PairPoly.digits`, which lays the word out as
``[c_0..c_{alpha-1}, a_0..a_{beta-1}, b_0..b_{beta-1}, c'_0..c'_{beta-1}]``
where ``d_i = a_i + u b_i + v c'_i``.  Indices are 0-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .finite_field import FpPoly, field
from .local_ring import RElem, RPoly, is_unit

GrayWord = tuple[int, ...]


class ParamsMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Params:
    p: int
    alpha: int
    beta: int
    lam: RElem | None = None

    def __post_init__(self):
        field(self.p)
        if self.alpha < 0 or self.beta < 1:
            raise ValueError(f"need alpha >= 0 and beta >= 1, got ({self.alpha}, {self.beta})")
        lam = self.lam if self.lam is not None else RElem.one(self.p)
        if lam.p != self.p:
            raise ValueError("lambda lives over a different p")
        if not is_unit(lam):
            raise ValueError(f"lambda={lam} is not a unit")
        object.__setattr__(self, "lam", lam)

    @property
    def n_digits(self) -> int:
        return self.alpha + 3 * self.beta

    @property
    def gray_length(self) -> int:
        return self.alpha + 3 * self.beta

    @property
    def is_cyclic(self) -> bool:
        return self.lam == RElem.one(self.p)

    def ambient_exponent(self) -> int:
        return self.alpha + 3 * self.beta

    def with_lam(self, lam: RElem) -> Params:
        return Params(self.p, self.alpha, self.beta, lam)

    def to_json(self) -> dict:
        return {"p": self.p, "alpha": self.alpha, "beta": self.beta, "lambda": list(self.lam.as_tuple())}


class PairPoly:
    __slots__ = ("left", "right", "params")

    def __init__(self, left: FpPoly, right: RPoly, params: Params):
        if left.p != params.p or right.p != params.p:
            raise ParamsMismatch("component field differs from params.p")
        left = left.reduce_cyclic(params.alpha) if params.alpha else FpPoly.zero(params.p)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right.reduce(params.beta, params.lam))
        object.__setattr__(self, "params", params)

    def __setattr__(self, name, value):
        raise AttributeError("PairPoly is immutable")

    @classmethod
    def zero(cls, params: Params) -> PairPoly:
        return cls(FpPoly.zero(params.p), RPoly.zero(params.p), params)

    @classmethod
    def from_symbols(cls, c: Sequence[int], d: Sequence[RElem | tuple], params: Params) -> PairPoly:
        if len(c) != params.alpha or len(d) != params.beta:
            raise ParamsMismatch(f"expected {params.alpha}+{params.beta} symbols, got {len(c)}+{len(d)}")
        return cls(FpPoly(c, params.p), RPoly.from_coeffs(d, params.p), params)

    @classmethod
    def from_digits(cls, digits: Sequence[int], params: Params) -> PairPoly:
        a, b = params.alpha, params.beta
        if len(digits) != params.n_digits:
            raise ParamsMismatch(f"expected {params.n_digits} digits, got {len(digits)}")
        return cls(
            FpPoly(digits[:a], params.p),
            RPoly(
                FpPoly(digits[a : a + b], params.p),
                FpPoly(digits[a + b : a + 2 * b], params.p),
                FpPoly(digits[a + 2 * b :], params.p),
            ),
            params,
        )

    def symbols(self) -> tuple[tuple[int, ...], tuple[RElem, ...]]:
        """The vector view (c_0..c_{alpha-1}, d_0..d_{beta-1})."""
        return self.left.padded(self.params.alpha), self.right.padded(self.params.beta)

    def digits(self) -> tuple[int, ...]:
        b = self.params.beta
        r = self.right
        return self.left.padded(self.params.alpha) + r.free.padded(b) + r.upart.padded(b) + r.vpart.padded(b)

    def _check(self, other: PairPoly) -> None:
        if self.params != other.params:
            raise ParamsMismatch(f"{self.params} vs {other.params}")

    def __add__(self, other: PairPoly) -> PairPoly:
        self._check(other)
        return PairPoly(self.left + other.left, self.right + other.right, self.params)

    def __neg__(self) -> PairPoly:
        return PairPoly(-self.left, -self.right, self.params)

    def __sub__(self, other: PairPoly) -> PairPoly:
        return self + (-other)

    def scale(self, r: int) -> PairPoly:
        return PairPoly(self.left * r, self.right * r, self.params)

    def is_zero(self) -> bool:
        return self.left.is_zero() and self.right.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, PairPoly):
            return NotImplemented
        return (self.params, self.left, self.right) == (other.params, other.left, other.right)

    def __hash__(self) -> int:
        return hash((self.params, self.left, self.right))

    def __repr__(self) -> str:
        return f"PairPoly(({self.left}) | ({self.right}))"

    def to_json(self) -> dict:
        _, d = self.symbols()
        return {"left": list(self.left.padded(self.params.alpha)), "right": [list(e.as_tuple()) for e in d]}

    @classmethod
    def from_json(cls, obj: dict, params: Params) -> PairPoly:
        return cls(
            FpPoly(obj.get("left", []), params.p),
            RPoly.from_coeffs([tuple(e) if isinstance(e, list) else e for e in obj.get("right", [])], params.p),
            params,
        )


def star_mul(scalar: RPoly | FpPoly | RElem | int, z: PairPoly) -> PairPoly:
    """gamma * (c, d) = (rho(gamma) c, gamma d)."""
    p = z.params.p
    if isinstance(scalar, int):
        scalar = RPoly(FpPoly((scalar,), p))
    elif isinstance(scalar, RElem):
        scalar = RPoly.constant(scalar)
    elif isinstance(scalar, FpPoly):
        scalar = RPoly(scalar)
    if scalar.p != p:
        raise ParamsMismatch("scalar lives over a different p")
    return PairPoly(scalar.free * z.left, scalar * z.right, z.params)


def tau_lambda(z: PairPoly, lam: RElem | None = None) -> PairPoly:
    """Rotate both blocks right by one; the wrapped beta-symbol is multiplied by lam."""
    lam = z.params.lam if lam is None else lam
    c, d = z.symbols()
    c2 = (c[-1],) + c[:-1] if c else ()
    d2 = (lam * d[-1],) + d[:-1]
    return PairPoly.from_symbols(c2, d2, z.params)


def tau(z: PairPoly) -> PairPoly:
    return tau_lambda(z, RElem.one(z.params.p))


def inner_product(z1: PairPoly, z2: PairPoly) -> RElem:
    """(u + v) sum c_i e_i + sum d_i f_i."""
    z1._check(z2)
    p = z1.params.p
    c, d = z1.symbols()
    e, f = z2.symbols()
    s = sum(ci * ei for ci, ei in zip(c, e)) % p
    acc = RElem(0, s, s, p)
    for di, fi in zip(d, f):
        acc = acc + di * fi
    return acc


def gray_symbol(r: RElem) -> tuple[int, int, int]:
    return (r.a, (r.a + r.b) % r.p, (r.a + r.c) % r.p)


def gray_psi(z: PairPoly) -> GrayWord:
    """(e, a + ub + vc) -> (e, a, a + b, a + c), blockwise."""
    c, d = z.symbols()
    images = [gray_symbol(r) for r in d]
    return tuple(c) + tuple(g[0] for g in images) + tuple(g[1] for g in images) + tuple(g[2] for g in images)


def gray_inverse(w: Sequence[int], params: Params) -> PairPoly:
    a, b, p = params.alpha, params.beta, params.p
    if len(w) != params.gray_length:
        raise ParamsMismatch(f"Gray word must have length {params.gray_length}")
    free = w[a : a + b]
    d = [RElem(free[i], w[a + b + i] - free[i], w[a + 2 * b + i] - free[i], p) for i in range(b)]
    return PairPoly.from_symbols(tuple(w[:a]), d, params)
