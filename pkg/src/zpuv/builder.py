"""Generator tuples: validation, derived polynomials, spanning sets, encoding.

Each code family has its own generator shape, hypotheses, block ranges and
size formula, so every kind is handled by an explicit branch rather than a
generic builder.  Formulas are reproduced as stated; whether they are right
is for :mod:`zpuv.oracle` to decide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .ambient import PairPoly, Params, star_mul
from .finite_field import NEG_INF, FpPoly, divides, exact_div, gcd_many
from .local_ring import (
    RElem,
    RPoly,
    as_rpoly,
    is_unit,
    rpoly_divides,
    rpoly_divmod_leadunit,
    rpoly_exact_div,
)
from .oracle import DEFAULT_GUARD, CodewordSet

RHO_GCD_CONVENTION = "gcd arguments in R[x] are reduced by rho and the gcd is taken in Z_p[x]"


class Kind(str, Enum):
    FULL = "additive-cyclic-full"
    SIMPLE = "additive-cyclic-simple"
    COPRIME = "additive-cyclic-coprime"
    SPECIAL = "additive-cyclic-special"
    CONSTACYCLIC = "additive-constacyclic"
    RING_CYCLIC = "ring-cyclic"
    RING_CYCLIC_SIMPLE = "ring-cyclic-simple"
    RING_CONSTACYCLIC = "ring-constacyclic"

    @property
    def is_ring(self) -> bool:
        return self.value.startswith("ring-")

    @property
    def is_constacyclic(self) -> bool:
        return self in (Kind.CONSTACYCLIC, Kind.RING_CONSTACYCLIC)


SLOTS = ("f1", "f2", "f3", "f4", "g", "a", "b", "p1", "p2", "p3")

KIND_SLOTS: dict[Kind, tuple[str, ...]] = {
    Kind.FULL: SLOTS,
    Kind.SIMPLE: ("f1", "f2", "g", "p1", "p2"),
    Kind.COPRIME: ("f1", "f2", "f3", "g", "a", "b", "p1"),
    Kind.SPECIAL: ("f1", "f2", "f3", "g", "a", "b", "p1"),
    Kind.CONSTACYCLIC: ("f1", "f2", "f3", "g", "a", "b", "p1"),
    Kind.RING_CYCLIC: ("g", "a", "b", "p1", "p2", "p3"),
    Kind.RING_CYCLIC_SIMPLE: ("g", "p1", "p2"),
    Kind.RING_CONSTACYCLIC: ("g", "a", "b", "p1"),
}

REQUIRED_SLOTS: dict[Kind, tuple[str, ...]] = {
    Kind.FULL: ("f1", "g", "a", "b"),
    Kind.SIMPLE: ("f1", "g"),
    Kind.COPRIME: ("f1", "g", "a", "b"),
    Kind.SPECIAL: ("f1", "g", "a", "b"),
    Kind.CONSTACYCLIC: ("f1", "g", "a", "b"),
    Kind.RING_CYCLIC: ("g", "a", "b"),
    Kind.RING_CYCLIC_SIMPLE: ("g",),
    Kind.RING_CONSTACYCLIC: ("g", "a", "b"),
}


class SpecRefused(ValueError):
    def __init__(self, report: ValidationReport):
        failed = ", ".join(c.name for c in report.failures())
        super().__init__(f"spec fails its hypotheses: {failed}")
        self.report = report


class CollapseError(ValueError):
    pass


class MessageBoundError(ValueError):
    pass


@dataclass(frozen=True)
class CodeSpec:
    kind: Kind
    p: int
    alpha: int
    beta: int
    lam: RElem | None = None
    f1: FpPoly | None = None
    f2: FpPoly | None = None
    f3: FpPoly | None = None
    f4: FpPoly | None = None
    g: FpPoly | RPoly | None = None
    a: FpPoly | None = None
    b: FpPoly | None = None
    p1: FpPoly | None = None
    p2: FpPoly | None = None
    p3: FpPoly | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.lam is None:
            object.__setattr__(self, "lam", RElem.one(self.p))

    @property
    def params(self) -> Params:
        return Params(self.p, self.alpha, self.beta, self.lam)

    def poly(self, name: str) -> FpPoly:
        """Slot value with missing optional slots read as zero."""
        val = getattr(self, name)
        if val is None:
            return FpPoly.zero(self.p)
        if isinstance(val, RPoly):
            if not val.is_fp():
                raise TypeError(f"slot {name} has nilpotent coefficients")
            return val.free
        return val

    def rpoly(self, name: str) -> RPoly:
        val = getattr(self, name)
        return RPoly.zero(self.p) if val is None else as_rpoly(val)

    def slots(self) -> dict[str, FpPoly | RPoly]:
        return {s: getattr(self, s) for s in SLOTS if getattr(self, s) is not None}


# validation


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    category: str = "hypothesis"  # hypothesis | consistency
    detail: str = ""


@dataclass
class ValidationReport:
    kind: Kind
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, passed: bool, category: str = "hypothesis", detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), category, detail))

    def failures(self, category: str = "hypothesis") -> list[Check]:
        return [c for c in self.checks if c.category == category and not c.passed]

    @property
    def ok(self) -> bool:
        return not self.failures("hypothesis")

    @property
    def consistent(self) -> bool:
        return not self.failures("consistency")

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "ok": self.ok,
            "consistent": self.consistent,
            "hypotheses": [
                {"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks if c.category == "hypothesis"
            ],
            "consistency_violations": [
                {"name": c.name, "detail": c.detail} for c in self.checks if c.category == "consistency" and not c.passed
            ],
            "consistency_checks": [
                {"name": c.name, "passed": c.passed} for c in self.checks if c.category == "consistency"
            ],
        }


def _safe(fn) -> tuple[bool, str]:
    try:
        return bool(fn()), ""
    except (ValueError, ZeroDivisionError, ArithmeticError, TypeError) as exc:
        return False, str(exc)


def _fp_div(report: ValidationReport, name: str, d: FpPoly, n: FpPoly, category: str = "hypothesis") -> None:
    ok, detail = _safe(lambda: divides(d, n))
    report.add(name, ok, category, detail)


def _r_div(report: ValidationReport, name: str, d, n, category: str = "hypothesis") -> None:
    ok, detail = _safe(lambda: rpoly_divides(as_rpoly(d), as_rpoly(n)))
    report.add(name, ok, category, detail)


def _xb(spec: CodeSpec) -> FpPoly:
    return FpPoly.xn_minus(spec.beta, spec.p)


def _xa(spec: CodeSpec) -> FpPoly:
    return FpPoly.xn_minus(spec.alpha, spec.p)


def _xb_lam(spec: CodeSpec) -> RPoly:
    return RPoly.xn_minus(spec.beta, spec.lam)


def validate_spec(spec: CodeSpec) -> ValidationReport:
    """Check the hypotheses of the theorem governing spec.kind.

    Necessary conditions that the generator theory derives (rather than
    assumes) are reported under the ``consistency`` category.
    """
    kind = spec.kind
    rep = ValidationReport(kind)
    one = RElem.one(spec.p)

    for s in REQUIRED_SLOTS[kind]:
        rep.add(f"slot {s} present", getattr(spec, s) is not None)
    extra = [s for s in SLOTS if s not in KIND_SLOTS[kind] and getattr(spec, s) is not None]
    rep.add("unused slots empty", not extra, detail=", ".join(extra))
    nilpotent = [
        s for s, v in spec.slots().items()
        if isinstance(v, RPoly) and not v.is_fp() and not (s == "g" and kind.is_constacyclic)
    ]
    rep.add("slots over Z_p", not nilpotent, detail=", ".join(nilpotent))
    if not rep.ok:
        return rep

    coprime = math.gcd(spec.beta, spec.p) == 1
    if kind in (Kind.FULL, Kind.SIMPLE, Kind.RING_CYCLIC_SIMPLE):
        rep.add("beta not coprime to p" if not coprime else "kind/parameter mismatch: beta coprime to p",
                not coprime, detail=f"gcd({spec.beta},{spec.p})={math.gcd(spec.beta, spec.p)}")
    elif kind in (Kind.COPRIME, Kind.SPECIAL):
        rep.add("beta coprime to p" if coprime else "kind/parameter mismatch: beta not coprime to p",
                coprime, detail=f"gcd({spec.beta},{spec.p})={math.gcd(spec.beta, spec.p)}")
    if kind.is_ring:
        rep.add("alpha = 0 for codes over R", spec.alpha == 0)
    if kind.is_constacyclic:
        rep.add("p > 2", spec.p > 2)
        rep.add("beta = p - 1", spec.beta == spec.p - 1)
        rep.add("lambda is a unit with free part 1", spec.lam.a == 1)
        rep.add("lambda^p = 1", spec.lam ** spec.p == one)
    else:
        rep.add("lambda = 1", spec.lam == one)
    if not kind.is_ring:
        _fp_div(rep, "f1 | x^alpha - 1", spec.poly("f1"), _xa(spec))
    if not rep.ok:
        return rep

    if kind == Kind.FULL:
        _validate_full(spec, rep)
    elif kind == Kind.SIMPLE:
        _validate_simple(spec, rep)
    elif kind in (Kind.COPRIME, Kind.SPECIAL):
        _validate_coprime(spec, rep)
    elif kind == Kind.CONSTACYCLIC:
        _validate_constacyclic(spec, rep)
    elif kind == Kind.RING_CYCLIC:
        if coprime:
            _validate_ring_coprime(spec, rep)
        else:
            _validate_ring_noncoprime(spec, rep)
    elif kind == Kind.RING_CYCLIC_SIMPLE:
        gen = spec.rpoly("g") + spec.rpoly("p1").times_u() + spec.rpoly("p2").times_v()
        _r_div(rep, "(g + u p1 + v p2) | x^beta - 1 in R[x]", gen, RPoly.lift(_xb(spec)))
    elif kind == Kind.RING_CONSTACYCLIC:
        _validate_ring_constacyclic(spec, rep)
    return rep


def _chain(spec: CodeSpec, rep: ValidationReport, xb) -> None:
    g, a, b = spec.poly("g"), spec.poly("a"), spec.poly("b")
    _fp_div(rep, "a | g", a, g)
    _fp_div(rep, "g | x^beta - 1", g, xb)
    _fp_div(rep, "b | g", b, g)


def _validate_full(spec: CodeSpec, rep: ValidationReport) -> None:
    xb = _xb(spec)
    _chain(spec, rep, xb)
    if not rep.ok:
        return
    g, a, b = spec.poly("g"), spec.poly("a"), spec.poly("b")
    h, k = xb // g, xb // a
    _fp_div(rep, "a | p1 (x^beta - 1)/g", a, spec.poly("p1") * h)
    _fp_div(rep, "b | p3 (x^beta - 1)/a", b, spec.poly("p3") * k)
    dq = _derive_full(spec)
    f1 = spec.poly("f1")
    _fp_div(rep, "f1 | m2 h f2", f1, dq.m2 * dq.h * spec.poly("f2"), "consistency")
    _fp_div(rep, "f1 | l2 k f3", f1, dq.l2 * dq.k * spec.poly("f3"), "consistency")
    _fp_div(rep, "f1 | (x^beta - 1)/b f4", f1, (xb // b) * spec.poly("f4"), "consistency")


def _validate_simple(spec: CodeSpec, rep: ValidationReport) -> None:
    gen = spec.rpoly("g") + spec.rpoly("p1").times_u() + spec.rpoly("p2").times_v()
    _r_div(rep, "(g + u p1 + v p2) | x^beta - 1 in R[x]", gen, RPoly.lift(_xb(spec)))
    if not rep.ok:
        return
    k = rpoly_exact_div(RPoly.lift(_xb(spec)), gen)
    _fp_div(rep, "f1 | k f2", spec.poly("f1"), k.free * spec.poly("f2"), "consistency")


def _validate_coprime(spec: CodeSpec, rep: ValidationReport) -> None:
    xb = _xb(spec)
    _chain(spec, rep, xb)
    if not rep.ok:
        return
    a, b = spec.poly("a"), spec.poly("b")
    if spec.kind == Kind.SPECIAL:
        rep.add("p1 = a", spec.p1 is None or spec.poly("p1") == a)
    _fp_div(rep, "b | p1 (x^beta - 1)/a", b, _p1_of(spec) * (xb // a))
    dq = derive_quantities(spec, require_valid=False)
    f1 = spec.poly("f1")
    _fp_div(rep, "f1 | m2 h f2", f1, dq.m2 * dq.h * spec.poly("f2"), "consistency")
    _fp_div(rep, "f1 | (x^beta - 1)/b f3", f1, (xb // b) * spec.poly("f3"), "consistency")
    if spec.kind == Kind.SPECIAL:
        rep.add("m1 = h a", dq.m1 == (dq.h * a).monic(), "consistency")


def _validate_constacyclic(spec: CodeSpec, rep: ValidationReport) -> None:
    _validate_ring_constacyclic(spec, rep)
    if not rep.ok:
        return
    dq = derive_quantities(spec, require_valid=False)
    f1 = spec.poly("f1")
    _fp_div(rep, "f1 | m2 h f2", f1, dq.m2 * dq.h.free * spec.poly("f2"), "consistency")
    xl_over_b = rpoly_exact_div(_xb_lam(spec), as_rpoly(spec.poly("b")))
    _fp_div(rep, "f1 | (x^beta - lambda)/b f3", f1, xl_over_b.free * spec.poly("f3"), "consistency")


def _validate_ring_constacyclic(spec: CodeSpec, rep: ValidationReport) -> None:
    xl = _xb_lam(spec)
    g, a, b = spec.rpoly("g"), spec.rpoly("a"), spec.rpoly("b")
    _r_div(rep, "a | g in R[x]", a, g)
    _r_div(rep, "g | x^beta - lambda in R[x]", g, xl)
    _r_div(rep, "b | g in R[x]", b, g)
    if not rep.ok:
        return
    _r_div(rep, "b | p1 (x^beta - lambda)/a in R[x]", b, spec.rpoly("p1") * rpoly_exact_div(xl, a))


def _validate_ring_noncoprime(spec: CodeSpec, rep: ValidationReport) -> None:
    xb = _xb(spec)
    _chain(spec, rep, xb)
    if not rep.ok:
        return
    g, a, b = spec.poly("g"), spec.poly("a"), spec.poly("b")
    _fp_div(rep, "a | p1 (x^beta - 1)/g", a, spec.poly("p1") * (xb // g))
    _fp_div(rep, "b | p3 (x^beta - 1)/a", b, spec.poly("p3") * (xb // a))


def _validate_ring_coprime(spec: CodeSpec, rep: ValidationReport) -> None:
    xb = _xb(spec)
    _chain(spec, rep, xb)
    if not rep.ok:
        return
    _fp_div(rep, "b | p1 (x^beta - 1)/a", spec.poly("b"), spec.poly("p1") * (xb // spec.poly("a")))


def _p1_of(spec: CodeSpec) -> FpPoly:
    return spec.poly("a") if spec.kind == Kind.SPECIAL else spec.poly("p1")


def _require(spec: CodeSpec, require_valid: bool) -> None:
    if require_valid:
        rep = validate_spec(spec)
        if not rep.ok:
            raise SpecRefused(rep)


# derived quantities


@dataclass
class DerivedQuantities:
    h: FpPoly | RPoly | None = None
    k: FpPoly | RPoly | None = None
    m1: FpPoly | None = None
    m2: FpPoly | None = None
    l1: FpPoly | None = None
    l2: FpPoly | None = None
    t: dict[str, int] = field(default_factory=dict)
    delta: int | None = None
    gamma: int | None = None
    epsilon: int | None = None
    convention: str | None = None

    def to_json(self) -> dict:
        from .serialize import poly_to_json

        out = {}
        for name in ("h", "k", "m1", "m2", "l1", "l2"):
            val = getattr(self, name)
            if val is not None:
                out[name] = poly_to_json(val)
        out["t"] = dict(self.t)
        for name in ("delta", "gamma", "epsilon"):
            if getattr(self, name) is not None:
                out[name] = getattr(self, name)
        if self.convention:
            out["convention"] = self.convention
        return out


def _deg(f) -> int:
    d = f.degree
    if d == NEG_INF:
        raise ArithmeticError("degree of the zero polynomial used as a block size")
    return int(d)


def _derive_full(spec: CodeSpec) -> DerivedQuantities:
    xb = _xb(spec)
    g, a = spec.poly("g"), spec.poly("a")
    h = exact_div(xb, g)
    m1 = gcd_many(h * spec.poly("p1"), h * spec.poly("p2"), xb)
    m2 = exact_div(xb, m1)
    k = exact_div(xb, a)
    l1 = gcd_many(k * spec.poly("p3"), xb)
    l2 = exact_div(xb, l1)
    t = {
        "t1": _deg(spec.poly("f1")), "t2": _deg(g), "t3": _deg(a),
        "t4": _deg(m2), "t5": _deg(l2), "t6": _deg(spec.poly("b")),
    }
    return DerivedQuantities(h=h, k=k, m1=m1, m2=m2, l1=l1, l2=l2, t=t)


def _derive_coprime(spec: CodeSpec) -> DerivedQuantities:
    xb = _xb(spec)
    g, a = spec.poly("g"), spec.poly("a")
    h = exact_div(xb, g)
    m1 = gcd_many(h * a, h * _p1_of(spec), xb)
    m2 = exact_div(xb, m1)
    t = {"t1": _deg(spec.poly("f1")), "t2": _deg(g), "t3": _deg(m2), "t4": _deg(spec.poly("b"))}
    if spec.kind == Kind.SPECIAL:
        t["t3"] = _deg(a)
    return DerivedQuantities(h=h, m1=m1, m2=m2, t=t)


def _derive_constacyclic(spec: CodeSpec) -> DerivedQuantities:
    xl = _xb_lam(spec)
    g = spec.rpoly("g")
    h = rpoly_exact_div(xl, g)
    m1 = gcd_many((h * spec.rpoly("a")).free, (h * spec.rpoly("p1")).free, xl.free)
    m2 = exact_div(xl.free, m1)
    t = {"t2": _deg(g), "t3": _deg(m2), "t4": _deg(spec.poly("b"))}
    if spec.kind == Kind.CONSTACYCLIC:
        t = {"t1": _deg(spec.poly("f1")), **t}
    dq = DerivedQuantities(h=h, m1=m1, m2=m2, t=t, convention=RHO_GCD_CONVENTION)
    if spec.kind == Kind.RING_CONSTACYCLIC:
        _ring_degrees(spec, dq)
    return dq


def _ring_degrees(spec: CodeSpec, dq: DerivedQuantities) -> None:
    for name, gen in zip(("delta", "gamma", "epsilon"), _ring_generators(spec)):
        setattr(dq, name, _deg(gen))


def derive_quantities(spec: CodeSpec, *, require_valid: bool = True) -> DerivedQuantities:
    _require(spec, require_valid)
    kind = spec.kind
    if kind == Kind.FULL:
        return _derive_full(spec)
    if kind == Kind.SIMPLE:
        gen = _ring_generators(spec)[0]
        k = rpoly_exact_div(RPoly.lift(_xb(spec)), gen)
        return DerivedQuantities(k=k, t={"t1": _deg(spec.poly("f1")), "t2": _deg(spec.poly("g"))})
    if kind in (Kind.COPRIME, Kind.SPECIAL):
        return _derive_coprime(spec)
    if kind.is_constacyclic:
        return _derive_constacyclic(spec)
    dq = DerivedQuantities()
    if kind == Kind.RING_CYCLIC:
        xb = _xb(spec)
        dq.h = exact_div(xb, spec.poly("g"))
        if math.gcd(spec.beta, spec.p) != 1:
            dq.k = exact_div(xb, spec.poly("a"))
    _ring_degrees(spec, dq)
    return dq


# generators and spanning sets


def _ring_generators(spec: CodeSpec) -> list[RPoly]:
    """The R-polynomials of the generator tuple, in theorem order."""
    kind = spec.kind
    R = spec.rpoly
    if kind in (Kind.FULL, Kind.RING_CYCLIC_SIMPLE, Kind.SIMPLE) or (
        kind == Kind.RING_CYCLIC and math.gcd(spec.beta, spec.p) != 1
    ):
        gens = [R("g") + R("p1").times_u() + R("p2").times_v()]
        if kind in (Kind.FULL, Kind.RING_CYCLIC):
            gens += [R("a").times_u() + R("p3").times_v(), R("b").times_v()]
        return gens
    if kind == Kind.SPECIAL:
        return [R("g") + R("a").times_u() + R("a").times_v(), R("b").times_v()]
    return [R("g") + R("a").times_u() + R("p1").times_v(), R("b").times_v()]


def generators(spec: CodeSpec) -> list[PairPoly]:
    """The declared generator tuple as words of the ambient module."""
    P = spec.params
    zero = FpPoly.zero(spec.p)
    rg = _ring_generators(spec)
    if spec.kind.is_ring:
        return [PairPoly(zero, r, P) for r in rg]
    words = [PairPoly(spec.poly("f1"), RPoly.zero(spec.p), P)]
    lefts = {
        Kind.FULL: ("f2", "f3", "f4"),
        Kind.SIMPLE: ("f2",),
    }.get(spec.kind, ("f2", "f3"))
    words += [PairPoly(spec.poly(f), r, P) for f, r in zip(lefts, rg)]
    return words


@dataclass(frozen=True)
class Block:
    name: str
    word: PairPoly
    count: int
    weight: int | None  # per-element exponent the size formula attributes to this block
    ring: str  # "Zp" or "R": where the encoding message lives


@dataclass(frozen=True)
class SpanElement:
    word: PairPoly
    block: str
    shift: int


@dataclass
class SpanningSet:
    kind: Kind
    elements: list[SpanElement]
    blocks: list[Block]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def block_weights(self) -> dict[str, int | None]:
        return {b.name: b.weight for b in self.blocks}

    @property
    def block_counts(self) -> dict[str, int]:
        return {b.name: b.count for b in self.blocks}

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "size": len(self),
            "blocks": [
                {"name": b.name, "count": b.count, "generator": b.word.to_json(), "message_ring": b.ring}
                for b in self.blocks
            ],
            "elements": [{"block": e.block, "shift": e.shift, "word": e.word.to_json()} for e in self.elements],
        }


def blocks(spec: CodeSpec, *, require_valid: bool = True) -> list[Block]:
    _require(spec, require_valid)
    dq = derive_quantities(spec, require_valid=False)
    P = spec.params
    p, al, be = spec.p, spec.alpha, spec.beta
    t = dq.t
    rg = _ring_generators(spec)
    gens = generators(spec)
    kind = spec.kind
    f = spec.poly
    R = spec.rpoly

    def pair(left: FpPoly, right: RPoly) -> PairPoly:
        return PairPoly(left, right, P)

    if kind == Kind.FULL:
        h, k = dq.h, dq.k
        return [
            Block("S1", gens[0], al - t["t1"], 1, "Zp"),
            Block("S2", gens[1], be - t["t2"], 3, "R"),
            Block("S3", pair(h * f("f2"), RPoly(h * f("p1")).times_u() + RPoly(h * f("p2")).times_v()),
                  be - t["t4"], 3, "R"),
            Block("S4", gens[2], be - t["t3"], 3, "R"),
            Block("S5", pair(k * f("f3"), RPoly(k * f("p3")).times_v()), be - t["t5"], 1, "Zp"),
            Block("S6", gens[3], be - t["t6"], 1, "Zp"),
        ]
    if kind == Kind.SIMPLE:
        return [
            Block("S1", gens[0], al - t["t1"], 1, "Zp"),
            Block("S2", gens[1], be - t["t2"], 3, "R"),
        ]
    if kind in (Kind.COPRIME, Kind.SPECIAL, Kind.CONSTACYCLIC):
        h = as_rpoly(dq.h)
        a = R("a")
        s3_right = (h * a).times_u() + (h * R("a" if kind == Kind.SPECIAL else "p1")).times_v()
        s3 = pair(h.free * f("f2"), s3_right)
        if kind == Kind.CONSTACYCLIC:
            counts = (p - t["t2"] - 1, p - t["t3"] - 1, p - t["t4"] - 1)
        elif kind == Kind.SPECIAL:
            counts = (be - t["t2"], t["t2"] - t["t3"], be - t["t4"])
        else:
            counts = (be - t["t2"], be - t["t3"], be - t["t4"])
        return [
            Block("S1", gens[0], al - t["t1"], 1, "Zp"),
            Block("S2", gens[1], counts[0], 3, "R"),
            Block("S3", s3, counts[1], 3, "R"),
            Block("S4", gens[2], counts[2], 1, "Zp"),
        ]
    # codes over R: minimal generating sets of the ring theorems
    degs = [_deg(r) for r in rg]
    delta = degs[0]
    out = [Block("S1", gens[0], be - delta, None, "R")]
    if len(rg) == 3:
        out.append(Block("S2", gens[1], delta - degs[1], None, "R"))
        out.append(Block("S3", gens[2], delta - degs[2], None, "R"))
    elif len(rg) == 2:
        out.append(Block("S2", gens[1], delta - degs[1], None, "R"))
    return out


def build_span(spec: CodeSpec, *, require_valid: bool = True) -> SpanningSet:
    """Shifted generator multiples x^i * w, block by block, as the governing theorem lists them."""
    bl = blocks(spec, require_valid=require_valid)
    x = RPoly.x(spec.p)
    elements = []
    for blk in bl:
        w = blk.word
        for i in range(max(blk.count, 0)):
            elements.append(SpanElement(w, blk.name, i))
            w = star_mul(x, w)
    return SpanningSet(spec.kind, elements, bl)


# size claims


def claimed_cardinality(spec: CodeSpec, *, require_valid: bool = True) -> int | None:
    """Exponent e of the stated |C| = p^e, or None where no formula is stated."""
    dq = derive_quantities(spec, require_valid=require_valid)
    t = dq.t
    al, be, p = spec.alpha, spec.beta, spec.p
    if spec.kind == Kind.FULL:
        return al + 2 * be - t["t1"] - t["t5"] - t["t6"] + 3 * (3 * be - t["t2"] - t["t4"] - t["t3"])
    if spec.kind == Kind.SIMPLE:
        return al - t["t1"] + 3 * (be - t["t2"])
    if spec.kind == Kind.COPRIME:
        return al + be - t["t1"] - t["t4"] + 3 * (2 * be - t["t2"] - t["t3"])
    if spec.kind == Kind.CONSTACYCLIC:
        return al + p - t["t1"] - t["t4"] - 1 + 3 * (2 * p - t["t2"] - t["t3"] - 2)
    return None


@dataclass(frozen=True)
class AmbientBound:
    claimed_exponent: int | None
    bound_exponent: int

    @property
    def consistent(self) -> bool:
        return self.claimed_exponent is None or self.claimed_exponent <= self.bound_exponent

    @property
    def flag(self) -> str:
        return "consistent" if self.consistent else "INCONSISTENT"

    def to_json(self) -> dict:
        return {"claimed_exponent": self.claimed_exponent, "bound_exponent": self.bound_exponent, "flag": self.flag}


def ambient_bound_check(spec: CodeSpec, e: int | None) -> AmbientBound:
    return AmbientBound(e, spec.params.ambient_exponent())


# encoding


def _as_message(s, p: int) -> RPoly:
    if s is None:
        return RPoly.zero(p)
    if isinstance(s, (list, tuple)):
        return RPoly.from_coeffs([tuple(c) if isinstance(c, list) else c for c in s], p)
    return as_rpoly(s)


def encode(spec: CodeSpec, messages: Mapping[str, FpPoly | RPoly | Sequence], *, require_valid: bool = True) -> PairPoly:
    """Sum of s_i * (block generator i) with the block degree bounds enforced."""
    bl = blocks(spec, require_valid=require_valid)
    names = {b.name for b in bl}
    unknown = set(messages) - {f"s{n[1:]}" for n in names}
    if unknown:
        raise MessageBoundError(f"no block for message(s) {sorted(unknown)}")
    out = PairPoly.zero(spec.params)
    for blk in bl:
        key = f"s{blk.name[1:]}"
        s = _as_message(messages.get(key), spec.p)
        if s.is_zero():
            continue
        if s.degree > blk.count - 1:
            raise MessageBoundError(
                f"{key}: degree {s.degree} exceeds bound {blk.count - 1} of block {blk.name}"
            )
        if blk.ring == "Zp" and not s.is_fp():
            raise MessageBoundError(f"{key}: block {blk.name} takes messages over Z_p")
        out = out + star_mul(s, blk.word)
    return out


# constacyclic transport


def _check_lambda(lam: RElem) -> None:
    if lam.p <= 2:
        raise ValueError("transport needs p > 2")
    if lam.a != 1:
        raise ValueError(f"lambda={lam} must have free part 1")


def transport_T(s: RPoly, lam: RElem) -> RPoly:
    """s(x) -> s(lam x) from R[x]/<x^{p-1} - 1> to R[x]/<x^{p-1} - lam>."""
    _check_lambda(lam)
    n = lam.p - 1
    s = s.reduce(n, RElem.one(lam.p))
    return RPoly.from_coeffs([c * lam**i for i, c in enumerate(s.coeffs)], lam.p)


def transport_T_inv(s: RPoly, lam: RElem) -> RPoly:
    _check_lambda(lam)
    n = lam.p - 1
    s = s.reduce(n, lam)
    return RPoly.from_coeffs([c * lam ** (-i) for i, c in enumerate(s.coeffs)], lam.p)


def product_spec(c_alpha: Iterable[Sequence[int] | FpPoly], c_beta: Iterable[Sequence | RPoly],
                 params: Params, guard: int = DEFAULT_GUARD) -> CodewordSet:
    """The explicit Cartesian product C_alpha x C_beta."""
    A = [c if isinstance(c, FpPoly) else FpPoly(c, params.p) for c in c_alpha]
    B = [d if isinstance(d, RPoly) else RPoly.from_coeffs(d, params.p) for d in c_beta]
    if len(A) * len(B) > guard:
        from .oracle import GuardExceeded

        raise GuardExceeded(len(A) * len(B), guard)
    return CodewordSet.from_words((PairPoly(a, b, params) for a in A for b in B), params, guard)


def normalize_collapsed(spec: CodeSpec) -> CodeSpec:
    """Replace <g + up1 + vp2, ua + vp3, vb> with g = a = b by the single generator g + up1 + vp2."""
    if spec.kind != Kind.RING_CYCLIC or math.gcd(spec.beta, spec.p) == 1:
        raise ValueError("collapse applies to ring-cyclic specs with beta not coprime to p")
    if not (spec.poly("g") == spec.poly("a") == spec.poly("b")):
        raise ValueError("collapse needs g = a = b")
    gen = spec.rpoly("g") + spec.rpoly("p1").times_u() + spec.rpoly("p2").times_v()
    try:
        _, r = rpoly_divmod_leadunit(RPoly.lift(_xb(spec)), gen)
    except ValueError as exc:
        raise CollapseError(f"collapse hypothesis violated: {exc}") from None
    if not r.is_zero():
        raise CollapseError("collapse hypothesis violated: g + u p1 + v p2 does not divide x^beta - 1")
    return replace(spec, kind=Kind.RING_CYCLIC_SIMPLE, a=None, b=None, p3=None)
