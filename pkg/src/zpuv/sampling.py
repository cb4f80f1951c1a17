"""Candidate generator tuples, exhaustive and seeded-random.

Exhaustive iteration drives the search verb; :func:`random_valid_spec` feeds
property tests and the acceptance suite.  Both are deterministic.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterator

from .builder import KIND_SLOTS, CodeSpec, Kind, validate_spec
from .finite_field import FpPoly, all_polys, divisors_of_xn_minus_1, field
from .local_ring import RElem, RPoly, rpoly_divides


def _monic_upto(deg: int, p: int) -> list[FpPoly]:
    fld = field(p)
    out = [FpPoly(tail + (1,), fld) for d in range(deg + 1) for tail in itertools.product(range(p), repeat=d)]
    return sorted(out, key=FpPoly.sort_key)


def _rpoly_divisors(beta: int, lam: RElem) -> list[RPoly]:
    p = lam.p
    target = RPoly.xn_minus(beta, lam)
    elems = RElem.all(p)
    out = []
    for d in range(beta + 1):
        for tail in itertools.product(elems, repeat=d):
            cand = RPoly.from_coeffs(list(tail) + [RElem.one(p)], p)
            if rpoly_divides(cand, target):
                out.append(cand)
    return out


def slot_candidates(kind: Kind, p: int, alpha: int, beta: int, lam: RElem) -> dict[str, list]:
    """Deterministic candidate lists for every slot the kind uses."""
    cyclic_div = divisors_of_xn_minus_1(beta, p) if not kind.is_constacyclic else _monic_upto(beta, p)
    lower = all_polys(beta - 1, p)
    cands: dict[str, list] = {
        "f1": divisors_of_xn_minus_1(alpha, p) if alpha else [FpPoly.zero(p)],
        "g": _rpoly_divisors(beta, lam) if kind.is_constacyclic else cyclic_div,
        "a": cyclic_div,
        "b": cyclic_div,
    }
    for f in ("f2", "f3", "f4"):
        cands[f] = all_polys(alpha - 1, p) if alpha else [FpPoly.zero(p)]
    for s in ("p1", "p2", "p3"):
        cands[s] = lower
    if kind == Kind.SPECIAL:
        return {s: cands[s] for s in KIND_SLOTS[kind] if s != "p1"}
    return {s: cands[s] for s in KIND_SLOTS[kind]}


def iter_specs(kind: Kind, p: int, alpha: int, beta: int, lam: RElem) -> Iterator[CodeSpec]:
    cands = slot_candidates(kind, p, alpha, beta, lam)
    names = list(cands)
    for combo in itertools.product(*(cands[n] for n in names)):
        yield CodeSpec(kind, p, alpha, beta, lam, **dict(zip(names, combo)))


def kinds_for(p: int, alpha: int, beta: int) -> list[Kind]:
    """Kinds whose structural hypotheses can hold at these parameters."""
    if alpha == 0:
        out = [Kind.RING_CYCLIC]
        if beta % p == 0:
            out.append(Kind.RING_CYCLIC_SIMPLE)
        if p > 2 and beta == p - 1:
            out.append(Kind.RING_CONSTACYCLIC)
        return out
    if beta % p == 0:
        return [Kind.FULL, Kind.SIMPLE]
    out = [Kind.COPRIME, Kind.SPECIAL]
    if p > 2 and beta == p - 1:
        out.append(Kind.CONSTACYCLIC)
    return out


def random_lambda(rng: random.Random, p: int) -> RElem:
    """A unit 1 + u l2 + v l3; every such unit satisfies lam^p = 1."""
    return RElem(1, rng.randrange(p), rng.randrange(p), p)


def random_valid_spec(rng: random.Random, p: int, alpha: int, beta: int, kind: Kind | None = None,
                      lam: RElem | None = None, tries: int = 5000) -> CodeSpec:
    """Draw slots uniformly from their candidate lists until the hypotheses hold."""
    if kind is None:
        kind = rng.choice(kinds_for(p, alpha, beta))
    kind = Kind(kind)
    if lam is None:
        lam = random_lambda(rng, p) if kind.is_constacyclic else RElem.one(p)
    cands = slot_candidates(kind, p, alpha, beta, lam)
    for _ in range(tries):
        slots = {name: rng.choice(options) for name, options in cands.items()}
        spec = CodeSpec(kind, p, alpha, beta, lam, **slots)
        if validate_spec(spec).ok:
            return spec
    raise RuntimeError(f"no valid {kind.value} spec found at p={p}, alpha={alpha}, beta={beta}")


def random_messages(rng: random.Random, spec: CodeSpec) -> dict[str, RPoly]:
    """Messages s1.. within each block's degree bound and coefficient ring."""
    from .builder import blocks

    p = spec.p
    out = {}
    for blk in blocks(spec, require_valid=False):
        if blk.count <= 0:
            continue
        if blk.ring == "Zp":
            coeffs = [rng.randrange(p) for _ in range(blk.count)]
        else:
            coeffs = [RElem(rng.randrange(p), rng.randrange(p), rng.randrange(p), p) for _ in range(blk.count)]
        out[f"s{blk.name[1:]}"] = RPoly.from_coeffs(coeffs, p)
    return out
