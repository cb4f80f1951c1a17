"""Brute-force ground truth for codes in the ambient module.

Every word is a digit row ``[c | a | b | c']`` (see :mod:`zpuv.ambient`) and is
stored packed as the base-p integer ``sum digit_j p^j``.  A
:class:`CodewordSet` is the sorted array of packed words, so membership and
deduplication are exact and independent of insertion order.

The closure engine is a plain fixed point on sets: a word not yet in the set
is absorbed by adding all of its Z_p-multiples to every member, and its images
under ``x``, ``u`` and ``v`` are queued.  Nothing here uses the generator
theory in :mod:`zpuv.builder`.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .ambient import PairPoly, Params
from .local_ring import RElem, relem_inverse

DEFAULT_GUARD = 2_000_000
_CHUNK = 1 << 16
_DIGIT_CHARS = "0123456789abcdefghijklmnopqrstuvwxyz"

SHIFT_OPS = ("tau", "tau_lambda", "star_x")
ALL_OPS = ("tau", "tau_lambda", "star_u", "star_v", "star_x", "addition", "residues")


class GuardExceeded(RuntimeError):
    def __init__(self, lower_bound: int, guard: int):
        super().__init__(f"closure exceeds guard: at least {lower_bound} words > guard {guard}")
        self.lower_bound = lower_bound
        self.guard = guard


class OracleInvariantError(AssertionError):
    pass


# digit-matrix machinery


def _powers(params: Params) -> np.ndarray:
    n = params.n_digits
    if n * math.log2(params.p) >= 62:
        raise GuardExceeded(params.p**n, 2**62)
    return params.p ** np.arange(n, dtype=np.int64)


def pack(D: np.ndarray, params: Params) -> np.ndarray:
    return (np.asarray(D, dtype=np.int64) % params.p) @ _powers(params)


def unpack(keys: np.ndarray, params: Params) -> np.ndarray:
    keys = np.asarray(keys, dtype=np.int64)
    out = np.empty((keys.size, params.n_digits), dtype=np.int64)
    k = keys.copy()
    for j in range(params.n_digits):
        k, out[:, j] = np.divmod(k, params.p)
    return out


def _blocks(D: np.ndarray, params: Params):
    a, b = params.alpha, params.beta
    return D[:, :a], D[:, a : a + b], D[:, a + b : a + 2 * b], D[:, a + 2 * b :]


def apply_shift(D: np.ndarray, params: Params, lam: RElem | None = None) -> np.ndarray:
    """tau_lam on every row: rotate right, wrapped R-symbol times lam."""
    lam = params.lam if lam is None else lam
    p = params.p
    L, A, B, C = _blocks(D, params)
    wa, wb, wc = A[:, -1], B[:, -1], C[:, -1]
    A2 = np.roll(A, 1, axis=1)
    B2 = np.roll(B, 1, axis=1)
    C2 = np.roll(C, 1, axis=1)
    A2[:, 0] = lam.a * wa
    B2[:, 0] = lam.a * wb + lam.b * wa
    C2[:, 0] = lam.a * wc + lam.c * wa
    return np.concatenate([np.roll(L, 1, axis=1), A2, B2, C2], axis=1) % p


def apply_u(D: np.ndarray, params: Params) -> np.ndarray:
    L, A, B, C = _blocks(D, params)
    z = np.zeros_like(A)
    return np.concatenate([np.zeros_like(L), z, A, z], axis=1)


def apply_v(D: np.ndarray, params: Params) -> np.ndarray:
    L, A, B, C = _blocks(D, params)
    z = np.zeros_like(A)
    return np.concatenate([np.zeros_like(L), z, z, A], axis=1)


def gray_digits(D: np.ndarray, params: Params) -> np.ndarray:
    L, A, B, C = _blocks(D, params)
    return np.concatenate([L, A, (A + B) % params.p, (A + C) % params.p], axis=1)


def _rotate_gray_blocks(G: np.ndarray, params: Params) -> np.ndarray:
    a, b = params.alpha, params.beta
    parts = [G[:, :a]] + [G[:, a + i * b : a + (i + 1) * b] for i in range(3)]
    return np.concatenate([np.roll(P, 1, axis=1) for P in parts], axis=1)


def echelon_basis(D: np.ndarray, p: int) -> np.ndarray:
    """Row-reduced basis of the Z_p row space of D."""
    M = np.asarray(D, dtype=np.int64) % p
    M = M[M.any(axis=1)]
    basis = []
    for col in range(M.shape[1] if M.ndim == 2 else 0):
        if not len(M):
            break
        nz = np.flatnonzero(M[:, col])
        if not len(nz):
            continue
        piv = M[nz[0]] * pow(int(M[nz[0], col]), -1, p) % p
        M = (M - np.outer(M[:, col], piv)) % p
        M = M[M.any(axis=1)]
        basis.append(piv)
    n = D.shape[1] if np.ndim(D) == 2 else 0
    return np.array(basis, dtype=np.int64).reshape(len(basis), n)


def rank_mod_p(D: np.ndarray, p: int) -> int:
    return len(echelon_basis(D, p))


# codeword sets


@dataclass(frozen=True, eq=False)
class CodewordSet:
    keys: np.ndarray
    params: Params
    guard: int = DEFAULT_GUARD
    # independent vectors whose span is the set, when known
    basis: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if len(self.keys) > self.guard:
            raise GuardExceeded(len(self.keys), self.guard)

    @classmethod
    def from_digits(cls, D: np.ndarray, params: Params, guard: int = DEFAULT_GUARD) -> CodewordSet:
        D = np.asarray(D, dtype=np.int64).reshape(-1, params.n_digits)
        return cls(np.unique(pack(D, params)), params, guard)

    @classmethod
    def from_words(cls, words: Iterable[PairPoly], params: Params, guard: int = DEFAULT_GUARD) -> CodewordSet:
        rows = []
        for w in words:
            if w.params != params:
                raise ValueError("word params differ from set params")
            rows.append(w.digits())
        return cls.from_digits(np.array(rows, dtype=np.int64).reshape(len(rows), params.n_digits), params, guard)

    def __len__(self) -> int:
        return int(self.keys.size)

    @property
    def size(self) -> int:
        return len(self)

    @property
    def exponent(self) -> int | None:
        """log_p |set| when the size is a power of p."""
        n, e = len(self), 0
        while n % self.params.p == 0:
            n //= self.params.p
            e += 1
        return e if n == 1 else None

    def digits(self) -> np.ndarray:
        return unpack(self.keys, self.params)

    def contains_keys(self, keys: np.ndarray) -> np.ndarray:
        keys = np.asarray(keys, dtype=np.int64)
        if not self.keys.size:
            return np.zeros(keys.shape, dtype=bool)
        idx = np.searchsorted(self.keys, keys)
        idx[idx >= self.keys.size] = 0
        return self.keys[idx] == keys

    def contains_digits(self, D: np.ndarray) -> np.ndarray:
        return self.contains_keys(pack(D, self.params))

    def __contains__(self, word: PairPoly) -> bool:
        return bool(self.contains_digits(np.array([word.digits()]))[0])

    def words(self) -> list[PairPoly]:
        return [PairPoly.from_digits(tuple(int(x) for x in row), self.params) for row in self.digits()]

    def __iter__(self):
        return iter(self.words())

    def same_as(self, other: CodewordSet) -> bool:
        return self.params == other.params and np.array_equal(self.keys, other.keys)

    def dump(self, path: str | Path) -> None:
        """One packed word per line: base-p digits in coordinate order."""
        sep = "" if self.params.p <= len(_DIGIT_CHARS) else "."
        with open(path, "w") as fh:
            for start in range(0, len(self), _CHUNK):
                for row in unpack(self.keys[start : start + _CHUNK], self.params):
                    fh.write(sep.join(_digit_str(int(x)) for x in row) + "\n")


def _digit_str(x: int) -> str:
    return _DIGIT_CHARS[x] if x < len(_DIGIT_CHARS) else str(x)


class _Closure:
    """Incremental set fixed point under addition, residues and chosen maps."""

    def __init__(self, params: Params, guard: int, shift: bool = True):
        self.params = params
        self.guard = guard
        self.shift = shift
        n = params.n_digits
        self.D = np.zeros((1, n), dtype=np.int64)
        self.keys = np.zeros(1, dtype=np.int64)
        self.added: list[np.ndarray] = []

    def _images(self, w: np.ndarray) -> list[np.ndarray]:
        W = w[None, :]
        out = [apply_u(W, self.params)[0], apply_v(W, self.params)[0]]
        if self.shift:
            out.insert(0, apply_shift(W, self.params)[0])
        return out

    def contains(self, w: np.ndarray) -> bool:
        k = int(pack(w[None, :], self.params)[0])
        i = np.searchsorted(self.keys, k)
        return i < self.keys.size and self.keys[i] == k

    def absorb(self, w: np.ndarray) -> bool:
        """Add w and everything it generates; True if the set grew."""
        p = self.params.p
        grew = False
        queue = deque([np.asarray(w, dtype=np.int64) % p])
        while queue:
            w = queue.popleft()
            if self.contains(w):
                continue
            if len(self.keys) * p > self.guard:
                raise GuardExceeded(len(self.keys) * p, self.guard)
            self.D = np.concatenate([self.D] + [(self.D + c * w) % p for c in range(1, p)])
            self.keys = pack(self.D, self.params)
            order = np.argsort(self.keys)
            self.keys, self.D = self.keys[order], self.D[order]
            self.added.append(w)
            queue.extend(self._images(w))
            grew = True
        return grew

    def result(self) -> CodewordSet:
        basis = np.array(self.added, dtype=np.int64).reshape(len(self.added), self.params.n_digits)
        return CodewordSet(self.keys.copy(), self.params, self.guard, basis)


def span_closure(
    generators: Sequence[PairPoly], params: Params, guard: int = DEFAULT_GUARD, *, shift: bool = True
) -> CodewordSet:
    """Least set holding 0 and the generators, closed under + and star by residues, u, v, x.

    With ``shift=False`` the result is the R-span (no closure under x).
    """
    if guard < 1:
        raise ValueError("guard must be >= 1")
    cl = _Closure(params, guard, shift)
    for g in generators:
        if g.params != params:
            raise ValueError("generator params differ")
        cl.absorb(np.array(g.digits(), dtype=np.int64))
    return cl.result()


def closure_exponent(generators: Sequence[PairPoly], params: Params, *, shift: bool = True) -> int:
    """log_p of the closure size, by rank rather than enumeration.

    The closure is a Z_p-subspace, so it suffices to grow a basis: a vector
    independent of the current basis joins it and its x, u, v images are
    queued.  Dependent vectors have images in the span already.  Works far
    beyond the enumeration guard.
    """
    p = params.p
    pivots: dict[int, np.ndarray] = {}

    def reduce(w: np.ndarray) -> np.ndarray:
        w = w % p
        for col in sorted(pivots):
            if w[col]:
                w = (w - w[col] * pivots[col]) % p
        return w

    queue = deque(np.array(g.digits(), dtype=np.int64) for g in generators)
    while queue:
        r = reduce(queue.popleft())
        nz = np.flatnonzero(r)
        if not nz.size:
            continue
        col = int(nz[0])
        r = r * pow(int(r[col]), -1, p) % p
        for c, row in pivots.items():
            if row[col]:
                pivots[c] = (row - row[col] * r) % p
        pivots[col] = r
        W = r[None, :]
        queue.extend([apply_u(W, params)[0], apply_v(W, params)[0]])
        if shift:
            queue.append(apply_shift(W, params)[0])
    return len(pivots)


def _image(cs: CodewordSet, op: str, D: np.ndarray) -> np.ndarray:
    params = cs.params
    if op == "tau":
        return apply_shift(D, params, RElem.one(params.p))
    if op in ("tau_lambda", "star_x"):
        return apply_shift(D, params)
    if op == "star_u":
        return apply_u(D, params)
    if op == "star_v":
        return apply_v(D, params)
    raise ValueError(f"unknown operation {op!r}")


def check_closed_under(cs: CodewordSet, op: str) -> bool:
    """Exhaustively test whether op maps the set into itself."""
    if op not in ALL_OPS:
        raise ValueError(f"unknown operation {op!r}; choose from {ALL_OPS}")
    if not len(cs):
        return True
    p = cs.params.p
    if op == "addition":
        # a finite set is closed under + iff it is the full Z_p-span of itself
        if not cs.contains_keys(np.zeros(1, dtype=np.int64))[0]:
            return False
        return len(cs) == p ** rank_mod_p(cs.digits(), p)
    for start in range(0, len(cs), _CHUNK):
        D = unpack(cs.keys[start : start + _CHUNK], cs.params)
        if op == "residues":
            images = [(r * D) % p for r in range(p)]
        else:
            images = [_image(cs, op, D)]
        for img in images:
            if not cs.contains_digits(img).all():
                return False
    return True


def check_closed_under_shift(cs: CodewordSet, lam: RElem) -> bool:
    for start in range(0, len(cs), _CHUNK):
        D = unpack(cs.keys[start : start + _CHUNK], cs.params)
        if not cs.contains_digits(apply_shift(D, cs.params, lam)).all():
            return False
    return True


def closure_profile(cs: CodewordSet) -> dict[str, bool]:
    return {op: check_closed_under(cs, op) for op in ALL_OPS}


# audits


def _orbit_exponent(w: np.ndarray, params: Params) -> int:
    W = w[None, :]
    return rank_mod_p(np.concatenate([W, apply_u(W, params), apply_v(W, params)]), params.p)


def independence_audit(span, params: Params, guard: int = DEFAULT_GUARD) -> dict:
    """Walk the spanning set in order and test each element against its predecessors.

    ``span`` is any sequence of objects with ``word``, ``block`` and ``shift``
    attributes, optionally carrying ``block_weights`` (the per-element
    contribution exponent the generator theorem asserts for each block).
    """
    cl = _Closure(params, guard, shift=False)
    entries = []
    first_dependent = None
    per_block: dict[str, dict] = {}
    weights = getattr(span, "block_weights", None) or {}
    for idx, el in enumerate(span):
        w = np.array(el.word.digits(), dtype=np.int64)
        dependent = cl.contains(w)
        orbit = _orbit_exponent(w, params)
        before = len(cl.keys)
        cl.absorb(w)
        gained = round(math.log(len(cl.keys) / before, params.p))
        entries.append(
            {"index": idx, "block": el.block, "shift": el.shift, "dependent": dependent,
             "orbit_exponent": orbit, "gained_exponent": gained}
        )
        if dependent and first_dependent is None:
            first_dependent = idx
        blk = per_block.setdefault(el.block, {"elements": 0, "orbit_product_exponent": 0, "gained_exponent": 0})
        blk["elements"] += 1
        blk["orbit_product_exponent"] += orbit
        blk["gained_exponent"] += gained
    for name, blk in per_block.items():
        w = weights.get(name)
        blk["claimed_exponent"] = None if w is None else w * blk["elements"]
    rspan_exp = round(math.log(len(cl.keys), params.p))
    return {
        "independent": first_dependent is None,
        "first_dependent": first_dependent,
        "entries": entries,
        "blocks": per_block,
        "orbit_product_exponent": sum(e["orbit_exponent"] for e in entries),
        "r_span_exponent": rspan_exp,
        "claimed_exponent": (
            sum(b["claimed_exponent"] for b in per_block.values())
            if per_block and all(b["claimed_exponent"] is not None for b in per_block.values())
            else None
        ),
    }


def _ambient_chunks(params: Params, guard: int):
    total = params.p ** params.n_digits
    if total > guard:
        raise GuardExceeded(total, guard)
    for start in range(0, total, _CHUNK):
        yield unpack(np.arange(start, min(start + _CHUNK, total), dtype=np.int64), params)


def _form_matrix(B: np.ndarray, params: Params) -> np.ndarray:
    """Columns f with <z, w>_component = z . f for each basis row w and R-component."""
    L, A, Bu, Cv = _blocks(B, params)
    z_a = np.zeros_like(L)
    z_b = np.zeros_like(A)
    free = np.concatenate([z_a, A, z_b, z_b], axis=1)
    upart = np.concatenate([L, Bu, A, z_b], axis=1)
    vpart = np.concatenate([L, Cv, z_b, A], axis=1)
    return np.concatenate([free, upart, vpart], axis=0).T


def dual_code(cs: CodewordSet, guard: int | None = None) -> CodewordSet:
    """All ambient words whose R-valued inner product with every member vanishes.

    The ambient space is scanned exhaustively.  The form is Z_p-bilinear, so
    testing against a basis of the set is the same as testing every member.
    The result is checked for closure under the shift that multiplies the
    wrapped symbol by lam^-1, which is the plain cyclic shift when lam = 1.
    """
    guard = cs.guard if guard is None else guard
    params = cs.params
    p = params.p
    basis = echelon_basis(cs.digits(), p)
    F = _form_matrix(basis, params) if len(basis) else np.zeros((params.n_digits, 0), dtype=np.int64)
    kept = []
    for Z in _ambient_chunks(params, guard):
        vals = (Z @ F) % p if F.shape[1] else np.zeros((len(Z), 0), dtype=np.int64)
        kept.append(pack(Z[~vals.any(axis=1)], params))
    dual = CodewordSet(np.unique(np.concatenate(kept)), params, guard)
    if not check_closed_under_shift(dual, relem_inverse(params.lam)):
        raise OracleInvariantError("dual of a shift-closed code is not shift-closed")
    return dual


def _weights(D: np.ndarray, params: Params, metric: str) -> np.ndarray:
    if metric == "hamming-mixed":
        L, A, B, C = _blocks(D, params)
        return (L != 0).sum(axis=1) + ((A != 0) | (B != 0) | (C != 0)).sum(axis=1)
    if metric == "gray-hamming":
        return (gray_digits(D, params) != 0).sum(axis=1)
    raise ValueError(f"unknown metric {metric!r}")


def min_distance(cs: CodewordSet, metric: str = "hamming-mixed") -> int:
    best = None
    for start in range(0, len(cs), _CHUNK):
        keys = cs.keys[start : start + _CHUNK]
        keys = keys[keys != 0]
        if not keys.size:
            continue
        w = int(_weights(unpack(keys, cs.params), cs.params, metric).min())
        best = w if best is None else min(best, w)
    if best is None:
        raise ValueError("no nonzero codeword")
    return best


def gray_image_keys(cs: CodewordSet) -> np.ndarray:
    return np.unique(pack(gray_digits(cs.digits(), cs.params), cs.params))


def qc_image_check(cs: CodewordSet) -> str:
    """Classify the Gray image by closure under simultaneous block rotation."""
    params = cs.params
    G = gray_digits(cs.digits(), params)
    gkeys = np.unique(pack(G, params))
    rotated = pack(_rotate_gray_blocks(G, params), params)
    idx = np.searchsorted(gkeys, rotated)
    idx[idx >= gkeys.size] = 0
    if not (gkeys[idx] == rotated).all():
        return "neither"
    if params.alpha == params.beta:
        return f"QC-{4 * params.alpha}-index-4"
    return f"generalized-QC-({params.alpha},{3 * params.beta})"


def _tuple_shift_closed(words: set[tuple], shift) -> bool:
    return all(shift(w) in words for w in words)


def separability_check(c_alpha: Iterable[Sequence[int]], c_beta: Iterable[Sequence[RElem]],
                       params: Params, guard: int = DEFAULT_GUARD) -> dict:
    """Check, on one instance, product lam-shift-closed <=> (C_alpha cyclic and C_beta lam-constacyclic)."""
    lam = params.lam
    A = {tuple(int(x) % params.p for x in c) for c in c_alpha}
    B = {tuple(d) for d in c_beta}
    if not A or not B:
        raise ValueError("both factors must be non-empty")
    if len(A) * len(B) > guard:
        raise GuardExceeded(len(A) * len(B), guard)
    alpha_cyclic = _tuple_shift_closed(A, lambda c: (c[-1],) + c[:-1] if c else c)
    beta_const = _tuple_shift_closed(B, lambda d: (lam * d[-1],) + d[:-1])
    prod = CodewordSet.from_words(
        (PairPoly.from_symbols(c, d, params) for c in sorted(A) for d in sorted(B, key=lambda t: [e.as_tuple() for e in t])),
        params, guard,
    )
    product_closed = check_closed_under(prod, "tau_lambda")
    return {
        "alpha_cyclic": alpha_cyclic,
        "beta_constacyclic": beta_const,
        "product_closed": product_closed,
        "forward_holds": (not product_closed) or (alpha_cyclic and beta_const),
        "backward_holds": (not (alpha_cyclic and beta_const)) or product_closed,
        "equivalence_holds": product_closed == (alpha_cyclic and beta_const),
        "size": len(prod),
    }
