import itertools
import random

import pytest

from zpuv.ambient import PairPoly, Params, gray_psi, inner_product, star_mul
from zpuv.builder import build_span, generators
from zpuv.finite_field import FpPoly
from zpuv.local_ring import RElem, RPoly
from zpuv.oracle import (
    ALL_OPS,
    CodewordSet,
    GuardExceeded,
    check_closed_under,
    closure_exponent,
    closure_profile,
    dual_code,
    independence_audit,
    min_distance,
    qc_image_check,
    separability_check,
    span_closure,
)
from zpuv.sampling import random_valid_spec


def naive_closure(gens, P):
    """Fixed point of sums and scalar images using only PairPoly arithmetic."""
    scalars = [RPoly.x(P.p), RPoly.constant(RElem.u(P.p)), RPoly.constant(RElem.v(P.p))]
    S = {PairPoly.zero(P), *gens}
    while True:
        new = set(S)
        for a in S:
            new.update(star_mul(s, a) for s in scalars)
            new.update(a.scale(c) for c in range(P.p))
        new.update(a + b for a, b in itertools.product(S, repeat=2))
        if new == S:
            return S
        S = new


def all_words(P):
    for digits in itertools.product(range(P.p), repeat=P.n_digits):
        yield PairPoly.from_digits(digits, P)


def test_empty_generators_give_zero():
    P = Params(3, 2, 1)
    cs = span_closure([], P)
    assert len(cs) == 1 and PairPoly.zero(P) in cs


def test_v_torsion_generator():
    P = Params(5, 0, 1)
    cs = span_closure([PairPoly(FpPoly.zero(5), RPoly.constant(RElem.v(5)), P)], P)
    assert len(cs) == 5
    assert set(cs.words()) == {PairPoly(FpPoly.zero(5), RPoly.constant(RElem(0, 0, c, 5)), P) for c in range(5)}


@pytest.mark.parametrize("seed", range(12))
def test_closure_matches_naive_engine(seed):
    rng = random.Random(seed)
    p = rng.choice([2, 3])
    P = Params(p, rng.randint(0, 2), 1 if p == 3 else rng.randint(1, 2),
               RElem(1, rng.randrange(p), rng.randrange(p), p))
    gens = [PairPoly.from_digits([rng.randrange(p) for _ in range(P.n_digits)], P) for _ in range(rng.randint(1, 2))]
    fast = span_closure(gens, P)
    assert set(fast.words()) == naive_closure(gens, P)


def test_guard_exceeded_reports_lower_bound():
    P = Params(3, 2, 2)
    gens = [PairPoly.from_digits([1] + [0] * 7, P), PairPoly.from_digits([0, 0, 1] + [0] * 5, P)]
    with pytest.raises(GuardExceeded, match="closure exceeds guard") as err:
        span_closure(gens, P, guard=5)
    assert err.value.lower_bound > 5


def test_non_closed_set():
    P = Params(2, 3, 1)
    cs = CodewordSet.from_words([PairPoly.zero(P), PairPoly.from_digits([1, 0, 0, 0, 0, 0], P)], P)
    assert not check_closed_under(cs, "tau")
    assert check_closed_under(cs, "addition")
    assert qc_image_check(cs) == "neither"


@pytest.mark.parametrize("seed", range(20))
def test_master_submodule_invariant(seed):
    rng = random.Random(1000 + seed)
    p = rng.choice([2, 3])
    spec = random_valid_spec(rng, p, rng.randint(0, 3), rng.randint(1, 3))
    cs = span_closure(generators(spec), spec.params)
    assert all(closure_profile(cs).values())
    e = cs.exponent
    assert e is not None and p**e == len(cs) and e <= spec.params.ambient_exponent()
    assert closure_exponent(generators(spec), spec.params) == e
    again = span_closure(cs.words(), spec.params)
    assert again.same_as(cs)


def test_span_generates_a_subset_of_the_closure(example_specs):
    spec = example_specs[3]
    cs = span_closure(generators(spec), spec.params)
    span = build_span(spec)
    assert all(el.word in cs for el in span)


def test_dual_of_zero_is_ambient():
    P = Params(2, 1, 1)
    d = dual_code(span_closure([], P))
    assert len(d) == 2**4


def test_dual_of_ambient_matches_brute_force():
    P = Params(2, 1, 1)
    full = CodewordSet.from_words(all_words(P), P)
    expect = {z for z in all_words(P) if all(not inner_product(z, w) for w in all_words(P))}
    assert set(dual_code(full).words()) == expect
    assert expect == {PairPoly.zero(P)}


@pytest.mark.parametrize("seed", range(6))
def test_dual_matches_brute_force(seed):
    rng = random.Random(seed)
    p = 2 if seed % 2 else 3
    P = Params(p, 1, 1, RElem(1, rng.randrange(p), rng.randrange(p), p))
    gens = [PairPoly.from_digits([rng.randrange(p) for _ in range(4)], P)]
    cs = span_closure(gens, P)
    code = cs.words()
    expect = {z for z in all_words(P) if all(not inner_product(z, w) for w in code)}
    d = dual_code(cs)
    assert set(d.words()) == expect
    assert all(w in dual_code(d) for w in code)


def test_min_distance_examples():
    P = Params(2, 2, 1)
    full = CodewordSet.from_words(all_words(P), P)
    assert min_distance(full) == 1
    rep = CodewordSet.from_words([PairPoly.zero(P), PairPoly.from_digits([1, 1, 0, 0, 0], P)], P)
    assert min_distance(rep, "hamming-mixed") == 2
    with pytest.raises(ValueError, match="no nonzero codeword"):
        min_distance(span_closure([], P))
    with pytest.raises(ValueError):
        min_distance(full, "lee")


def test_u_generator_gray_distance():
    P = Params(3, 0, 2)
    cs = span_closure([PairPoly(FpPoly.zero(3), RPoly.constant(RElem.u(3)), P)], P)
    assert min_distance(cs, "gray-hamming") == 1
    weights = {sum(1 for g in gray_psi(w) if g) for w in cs.words() if not w.is_zero()}
    assert min(weights) == 1


def test_qc_dichotomy_on_examples(example_specs):
    spec = example_specs[3]
    cs = span_closure(generators(spec), spec.params)
    assert qc_image_check(cs) == "generalized-QC-(4,6)"
    P = Params(2, 2, 2)
    gens = [PairPoly.from_digits([1, 0, 1, 1, 0, 0, 0, 0], P)]
    assert qc_image_check(span_closure(gens, P)) == "QC-8-index-4"


def test_independence_audit_flags_duplicate(example_specs):
    spec = example_specs[3]
    span = list(build_span(spec))
    span.insert(1, span[0])
    audit = independence_audit(span, spec.params)
    assert audit["first_dependent"] == 1
    assert audit["entries"][1]["dependent"]


def test_independence_audit_single_block():
    from zpuv.builder import CodeSpec

    spec = CodeSpec("additive-cyclic-simple", 2, 2, 2, f1=FpPoly([1, 0, 1], 2), f2=FpPoly([1], 2),
                    g=FpPoly([1, 1], 2))
    audit = independence_audit(build_span(spec), spec.params)
    assert audit["independent"]


def test_example3_audit_names_contributions(example_specs):
    spec = example_specs[3]
    audit = independence_audit(build_span(spec), spec.params)
    assert audit["independent"]
    assert audit["claimed_exponent"] == 10
    assert audit["blocks"]["S3"]["gained_exponent"] == 1
    assert audit["r_span_exponent"] == 8


def test_separability_both_directions():
    lam = RElem(1, 1, 0, 3)
    P = Params(3, 2, 2, lam)
    c_alpha = [(0, 0), (1, 1), (2, 2)]
    d = (RElem(1, 0, 0, 3), RElem(1, 0, 0, 3))
    c_beta = {tuple(RElem.zero(3) for _ in range(2))}
    # close {0, d} under the lam-shift and Z_p multiples by hand
    frontier = [d]
    while frontier:
        w = frontier.pop()
        for c in range(1, 3):
            m = tuple(e * c for e in w)
            if m not in c_beta:
                c_beta.add(m)
                frontier.append(m)
        s = (lam * w[-1], w[0])
        if s not in c_beta:
            c_beta.add(s)
            frontier.append(s)
    c_beta_sum = {tuple(x + y for x, y in zip(a, b)) for a in c_beta for b in c_beta}
    while c_beta_sum != c_beta:
        c_beta = c_beta_sum
        c_beta_sum = {tuple(x + y for x, y in zip(a, b)) for a in c_beta for b in c_beta}
    rep = separability_check(c_alpha, c_beta, P)
    assert rep["product_closed"] and rep["equivalence_holds"]
    bad = separability_check([(0, 0), (1, 0)], c_beta, P)
    assert not bad["alpha_cyclic"] and not bad["product_closed"] and bad["equivalence_holds"]


def test_dump_is_deterministic(tmp_path, example_specs):
    spec = example_specs[3]
    cs = span_closure(generators(spec), spec.params)
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    cs.dump(a)
    span_closure(generators(spec), spec.params).dump(b)
    assert a.read_bytes() == b.read_bytes()
    assert len(a.read_text().splitlines()) == 19683


def test_all_ops_listed():
    assert set(ALL_OPS) >= {"tau", "tau_lambda", "star_u", "star_v", "star_x", "addition"}
    with pytest.raises(ValueError):
        check_closed_under(span_closure([], Params(2, 1, 1)), "rotate")
