from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from amplitrace.affine_hecke import sandwich_upper
from amplitrace.amplifier import (
    DEFAULT_EPSILON,
    Place,
    build_amplifier,
    choose_places,
    exponent_budget,
    period_lower_bound,
    primes_below,
    tau_l2_squared,
    tau_normalization,
)
from amplitrace.errors import InfeasibleBudget, ValidationError
from amplitrace.exact import ExactPower
from amplitrace.rootdata import build_root_datum
from amplitrace.sympair import catalog, get_pair, is_H_large

WITNESSED = [(p.label, w) for p in catalog() if (w := is_H_large(p)) is not None]


def _trial_division(n):
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def test_choose_places_examples():
    assert [p.q for p in choose_places(10)] == [5, 7]
    assert [p.q for p in choose_places(20, (1, 4))] == [13, 17]
    assert [p.q for p in choose_places(4)] == [2, 3]
    assert choose_places(3, (0, 7)) == []


@pytest.mark.parametrize("P", [2, 3, 10, 97, 1000, 12345, 100_000])
def test_choose_places_matches_trial_division(P):
    expected = [q for q in range((P + 1) // 2, P) if _trial_division(q)]
    assert [p.q for p in choose_places(P)] == expected


def test_sieve_against_trial_division():
    assert primes_below(5000) == [n for n in range(5000) if _trial_division(n)]


def test_place_validation():
    with pytest.raises(ValidationError):
        Place(9)
    with pytest.raises(ValidationError):
        Place(7, (1, 4))
    with pytest.raises(ValidationError):
        choose_places(1)
    with pytest.raises(ValidationError):
        choose_places(10, (1, 0))


def test_tau_normalization_examples():
    sl2 = build_root_datum("A1")
    tau = tau_normalization(sl2, (1,), 3)
    assert tau == Fraction(1, 3) and tau**2 == Fraction(1, 9)
    # twelve cosets, each carrying tau^2
    assert tau_l2_squared(sl2, (1,), 3) == 12 * tau**2 == Fraction(12, 9)
    assert tau_normalization(sl2, (0,), 5) == 1
    half = tau_normalization(build_root_datum("SO5"), (1, 0), 4)
    assert half == ExactPower(Fraction(1), 4, Fraction(-3, 2)) == Fraction(1, 8)
    assert tau_normalization(build_root_datum("A2"), (1, 0), 2) == Fraction(1, 4)


@given(st.sampled_from(["A1", "A2", "B2", "A1xA1"]), st.integers(0, 3), st.sampled_from([2, 3, 5, 7, 11]))
def test_tau_l2_in_sandwich(label, k, q):
    rd = build_root_datum(label)
    lam = (k,) + (0,) * (rd.character_lattice_rank - 1)
    assert 1 <= tau_l2_squared(rd, lam, q) <= sandwich_upper(rd)


def test_period_bound_examples():
    mr = get_pair("maclachlan-reid")
    pb = period_lower_bound(mr, (1,), 3)
    assert pb.bound == 1
    assert pb.exact == Fraction(4, 3)
    split = get_pair("split-control")
    for q in (2, 3, 5):
        b = period_lower_bound(split, (1,), q).bound
        assert b == Fraction(1, q) and b < 1
    with pytest.raises(ValidationError):
        period_lower_bound(mr, (0,), 3)


@pytest.mark.parametrize("label,w", WITNESSED, ids=[lab for lab, _ in WITNESSED])
@pytest.mark.parametrize("q", [2, 3, 5, 7, 101])
def test_period_bound_from_margin(label, w, q):
    pb = period_lower_bound(get_pair(label), w.mu, q)
    assert pb.bound == ExactPower(Fraction(1), q, w.margin)
    assert pb.bound >= 1
    if w.margin > 0:
        assert pb.bound > 1
    if pb.exact is not None:
        assert pb.exact >= pb.bound


def test_maclachlan_reid_plan():
    plan = build_amplifier(get_pair("maclachlan-reid"), (1,), 10)
    assert [p.q for p in plan.S] == [5, 7]
    assert plan.tau_l2 == (Fraction(36, 25), Fraction(64, 49))
    assert plan.k_S_at_1 == Fraction(3364, 1225)
    assert [b.exact for b in plan.period_bounds] == [Fraction(6, 5), Fraction(8, 7)]
    assert plan.support_exponent_B == 1
    assert plan.coset_exponent_C == 10
    assert plan.cross_period_certified()
    assert plan.cross_period_sum() >= len(plan.S) * (len(plan.S) - 1)
    assert not plan.degenerate


def test_sl2_support_exponent():
    plan = build_amplifier(get_pair("compact-control"), (1,), 4)
    assert plan.support_exponent_B == 1
    assert [p.q for p in plan.S] == [2, 3]


def test_degenerate_and_rejected_plans():
    plan = build_amplifier(get_pair("maclachlan-reid"), (1,), 3, cond=(0, 7))
    assert plan.degenerate and plan.S == ()
    with pytest.raises(ValidationError):
        build_amplifier(get_pair("maclachlan-reid"), (0,), 10)
    with pytest.raises(ValidationError):
        build_amplifier(get_pair("split-control"), (1,), 10)


def test_budget_examples():
    b = exponent_budget(10, 1)
    assert b.epsilon == DEFAULT_EPSILON
    assert b.c == Fraction(1, 20)
    assert b.delta == Fraction(1, 20) * (1 - DEFAULT_EPSILON) / 2
    assert b.delta_limit == Fraction(1, 40)
    assert b.symbolic_check() and b.certificate["pass"]
    b = exponent_budget(1, 1, epsilon=Fraction(1, 4))
    assert (b.c, b.delta) == (Fraction(1, 2), Fraction(3, 16))
    with pytest.raises(InfeasibleBudget):
        exponent_budget(10, 0)
    with pytest.raises(ValidationError):
        exponent_budget(0, 1)
    with pytest.raises(ValidationError):
        exponent_budget(1, 1, epsilon=Fraction(1, 2))


fracs = st.fractions(min_value=Fraction(1, 100), max_value=100, max_denominator=100)


@given(fracs, fracs, st.fractions(min_value=Fraction(1, 100), max_value=Fraction(1, 4), max_denominator=100))
def test_budget_symbolic(A, delta0, eps):
    b = exponent_budget(A, delta0, epsilon=eps)
    assert b.symbolic_check()
    assert b.c * b.A <= b.delta0 / 2
    assert b.delta > 0


@given(fracs, fracs, fracs)
def test_budget_monotone(A, d1, d2):
    lo, hi = sorted((d1, d2))
    assert exponent_budget(A, lo).delta <= exponent_budget(A, hi).delta
    assert exponent_budget(lo, d1).delta >= exponent_budget(hi, d1).delta
