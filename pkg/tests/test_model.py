from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from budgeted_allpay import (AuctionProfile, InfeasibleBid, InvalidProfile, TieOutcome, item_caps,
                             pure_utility, tie_break, validate_profile)
from budgeted_allpay.model import win_probabilities

from conftest import profile


def test_validate_ok():
    p = AuctionProfile(1, (1, 1), ((4,), (3,)))
    assert validate_profile(p) is p


@pytest.mark.parametrize("n, budgets, values, field", [
    (1, (-1, 1), ((4,), (3,)), "budget"),
    (2, (1, 1), ((3,), (3,)), "dimensions"),
    (1, (1, 1), ((0,), (3,)), "value"),
    (4, (1, 1), ((1,) * 4, (1,) * 4), "n_items"),
    (1, (float("nan"), 1), ((1,), (1,)), "budget"),
])
def test_validate_rejects(n, budgets, values, field):
    with pytest.raises(InvalidProfile) as exc:
        validate_profile(AuctionProfile(n, budgets, values))
    assert exc.value.field == field


def test_profile_json_roundtrip():
    p = profile((5, 2), [[3.5, 3.2], [4, 3]])
    assert p.to_json() == '{"budgets": [5.0, 2.0], "values": [[3.5, 3.2], [4.0, 3.0]]}'
    assert AuctionProfile.from_json(p.to_json()) == p


@pytest.mark.parametrize("text", ['{"budgets":[1]}', '{"budgets":[1,1],"values":[[1],[1,2]]}',
                                  "not json", '{"budgets":[1,1],"values":[["a"],[1]]}'])
def test_profile_json_rejects(text):
    with pytest.raises(InvalidProfile):
        AuctionProfile.from_json(text)


@pytest.mark.parametrize("budgets, values, caps", [
    ((3, 1), [[4], [2]], (1,)),
    ((2, 2), [[4], [3]], (2,)),
    ((5, 2), [[3.5, 3.2], [4, 3]], (2, 2)),
])
def test_item_caps(budgets, values, caps):
    assert item_caps(profile(budgets, values)) == caps


def test_tie_break_examples():
    assert tie_break(profile((0, 1), [[0.5], [1]]), 0, 0.0) is TieOutcome.PLAYER2
    assert tie_break(profile((1, 1), [[4], [3]]), 0, 1.0) is TieOutcome.COIN_FLIP
    assert tie_break(profile((3, 1), [[4], [2]]), 0, 0.5) is TieOutcome.COIN_FLIP
    assert tie_break(profile((3, 1), [[4], [2]]), 0, 1.0) is TieOutcome.PLAYER1


def test_pure_utility_examples():
    assert pure_utility(profile((1, 1), [[4], [3]]), [1], [1]) == (1.0, 0.5)
    u = pure_utility(profile((1, 1), [[4], [3]]), [0.5], [0.2])
    assert u == pytest.approx((3.5, -0.2), abs=1e-15)


def test_pure_utility_three_items():
    # player 1 takes items 1 and 3 (4 > 2, 1 > 0), player 2 takes item 2
    u = pure_utility(profile((6, 5), [[4, 3, 3], [4, 3, 3]]), [4, 0, 1], [2, 3, 0])
    assert u == (2.0, -2.0)


def test_pure_utility_infeasible():
    p = profile((1, 1), [[4], [3]])
    with pytest.raises(InfeasibleBid):
        pure_utility(p, [1.5], [0])
    with pytest.raises(InfeasibleBid):
        pure_utility(p, [-0.1], [0])


fractions = st.fractions(min_value=0, max_value=10, max_denominator=8)
positive = st.fractions(min_value=Fraction(1, 8), max_value=10, max_denominator=8)


@st.composite
def profile_and_bids(draw):
    n = draw(st.integers(1, 3))
    values = [[draw(positive) for _ in range(n)] for _ in range(2)]
    bids = [[draw(fractions) for _ in range(n)] for _ in range(2)]
    budgets = [sum(b) + draw(fractions) for b in bids]
    if draw(st.booleans()):
        budgets = [sum(b) for b in bids]
    return budgets, values, bids


def _oracle(budgets, values, bids):
    """Exact rational evaluation of both players' utilities."""
    n = len(values[0])
    u = [Fraction(0), Fraction(0)]
    for j in range(n):
        a, b = bids[0][j], bids[1][j]
        if a > b:
            p1 = Fraction(1)
        elif a < b:
            p1 = Fraction(0)
        else:
            cap = min(budgets[0], budgets[1], values[0][j], values[1][j])
            r1, r2 = min(budgets[0], values[0][j]), min(budgets[1], values[1][j])
            p1 = Fraction(1, 2)
            if a == cap and r1 != r2:
                p1 = Fraction(int(r1 > r2))
        u[0] += p1 * values[0][j] - a
        u[1] += (1 - p1) * values[1][j] - b
    return u


@settings(max_examples=300, deadline=None)
@given(profile_and_bids())
def test_pure_utility_matches_rational_oracle(data):
    budgets, values, bids = data
    p = profile([float(b) for b in budgets], [[float(v) for v in row] for row in values])
    u = pure_utility(p, [float(x) for x in bids[0]], [float(x) for x in bids[1]])
    expected = _oracle(budgets, values, bids)
    assert u == pytest.approx([float(e) for e in expected], abs=1e-9)
    # total surplus identity
    p1 = win_probabilities(p, [float(x) for x in bids[0]], [float(x) for x in bids[1]])
    surplus = sum(p1[j] * p.values[0][j] + (1 - p1[j]) * p.values[1][j] for j in range(p.n_items))
    assert sum(u) == pytest.approx(surplus - float(sum(bids[0]) + sum(bids[1])), abs=1e-9)
    assert all(0.0 <= q <= 1.0 for q in p1)


@settings(max_examples=200, deadline=None)
@given(profile_and_bids(), st.fractions(min_value=0, max_value=1, max_denominator=8))
def test_utility_decreasing_in_losing_bid(data, frac):
    budgets, values, bids = data
    p = profile([float(b) for b in budgets], [[float(v) for v in row] for row in values])
    x1 = [float(x) for x in bids[0]]
    x2 = [float(x) for x in bids[1]]
    for j in range(p.n_items):
        if x1[j] < x2[j]:
            lower = list(x1)
            lower[j] = x1[j] * float(frac)
            assert pure_utility(p, lower, x2)[0] >= pure_utility(p, x1, x2)[0]


@settings(max_examples=200, deadline=None)
@given(st.floats(0, 5), st.floats(0, 5), st.floats(0.1, 5), st.floats(0.1, 5), st.floats(0, 5))
def test_tie_break_deterministic_only_at_cap(b1, b2, v1, v2, x):
    p = profile((b1, b2), [[v1], [v2]])
    cap = min(b1, b2, v1, v2)
    r1, r2 = min(b1, v1), min(b2, v2)
    expected_det = abs(x - cap) <= 1e-12 and abs(r1 - r2) > 1e-12
    assert (tie_break(p, 0, x) is not TieOutcome.COIN_FLIP) == expected_det
    assert (tie_break(p, 0, cap) is not TieOutcome.COIN_FLIP) == (abs(r1 - r2) > 1e-12)
