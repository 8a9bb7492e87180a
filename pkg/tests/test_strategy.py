import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from budgeted_allpay import (MassNotNormalized, MixedStrategy, SupportInfeasible, cdf_eval,
                             marginal_of, sample, solve, validate_strategy)
from budgeted_allpay.strategy import (MarginalCdf, Segment, canonical_marginal, empirical_ks,
                                      uniform_marginal, write_samples_csv)

from conftest import profile

SYM2 = profile((1, 1), [[3, 3], [3, 3]])
THREE = profile((6, 5), [[4, 3, 3], [4, 3, 3]])


def test_validate_symmetric_two_item_strategy():
    for s in solve(SYM2).strategies:
        validate_strategy(s, SYM2, enforce_caps=True)
        assert s.total_mass == 1.0


def test_validate_mass_not_normalized():
    s = MixedStrategy.build(1, atoms=[((0.0, 0.0), 0.5)])
    with pytest.raises(MassNotNormalized) as exc:
        validate_strategy(s, SYM2)
    assert exc.value.total == 0.5


def test_validate_support_infeasible():
    s = MixedStrategy.build(1, segments=[((0, 3), (3, 0), 1.0)])
    with pytest.raises(SupportInfeasible) as exc:
        validate_strategy(s, profile((2, 2), [[3, 3], [3, 3]]))
    assert exc.value.point == (0.0, 3.0)


def test_segment_density_and_length():
    seg = solve(SYM2).strategies[0].segments[0]
    assert seg.length == pytest.approx(np.sqrt(2))
    assert seg.density == pytest.approx(1 / np.sqrt(2))
    with pytest.raises(ValueError):
        Segment((1, 1), (1, 1), 0.5)


def test_build_drops_degenerate_components():
    s = MixedStrategy.build(1, atoms=[((0.0,), 0.0), ((1.0,), 0.5)],
                            segments=[((0.0,), (0.0,), 0.5), ((0.0,), (1.0,), 0.0)])
    assert [a.point for a in s.atoms] == [(1.0,), (0.0,)]
    assert s.segments == ()


def test_marginal_symmetric_two_item():
    m = marginal_of(solve(SYM2).strategies[0], 0)
    assert m.atoms == ()
    assert m.pieces == ((0.0, 1.0, 1.0),)
    assert m.sup_distance(uniform_marginal(0, 1)) == 0.0


def test_marginal_of_atom():
    m = marginal_of(MixedStrategy.build(1, atoms=[((0.0, 0.0), 1.0)]), 1)
    assert m.atoms == ((0.0, 1.0),)
    assert m.pieces == ()


def test_marginal_of_perpendicular_segment_is_atom():
    s = MixedStrategy.build(1, segments=[((2.0, 0.0), (2.0, 1.0), 1.0)])
    assert marginal_of(s, 0).atoms == ((2.0, 1.0),)
    assert marginal_of(s, 1).pieces == ((0.0, 1.0, 1.0),)


def test_marginal_three_item_item1_uniform():
    strat = solve(THREE).strategies[0]
    m = marginal_of(strat, 0)
    # AB covers [2,4], BC covers [0,2], CA covers [0,4]: density 1/8 + 1/8 everywhere
    assert len(m.pieces) == 1
    lo, hi, d = m.pieces[0]
    assert (lo, hi) == (0.0, 4.0)
    assert d == pytest.approx(0.25, abs=1e-15)
    draws = sample(strat, 11, 10**6)
    assert empirical_ks(draws[:, 0], m) <= 0.005


def test_cdf_eval_strong_high_value():
    s, _ = solve(profile((3, 1), [[4], [2]])).strategies
    m = marginal_of(s, 0)
    assert cdf_eval(m, 1.0, "left") == pytest.approx(0.5, abs=1e-15)
    assert cdf_eval(m, 1.0, "right") - cdf_eval(m, 1.0, "left") == pytest.approx(0.5, abs=1e-15)
    assert cdf_eval(m, 0.0, "left") == 0.0
    with pytest.raises(ValueError):
        cdf_eval(m, 0.0, "middle")


def test_cdf_below_support_is_zero():
    m = canonical_marginal([(1.0, 0.5)], [(2.0, 3.0, 0.5)])
    assert cdf_eval(m, 0.5, "right") == 0.0
    assert cdf_eval(m, 0.5, "left") == 0.0


def test_canonical_merges_collinear_pieces():
    m = canonical_marginal([(0.0, 0.25), (0.0, 0.25)], [(0, 1, 0.25), (1, 2, 0.25)])
    assert m.atoms == ((0.0, 0.5),)
    assert m.pieces == ((0.0, 2.0, 0.25),)


def test_sample_atom():
    s = MixedStrategy.build(1, atoms=[((2.0, 0.0), 1.0)])
    assert sample(s, 5, 3).tolist() == [[2.0, 0.0]] * 3


def test_sample_symmetric_ks_and_determinism():
    strat = solve(SYM2).strategies[0]
    a = sample(strat, 7, 10**5)
    b = sample(strat, 7, 10**5)
    assert np.array_equal(a, b)
    assert empirical_ks(a[:, 0], marginal_of(strat, 0)) <= 0.02
    assert np.all(a.sum(axis=1) <= 1 + 1e-12)


def test_sample_rejects_count():
    with pytest.raises(ValueError):
        sample(MixedStrategy.build(1, atoms=[((0.0,), 1.0)]), 0, 0)


def test_strategy_json_roundtrip():
    strat = solve(THREE).strategies[1]
    back = MixedStrategy.from_json(strat.to_json())
    assert back == strat
    data = json.loads(strat.to_json())
    assert list(data) == ["owner", "atoms", "segments"]


def test_samples_csv_format():
    import io
    buf = io.StringIO()
    write_samples_csv(np.array([[0.1, 2.0 / 3.0]]), buf)
    assert buf.getvalue() == "x1,x2\n0.10000000000000001,0.66666666666666663\n"


@st.composite
def mixtures(draw):
    n = draw(st.integers(1, 3))
    coord = st.floats(0, 5, allow_nan=False)
    k_atoms = draw(st.integers(0, 3))
    k_segs = draw(st.integers(0 if k_atoms else 1, 3))
    weights = draw(st.lists(st.floats(0.05, 1), min_size=k_atoms + k_segs,
                            max_size=k_atoms + k_segs))
    total = sum(weights)
    atoms = [(tuple(draw(coord) for _ in range(n)), w / total) for w in weights[:k_atoms]]
    segs = []
    for w in weights[k_atoms:]:
        a = tuple(draw(coord) for _ in range(n))
        b = tuple(c + draw(st.floats(0.01, 3)) for c in a)
        segs.append((a, b, w / total))
    return MixedStrategy.build(1, atoms=atoms, segments=segs)


@settings(max_examples=200, deadline=None)
@given(mixtures(), st.lists(st.floats(-1, 12), min_size=1, max_size=20))
def test_marginal_properties(strat, xs):
    for j in range(strat.n_items):
        m = marginal_of(strat, j)
        assert m.total_mass == pytest.approx(1.0, abs=1e-12)
        assert float(m(m.support_max)) == pytest.approx(1.0, abs=1e-12)
        pts = np.sort(np.array(xs))
        right, left = m(pts), m.left_limit(pts)
        assert np.all(np.diff(right) >= -1e-12)
        assert np.all(np.diff(left) >= -1e-12)
        assert np.all(right >= left - 1e-15)
        jumps = right - left
        atom_locs = np.array([x for x, _ in m.atoms])
        off_atoms = [abs(x - atom_locs).min() > 1e-12 if atom_locs.size else True for x in pts]
        assert np.all(np.abs(jumps[off_atoms]) <= 1e-12)


@settings(max_examples=30, deadline=None)
@given(mixtures(), st.integers(0, 2**31))
def test_sampling_converges_to_marginals(strat, seed):
    draws = sample(strat, seed, 10**5)
    for j in range(strat.n_items):
        assert empirical_ks(draws[:, j], marginal_of(strat, j)) <= 0.02


def test_marginal_cdf_requires_valid_item():
    with pytest.raises(IndexError):
        marginal_of(solve(SYM2).strategies[0], 2)


def test_marginal_is_value_object():
    assert canonical_marginal([], [(0, 1, 1)]) == MarginalCdf((), ((0.0, 1.0, 1.0),))
