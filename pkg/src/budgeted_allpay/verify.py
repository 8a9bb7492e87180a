"""Exact expected utilities and numerical epsilon-equilibrium certificates.

Utilities are additive over items and the payoff on item j depends only on
the opponent's marginal on j, so everything here works item by item:

    g_ij(x) = F_-ij(x-) v_ij + P(opponent bids exactly x) * w_tie v_ij - x

Best responses to a fixed opponent mixture are attained by pure bids, so a
certificate searches pure deviations only. The search maximizes
``sum_j g_ij(x_j)`` over ``sum_j x_j <= B_i`` by combining per-item
candidate lists through their monotone frontiers.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .model import TOL, AuctionProfile, check_bid, item_cap, tie_win_probability
from .strategy import MarginalCdf, MixedStrategy, marginal_of, validate_strategy


@dataclass(frozen=True)
class VerifierConfig:
    grid_step: float = 0.005
    critical_offset: float = 1e-6
    tolerance: float = 1e-6
    parallel: bool = False

    def __post_init__(self):
        if not self.grid_step > 0:
            raise ValueError("grid_step must be positive")
        if not 0 < self.critical_offset < self.grid_step:
            raise ValueError("critical_offset must lie in (0, grid_step)")
        if not self.tolerance >= 0:
            raise ValueError("tolerance must be non-negative")


def item_payoff(profile: AuctionProfile, player: int, item: int, xs, opponent: MarginalCdf) -> np.ndarray:
    """Vectorized expected payoff ``g_ij`` of bidding each of ``xs`` on ``item``."""
    xs = np.asarray(xs, dtype=float)
    scalar = xs.ndim == 0
    xs = np.atleast_1d(xs)
    v = profile.value(player, item)
    win = np.atleast_1d(opponent.left_limit(xs))
    atom = np.atleast_1d(opponent.atom_mass_at(xs))
    hit = np.nonzero(atom)
    if hit[0].size:
        tie = np.zeros_like(xs)
        tie[hit] = [tie_win_probability(profile, player, item, x) for x in xs[hit]]
        win = win + atom * tie
    out = win * v - xs
    return out[0] if scalar else out


def pure_vs_mixed_utility(profile: AuctionProfile, player: int, bid: Sequence[float],
                          opponent: MixedStrategy) -> float:
    x = check_bid(profile, player, bid)
    return math.fsum(
        float(item_payoff(profile, player, j, x[j], marginal_of(opponent, j)))
        for j in range(profile.n_items)
    )


def _expected_item_payoff(profile, player, item, own: MarginalCdf, opp: MarginalCdf) -> float:
    v = profile.value(player, item)
    terms = []
    if own.atoms:
        locs = np.array([x for x, _ in own.atoms])
        masses = np.array([m for _, m in own.atoms])
        terms.append(float(np.dot(masses, item_payoff(profile, player, item, locs, opp))))
    cuts_all = np.array(opp.breakpoints())
    for lo, hi, d in own.pieces:
        inner = cuts_all[(cuts_all > lo) & (cuts_all < hi)]
        cuts = np.concatenate(([lo], inner, [hi]))
        a, b = cuts[:-1], cuts[1:]
        mid = 0.5 * (a + b)
        # the integrand is affine on each cell, so the midpoint rule is exact
        terms.append(float(np.sum(d * (b - a) * (opp.left_limit(mid) * v - mid))))
    return math.fsum(terms)


def equilibrium_value(profile: AuctionProfile, strategy1: MixedStrategy,
                      strategy2: MixedStrategy) -> tuple[float, float]:
    """Expected utilities ``(u1, u2)`` of a mixed profile, computed in closed form."""
    strategies = {1: strategy1, 2: strategy2}
    out = []
    for i in (1, 2):
        own, opp = strategies[i], strategies[3 - i]
        out.append(math.fsum(
            _expected_item_payoff(profile, i, j, marginal_of(own, j), marginal_of(opp, j))
            for j in range(profile.n_items)
        ))
    return out[0], out[1]


def critical_points(profile: AuctionProfile, player: int, item: int, opponent: MarginalCdf,
                    offset: float, extra: Sequence[float] = ()) -> np.ndarray:
    """0, the cap, and every opponent breakpoint together with its +/- ``offset`` probes."""
    pts = [0.0, item_cap(profile, item), *extra]
    for c in opponent.breakpoints():
        pts.extend((c - offset, c, c + offset))
    return _clip_candidates(np.array(pts), profile.budget(player))


def grid_points(profile: AuctionProfile, item: int, step: float) -> np.ndarray:
    cap = item_cap(profile, item)
    k = int(math.floor(cap / step + 1e-9))
    return np.append(np.arange(k + 1) * step, cap)


def _clip_candidates(pts: np.ndarray, budget: float) -> np.ndarray:
    pts = pts[(pts >= 0.0) & (pts <= budget + TOL)]
    return np.unique(pts)


def _frontier(xs: np.ndarray, gs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Candidates whose payoff strictly beats every cheaper candidate."""
    best = np.maximum.accumulate(gs)
    keep = np.ones(xs.size, dtype=bool)
    keep[1:] = gs[1:] > best[:-1]
    return xs[keep], gs[keep]


def maximize_separable(candidates: Sequence[tuple[np.ndarray, np.ndarray]],
                       budget: float) -> tuple[np.ndarray, float]:
    """Maximize ``sum_j g_j(x_j)`` subject to ``sum_j x_j <= budget``.

    ``candidates[j]`` is ``(xs, gs)`` with ``xs`` sorted ascending. Ties are
    broken toward the lexicographically smallest bid vector.
    """
    fronts = [_frontier(np.asarray(xs, float), np.asarray(gs, float)) for xs, gs in candidates]
    lim = budget + TOL
    if len(fronts) == 1:
        xs, gs = fronts[0]
        k = int(np.searchsorted(xs, lim, side="right")) - 1
        return np.array([xs[k]]), float(gs[k])
    *head, (xl, gl) = fronts
    if len(head) == 1:
        hx = head[0][0][:, None]
        hg = head[0][1]
    else:
        (x1, g1), (x2, g2) = head
        a, b = np.meshgrid(np.arange(x1.size), np.arange(x2.size), indexing="ij")
        a, b = a.ravel(), b.ravel()
        hx = np.column_stack((x1[a], x2[b]))
        hg = g1[a] + g2[b]
    spent = hx.sum(axis=1)
    k = np.searchsorted(xl, lim - spent, side="right") - 1
    ok = k >= 0
    hx, hg, k = hx[ok], hg[ok], k[ok]
    total = hg + gl[k]
    best = int(np.argmax(total))
    return np.append(hx[best], xl[k[best]]), float(total[best])


def best_response_search(profile: AuctionProfile, player: int, opponent: MixedStrategy,
                         config: VerifierConfig = VerifierConfig(), *, use_grid: bool = True,
                         include: Sequence[Sequence[float]] = ()) -> tuple[np.ndarray, float]:
    """Best pure deviation against ``opponent`` over the candidate set.

    The candidate set per item is the critical points plus, with
    ``use_grid``, a uniform grid of step ``config.grid_step`` up to the cap.
    ``include`` adds whole bid vectors whose coordinates join the candidates.
    """
    cands = []
    for j in range(profile.n_items):
        m = marginal_of(opponent, j)
        extra = [p[j] for p in include]
        pts = critical_points(profile, player, j, m, config.critical_offset, extra)
        if use_grid:
            pts = _clip_candidates(np.concatenate((pts, grid_points(profile, j, config.grid_step))),
                                   profile.budget(player))
        cands.append((pts, item_payoff(profile, player, j, pts, m)))
    return maximize_separable(cands, profile.budget(player))


@dataclass(frozen=True)
class PlayerCertificate:
    equilibrium_value: float
    best_deviation_value: float
    deviation_gain: float
    critical_gain: float
    witness_bid: tuple[float, ...]
    passed: bool

    def to_dict(self) -> dict:
        return {
            "value": self.equilibrium_value,
            "best_deviation": self.best_deviation_value,
            "gain": self.deviation_gain,
            "critical_gain": self.critical_gain,
            "witness": list(self.witness_bid),
            "pass": self.passed,
        }


@dataclass(frozen=True)
class EquilibriumCertificate:
    player1: PlayerCertificate
    player2: PlayerCertificate
    config: VerifierConfig

    @property
    def passed(self) -> bool:
        return self.player1.passed and self.player2.passed

    def player(self, i: int) -> PlayerCertificate:
        return self.player1 if i == 1 else self.player2

    def to_dict(self) -> dict:
        return {"player1": self.player1.to_dict(), "player2": self.player2.to_dict(),
                "config": asdict(self.config), "pass": self.passed}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _certify_player(profile, player, own, opponent, value, config) -> PlayerCertificate:
    support = own.support_points()
    _, crit_value = best_response_search(profile, player, opponent, config,
                                         use_grid=False, include=support)
    witness, full_value = best_response_search(profile, player, opponent, config,
                                               use_grid=True, include=support)
    crit_gain = crit_value - value
    gain = full_value - value
    ok = crit_gain <= config.tolerance and gain <= 2 * config.grid_step
    return PlayerCertificate(value, full_value, gain, crit_gain,
                             tuple(float(x) for x in witness), bool(ok))


def verify_equilibrium(profile: AuctionProfile, strategy1: MixedStrategy, strategy2: MixedStrategy,
                       config: VerifierConfig = VerifierConfig()) -> EquilibriumCertificate:
    """Certify that neither player gains more than the configured bounds by deviating.

    Passing means: the best deviation over critical points gains at most
    ``tolerance`` and the best over the grid gains at most ``2 * grid_step``.
    """
    validate_strategy(strategy1, profile)
    validate_strategy(strategy2, profile)
    values = equilibrium_value(profile, strategy1, strategy2)
    pairs = [(1, strategy1, strategy2, values[0]), (2, strategy2, strategy1, values[1])]

    def job(args):
        i, own, opp, val = args
        return _certify_player(profile, i, own, opp, val, config)

    if config.parallel:
        with ThreadPoolExecutor(max_workers=2) as pool:
            certs = list(pool.map(job, pairs))
    else:
        certs = [job(p) for p in pairs]
    return EquilibriumCertificate(certs[0], certs[1], config)
