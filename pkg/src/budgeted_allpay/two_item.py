"""Two-item joint equilibria.

For unequal budgets the strong player s (larger budget) and weak player w
each mix over a small polyline in the bid square: axis-parallel pieces that
reproduce the single-item atoms at 0 or at the cap, joined by a diagonal
piece. Items are relabelled internally so that ``L1 >= L2``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import (ConstructionInvalid, PreconditionViolated, SupportInfeasible,
                     UnsupportedRegime)
from .model import TOL, AuctionProfile, item_caps, roles, validate_profile
from .strategy import MixedStrategy, validate_strategy


class TwoItemCase(enum.Enum):
    C1 = "C1"  # v_s1 > L1, v_s2 > L2
    C2 = "C2"  # v_s1 = L1, v_s2 = L2
    C3 = "C3"  # v_s1 > L1, v_s2 = L2
    C4 = "C4"  # v_s1 = L1, v_s2 > L2


@dataclass(frozen=True)
class ThresholdSet:
    """Construction geometry in the relabelled frame (``L1 >= L2``).

    Thresholds not used by a case are ``None``. ``swapped`` records whether
    the caller's items were exchanged to reach this frame.
    """

    case_tag: TwoItemCase
    strong: int
    weak: int
    L1: float
    L2: float
    T1: float | None
    T2: float | None
    T3: float | None
    T4: float | None
    swapped: bool

    @property
    def order(self) -> tuple[int, int]:
        return (1, 0) if self.swapped else (0, 1)


def _require_two(profile: AuctionProfile) -> None:
    validate_profile(profile)
    if profile.n_items != 2:
        raise PreconditionViolated(f"expected a two-item profile, got n_items={profile.n_items}")


def is_fully_symmetric(profile: AuctionProfile) -> bool:
    vals = {v for row in profile.values for v in row}
    return profile.budgets[0] == profile.budgets[1] and len(vals) == 1


def solve_two_symmetric(profile: AuctionProfile) -> tuple[MixedStrategy, MixedStrategy]:
    """Equal budgets and one common value: both players uniform on the anti-diagonal."""
    _require_two(profile)
    if not is_fully_symmetric(profile):
        raise PreconditionViolated("requires B1 == B2 and all four values equal")
    c = min(profile.values[0][0], profile.budgets[0])
    return tuple(
        MixedStrategy.build(i, segments=[((0.0, c), (c, 0.0), 1.0)]) for i in (1, 2)
    )


def compute_thresholds(profile: AuctionProfile) -> ThresholdSet:
    """Classify an unequal-budget two-item profile and compute T1..T4.

    Raises :class:`ConstructionInvalid` listing every violated validity
    inequality (thresholds out of range or a negative mass coefficient).
    """
    _require_two(profile)
    if profile.budgets[0] == profile.budgets[1]:
        raise PreconditionViolated("requires B1 != B2")
    r = roles(profile)
    caps = item_caps(profile)
    swapped = caps[0] < caps[1]
    p = profile.permuted((1, 0)) if swapped else profile
    L1, L2 = sorted(caps, reverse=True)
    vs1, vs2 = p.value(r.strong, 0), p.value(r.strong, 1)
    vw1, vw2 = p.value(r.weak, 0), p.value(r.weak, 1)
    high1 = vs1 - L1 > TOL
    high2 = vs2 - L2 > TOL
    T1 = T2 = T3 = T4 = None
    checks: list[tuple[str, float, float, float]] = []  # (name, value, lo, hi)
    if high1 and high2:
        tag = TwoItemCase.C1
        T1 = vw1 - vw1 / vw2 * L2
        T2 = vw2 - vw2 / vw1 * L1
        T3 = L1 - (vs2 - L2) / vs2 * vs1
        T4 = L2 - (vs1 - L1) / vs1 * vs2
        checks += [("T1", T1, 0, L1), ("T2", T2, 0, L2), ("T3", T3, 0, L1), ("T4", T4, 0, L2),
                   ("L2/v_w2 + L1/v_w1 - 1", L2 / vw2 + L1 / vw1 - 1, 0, float("inf")),
                   ("L2/v_s2 + L1/v_s1 - 1", L2 / vs2 + L1 / vs1 - 1, 0, float("inf"))]
    elif not high1 and not high2:
        tag = TwoItemCase.C2
        T1 = L1 - vw1 + L2 / vw2 * vw1
        T2 = L2 - vw2 + L1 / vw1 * vw2
        checks += [("T1", T1, 0, L1), ("T2", T2, 0, L2),
                   ("L1/v_w1 + L2/v_w2 - 1", L1 / vw1 + L2 / vw2 - 1, 0, float("inf"))]
    elif high1:
        tag = TwoItemCase.C3
        T2 = L2 - L1 / vw1 * vw2
        T4 = L2 - (vs1 - L1) / vs1 * vs2
        checks += [("T2", T2, 0, L2), ("T4", T4, 0, L2)]
    else:
        tag = TwoItemCase.C4
        T1 = L1 - L2 / vw2 * vw1
        T3 = L1 - vs1 + L2 / vs2 * vs1
        checks += [("T1", T1, 0, L1), ("T3", T3, 0, L1)]
    failures = []
    for name, val, lo, hi in checks:
        if val < lo - TOL:
            failures.append(f"{name} = {val:.17g} < {lo}")
        elif val > hi + TOL:
            failures.append(f"{name} = {val:.17g} > {hi:.17g}")
    if failures:
        raise ConstructionInvalid(failures)

    def clamp(x, hi):
        return None if x is None else min(max(x, 0.0), hi)

    return ThresholdSet(tag, r.strong, r.weak, L1, L2,
                        clamp(T1, L1), clamp(T2, L2), clamp(T3, L1), clamp(T4, L2), swapped)


def _assemble(th: ThresholdSet, p: AuctionProfile) -> tuple[MixedStrategy, MixedStrategy]:
    """Strong and weak strategies in the relabelled frame."""
    s, w = th.strong, th.weak
    L1, L2 = th.L1, th.L2
    vs1, vs2 = p.value(s, 0), p.value(s, 1)
    vw1, vw2 = p.value(w, 0), p.value(w, 1)
    T1, T2, T3, T4 = th.T1, th.T2, th.T3, th.T4
    if th.case_tag is TwoItemCase.C1:
        strong = MixedStrategy.build(s, segments=[
            ((0.0, L2), (T1, L2), T1 / vw1),
            ((L1, 0.0), (L1, T2), T2 / vw2),
            ((T1, L2), (L1, T2), L2 / vw2 + L1 / vw1 - 1.0),
        ])
        weak = MixedStrategy.build(w, segments=[
            ((T3, 0.0), (L1, 0.0), (L1 - T3) / vs1),
            ((0.0, T4), (0.0, L2), (L2 - T4) / vs2),
            ((0.0, T4), (T3, 0.0), L2 / vs2 + L1 / vs1 - 1.0),
        ])
    elif th.case_tag is TwoItemCase.C2:
        strong = MixedStrategy.build(s, segments=[
            ((0.0, T2), (T1, 0.0), L1 / vw1 + L2 / vw2 - 1.0),
            ((T1, 0.0), (L1, 0.0), (L1 - T1) / vw1),
            ((0.0, T2), (0.0, L2), (L2 - T2) / vw2),
        ])
        weak = MixedStrategy.build(w, segments=[((0.0, L2), (L1, 0.0), 1.0)])
    elif th.case_tag is TwoItemCase.C3:
        strong = MixedStrategy.build(s, atoms=[((L1, 0.0), 1.0 - L2 / vw2)], segments=[
            ((L1, 0.0), (L1, T2), T2 / vw2),
            ((0.0, L2), (L1, T2), L1 / vw1),
        ])
        weak = MixedStrategy.build(w, segments=[
            ((0.0, T4), (0.0, L2), (L2 - T4) / vs2),
            ((0.0, T4), (L1, 0.0), L1 / vs1),
        ])
    else:
        strong = MixedStrategy.build(s, atoms=[((0.0, L2), 1.0 - L1 / vw1)], segments=[
            ((0.0, L2), (T1, L2), T1 / vw1),
            ((T1, L2), (L1, 0.0), L2 / vw2),
        ])
        weak = MixedStrategy.build(w, segments=[
            ((T3, 0.0), (L1, 0.0), (L1 - T3) / vs1),
            ((0.0, L2), (T3, 0.0), L2 / vs2),
        ])
    return strong, weak


def solve_two_asymmetric(profile: AuctionProfile) -> tuple[MixedStrategy, MixedStrategy]:
    """Equilibrium strategies ``(F_1, F_2)`` for a two-item profile with ``B1 != B2``."""
    th = compute_thresholds(profile)
    p = profile.permuted(th.order)
    strong, weak = _assemble(th, p)
    if th.swapped:
        strong, weak = strong.permuted((1, 0)), weak.permuted((1, 0))
    for strat in (strong, weak):
        try:
            validate_strategy(strat, profile, enforce_caps=True)
        except SupportInfeasible as exc:
            raise ConstructionInvalid([f"player {strat.owner} {exc.message}"]) from None
    return (strong, weak) if th.strong == 1 else (weak, strong)


def solve_two(profile: AuctionProfile) -> tuple[MixedStrategy, MixedStrategy]:
    _require_two(profile)
    if is_fully_symmetric(profile):
        return solve_two_symmetric(profile)
    if profile.budgets[0] == profile.budgets[1]:
        raise UnsupportedRegime("equal budgets with heterogeneous values have no known construction")
    return solve_two_asymmetric(profile)
