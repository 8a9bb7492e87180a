"""Dispatch a profile to the matching equilibrium construction."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .model import AuctionProfile, validate_profile
from .single_item import classify_single, solve_single
from .strategy import MixedStrategy
from .three_item import three_item_order, triangle_spec, solve_three
from .two_item import compute_thresholds, is_fully_symmetric, solve_two


@dataclass(frozen=True)
class Solution:
    profile: AuctionProfile
    case: str
    strategies: tuple[MixedStrategy, MixedStrategy]

    def to_dict(self) -> dict:
        return {"profile": self.profile.to_dict(), "case": self.case,
                "strategies": [s.to_dict() for s in self.strategies]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "Solution":
        profile = AuctionProfile.from_dict(data["profile"])
        s1, s2 = (MixedStrategy.from_dict(s) for s in data["strategies"])
        return cls(profile, data.get("case", "candidate"), (s1, s2))


def case_tag(profile: AuctionProfile) -> str:
    """Human-readable case label; raises the same errors as :func:`solve`."""
    validate_profile(profile)
    n = profile.n_items
    if n == 1:
        return classify_single(profile).tag.value
    if n == 2:
        if is_fully_symmetric(profile):
            return "TwoItemSymmetric"
        return "TwoItem" + compute_thresholds(profile).case_tag.value
    order = three_item_order(profile)
    return "ThreeItem" + triangle_spec([profile.values[0][j] for j in order]).case_tag.value


def solve(profile: AuctionProfile, boundary_mass: float | None = None) -> Solution:
    validate_profile(profile)
    n = profile.n_items
    if n == 1:
        strategies = solve_single(profile, boundary_mass)
    elif n == 2:
        strategies = solve_two(profile)
    else:
        strategies = solve_three(profile)
    return Solution(profile, case_tag(profile), tuple(strategies))
