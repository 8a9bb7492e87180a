"""Auction profiles, tie-breaking and pure-strategy utilities.

Players are numbered 1 and 2; items are indexed from 0.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InfeasibleBid, InvalidProfile

#: Absolute tolerance for equality tests between reals (ties, x == L_j, ...).
TOL = 1e-12


@dataclass(frozen=True)
class AuctionProfile:
    """Budgets ``(B1, B2)`` and a 2 x n valuation matrix.

    Construction only coerces types; call :func:`validate_profile` (or use
    :meth:`create`) to enforce the model constraints.
    """

    n_items: int
    budgets: tuple[float, float]
    values: tuple[tuple[float, ...], tuple[float, ...]]

    def __post_init__(self):
        object.__setattr__(self, "budgets", tuple(float(b) for b in self.budgets))
        object.__setattr__(
            self, "values", tuple(tuple(float(v) for v in row) for row in self.values)
        )

    @classmethod
    def create(cls, budgets: Sequence[float], values: Sequence[Sequence[float]],
               n_items: int | None = None) -> "AuctionProfile":
        if n_items is None:
            n_items = len(values[0]) if len(values) else 0
        return validate_profile(cls(n_items, tuple(budgets), tuple(values)))

    def budget(self, player: int) -> float:
        return self.budgets[player - 1]

    def value(self, player: int, item: int) -> float:
        return self.values[player - 1][item]

    def sub_profile(self, item: int) -> "AuctionProfile":
        """Single-item profile ``(B1, B2, v_1j, v_2j)``."""
        return AuctionProfile(1, self.budgets, ((self.values[0][item],), (self.values[1][item],)))

    def permuted(self, order: Sequence[int]) -> "AuctionProfile":
        """Profile with items reordered so that new item k is old item ``order[k]``."""
        return AuctionProfile(
            self.n_items, self.budgets, tuple(tuple(row[j] for j in order) for row in self.values)
        )

    def to_dict(self) -> dict:
        return {"budgets": list(self.budgets), "values": [list(row) for row in self.values]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "AuctionProfile":
        try:
            budgets = data["budgets"]
            values = data["values"]
        except (KeyError, TypeError) as exc:
            raise InvalidProfile("json", f"missing field {exc}") from None
        if not isinstance(budgets, list) or len(budgets) != 2:
            raise InvalidProfile("budgets", "expected a list of two numbers")
        if not isinstance(values, list) or len(values) != 2 or not all(
            isinstance(row, list) for row in values
        ):
            raise InvalidProfile("values", "expected a 2 x n matrix")
        try:
            profile = cls(len(values[0]), tuple(budgets), tuple(values))
        except (TypeError, ValueError) as exc:
            raise InvalidProfile("json", str(exc)) from None
        return validate_profile(profile)

    @classmethod
    def from_json(cls, text: str) -> "AuctionProfile":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidProfile("json", str(exc)) from None
        return cls.from_dict(data)


def validate_profile(profile: AuctionProfile) -> AuctionProfile:
    """Return ``profile`` unchanged or raise :class:`InvalidProfile`."""
    n = profile.n_items
    if n not in (1, 2, 3):
        raise InvalidProfile("n_items", f"must be 1, 2 or 3, got {n}")
    if len(profile.budgets) != 2:
        raise InvalidProfile("budgets", "exactly two budgets are required")
    for i, b in enumerate(profile.budgets, start=1):
        if not math.isfinite(b):
            raise InvalidProfile("budget", f"B{i} is not finite")
        if b < 0:
            raise InvalidProfile("budget", f"B{i} = {b} is negative")
    if len(profile.values) != 2 or any(len(row) != n for row in profile.values):
        raise InvalidProfile("dimensions", f"values must be a 2 x {n} matrix")
    for i, row in enumerate(profile.values, start=1):
        for j, v in enumerate(row):
            if not math.isfinite(v) or v <= 0:
                raise InvalidProfile("value", f"v[{i}][{j}] = {v} must be positive and finite")
    return profile


@dataclass(frozen=True)
class RoleAssignment:
    """Strong (larger budget) and weak player indices."""

    strong: int
    weak: int


def roles(profile: AuctionProfile) -> RoleAssignment:
    b1, b2 = profile.budgets
    if b1 == b2:
        raise ValueError("roles are undefined when B1 == B2")
    return RoleAssignment(1, 2) if b1 > b2 else RoleAssignment(2, 1)


def item_cap(profile: AuctionProfile, item: int) -> float:
    """L_j = min{B1, B2, v_1j, v_2j}."""
    return min(*profile.budgets, profile.values[0][item], profile.values[1][item])


def item_caps(profile: AuctionProfile) -> tuple[float, ...]:
    return tuple(item_cap(profile, j) for j in range(profile.n_items))


class TieOutcome(enum.Enum):
    PLAYER1 = 1
    PLAYER2 = 2
    COIN_FLIP = 0


def tie_break(profile: AuctionProfile, item: int, tie_bid: float) -> TieOutcome:
    """Outcome when both players bid ``tie_bid`` on ``item``.

    A tie at the cap goes to the player with the strictly larger
    ``min{B_i, v_ij}``; every other tie is a fair coin flip.
    """
    if abs(tie_bid - item_cap(profile, item)) <= TOL:
        r1 = min(profile.budgets[0], profile.values[0][item])
        r2 = min(profile.budgets[1], profile.values[1][item])
        if r1 - r2 > TOL:
            return TieOutcome.PLAYER1
        if r2 - r1 > TOL:
            return TieOutcome.PLAYER2
    return TieOutcome.COIN_FLIP


def tie_win_probability(profile: AuctionProfile, player: int, item: int, tie_bid: float) -> float:
    outcome = tie_break(profile, item, tie_bid)
    if outcome is TieOutcome.COIN_FLIP:
        return 0.5
    return 1.0 if outcome.value == player else 0.0


def check_bid(profile: AuctionProfile, player: int, bid: Sequence[float]) -> np.ndarray:
    """Return ``bid`` as an array, raising :class:`InfeasibleBid` if it is not feasible."""
    x = np.asarray(bid, dtype=float)
    if x.shape != (profile.n_items,):
        raise InfeasibleBid(f"player {player} bid has {x.size} coordinates, expected {profile.n_items}")
    if not np.all(np.isfinite(x)) or np.any(x < -TOL):
        raise InfeasibleBid(f"player {player} bid {x.tolist()} has a negative coordinate")
    if x.sum() > profile.budget(player) + TOL:
        raise InfeasibleBid(
            f"player {player} bid {x.tolist()} sums to {x.sum()} > budget {profile.budget(player)}"
        )
    return x


def win_probabilities(profile: AuctionProfile, x1: Sequence[float], x2: Sequence[float]) -> np.ndarray:
    """Per-item probability that player 1 wins; player 2 wins with the complement."""
    p = np.empty(profile.n_items)
    for j, (a, b) in enumerate(zip(x1, x2)):
        if abs(a - b) <= TOL:
            p[j] = tie_win_probability(profile, 1, j, 0.5 * (a + b))
        else:
            p[j] = 1.0 if a > b else 0.0
    return p


def pure_utility(profile: AuctionProfile, x1: Sequence[float], x2: Sequence[float]) -> tuple[float, float]:
    """Expected utilities of a pure bid pair (ties contribute their expectation)."""
    a = check_bid(profile, 1, x1)
    b = check_bid(profile, 2, x2)
    p1 = win_probabilities(profile, a, b)
    v1 = np.asarray(profile.values[0])
    v2 = np.asarray(profile.values[1])
    u1 = float(np.sum(p1 * v1 - a))
    u2 = float(np.sum((1.0 - p1) * v2 - b))
    return u1, u2
