"""Single-item equilibria: case classification, strategies and values."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import InvalidParameter, NoEquilibrium, PreconditionViolated
from .model import TOL, AuctionProfile, RoleAssignment, item_cap, roles, validate_profile
from .strategy import MixedStrategy

NO_EQUILIBRIUM_REASON = "equal budgets above half the smaller value (B1 = B2 > min(v1, v2)/2)"


class SingleItemCase(enum.Enum):
    PURE_EQUILIBRIUM = "PureEquilibrium"
    BOUNDARY_FAMILY = "BoundaryFamily"
    ASYMMETRIC_STRONG_HIGH_VALUE = "AsymmetricStrongHighValue"
    ASYMMETRIC_STRONG_LOW_VALUE = "AsymmetricStrongLowValue"
    NON_EXISTENCE_REGIME = "NonExistenceRegime"


@dataclass(frozen=True)
class SingleItemClassification:
    tag: SingleItemCase
    roles: RoleAssignment | None
    cap: float


def _require_single(profile: AuctionProfile) -> None:
    validate_profile(profile)
    if profile.n_items != 1:
        raise PreconditionViolated(f"expected a single-item profile, got n_items={profile.n_items}")


def classify_single(profile: AuctionProfile) -> SingleItemClassification:
    _require_single(profile)
    b1, b2 = profile.budgets
    v1, v2 = profile.values[0][0], profile.values[1][0]
    cap = item_cap(profile, 0)
    # no tolerance on B1 == B2: the case structure is discontinuous there
    if b1 == b2:
        half = 0.5 * min(v1, v2)
        if b1 < half:
            tag = SingleItemCase.PURE_EQUILIBRIUM
        elif b1 == half:
            tag = SingleItemCase.BOUNDARY_FAMILY
        else:
            tag = SingleItemCase.NON_EXISTENCE_REGIME
        return SingleItemClassification(tag, None, cap)
    r = roles(profile)
    v_s = profile.value(r.strong, 0)
    tag = (SingleItemCase.ASYMMETRIC_STRONG_LOW_VALUE if abs(v_s - cap) <= TOL
           else SingleItemCase.ASYMMETRIC_STRONG_HIGH_VALUE)
    return SingleItemClassification(tag, r, cap)


def boundary_mass_range(profile: AuctionProfile) -> tuple[int, float]:
    """Mixing player and the largest admissible mass at 0 for the boundary family.

    The mixing player is the one with the smaller value (player 1 on equal values).
    """
    v1, v2 = profile.values[0][0], profile.values[1][0]
    i = 1 if v1 <= v2 else 2
    cap = item_cap(profile, 0)
    return i, max(0.0, 1.0 - 2.0 * cap / profile.value(3 - i, 0))


def solve_single(profile: AuctionProfile, boundary_mass: float | None = None
                 ) -> tuple[MixedStrategy, MixedStrategy]:
    """Equilibrium strategies ``(F_1, F_2)`` for a single-item profile.

    ``boundary_mass`` selects the member of the equilibrium family when
    ``B1 = B2 = min(v1, v2)/2``; it is the probability that the lower-value
    player bids 0 and defaults to its largest admissible value.
    """
    c = classify_single(profile)
    L = c.cap
    if c.tag is SingleItemCase.NON_EXISTENCE_REGIME:
        raise NoEquilibrium(NO_EQUILIBRIUM_REASON)

    if c.tag is SingleItemCase.PURE_EQUILIBRIUM:
        return (MixedStrategy.build(1, atoms=[((profile.budgets[0],), 1.0)]),
                MixedStrategy.build(2, atoms=[((profile.budgets[1],), 1.0)]))

    if c.tag is SingleItemCase.BOUNDARY_FAMILY:
        i, upper = boundary_mass_range(profile)
        p0 = upper if boundary_mass is None else float(boundary_mass)
        if not -TOL <= p0 <= upper + TOL:
            raise InvalidParameter(f"boundary_mass {p0} outside [0, {upper}]")
        p0 = min(max(p0, 0.0), upper)
        mixer = MixedStrategy.build(i, atoms=[((0.0,), p0), ((L,), 1.0 - p0)])
        other = MixedStrategy.build(3 - i, atoms=[((L,), 1.0)])
        return (mixer, other) if i == 1 else (other, mixer)

    s, w = c.roles.strong, c.roles.weak
    v_s, v_w = profile.value(s, 0), profile.value(w, 0)
    if c.tag is SingleItemCase.ASYMMETRIC_STRONG_HIGH_VALUE:
        strong = MixedStrategy.build(
            s, atoms=[((L,), 1.0 - L / v_w)], segments=[((0.0,), (L,), L / v_w)])
        weak = MixedStrategy.build(
            w, atoms=[((0.0,), (v_s - L) / v_s)], segments=[((0.0,), (L,), L / v_s)])
    else:
        strong = MixedStrategy.build(
            s, atoms=[((0.0,), (v_w - L) / v_w)], segments=[((0.0,), (L,), L / v_w)])
        weak = MixedStrategy.build(w, segments=[((0.0,), (L,), 1.0)])
    return (strong, weak) if s == 1 else (weak, strong)


def single_equilibrium_value(profile: AuctionProfile, boundary_mass: float | None = None
                             ) -> tuple[float, float]:
    """Closed-form equilibrium utilities ``(u1, u2)``."""
    c = classify_single(profile)
    L = c.cap
    v = (profile.values[0][0], profile.values[1][0])
    if c.tag is SingleItemCase.NON_EXISTENCE_REGIME:
        raise NoEquilibrium(NO_EQUILIBRIUM_REASON)
    if c.tag is SingleItemCase.PURE_EQUILIBRIUM:
        return 0.5 * v[0] - profile.budgets[0], 0.5 * v[1] - profile.budgets[1]
    if c.tag is SingleItemCase.BOUNDARY_FAMILY:
        i, upper = boundary_mass_range(profile)
        p0 = upper if boundary_mass is None else float(boundary_mass)
        # the other player wins outright when the mixer bids 0, else splits the tie at L
        other = p0 * v[2 - i] + (1.0 - p0) * 0.5 * v[2 - i] - L
        return (0.0, other) if i == 1 else (other, 0.0)
    s = c.roles.strong
    if c.tag is SingleItemCase.ASYMMETRIC_STRONG_HIGH_VALUE:
        u_s, u_w = v[s - 1] - L, 0.0
    else:
        u_s, u_w = 0.0, v[2 - s] - L
    return (u_s, u_w) if s == 1 else (u_w, u_s)
