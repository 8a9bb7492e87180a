"""Three-item equilibrium for player-symmetric valuations and large budgets.

Both players use the same strategy: uniform mass on the edges of a triangle
lying in the plane ``x1 + x2 + x3 = z`` (z is half the total value), or on a
single chord when the top item is worth at least the other two combined.
Every per-item marginal is then uniform on ``[0, v_j]``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionViolated, UnsupportedRegime
from .model import TOL, AuctionProfile, validate_profile
from .strategy import MixedStrategy

Point = tuple[float, float, float]


class ThreeItemCase(enum.Enum):
    TRIANGLE = "Triangle"
    CHORD = "Chord"


@dataclass(frozen=True)
class TriangleSpec:
    """Support geometry for values sorted so that ``v1 >= v2 >= v3``.

    In the chord case only ``A`` and ``B`` are meaningful, ``C`` is ``None``
    and ``seg_probs``/``seg_lengths`` have a single entry.
    """

    case_tag: ThreeItemCase
    z: float
    A: Point
    B: Point
    C: Point | None
    seg_probs: tuple[float, ...]
    seg_lengths: tuple[float, ...]


def triangle_spec(values) -> TriangleSpec:
    v1, v2, v3 = (float(v) for v in values)
    if not v1 >= v2 >= v3 > 0:
        raise ValueError("values must be positive and sorted in descending order")
    z = 0.5 * (v1 + v2 + v3)
    if z <= v1:
        A, B = (v1, 0.0, 0.0), (0.0, v2, v3)
        return TriangleSpec(ThreeItemCase.CHORD, z, A, B, None, (1.0,), (math.dist(A, B),))
    assert z > v3, "z > v1 >= v3 keeps the denominators positive"
    A = (v1, 0.0, z - v1)
    B = (z - v2, v2, 0.0)
    C = (0.0, z - v3, v3)
    r_ab = (z - v3) / (z - v2)
    r_ca = (z - v3) / (z - v1)
    p_bc = 1.0 / (r_ab + 1.0 + r_ca)
    probs = (p_bc * r_ab, p_bc, p_bc * r_ca)
    lengths = (math.dist(A, B), math.dist(B, C), math.dist(C, A))
    return TriangleSpec(ThreeItemCase.TRIANGLE, z, A, B, C, probs, lengths)


def three_item_order(profile: AuctionProfile) -> tuple[int, ...]:
    """Item order placing values in descending order (stable)."""
    return tuple(int(j) for j in np.argsort(-np.asarray(profile.values[0]), kind="stable"))


def solve_three(profile: AuctionProfile) -> tuple[MixedStrategy, MixedStrategy]:
    validate_profile(profile)
    if profile.n_items != 3:
        raise PreconditionViolated(f"expected a three-item profile, got n_items={profile.n_items}")
    if any(abs(a - b) > TOL for a, b in zip(*profile.values)):
        raise UnsupportedRegime("three-item construction requires v_1j == v_2j for every item")
    order = three_item_order(profile)
    spec = triangle_spec([profile.values[0][j] for j in order])
    bound = max(spec.z, max(profile.values[0]))
    if min(profile.budgets) < bound - TOL:
        raise UnsupportedRegime(f"three-item construction requires both budgets >= {bound!r}")
    if spec.case_tag is ThreeItemCase.TRIANGLE:
        edges = [(spec.A, spec.B), (spec.B, spec.C), (spec.C, spec.A)]
    else:
        edges = [(spec.A, spec.B)]
    inverse = tuple(int(k) for k in np.argsort(order))
    out = []
    for i in (1, 2):
        strat = MixedStrategy.build(
            i, segments=[(a, b, p) for (a, b), p in zip(edges, spec.seg_probs)])
        out.append(strat.permuted(inverse))
    return tuple(out)
