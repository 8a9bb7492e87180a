"""Mixed strategies as finite mixtures of point atoms and uniform segments.

A segment component spreads its probability uniformly along the straight
line between two bid vectors; its projection on one item is either a
uniform interval or, when the segment is perpendicular to that item's axis,
a single atom. Marginals are therefore piecewise-linear CDFs with atoms,
represented by :class:`MarginalCdf`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import MassNotNormalized, SupportInfeasible
from .model import TOL, AuctionProfile, item_caps


@dataclass(frozen=True)
class Atom:
    point: tuple[float, ...]
    prob: float

    def __post_init__(self):
        object.__setattr__(self, "point", tuple(float(c) for c in self.point))
        object.__setattr__(self, "prob", float(self.prob))


@dataclass(frozen=True)
class Segment:
    """Uniform (arc-length) distribution on the segment from ``a`` to ``b``."""

    a: tuple[float, ...]
    b: tuple[float, ...]
    prob: float

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(float(c) for c in self.a))
        object.__setattr__(self, "b", tuple(float(c) for c in self.b))
        object.__setattr__(self, "prob", float(self.prob))
        if len(self.a) != len(self.b):
            raise ValueError("segment endpoints have different dimensions")
        if self.a == self.b:
            raise ValueError("segment endpoints coincide")

    @property
    def length(self) -> float:
        return math.dist(self.a, self.b)

    @property
    def density(self) -> float:
        """Probability per unit arc length."""
        return self.prob / self.length


@dataclass(frozen=True)
class MixedStrategy:
    owner: int
    atoms: tuple[Atom, ...] = ()
    segments: tuple[Segment, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        object.__setattr__(self, "segments", tuple(self.segments))
        dims = {len(a.point) for a in self.atoms} | {len(s.a) for s in self.segments}
        if len(dims) > 1:
            raise ValueError(f"components have inconsistent dimensions {sorted(dims)}")

    @classmethod
    def build(cls, owner: int, atoms: Iterable[tuple[Sequence[float], float]] = (),
              segments: Iterable[tuple[Sequence[float], Sequence[float], float]] = ()) -> "MixedStrategy":
        """Assemble a strategy, dropping zero-mass atoms and zero-length or zero-mass segments.

        A zero-length segment with positive mass becomes an atom.
        """
        out_atoms = []
        out_segments = []
        for point, prob in atoms:
            if prob > TOL:
                out_atoms.append(Atom(point, prob))
        for a, b, prob in segments:
            if prob <= TOL:
                continue
            if math.dist(a, b) <= TOL:
                out_atoms.append(Atom(a, prob))
            else:
                out_segments.append(Segment(a, b, prob))
        return cls(owner, tuple(out_atoms), tuple(out_segments))

    @property
    def n_items(self) -> int:
        if self.atoms:
            return len(self.atoms[0].point)
        if self.segments:
            return len(self.segments[0].a)
        return 0

    @property
    def total_mass(self) -> float:
        return math.fsum([a.prob for a in self.atoms] + [s.prob for s in self.segments])

    def support_points(self) -> list[tuple[float, ...]]:
        """Atom locations and segment endpoints; the support is their convex pieces."""
        pts = [a.point for a in self.atoms]
        for s in self.segments:
            pts.extend([s.a, s.b])
        return pts

    def permuted(self, order: Sequence[int]) -> "MixedStrategy":
        """Reorder coordinates so that new coordinate k is old coordinate ``order[k]``."""
        def p(x):
            return tuple(x[j] for j in order)
        return MixedStrategy(
            self.owner,
            tuple(Atom(p(a.point), a.prob) for a in self.atoms),
            tuple(Segment(p(s.a), p(s.b), s.prob) for s in self.segments),
        )

    def to_dict(self) -> dict:
        return {
            "owner": self.owner,
            "atoms": [{"point": list(a.point), "prob": a.prob} for a in self.atoms],
            "segments": [{"a": list(s.a), "b": list(s.b), "prob": s.prob} for s in self.segments],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "MixedStrategy":
        return cls(
            int(data["owner"]),
            tuple(Atom(a["point"], a["prob"]) for a in data.get("atoms", [])),
            tuple(Segment(s["a"], s["b"], s["prob"]) for s in data.get("segments", [])),
        )

    @classmethod
    def from_json(cls, text: str) -> "MixedStrategy":
        return cls.from_dict(json.loads(text))


def validate_strategy(strategy: MixedStrategy, profile: AuctionProfile, *,
                      enforce_caps: bool = False) -> MixedStrategy:
    """Check normalization, non-negative masses and budget feasibility of the support.

    With ``enforce_caps`` every coordinate must also lie in ``[0, L_j]``, which
    holds for all constructed equilibria.
    """
    n = profile.n_items
    for comp in (*strategy.atoms, *strategy.segments):
        if comp.prob < 0 or not math.isfinite(comp.prob):
            raise MassNotNormalized(strategy.total_mass)
    total = strategy.total_mass
    if abs(total - 1.0) > TOL:
        raise MassNotNormalized(total)
    budget = profile.budget(strategy.owner)
    caps = item_caps(profile)
    for pt in strategy.support_points():
        if len(pt) != n:
            raise SupportInfeasible(pt, f"expected {n} coordinates")
        if any(c < -TOL for c in pt):
            raise SupportInfeasible(pt, "negative bid")
        if math.fsum(pt) > budget + TOL:
            raise SupportInfeasible(pt, f"bids sum to {math.fsum(pt)} > budget {budget}")
        if enforce_caps and any(c > caps[j] + TOL for j, c in enumerate(pt)):
            raise SupportInfeasible(pt, f"bid exceeds item caps {list(caps)}")
    return strategy


@dataclass(frozen=True)
class MarginalCdf:
    """One-dimensional CDF made of atoms plus uniform densities on disjoint intervals.

    ``pieces`` holds ``(lo, hi, density)`` triples sorted by ``lo``; within a
    piece the CDF rises affinely with slope ``density``.
    """

    atoms: tuple[tuple[float, float], ...] = ()
    pieces: tuple[tuple[float, float, float], ...] = ()
    _atom_loc: np.ndarray = field(init=False, repr=False, compare=False)
    _atom_mass: np.ndarray = field(init=False, repr=False, compare=False)
    _lo: np.ndarray = field(init=False, repr=False, compare=False)
    _hi: np.ndarray = field(init=False, repr=False, compare=False)
    _dens: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple((float(x), float(m)) for x, m in self.atoms))
        object.__setattr__(self, "pieces", tuple((float(a), float(b), float(d)) for a, b, d in self.pieces))
        object.__setattr__(self, "_atom_loc", np.array([x for x, _ in self.atoms], dtype=float))
        object.__setattr__(self, "_atom_mass", np.array([m for _, m in self.atoms], dtype=float))
        object.__setattr__(self, "_lo", np.array([p[0] for p in self.pieces], dtype=float))
        object.__setattr__(self, "_hi", np.array([p[1] for p in self.pieces], dtype=float))
        object.__setattr__(self, "_dens", np.array([p[2] for p in self.pieces], dtype=float))

    @property
    def total_mass(self) -> float:
        return math.fsum([m for _, m in self.atoms] + [(b - a) * d for a, b, d in self.pieces])

    @property
    def support_max(self) -> float:
        return max([x for x, _ in self.atoms] + [b for _, b, _ in self.pieces], default=0.0)

    @property
    def support_min(self) -> float:
        return min([x for x, _ in self.atoms] + [a for a, _, _ in self.pieces], default=0.0)

    def breakpoints(self) -> list[float]:
        """Atom locations and piece endpoints, sorted and de-duplicated."""
        pts = {x for x, _ in self.atoms}
        for a, b, _ in self.pieces:
            pts.update((a, b))
        return sorted(pts)

    def continuous_part(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)[..., None]
        return np.sum(self._dens * np.clip(x - self._lo, 0.0, self._hi - self._lo), axis=-1)

    def atom_mass_at(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)[..., None]
        return np.sum(np.where(np.abs(x - self._atom_loc) <= TOL, self._atom_mass, 0.0), axis=-1)

    def left_limit(self, x) -> np.ndarray:
        """F(x-): mass strictly below ``x``."""
        xa = np.asarray(x, dtype=float)[..., None]
        below = np.sum(np.where(self._atom_loc < xa - TOL, self._atom_mass, 0.0), axis=-1)
        return below + self.continuous_part(x)

    def __call__(self, x) -> np.ndarray:
        """F(x): mass at or below ``x``."""
        xa = np.asarray(x, dtype=float)[..., None]
        upto = np.sum(np.where(self._atom_loc <= xa + TOL, self._atom_mass, 0.0), axis=-1)
        return upto + self.continuous_part(x)

    def sup_distance(self, other: "MarginalCdf") -> float:
        """Sup-norm distance between two CDFs, both one-sided limits included."""
        pts = np.array(sorted(set(self.breakpoints()) | set(other.breakpoints())) or [0.0])
        return float(max(
            np.max(np.abs(self(pts) - other(pts))),
            np.max(np.abs(self.left_limit(pts) - other.left_limit(pts))),
        ))


def cdf_eval(marginal: MarginalCdf, x: float, side: str = "right") -> float:
    """Evaluate ``F(x)`` (``side="right"``) or the left limit ``F(x-)`` (``side="left"``)."""
    if side == "right":
        return float(marginal(x))
    if side == "left":
        return float(marginal.left_limit(x))
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def uniform_marginal(lo: float, hi: float, mass: float = 1.0) -> MarginalCdf:
    return canonical_marginal([], [(lo, hi, mass / (hi - lo))])


def canonical_marginal(atoms: Iterable[tuple[float, float]],
                       pieces: Iterable[tuple[float, float, float]]) -> MarginalCdf:
    """Sum overlapping densities, merge adjacent equal-density pieces and coincident atoms."""
    merged_atoms: list[list[float]] = []
    for x, m in sorted(atoms):
        if m <= 0:
            continue
        if merged_atoms and abs(x - merged_atoms[-1][0]) <= TOL:
            merged_atoms[-1][1] += m
        else:
            merged_atoms.append([x, m])

    pieces = [(a, b, d) for a, b, d in pieces if b - a > TOL and d > 0]
    cuts = sorted({c for a, b, _ in pieces for c in (a, b)})
    elementary = []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        mid = 0.5 * (lo + hi)
        d = math.fsum(dd for a, b, dd in pieces if a <= mid <= b)
        if d > 0:
            elementary.append([lo, hi, d])
    out: list[list[float]] = []
    for lo, hi, d in elementary:
        if out and abs(out[-1][1] - lo) <= TOL and abs(out[-1][2] - d) <= TOL:
            # keep the mass exact when merging pieces of nearly equal density
            mass = out[-1][2] * (out[-1][1] - out[-1][0]) + d * (hi - lo)
            out[-1][1] = hi
            out[-1][2] = mass / (hi - out[-1][0])
        else:
            out.append([lo, hi, d])
    return MarginalCdf(tuple(map(tuple, merged_atoms)), tuple(map(tuple, out)))


def marginal_of(strategy: MixedStrategy, item: int) -> MarginalCdf:
    """Exact marginal law of the bid on ``item``."""
    if not 0 <= item < strategy.n_items:
        raise IndexError(f"item {item} out of range for {strategy.n_items} items")
    atoms = [(a.point[item], a.prob) for a in strategy.atoms]
    pieces = []
    for s in strategy.segments:
        lo, hi = sorted((s.a[item], s.b[item]))
        if hi - lo <= TOL:
            atoms.append((0.5 * (lo + hi), s.prob))
        else:
            pieces.append((lo, hi, s.prob / (hi - lo)))
    return canonical_marginal(atoms, pieces)


def sample(strategy: MixedStrategy, seed: int, count: int) -> np.ndarray:
    """Draw ``count`` i.i.d. bid vectors, shape ``(count, n_items)``."""
    if count < 1:
        raise ValueError("count must be at least 1")
    rng = np.random.default_rng(seed)
    comps = list(strategy.atoms) + list(strategy.segments)
    probs = np.array([c.prob for c in comps], dtype=float)
    probs = probs / probs.sum()
    which = rng.choice(len(comps), size=count, p=probs)
    t = rng.random(count)
    starts = np.array([c.point if isinstance(c, Atom) else c.a for c in comps], dtype=float)
    ends = np.array([c.point if isinstance(c, Atom) else c.b for c in comps], dtype=float)
    return starts[which] + t[:, None] * (ends[which] - starts[which])


def empirical_ks(samples: np.ndarray, marginal: MarginalCdf) -> float:
    """Kolmogorov-Smirnov distance between a 1-D sample and a marginal CDF."""
    xs, counts = np.unique(np.asarray(samples, dtype=float), return_counts=True)
    upper = np.cumsum(counts) / counts.sum()
    lower = upper - counts / counts.sum()
    return float(max(np.max(np.abs(upper - marginal(xs))),
                     np.max(np.abs(lower - marginal.left_limit(xs)))))


def write_samples_csv(samples: np.ndarray, stream) -> None:
    """CSV with header ``x1,x2,...`` and 17 significant digits per value."""
    n = samples.shape[1]
    stream.write(",".join(f"x{j + 1}" for j in range(n)) + "\n")
    for row in samples:
        stream.write(",".join(f"{v:.17g}" for v in row) + "\n")
