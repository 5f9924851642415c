"""Vertex isoperimetry on the Boolean cube: Hales order, initial segments,
vertex boundaries and exact/sampled checks of the boundary inequalities.

The neighbourhood of A is taken closed (A together with all points at
distance 1), and the outer boundary is that neighbourhood minus A.
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np

from ._bitops import array_to_mask, full_mask, iter_bits, neighbourhood
from ._errors import UsageError, check_dimension
from .codes import ball_volume
from .gf2 import BitVector

__all__ = [
    "VertexSet",
    "hales_key",
    "hales_less",
    "hales_order",
    "initial_segment",
    "boundary",
    "outer_boundary_profile",
    "harper_check",
    "harper_check_sampled",
    "isoperim_window",
    "isoperim_final_check",
    "ball_boundary_tightness",
    "gamma_prime_segment_monotonicity_checks",
    "IsoReport",
]


@dataclass(frozen=True)
class VertexSet:
    m: int
    mask: int

    def __post_init__(self):
        check_dimension(self.m)
        if self.mask < 0 or self.mask & ~full_mask(self.m):
            raise UsageError("vertex mask has bits outside the cube")

    @classmethod
    def from_points(cls, m: int, points) -> "VertexSet":
        mask = 0
        for p in points:
            mask |= 1 << int(p)
        return cls(m, mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, x: int) -> bool:
        return bool((self.mask >> x) & 1)

    def points(self) -> List[int]:
        return list(iter_bits(self.mask))


def _bit_reverse(x: int, m: int) -> int:
    return int(format(x, f"0{m}b")[::-1], 2) if m else 0


def hales_key(x: int, m: int) -> Tuple[int, int]:
    """Sort key for Hales order: weight first, then the smallest differing
    coordinate decides, and the set containing it comes first."""
    return x.bit_count(), -_bit_reverse(x, m)


def hales_less(x: BitVector, y: BitVector) -> bool:
    if x.n != y.n:
        raise UsageError(f"dimension mismatch: {x.n} vs {y.n}")
    if x.weight != y.weight:
        return x.weight < y.weight
    diff = x.bits ^ y.bits
    if not diff:
        return False
    return bool(x.bits & diff & -diff)


@lru_cache(maxsize=None)
def hales_order(m: int) -> Tuple[int, ...]:
    check_dimension(m)
    return tuple(sorted(range(1 << m), key=lambda x: hales_key(x, m)))


def initial_segment(m: int, a: int) -> VertexSet:
    """The first a vertices of the m-cube in Hales order."""
    if not 0 <= a <= 1 << m:
        raise UsageError(f"segment length {a} outside [0, 2^{m}]")
    mask = 0
    for x in hales_order(m)[:a]:
        mask |= 1 << x
    return VertexSet(m, mask)


def boundary(a: VertexSet) -> Tuple[VertexSet, VertexSet]:
    """(closed neighbourhood of A, outer vertex boundary of A)."""
    gamma = neighbourhood(a.mask, a.m) if a.mask else 0
    return VertexSet(a.m, gamma), VertexSet(a.m, gamma & ~a.mask)


@lru_cache(maxsize=None)
def outer_boundary_profile(m: int) -> Tuple[int, ...]:
    """|outer boundary of I^m_a| for every a in [0, 2^m], built incrementally."""
    check_dimension(m)
    size = 1 << m
    member = bytearray(size)
    touched = [0] * size
    count = 0
    out = [0]
    for p in hales_order(m):
        if touched[p]:
            count -= 1
        member[p] = 1
        for j in range(m):
            u = p ^ (1 << j)
            if not touched[u] and not member[u]:
                count += 1
            touched[u] += 1
        out.append(count)
    return tuple(out)


def _closed_profile(m: int) -> Tuple[int, ...]:
    """|closed neighbourhood of I^m_a| for every a."""
    order = hales_order(m)
    out = [0]
    mask = 0
    for p in order:
        mask |= 1 << p
        out.append(neighbourhood(mask, m).bit_count())
    return tuple(out)


@dataclass
class IsoReport:
    name: str
    checked: int = 0
    violations: List[tuple] = field(default_factory=list)
    skipped: Optional[str] = None
    seed: Optional[int] = None
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations


def harper_check(m: int) -> IsoReport:
    """Every subset A of the m-cube against the initial segment of equal size,
    for the closed neighbourhood and for the outer boundary."""
    if not 0 <= m <= 4:
        raise UsageError("exhaustive Harper check needs m <= 4")
    closed = _closed_profile(m)
    outer = outer_boundary_profile(m)
    report = IsoReport(f"harper m={m}")
    for mask in range(1 << (1 << m)):
        a = mask.bit_count()
        gamma = neighbourhood(mask, m) if mask else 0
        report.checked += 1
        if gamma.bit_count() < closed[a] or (gamma & ~mask).bit_count() < outer[a]:
            report.violations.append((mask,))
    return report


def _random_subsets(rng: np.random.Generator, m: int, count: int, low: int = 0, high: Optional[int] = None):
    """Random subsets with size drawn uniformly from [low, high]."""
    size = 1 << m
    high = size if high is None else high
    for _ in range(count):
        a = int(rng.integers(low, high + 1))
        chosen = rng.choice(size, size=a, replace=False)
        marks = np.zeros(size, dtype=bool)
        marks[chosen] = True
        yield array_to_mask(marks)


def harper_check_sampled(m: int, samples: int, seed: int = 0) -> IsoReport:
    closed = _closed_profile(m)
    outer = outer_boundary_profile(m)
    rng = np.random.default_rng([seed, m])
    report = IsoReport(f"harper m={m} sampled", seed=seed)
    for mask in _random_subsets(rng, m, samples):
        a = mask.bit_count()
        gamma = neighbourhood(mask, m) if mask else 0
        report.checked += 1
        if gamma.bit_count() < closed[a] or (gamma & ~mask).bit_count() < outer[a]:
            report.violations.append((mask,))
    return report


def isoperim_window(m: int, k: int) -> Tuple[int, int, int]:
    """(lowest size, highest size, required boundary) for the window check.

    Sizes run from V(m, (m-1)//2 - 2) (at least 1) to 2^(k-1); the required
    outer boundary is C(m, (m-1)//2 - 1), taken as 0 for a negative index.
    """
    r = (m - 1) // 2 - 2
    low = max(1, ball_volume(m, r))
    need = math.comb(m, r + 1) if r + 1 >= 0 else 0
    return low, 1 << (k - 1), need


def isoperim_final_check(m: int, k: int, samples: int = 0, seed: int = 0) -> IsoReport:
    """Subsets A of the k-cube with |A| in the window must have outer boundary
    at least the required value. Exhaustive when samples == 0 (k <= 4)."""
    if m > k:
        raise UsageError(f"need m <= k, got m={m}, k={k}")
    low, high, need = isoperim_window(m, k)
    report = IsoReport(f"window m={m} k={k}", seed=seed if samples else None)
    report.details = {"low": low, "high": high, "need": need}
    if low > high:
        report.skipped = f"empty window [{low}, {high}]"
        return report
    if samples == 0:
        if k > 4:
            raise UsageError("exhaustive window check needs k <= 4")
        masks = (x for x in range(1 << (1 << k)) if low <= x.bit_count() <= high)
    else:
        masks = _random_subsets(np.random.default_rng([seed, m, k]), k, samples, low, high)
    for mask in masks:
        report.checked += 1
        outer = (neighbourhood(mask, k) & ~mask).bit_count()
        if outer < need:
            report.violations.append((mask, outer))
    return report


def ball_boundary_tightness(m: int) -> Tuple[int, int]:
    """(outer boundary of the ball at the window's lower size, required value)."""
    r = (m - 1) // 2 - 2
    if r < 0:
        raise UsageError(f"window lower end is not a ball for m={m}")
    profile = outer_boundary_profile(m)
    _, _, need = isoperim_window(m, m)
    return profile[ball_volume(m, r)], need


def gamma_prime_segment_monotonicity_checks(m_max: int = 14) -> IsoReport:
    """Exact checks over initial segments for m <= m_max:

    * ball segments: boundary of I^m_{V(m,r)} is exactly C(m, r+1);
    * growth: V(m,r) <= a <= V(m, (m-1)//2) implies boundary >= C(m, r+1);
    * dimension: boundary of I^m_a <= boundary of I^M_a for m <= M, a <= 2^m;
    * radius existence: some r has V(M-1, (M-2)//2 - 2) <= V(M, r) <= V(M-1, (M-2)//2).
    """
    if m_max > 14:
        raise UsageError("segment checks are limited to m <= 14")
    report = IsoReport(f"segments m<={m_max}")
    counts = {"ball": 0, "growth": 0, "dimension": 0, "radius": 0}
    profiles = {m: outer_boundary_profile(m) for m in range(1, m_max + 1)}
    for m, prof in profiles.items():
        for r in range(m):
            counts["ball"] += 1
            if prof[ball_volume(m, r)] != math.comb(m, r + 1):
                report.violations.append(("ball", m, r))
        top = ball_volume(m, (m - 1) // 2)
        for r in range(0, (m - 1) // 2 + 1):
            need = math.comb(m, r + 1)
            for a in range(ball_volume(m, r), top + 1):
                counts["growth"] += 1
                if prof[a] < need:
                    report.violations.append(("growth", m, r, a))
        for big in range(m, m_max + 1):
            other = profiles[big]
            for a in range((1 << m) + 1):
                counts["dimension"] += 1
                if prof[a] > other[a]:
                    report.violations.append(("dimension", m, big, a))
    radii = {}
    for big in range(2, m_max + 1):
        low = ball_volume(big - 1, (big - 2) // 2 - 2)
        high = ball_volume(big - 1, (big - 2) // 2)
        counts["radius"] += 1
        found = next((r for r in range(big + 1) if low <= ball_volume(big, r) <= high), None)
        radii[big] = found
        if found is None:
            report.violations.append(("radius", big))
    report.checked = sum(counts.values())
    report.details = {"counts": counts, "radii": radii}
    return report
