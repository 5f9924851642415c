"""Covering codes, their radius verification, the code-to-protocol reduction
for the f_k family, and Hamming-ball volume arithmetic."""

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ._bitops import (
    array_to_mask,
    full_mask,
    mask_to_array,
    neighbourhood,
    point_weights,
    walsh_hadamard,
)
from ._errors import PreconditionError, UsageError, VerificationError, check_dimension, dimension_cap
from .boolfn import MessageMap
from .gf2 import BitVector, Gf2Matrix, kernel_basis, parity, to_bitstring
from .owcc import OneWayProtocol, message_width

log = logging.getLogger(__name__)

__all__ = [
    "CoveringCode",
    "CoveringReport",
    "CodeProtocol",
    "verify_covering",
    "covering_radius",
    "hamming_code",
    "reed_muller_1_5",
    "repetition_code",
    "full_cube_code",
    "direct_sum",
    "greedy_covering",
    "fk_protocol_from_code",
    "code_message",
    "verify_code_protocol_sampled",
    "rm15_distance",
    "rm15_distance_direct",
    "rm15_radius_sweep",
    "ball_volume",
    "binary_entropy",
    "lower_bound_holds",
    "greedy_bound_holds",
    "volume_bound_checks",
    "E_LOWER",
]

# Largest word length handled by the vectorised (uint64) distance code.
_WORD_BITS = 64
# A rational just below e; an inequality that holds with it holds with e.
E_LOWER = Fraction(2718281828, 10**9)
# Tabulated protocols materialise 2^n labels; above this an implicit one is returned.
TABLE_MAX_N = 16


@dataclass(frozen=True)
class CoveringCode:
    """An (n, K, R) covering code claim: K codewords and a claimed radius R."""

    n: int
    codewords: Tuple[int, ...]
    radius: int

    def __init__(self, n: int, codewords: Sequence, radius: int):
        if not isinstance(n, int) or n < 0 or n > _WORD_BITS:
            raise UsageError(f"code length must be in [0, {_WORD_BITS}], got {n}")
        words = []
        for c in codewords:
            if isinstance(c, BitVector):
                if c.n != n:
                    raise UsageError(f"codeword of length {c.n} in a code of length {n}")
                c = c.bits
            c = int(c)
            if c < 0 or c >> n:
                raise UsageError(f"codeword {c:#x} does not fit in {n} bits")
            words.append(c)
        if not words:
            raise UsageError("a covering code needs at least one codeword")
        if radius < 0:
            raise UsageError("radius must be non-negative")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "codewords", tuple(words))
        object.__setattr__(self, "radius", int(radius))

    @property
    def size(self) -> int:
        return len(self.codewords)

    @property
    def params(self) -> Tuple[int, int, int]:
        return self.n, self.size, self.radius

    def strings(self) -> List[str]:
        return [to_bitstring(c, self.n) for c in self.codewords]

    def array(self) -> np.ndarray:
        return np.asarray(self.codewords, dtype=np.uint64)


@dataclass(frozen=True)
class CoveringReport:
    """Outcome of a radius check.

    ``max_distance`` is the exact covering radius in exhaustive mode and the
    worst distance seen in sampled mode.
    """

    mode: str
    n: int
    size: int
    claimed_radius: int
    max_distance: int
    ok: bool
    perfect: bool = False
    samples: int = 0
    seed: Optional[int] = None
    witness: Optional[int] = None


def covering_radius(code: CoveringCode) -> Tuple[int, int]:
    """(exact covering radius, a point at that distance), by dilating the code mask."""
    n = code.n
    check_dimension(n)
    full = full_mask(n)
    covered = 0
    for c in code.codewords:
        covered |= 1 << c
    radius, witness = 0, code.codewords[0]
    while covered != full:
        rest = full & ~covered
        witness = (rest & -rest).bit_length() - 1
        covered = neighbourhood(covered, n)
        radius += 1
    return radius, witness


def _min_distances(words: np.ndarray, points: np.ndarray, chunk: int = 1 << 14) -> np.ndarray:
    out = np.empty(points.size, dtype=np.int64)
    for start in range(0, points.size, chunk):
        block = points[start : start + chunk]
        d = np.bitwise_count(block[:, None] ^ words[None, :])
        out[start : start + chunk] = d.min(axis=1)
    return out


def _random_words(rng: np.random.Generator, n: int, count: int) -> np.ndarray:
    if n == 0:
        return np.zeros(count, dtype=np.uint64)
    return rng.integers(0, 1 << n, size=count, dtype=np.uint64, endpoint=False) if n < 64 else rng.integers(
        0, np.iinfo(np.uint64).max, size=count, dtype=np.uint64, endpoint=True
    )


def verify_covering(
    code: CoveringCode, mode: str = "exhaustive", samples: int = 10**6, seed: int = 0
) -> CoveringReport:
    if mode == "exhaustive":
        radius, witness = covering_radius(code)
        ok = radius <= code.radius
        perfect = ok and code.size * ball_volume(code.n, code.radius) == 1 << code.n
        return CoveringReport(
            "exhaustive", code.n, code.size, code.radius, radius, ok, perfect,
            witness=None if ok else witness,
        )
    if mode != "sampled":
        raise UsageError(f"unknown verification mode {mode!r}")
    rng = np.random.default_rng(seed)
    points = _random_words(rng, code.n, samples)
    dist = _min_distances(code.array(), points)
    worst = int(dist.max()) if samples else 0
    ok = worst <= code.radius
    witness = None if ok else int(points[int(dist.argmax())])
    return CoveringReport("sampled", code.n, code.size, code.radius, worst, ok, samples=samples, seed=seed, witness=witness)


def hamming_code(m: int) -> CoveringCode:
    """Length 2^m - 1 code: the kernel of the matrix whose column j is j in binary."""
    if not 2 <= m <= 4:
        raise UsageError(f"Hamming code parameter m must be in [2, 4], got {m}")
    n = (1 << m) - 1
    rows = [sum(1 << i for i in range(n) if ((i + 1) >> r) & 1) for r in range(m)]
    words = sorted(kernel_basis(Gf2Matrix(n, rows)).elements())
    return CoveringCode(n, words, 1)


def reed_muller_1_5() -> CoveringCode:
    """Truth tables of all affine functions on 5 variables, claimed radius 12.

    Codeword index j = a | (a0 << 5) holds the table of a0 + <a, x>.
    """
    words = []
    for j in range(64):
        a, a0 = j & 31, j >> 5
        words.append(sum((a0 ^ parity(a & i)) << i for i in range(32)))
    return CoveringCode(32, words, 12)


def repetition_code(n2: int) -> CoveringCode:
    if n2 < 1:
        raise UsageError("repetition code length must be at least 1")
    return CoveringCode(n2, [0, (1 << n2) - 1], n2 // 2)


def full_cube_code(n: int) -> CoveringCode:
    """Every point is a codeword; n = 0 gives the identity for direct sums."""
    check_dimension(n)
    return CoveringCode(n, range(1 << n), 0)


def direct_sum(c1: CoveringCode, c2: CoveringCode) -> CoveringCode:
    """Concatenations (c1 word in the low n1 coordinates), radii added."""
    n = c1.n + c2.n
    words = [a | (b << c1.n) for a, b in itertools.product(c1.codewords, c2.codewords)]
    return CoveringCode(n, words, c1.radius + c2.radius)


def _ball_indicator(n: int, radius: int) -> np.ndarray:
    return (point_weights(n) <= radius).astype(np.int64)


def greedy_covering(n: int, radius: int, seed: Optional[int] = None) -> CoveringCode:
    """Greedy set cover by radius-R balls.

    Each round takes the point whose ball covers the most uncovered points.
    Ties go to the smallest index, or to the earliest point in a seeded random
    order when ``seed`` is given.
    """
    check_dimension(n, 16)
    if not 0 <= radius <= n:
        raise UsageError(f"need 0 <= R <= n, got R={radius}")
    size = 1 << n
    ball_hat = walsh_hadamard(_ball_indicator(n, radius))
    priority = np.arange(size) if seed is None else np.random.default_rng(seed).permutation(size)
    uncovered = np.ones(size, dtype=np.int64)
    words = []
    ball_points = np.flatnonzero(_ball_indicator(n, radius))
    while uncovered.any():
        gain = walsh_hadamard(walsh_hadamard(uncovered) * ball_hat) >> n
        best = gain.max()
        ties = np.flatnonzero(gain == best)
        c = int(ties[np.argmin(priority[ties])])
        words.append(c)
        uncovered[ball_points ^ c] = 0
    return CoveringCode(n, words, radius)


def ball_volume(n: int, r: int) -> int:
    """Exact |B(n, r)|; 0 for r < 0 and 2^n for r >= n."""
    if r < 0:
        return 0
    return sum(math.comb(n, i) for i in range(min(r, n) + 1))


def binary_entropy(p: float) -> float:
    if p <= 0 or p >= 1:
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def lower_bound_holds(n: int, size: int, radius: int) -> bool:
    """log2 K >= n - log2 V(n, R), i.e. K * V >= 2^n."""
    return size * ball_volume(n, radius) >= 1 << n


def greedy_bound_holds(n: int, size: int, radius: int) -> bool:
    """log2 K <= n - log2 V(n, R) + log2 n, i.e. K * V <= n * 2^n."""
    return size * ball_volume(n, radius) <= n * (1 << n)


@dataclass(frozen=True)
class CodeProtocol:
    """Implicit ball protocol for f_k: Alice names the ball of x, Bob checks
    whether the complement of y lies in the same ball."""

    n: int
    k: int
    code: CoveringCode

    @property
    def t(self) -> int:
        return message_width(self.code.size)

    def message(self, x: int) -> int:
        return code_message(self.code, np.asarray([x], dtype=np.uint64))[0]

    def answer(self, alpha: int, y: int) -> int:
        return int(self.message(y ^ ((1 << self.n) - 1)) == alpha)


def code_message(code: CoveringCode, points: np.ndarray) -> np.ndarray:
    """Index of the first codeword within the claimed radius of each point."""
    words = code.array()
    out = np.empty(points.size, dtype=np.int64)
    chunk = 1 << 13
    for start in range(0, points.size, chunk):
        block = points[start : start + chunk]
        inside = np.bitwise_count(block[:, None] ^ words[None, :]) <= code.radius
        hit = inside.any(axis=1)
        if not hit.all():
            bad = int(block[int(np.argmin(hit))])
            raise VerificationError(f"point {bad:#x} is not within radius {code.radius} of the code", bad)
        out[start : start + chunk] = inside.argmax(axis=1)
    return out


def fk_protocol_from_code(n: int, k: int, code: CoveringCode, verify_radius: bool = True):
    """One-way protocol for f_k from a covering code of radius <= (n-k-1)//2.

    Up to TABLE_MAX_N a tabulated OneWayProtocol is returned; above it an
    implicit CodeProtocol. The radius is checked exhaustively when n is
    within the dimension cap and ``verify_radius`` is set.
    """
    if code.n != n:
        raise PreconditionError(f"code has length {code.n}, expected {n}")
    if not 0 <= k <= n - 1:
        raise UsageError(f"need 0 <= k <= n-1, got k={k}")
    limit = (n - k - 1) // 2
    if code.radius > limit:
        raise PreconditionError(f"radius {code.radius} exceeds {limit} = floor((n-k-1)/2)")
    if verify_radius and n <= dimension_cap():
        actual, witness = covering_radius(code)
        if actual > code.radius:
            raise PreconditionError(f"point {witness:#x} lies outside every radius-{code.radius} ball")
    if n > TABLE_MAX_N:
        return CodeProtocol(n, k, code)
    labels = code_message(code, np.arange(1 << n, dtype=np.uint64))
    t = message_width(code.size)
    h = MessageMap(n, t, labels)
    complement_labels = labels[::-1]
    full = full_mask(n)
    phi = tuple((array_to_mask(complement_labels == a), full) for a in range(1 << t))
    return OneWayProtocol(h, phi)


def _sample_fk_domain(rng: np.random.Generator, n: int, k: int, count: int, top_fraction: float) -> np.ndarray:
    """Points of the domain of f_k: the all-ones point with probability
    ``top_fraction``, otherwise uniform over weights <= k."""
    weights = np.array([math.comb(n, w) for w in range(k + 1)], dtype=float)
    w = rng.choice(k + 1, size=count, p=weights / weights.sum())
    keys = rng.random((count, n))
    ranks = np.argsort(np.argsort(keys, axis=1), axis=1)
    bits = ranks < w[:, None]
    powers = np.uint64(1) << np.arange(n, dtype=np.uint64)
    z = (bits.astype(np.uint64) * powers).sum(axis=1, dtype=np.uint64)
    top = rng.random(count) < top_fraction
    z[top] = np.uint64((1 << n) - 1)
    return z


@dataclass(frozen=True)
class SampledProtocolReport:
    pairs: int
    one_pairs: int
    failures: int
    seed: int
    witness: Optional[Tuple[int, int]] = None

    @property
    def ok(self) -> bool:
        return self.failures == 0


def verify_code_protocol_sampled(
    protocol: CodeProtocol, samples: int = 10**6, seed: int = 0, top_fraction: float = 0.5
) -> SampledProtocolReport:
    """Check Bob's answer against f_k(x ^ y) on random pairs with x ^ y defined."""
    n, k = protocol.n, protocol.k
    rng = np.random.default_rng(seed)
    x = _random_words(rng, n, samples)
    z = _sample_fk_domain(rng, n, k, samples, top_fraction)
    y = x ^ z
    full = np.uint64((1 << n) - 1)
    alpha = code_message(protocol.code, x)
    beta = code_message(protocol.code, y ^ full)
    answer = alpha == beta
    expected = z == full
    wrong = np.flatnonzero(answer != expected)
    witness = (int(x[wrong[0]]), int(y[wrong[0]])) if wrong.size else None
    return SampledProtocolReport(samples, int(expected.sum()), int(wrong.size), seed, witness)


def rm15_distance(g: int) -> int:
    """Distance from a 32-bit truth table to the affine code, via its Walsh spectrum."""
    signs = 1 - 2 * mask_to_array(g, 5).astype(np.int64)
    return 16 - int(np.abs(walsh_hadamard(signs)).max()) // 2


def rm15_distance_direct(g: int, code: Optional[CoveringCode] = None) -> int:
    code = code or reed_muller_1_5()
    return min((g ^ c).bit_count() for c in code.codewords)


# Adding an affine function clears g at 0 and at the unit vectors, so functions
# vanishing there represent every coset of the code.
_PINNED = (0, 1, 2, 4, 8, 16)
_FREE = tuple(i for i in range(32) if i not in _PINNED)


def rm15_radius_sweep(chunk_bits: int = 16, log_every_bits: int = 24, start: int = 0, stop: int = 1 << 26) -> Tuple[int, int]:
    """Exact covering radius of the affine code over 5 variables.

    Sweeps all 2^26 coset representatives (a slice of them with start/stop)
    and returns (radius, a representative attaining it).
    """
    free_bits = np.uint64(1) << np.array(_FREE, dtype=np.uint64)
    chunk = 1 << chunk_bits
    best_peak, best_g = 1 << 6, None
    next_log = start + (1 << log_every_bits)
    for base in range(start, stop, chunk):
        idx = np.arange(base, min(base + chunk, stop), dtype=np.uint64)
        bits = ((idx[:, None] >> np.arange(26, dtype=np.uint64)) & np.uint64(1)).astype(bool)
        table = np.zeros((idx.size, 32), dtype=np.int64)
        table[:, list(_FREE)] = bits
        spectrum = np.abs(walsh_hadamard(1 - 2 * table)).max(axis=1)
        j = int(spectrum.argmin())
        if spectrum[j] < best_peak:
            best_peak = int(spectrum[j])
            best_g = int((bits[j].astype(np.uint64) * free_bits).sum())
        if base + chunk >= next_log:
            log.info("rm15 sweep: %d/%d representatives, radius so far %d", base + chunk, stop, 16 - best_peak // 2)
            next_log += 1 << log_every_bits
    return 16 - best_peak // 2, best_g


@dataclass
class VolumeReport:
    """Exact checks of the two-sided binomial bound plus reported ratio tables."""

    checked: int = 0
    violations: List[Tuple[int, int, str]] = field(default_factory=list)
    entropy_table: List[Tuple[float, int, float]] = field(default_factory=list)
    central_table: List[Tuple[int, int, float]] = field(default_factory=list)
    entropy_slope_table: List[Tuple[float, float, float]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def volume_bound_checks(n_max: int = 64, n_min: int = 16) -> VolumeReport:
    """(n/k)^k <= V(n,k) <= (en/k)^k exactly for all k <= n <= n_max.

    The upper side is tested with a rational below e, so a pass is sound.
    The tables report V(n, cn) sqrt(n) / 2^{H(c)n}, log2(2^n / V(n, n/2 -
    sqrt(n log2 n))) / log2 n and (H(c + a) - H(c)) / a; they are printed,
    not asserted.
    """
    report = VolumeReport()
    for n in range(1, n_max + 1):
        for k in range(0, n + 1):
            v = ball_volume(n, k)
            report.checked += 1
            if k == 0:
                if v != 1:
                    report.violations.append((n, k, "k=0"))
                continue
            if n**k > v * k**k:
                report.violations.append((n, k, "lower"))
            if v * k**k * E_LOWER.denominator**k > (E_LOWER.numerator * n) ** k:
                report.violations.append((n, k, "upper"))
    for c in (0.1, 0.25, 0.4):
        for n in range(n_min, n_max + 1, 8):
            v = ball_volume(n, int(c * n))
            report.entropy_table.append((c, n, v * math.sqrt(n) / 2 ** (binary_entropy(c) * n)))
    for n in range(n_min, n_max + 1, 8):
        r = int(n / 2 - math.sqrt(n * math.log2(n)))
        v = ball_volume(n, r)
        report.central_table.append((n, r, math.log2((1 << n) / v) / math.log2(n)))
    for c in (0.25, 0.5, 0.75):
        for a in (0.1, 0.01, 0.001):
            report.entropy_slope_table.append((c, a, (binary_entropy(c + a) - binary_entropy(c)) / a))
    return report
