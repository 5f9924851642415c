"""Partial Boolean functions as (defined, value) bitmask pairs, message maps,
the f_k family and exact Walsh-Hadamard analysis."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Tuple

import numpy as np

from ._bitops import (
    array_to_mask,
    even_parity_mask,
    full_mask,
    mask_to_array,
    point_weights,
    walsh_hadamard,
)
from ._errors import PreconditionError, UsageError, check_dimension
from .gf2 import Gf2Matrix, Gf2Subspace, kernel_basis

__all__ = [
    "PartialFn",
    "MessageMap",
    "WalshSpectrum",
    "make_fk",
    "undefined_count",
    "walsh_spectrum",
    "unbalanced_subspace",
]


@dataclass(frozen=True)
class PartialFn:
    """f: {0,1}^n -> {0, 1, undefined}.

    Bit i of ``defined`` says whether f is defined at point i; bit i of
    ``value`` holds f(i) and must be clear where f is undefined.
    """

    n: int
    defined: int
    value: int

    def __post_init__(self):
        check_dimension(self.n)
        full = full_mask(self.n)
        if self.defined < 0 or self.defined & ~full:
            raise UsageError("defined mask has bits outside the cube")
        if self.value & ~self.defined:
            raise UsageError("value mask has bits where f is undefined")

    @classmethod
    def total(cls, n: int, value: int) -> "PartialFn":
        return cls(n, full_mask(n), value)

    @classmethod
    def constant(cls, n: int, bit: int) -> "PartialFn":
        return cls(n, full_mask(n), full_mask(n) if bit else 0)

    @classmethod
    def empty(cls, n: int) -> "PartialFn":
        return cls(n, 0, 0)

    @classmethod
    def from_table(cls, n: int, table: Iterable[Optional[int]]) -> "PartialFn":
        """Build from a length-2^n sequence of 0, 1 or None."""
        defined = value = 0
        entries = list(table)
        if len(entries) != 1 << n:
            raise UsageError(f"expected {1 << n} entries, got {len(entries)}")
        for i, v in enumerate(entries):
            if v is None:
                continue
            defined |= 1 << i
            if v:
                value |= 1 << i
        return cls(n, defined, value)

    @classmethod
    def from_callable(cls, n: int, fn) -> "PartialFn":
        return cls.from_table(n, (fn(x) for x in range(1 << n)))

    @classmethod
    def from_arrays(cls, defined, value) -> "PartialFn":
        defined = np.asarray(defined, dtype=bool)
        n = int(defined.size).bit_length() - 1
        if defined.size != 1 << n:
            raise UsageError("array length is not a power of two")
        return cls(n, array_to_mask(defined), array_to_mask(np.asarray(value, dtype=bool) & defined))

    def __call__(self, x: int) -> Optional[int]:
        if not (self.defined >> x) & 1:
            return None
        return (self.value >> x) & 1

    @property
    def zeros(self) -> int:
        return self.defined & ~self.value

    @property
    def ones(self) -> int:
        return self.value

    @property
    def domain_size(self) -> int:
        return self.defined.bit_count()

    def is_total(self) -> bool:
        return self.defined == full_mask(self.n)

    def is_constant(self) -> bool:
        """True when f takes at most one value on its domain (empty domain included)."""
        return self.value == 0 or self.zeros == 0

    def restrict(self, keep: int) -> "PartialFn":
        """Erase every defined point outside ``keep``."""
        d = self.defined & keep
        return PartialFn(self.n, d, self.value & d)

    def table(self):
        return [self(x) for x in range(1 << self.n)]

    def arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        return mask_to_array(self.defined, self.n), mask_to_array(self.value, self.n)


def undefined_count(f: PartialFn) -> int:
    return (1 << f.n) - f.domain_size


def make_fk(n: int, k: int) -> PartialFn:
    """0 on weights <= k, 1 on the all-ones point, undefined in between."""
    check_dimension(n)
    if n < 1 or not 0 <= k <= n - 1:
        raise UsageError(f"need 0 <= k <= n-1, got n={n}, k={k}")
    w = point_weights(n)
    defined = array_to_mask((w <= k) | (w == n))
    top = (1 << n) - 1
    return PartialFn(n, defined, 1 << top)


@dataclass(frozen=True)
class MessageMap:
    """Alice's message function h: {0,1}^n -> {0,1}^t as a label per point."""

    n: int
    t: int
    labels: Tuple[int, ...]

    def __init__(self, n: int, t: int, labels: Iterable[int]):
        check_dimension(n)
        labels = tuple(int(v) for v in labels)
        if t < 0:
            raise UsageError("message width must be non-negative")
        if len(labels) != 1 << n:
            raise UsageError(f"expected {1 << n} labels, got {len(labels)}")
        if any(v < 0 or v >> t for v in labels):
            raise UsageError(f"label out of range for t={t}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_labels(cls, n: int, labels: Iterable[int]) -> "MessageMap":
        """Pack arbitrary hashable class ids into ceil(log2 #classes)-bit messages."""
        ids = {}
        packed = []
        for v in labels:
            packed.append(ids.setdefault(v, len(ids)))
        t = max(0, (len(ids) - 1).bit_length())
        return cls(n, t, packed)

    def __call__(self, x: int) -> int:
        return self.labels[x]

    def array(self) -> np.ndarray:
        return np.asarray(self.labels, dtype=np.int64)

    def fibers(self):
        """Message id -> mask of its preimage, for every id in [0, 2^t)."""
        out = [0] * (1 << self.t)
        for x, a in enumerate(self.labels):
            out[a] |= 1 << x
        return out


@dataclass(frozen=True)
class WalshSpectrum:
    """Fourier coefficients of (-1)^h; ``numerators[S]`` is 2^n * h^(S)."""

    n: int
    numerators: Tuple[int, ...]

    def coefficient(self, s: int) -> Fraction:
        return Fraction(self.numerators[s], 1 << self.n)

    def parseval_sum(self) -> Fraction:
        return Fraction(sum(c * c for c in self.numerators), 1 << (2 * self.n))

    def support(self):
        return [s for s, c in enumerate(self.numerators) if c]


def walsh_spectrum(h_bits: int, n: int) -> WalshSpectrum:
    """Exact spectrum of a total Boolean function given as a 2^n-bit truth table."""
    check_dimension(n)
    if h_bits < 0 or h_bits & ~full_mask(n):
        raise UsageError("truth table has bits outside the cube")
    signs = 1 - 2 * mask_to_array(h_bits, n).astype(np.int64)
    return WalshSpectrum(n, tuple(int(c) for c in walsh_hadamard(signs)))


def _as_truth_table(h, n):
    if isinstance(h, PartialFn):
        if not h.is_total():
            raise UsageError("Walsh analysis needs a total function")
        return h.value, h.n
    if n is None:
        raise UsageError("dimension required with a raw truth table")
    return int(h), n


def unbalanced_subspace(h, n: int = None) -> Gf2Subspace:
    """A hyperplane {x : <S, x> = 0} on which the balanced function h is unbalanced.

    S is the smallest non-empty index with a non-zero Walsh coefficient.
    """
    h_bits, n = _as_truth_table(h, n)
    if n < 1 or h_bits.bit_count() != 1 << (n - 1):
        raise PreconditionError("h must be balanced (and hence non-constant)")
    spectrum = walsh_spectrum(h_bits, n)
    s = next(s for s in range(1, 1 << n) if spectrum.numerators[s])
    hyperplane = kernel_basis(Gf2Matrix(n, [s]))
    ones_inside = (h_bits & even_parity_mask(s, n)).bit_count()
    if 2 * ones_inside == 1 << (n - 1):
        raise AssertionError(f"h is balanced on the hyperplane of S={s:#x}")
    return hyperplane
