"""Sumsets in GF(2)^n, the smallest subspace whose coset holds a set, the
set-compression procedure that lower-bounds |A + B|, and the bound itself."""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from ._bitops import full_mask, iter_bits, mask_to_array, xor_convolve_support, xor_translate
from ._errors import PreconditionError, UsageError, VerificationError
from .cube import VertexSet
from .gf2 import BitVector, Gf2Subspace, parity_check_matrix, to_bitstring
from .nadt import syndromes

__all__ = [
    "sumset",
    "sumset_shift_or",
    "min_coset_subspace",
    "spans_affinely",
    "coset_fill",
    "run_algorithm1",
    "SumsetTrace",
    "SumsetStep",
    "BoundReport",
    "sumset_bound_check",
    "sumset_lower_bound",
]

# Below this many translates the shift-and-OR loop beats the transform.
_SHIFT_OR_LIMIT = 32
# Sets up to this size are reduced in pure Python, larger ones with numpy.
_SMALL_SET = 48


def _same_cube(a: VertexSet, b: VertexSet) -> int:
    if a.m != b.m:
        raise UsageError(f"dimension mismatch: {a.m} vs {b.m}")
    return a.m


def sumset_shift_or(a: VertexSet, b: VertexSet) -> VertexSet:
    """A + B as the union of the translates of A by the members of B."""
    n = _same_cube(a, b)
    out = 0
    for v in iter_bits(b.mask):
        out |= xor_translate(a.mask, n, v)
    return VertexSet(n, out)


def sumset(a: VertexSet, b: VertexSet) -> VertexSet:
    n = _same_cube(a, b)
    small, big = (a, b) if len(a) <= len(b) else (b, a)
    if len(small) <= _SHIFT_OR_LIMIT or n > 20:
        return sumset_shift_or(big, small)
    return VertexSet(n, xor_convolve_support(a.mask, b.mask, n))


def min_coset_subspace(b: VertexSet) -> Tuple[Gf2Subspace, BitVector]:
    """(Q, b0): the smallest subspace Q with B inside Q + b0, b0 = min(B)."""
    if not b.mask:
        raise PreconditionError("the set must be non-empty")
    b0 = (b.mask & -b.mask).bit_length() - 1
    basis: List[int] = []
    if b.mask.bit_count() <= _SMALL_SET:
        # Basis kept in decreasing order, so min(v, v ^ r) clears r's top bit.
        for x in iter_bits(b.mask):
            v = x ^ b0
            for r in basis:
                v = min(v, v ^ r)
            if v:
                basis.append(v)
                basis.sort(reverse=True)
                if len(basis) == b.m:
                    break
        return Gf2Subspace(b.m, basis), BitVector(b.m, b0)
    # Eliminate all differences at once: each round takes one surviving
    # vector as a basis row and clears its top bit from the rest.
    rest = np.flatnonzero(mask_to_array(b.mask, b.m)).astype(np.int64) ^ b0
    while True:
        rest = rest[rest != 0]
        if not rest.size:
            break
        v = int(rest[0])
        basis.append(v)
        top = np.int64(1 << (v.bit_length() - 1))
        rest = np.where(rest & top, rest ^ v, rest)
    return Gf2Subspace(b.m, basis), BitVector(b.m, b0)


def spans_affinely(a: VertexSet) -> bool:
    """True when A lies in no coset of a proper subspace."""
    return bool(a.mask) and min_coset_subspace(a)[0].dim == a.m


def coset_fill(a_mask: int, q: Gf2Subspace) -> np.ndarray:
    """Number of points of A in each coset of Q, indexed by syndrome."""
    checks = parity_check_matrix(q)
    syn = syndromes(checks)
    inside = mask_to_array(a_mask, q.n)
    return np.bincount(syn[inside], minlength=1 << len(checks))


def _all_or_nothing(a_mask: int, q: Gf2Subspace) -> bool:
    """A is a union of cosets of Q iff it is invariant under Q's basis."""
    return all(xor_translate(a_mask, q.n, v) == a_mask for v in q.basis)


@dataclass(frozen=True)
class SumsetStep:
    """State at the start of an iteration and the choices made in it."""

    a: int
    b: int
    q: Gf2Subspace
    b_pick: int
    a_pick: int
    moved: int


@dataclass
class SumsetTrace:
    n: int
    a0: int
    b0: int
    steps: List[SumsetStep] = field(default_factory=list)
    final_a: int = 0
    final_b: int = 0
    final_q: Optional[Gf2Subspace] = None
    sumset_sizes: List[int] = field(default_factory=list)
    terminated: bool = False

    def dump(self) -> str:
        """One line per step: i, |A|, |B|, dim Q, b', a', |B'|, A, B (hex)."""
        lines = ["step\tsize_a\tsize_b\tdim_q\tb_pick\ta_pick\tmoved\ta_hex\tb_hex"]
        for i, s in enumerate(self.steps):
            lines.append(
                f"{i}\t{s.a.bit_count()}\t{s.b.bit_count()}\t{s.q.dim}\t"
                f"{to_bitstring(s.b_pick, self.n)}\t{to_bitstring(s.a_pick, self.n)}\t"
                f"{s.moved.bit_count()}\t{s.a:x}\t{s.b:x}"
            )
        if self.terminated:
            lines.append(
                f"end\t{self.final_a.bit_count()}\t{self.final_b.bit_count()}\t{self.final_q.dim}"
                f"\t-\t-\t-\t{self.final_a:x}\t{self.final_b:x}"
            )
        return "\n".join(lines)


def run_algorithm1(a0: VertexSet, b0: VertexSet) -> SumsetTrace:
    """Move points from B into A, one translate at a time, until A is a union
    of whole cosets of the smallest subspace Q with B inside a coset of Q.

    Choices: b' is the smallest point of B, a' the smallest point of A with
    a' + (B + b') not inside A. Checked at every step: |A| + |B| constant,
    |A + B| never grows, B stays non-empty. Checked at the end: A is a union
    of cosets of Q and |B| <= |Q|.
    """
    n = _same_cube(a0, b0)
    if not spans_affinely(a0):
        raise PreconditionError("A must not lie in a coset of a proper subspace")
    if not b0.mask:
        raise PreconditionError("B must be non-empty")
    trace = SumsetTrace(n, a0.mask, b0.mask)
    a, b = a0.mask, b0.mask
    total = a.bit_count() + b.bit_count()
    outside = full_mask(n)
    trace.sumset_sizes.append(len(sumset(a0, b0)))

    def fail(message, witness=None):
        raise VerificationError(f"{message}\n{trace.dump()}", witness)

    for _ in range(1 << n):
        q, _ = min_coset_subspace(VertexSet(n, b))
        if _all_or_nothing(a, q):
            break
        b_pick = (b & -b).bit_length() - 1
        shifted = xor_translate(b, n, b_pick)
        a_pick = next((x for x in iter_bits(a) if xor_translate(shifted, n, x) & ~a), None)
        if a_pick is None:
            fail("no point of A has a translate of B leaving A")
        moved = shifted & xor_translate(outside & ~a, n, a_pick)
        trace.steps.append(SumsetStep(a, b, q, b_pick, a_pick, moved))
        a |= xor_translate(moved, n, a_pick)
        b = shifted & ~moved
        if not b:
            fail("B became empty")
        if a.bit_count() + b.bit_count() != total:
            fail("|A| + |B| changed")
        size = len(sumset(VertexSet(n, a), VertexSet(n, b)))
        if size > trace.sumset_sizes[-1]:
            fail("|A + B| grew", (a, b))
        trace.sumset_sizes.append(size)
    else:
        fail("no termination within 2^n steps")
    trace.final_a, trace.final_b, trace.final_q = a, b, q
    trace.terminated = True
    if b.bit_count() > 1 << q.dim:
        fail("|B| exceeds |Q| at termination")
    return trace


def sumset_lower_bound(n: int, size_a: int, size_b: int) -> int:
    """min{|A| + |B| - 2^(n-3), 3 * 2^(n-2)} for n >= 3."""
    if n < 3:
        raise UsageError("the bound is stated for n >= 3")
    return min(size_a + size_b - (1 << (n - 3)), 3 << (n - 2))


@dataclass(frozen=True)
class BoundReport:
    size_a: int
    size_b: int
    size_sum: int
    bound: int
    ok: bool
    skipped: Optional[str] = None


def sumset_bound_check(a: VertexSet, b: VertexSet) -> BoundReport:
    n = _same_cube(a, b)
    if not b.mask or not spans_affinely(a):
        return BoundReport(len(a), len(b), 0, 0, True, "A lies in a proper coset or a set is empty")
    size = len(sumset(a, b))
    bound = sumset_lower_bound(n, len(a), len(b))
    return BoundReport(len(a), len(b), size, bound, size >= bound)
