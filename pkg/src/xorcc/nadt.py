"""Non-adaptive parity decision trees: exact complexity, protocol synthesis and
verification, plus an exact adaptive parity-tree depth for tiny n."""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ._bitops import even_parity_mask, full_mask
from ._errors import PreconditionError, UsageError, check_dimension
from .boolfn import PartialFn
from .gf2 import Gf2Matrix, Gf2Subspace, parity_check_matrix, syndrome
from .shifts import max_subspace_in, preserving_shifts

__all__ = [
    "NadtProtocol",
    "nadt_complexity",
    "synthesize_nadt",
    "verify_nadt",
    "syndromes",
    "dtp_exact",
    "DTP_MAX_N",
]

DTP_MAX_N = 6


@dataclass(frozen=True)
class NadtProtocol:
    """Parity queries s_1..s_p and an answer per syndrome.

    ``table[j]`` is the output when <s_i, x> equals bit i-1 of j.
    """

    queries: Gf2Matrix
    table: Tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != 1 << len(self.queries):
            raise UsageError(f"table needs {1 << len(self.queries)} entries, got {len(self.table)}")
        if any(b not in (0, 1) for b in self.table):
            raise UsageError("table entries must be bits")

    @property
    def n(self) -> int:
        return self.queries.n

    @property
    def p(self) -> int:
        return len(self.queries)

    def __call__(self, x: int) -> int:
        return self.table[syndrome(self.queries, x).bits]


def syndromes(queries: Gf2Matrix) -> np.ndarray:
    """Syndrome of every point of the cube, as an int64 array of length 2^n."""
    points = np.arange(1 << queries.n, dtype=np.uint64)
    out = np.zeros(1 << queries.n, dtype=np.int64)
    for i, row in enumerate(queries.rows):
        out |= (np.bitwise_count(points & np.uint64(row)).astype(np.int64) & 1) << i
    return out


def nadt_complexity(f: PartialFn) -> int:
    """n minus the largest dimension of a subspace on whose cosets f is constant."""
    return f.n - max_subspace_in(preserving_shifts(f)).dim


def synthesize_nadt(f: PartialFn, subspace: Optional[Gf2Subspace] = None) -> NadtProtocol:
    """Query the parity checks of ``subspace`` and answer with f on each coset.

    With no subspace given, a maximum one is found, so the protocol is optimal.
    """
    d_f = preserving_shifts(f)
    if subspace is None:
        subspace = max_subspace_in(d_f)
    if subspace.n != f.n:
        raise UsageError(f"subspace dimension {subspace.n} does not match n={f.n}")
    outside = subspace.mask() & ~d_f.mask
    if outside:
        witness = (outside & -outside).bit_length() - 1
        raise PreconditionError(f"subspace contains {witness:#x}, which is not an f-preserving shift")
    queries = parity_check_matrix(subspace)
    syn = syndromes(queries)
    defined, value = f.arrays()
    table = np.zeros(1 << len(queries), dtype=np.int64)
    table[syn[defined]] = value[defined]
    return NadtProtocol(queries, tuple(int(b) for b in table))


def verify_nadt(f: PartialFn, protocol: NadtProtocol) -> bool:
    if protocol.n != f.n:
        return False
    syn = syndromes(protocol.queries)
    defined, value = f.arrays()
    answers = np.asarray(protocol.table, dtype=bool)[syn]
    return bool(np.all(answers[defined] == value[defined]))


def dtp_exact(f: PartialFn) -> int:
    """Exact depth of the best adaptive parity decision tree for f (n <= 6).

    States are affine subspaces (as point masks) carved out by the answers so
    far; a state costs nothing once f is constant on its defined points.
    """
    n = f.n
    check_dimension(n, DTP_MAX_N)
    halves = [even_parity_mask(s, n) for s in range(1 << n)]
    zeros, ones = f.zeros, f.ones
    exact = {}
    at_least = {}

    def depth(state: int, limit: int) -> int:
        """Depth of state, or some value >= limit when it is at least limit."""
        if not state & zeros or not state & ones:
            return 0
        if state in exact:
            return exact[state]
        floor = at_least.get(state, 1)
        if floor >= limit:
            return floor
        best = limit
        seen = set()
        for s in range(1, 1 << n):
            a = state & halves[s]
            if a == 0 or a == state:
                continue
            b = state ^ a
            key = min(a, b)
            if key in seen:
                continue
            seen.add(key)
            da = depth(a, best - 1)
            if 1 + da >= best:
                continue
            db = depth(b, best - 1)
            cand = 1 + max(da, db)
            if cand < best:
                best = cand
                if best == floor:
                    break
        if best < limit:
            exact[state] = best
        else:
            at_least[state] = limit
        return best

    return depth(full_mask(n), n + 1)
