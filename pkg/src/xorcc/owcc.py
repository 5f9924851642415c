"""One-way communication complexity of XOR functions F(x, y) = f(x ^ y).

Rows x and x' can share a message exactly when every y with both x ^ y and
x' ^ y defined sees the same value, i.e. when x ^ x' is an f-preserving shift.
That relation is checked pairwise, so a set of rows can share one message iff
its members are pairwise compatible: for a fixed y the defined values of the
set agree pairwise, hence all agree. The smallest number of messages is
therefore the chromatic number of the conflict graph joining incompatible
rows, and the complexity is the ceiling of its base-2 logarithm.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from ._bitops import full_mask, gray_translates, iter_bits, xor_translate
from ._errors import PreconditionError, UsageError, check_dimension
from .boolfn import MessageMap, PartialFn
from .nadt import nadt_complexity
from .shifts import ShiftSet, good_shifts, induced_components, max_subspace_in, preserving_shifts

__all__ = [
    "ConflictGraph",
    "OneWayProtocol",
    "conflict_graph",
    "greedy_clique",
    "dsatur_coloring",
    "is_colorable",
    "chromatic_number_exact",
    "owcc_exact",
    "optimal_message_map",
    "owcc_bounds",
    "synthesize_oneway",
    "verify_oneway",
    "verify_oneway_pairs",
    "message_width",
    "EXACT_MAX_N",
    "BOUNDS_COLORING_MAX_N",
]

EXACT_MAX_N = 8
# Above this the heuristic coloring in owcc_bounds is skipped.
BOUNDS_COLORING_MAX_N = 12


def message_width(count: int) -> int:
    """Bits needed to name ``count`` messages (0 for a single message)."""
    return max(0, (count - 1).bit_length())


@dataclass(frozen=True)
class ConflictGraph:
    """Cayley graph on {0,1}^n: x ~ y iff x ^ y is not an f-preserving shift."""

    n: int
    preserving: ShiftSet

    @property
    def connection(self) -> int:
        return full_mask(self.n) & ~self.preserving.mask

    @property
    def order(self) -> int:
        return 1 << self.n

    @property
    def degree(self) -> int:
        return self.connection.bit_count()

    def neighbours(self, x: int) -> int:
        return xor_translate(self.connection, self.n, x)

    def adjacency(self) -> List[int]:
        """Neighbour mask of every vertex."""
        out = [0] * self.order
        for delta, shifted in gray_translates(self.connection, self.n):
            out[delta] = shifted
        return out

    def is_edge(self, x: int, y: int) -> bool:
        return bool((self.connection >> (x ^ y)) & 1)


def conflict_graph(f: PartialFn) -> ConflictGraph:
    return ConflictGraph(f.n, preserving_shifts(f))


def greedy_clique(g: ConflictGraph, adjacency: Optional[List[int]] = None) -> Tuple[int, ...]:
    """Best of two greedy cliques through vertex 0 (enough by vertex transitivity).

    One adds candidates in index order; the other adds the candidate with the
    most neighbours among the remaining candidates.
    """
    adj = adjacency or g.adjacency()
    first = [0]
    cand = adj[0]
    while cand:
        v = (cand & -cand).bit_length() - 1
        first.append(v)
        cand &= adj[v]
    second = [0]
    cand = adj[0]
    while cand:
        v = max(iter_bits(cand), key=lambda u: ((cand & adj[u]).bit_count(), -u))
        second.append(v)
        cand &= adj[v]
    return tuple(first if len(first) >= len(second) else second)


def dsatur_coloring(g: ConflictGraph, adjacency: Optional[List[int]] = None) -> List[int]:
    """Heuristic DSATUR coloring; returns a color per vertex."""
    adj = adjacency or g.adjacency()
    size = g.order
    colors = [-1] * size
    sat = [0] * size
    uncolored = full_mask(g.n)
    for _ in range(size):
        v = max(iter_bits(uncolored), key=lambda u: (sat[u].bit_count(), (adj[u] & uncolored).bit_count(), -u))
        free = ~sat[v]
        c = (free & -free).bit_length() - 1
        colors[v] = c
        uncolored &= ~(1 << v)
        for u in iter_bits(adj[v] & uncolored):
            sat[u] |= 1 << c
    return colors


def is_colorable(
    g: ConflictGraph,
    k: int,
    adjacency: Optional[List[int]] = None,
    clique: Tuple[int, ...] = (),
) -> Optional[List[int]]:
    """A proper coloring with at most k colors, or None if none exists.

    Backtracking over the most saturated vertex with forward checking. The
    clique, if given, is precolored with distinct colors; this loses nothing
    because its members need distinct colors and colors are interchangeable.
    """
    adj = adjacency or g.adjacency()
    size = g.order
    if len(clique) > k:
        return None
    if k >= size:
        return list(range(size))
    full_colors = (1 << k) - 1
    colors = [-1] * size
    sat = [0] * size
    uncolored = full_mask(g.n)

    def assign(v, c):
        nonlocal uncolored
        colors[v] = c
        uncolored &= ~(1 << v)
        changed = []
        bit = 1 << c
        dead = False
        for u in iter_bits(adj[v] & uncolored):
            if not sat[u] & bit:
                sat[u] |= bit
                changed.append(u)
                if sat[u] == full_colors:
                    dead = True
        return changed, dead

    def undo(v, c, changed):
        nonlocal uncolored
        colors[v] = -1
        uncolored |= 1 << v
        bit = 1 << c
        for u in changed:
            sat[u] &= ~bit

    used = 0
    for i, v in enumerate(clique):
        _, dead = assign(v, i)
        if dead:
            return None
        used = i + 1

    def search(used):
        if not uncolored:
            return True
        v = max(iter_bits(uncolored), key=lambda u: (sat[u].bit_count(), (adj[u] & uncolored).bit_count(), -u))
        for c in range(min(k, used + 1)):
            if (sat[v] >> c) & 1:
                continue
            changed, dead = assign(v, c)
            if not dead and search(max(used, c + 1)):
                return True
            undo(v, c, changed)
        return False

    if search(used):
        return list(colors)
    return None


def _check_exact_cap(n: int) -> None:
    try:
        check_dimension(n, EXACT_MAX_N)
    except UsageError as exc:
        raise UsageError(f"{exc}; exact coloring is capped, use owcc_bounds instead") from None


def chromatic_number_exact(g: ConflictGraph) -> int:
    _check_exact_cap(g.n)
    adj = g.adjacency()
    clique = greedy_clique(g, adj)
    upper = len(set(dsatur_coloring(g, adj)))
    k = len(clique)
    while k < upper:
        if is_colorable(g, k, adj, clique) is not None:
            return k
        k += 1
    return upper


def _solve_exact(f: PartialFn):
    """(t, labels or None): labels are a proper coloring with at most 2^t
    colors when one was produced by the search itself."""
    g = conflict_graph(f)
    _check_exact_cap(g.n)
    adj = g.adjacency()
    clique = greedy_clique(g, adj)
    lower = message_width(len(clique))
    greedy = dsatur_coloring(g, adj)
    greedy_width = message_width(len(set(greedy)))
    upper = min(nadt_complexity(f), greedy_width)
    for t in range(lower, upper):
        coloring = is_colorable(g, 1 << t, adj, clique)
        if coloring is not None:
            return t, coloring
    return upper, greedy if greedy_width == upper else None


def owcc_exact(f: PartialFn) -> int:
    """Exact one-way complexity: the least t such that 2^t colors suffice."""
    return _solve_exact(f)[0]


def optimal_message_map(f: PartialFn) -> MessageMap:
    """A message map of minimum width; falls back to coset labels of a
    maximum preserving subspace when those are optimal."""
    t, labels = _solve_exact(f)
    if labels is None:
        subspace = max_subspace_in(preserving_shifts(f))
        labels = [subspace.coset_representative(x) for x in range(1 << f.n)]
    return MessageMap.from_labels(f.n, labels)


def owcc_bounds(f: PartialFn) -> Tuple[int, int]:
    """(lower, upper) from a greedy clique and min(NADT, greedy coloring width).

    Above BOUNDS_COLORING_MAX_N the graph heuristics are skipped and the
    bounds are (0 or 1, NADT).
    """
    nadt = nadt_complexity(f)
    g = conflict_graph(f)
    if g.n > BOUNDS_COLORING_MAX_N:
        return (0 if f.is_constant() else 1), nadt
    adj = g.adjacency()
    lower = message_width(len(greedy_clique(g, adj)))
    upper = min(nadt, message_width(len(set(dsatur_coloring(g, adj)))))
    return lower, upper


@dataclass(frozen=True)
class OneWayProtocol:
    """Alice sends h(x); Bob answers from ``phi[h(x)]`` at y.

    ``phi[a]`` is a pair (value mask, constrained mask) over y. Bits outside
    the constrained mask are unconstrained and stored as 0.
    """

    h: MessageMap
    phi: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if len(self.phi) != 1 << self.h.t:
            raise UsageError(f"phi needs {1 << self.h.t} rows, got {len(self.phi)}")
        full = full_mask(self.h.n)
        for value, constrained in self.phi:
            if value & ~constrained or constrained & ~full:
                raise UsageError("phi row has bits outside its constrained mask")

    @property
    def n(self) -> int:
        return self.h.n

    @property
    def t(self) -> int:
        return self.h.t

    def answer(self, x: int, y: int) -> int:
        return (self.phi[self.h(x)][0] >> y) & 1


def synthesize_oneway(f: PartialFn, h: MessageMap) -> OneWayProtocol:
    """Bob answers as F at the smallest row of the message's fiber that sees y.

    Requires f constant on every component of the partial h-induced graph.
    """
    if h.n != f.n:
        raise UsageError(f"message map is over n={h.n}, function over n={f.n}")
    n = f.n
    labelling = induced_components(good_shifts(h), live=f.defined)
    for rep, members in labelling.components().items():
        sub = members & f.defined
        if sub & f.value and sub & ~f.value:
            raise PreconditionError(
                f"f is not constant on the component of point {rep:#x} of the partial h-induced graph"
            )
    rows = []
    for fiber in h.fibers():
        value = constrained = 0
        for x in iter_bits(fiber):
            seen = xor_translate(f.defined, n, x) & ~constrained
            if seen:
                value |= xor_translate(f.value, n, x) & seen
                constrained |= seen
        rows.append((value, constrained))
    return OneWayProtocol(h, tuple(rows))


def verify_oneway(f: PartialFn, protocol: OneWayProtocol) -> bool:
    """Check phi(h(x), y) = f(x ^ y) for all x and all y with x ^ y defined."""
    if protocol.n != f.n:
        return False
    n = f.n
    for fiber, (value, _) in zip(protocol.h.fibers(), protocol.phi):
        for x in iter_bits(fiber):
            seen = xor_translate(f.defined, n, x)
            if (xor_translate(f.value, n, x) ^ value) & seen:
                return False
    return True


def verify_oneway_pairs(f: PartialFn, protocol: OneWayProtocol) -> bool:
    """Direct O(4^n) check over every (x, y) pair; reference for verify_oneway."""
    if protocol.n != f.n:
        return False
    size = 1 << f.n
    defined, value = f.arrays()
    labels = protocol.h.array()
    phi_bits = np.array(
        [[(row >> y) & 1 for y in range(size)] for row, _ in protocol.phi], dtype=bool
    )
    ys = np.arange(size)
    for x in range(size):
        points = x ^ ys
        seen = defined[points]
        if np.any(phi_bits[labels[x]][seen] != value[points][seen]):
            return False
    return True
