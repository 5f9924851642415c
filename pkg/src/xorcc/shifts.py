"""Shift sets: the f-preserving shifts D_f, good shifts of a message map,
shift-induced graphs and maximum linear subspaces inside a shift set.

A shift set is a 2^n-bit mask over shift vectors; the graph it induces has an
edge {x, x ^ d} for every non-zero member d.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ._bitops import (
    full_mask,
    gray_translates,
    iter_bits,
    low_half_mask,
    neighbourhood,
    xor_convolve_support,
    xor_translate,
)
from ._errors import UsageError, check_dimension
from .boolfn import MessageMap, PartialFn
from .gf2 import Gf2Subspace

__all__ = [
    "ShiftSet",
    "ComponentLabeling",
    "UnionFind",
    "preserving_shifts",
    "good_shifts",
    "induced_components",
    "max_subspace_in",
    "span_of",
    "min_degree",
    "covering_radius_of_mask",
]

# Largest n for which the XOR-convolution counts fit in int64.
_CONVOLUTION_MAX_N = 20


@dataclass(frozen=True)
class ShiftSet:
    n: int
    mask: int

    def __post_init__(self):
        check_dimension(self.n)
        if not self.mask & 1:
            raise UsageError("a shift set always contains the zero shift")
        if self.mask & ~full_mask(self.n):
            raise UsageError("shift mask has bits outside the cube")

    @classmethod
    def from_members(cls, n: int, members) -> "ShiftSet":
        mask = 1
        for d in members:
            mask |= 1 << int(d)
        return cls(n, mask)

    def __contains__(self, delta: int) -> bool:
        return bool((self.mask >> delta) & 1)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def members(self):
        return list(iter_bits(self.mask))

    def issubset(self, other: "ShiftSet") -> bool:
        return self.n == other.n and not self.mask & ~other.mask


def preserving_shifts(f: PartialFn, method: str = "auto") -> ShiftSet:
    """All shifts d such that no defined pair u, u ^ d disagrees on f.

    ``method="convolution"`` computes the bad shifts as the sumset
    f^-1(0) + f^-1(1) with one XOR-convolution; ``method="translate"``
    compares each translate of the masks in Gray-code order.
    """
    n = f.n
    if method == "auto":
        method = "convolution" if n <= _CONVOLUTION_MAX_N else "translate"
    if method == "convolution":
        if n > _CONVOLUTION_MAX_N:
            raise UsageError(f"convolution method limited to n <= {_CONVOLUTION_MAX_N}")
        bad = xor_convolve_support(f.zeros, f.ones, n)
        return ShiftSet(n, full_mask(n) & ~bad)
    if method != "translate":
        raise UsageError(f"unknown method {method!r}")
    keep = 0
    defined_t = gray_translates(f.defined, n)
    value_t = gray_translates(f.value, n)
    for (delta, d_shift), (_, v_shift) in zip(defined_t, value_t):
        if not (f.value ^ v_shift) & f.defined & d_shift:
            keep |= 1 << delta
    return ShiftSet(n, keep)


def good_shifts(h: MessageMap) -> ShiftSet:
    """Shifts d with h(x) = h(x ^ d) for at least one x."""
    n = h.n
    labels = h.array()
    idx = np.arange(1 << n)
    mask = 1
    for delta in range(1, 1 << n):
        if np.any(labels == labels[idx ^ delta]):
            mask |= 1 << delta
    return ShiftSet(n, mask)


class UnionFind:
    """Disjoint sets whose representative is always the smallest member."""

    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        if rx < ry:
            self.parent[ry] = rx
        else:
            self.parent[rx] = ry


@dataclass(frozen=True)
class ComponentLabeling:
    """Component id per vertex (its smallest member); -1 for removed vertices."""

    n: int
    labels: Tuple[int, ...]
    restricted_to: Optional[int] = None

    def components(self):
        """Representative -> member mask, in increasing representative order."""
        out = {}
        for x, c in enumerate(self.labels):
            if c >= 0:
                out[c] = out.get(c, 0) | (1 << x)
        return dict(sorted(out.items()))

    @property
    def count(self) -> int:
        return len({c for c in self.labels if c >= 0})


def induced_components(shifts: ShiftSet, live: Optional[int] = None) -> ComponentLabeling:
    n = shifts.n
    size = 1 << n
    live_mask = full_mask(n) if live is None else live & full_mask(n)
    alive = [bool((live_mask >> x) & 1) for x in range(size)]
    uf = UnionFind(size)
    for delta in iter_bits(shifts.mask & ~1):
        for x in iter_bits(live_mask):
            y = x ^ delta
            if y > x and alive[y]:
                uf.union(x, y)
    labels = tuple(uf.find(x) if alive[x] else -1 for x in range(size))
    return ComponentLabeling(n, labels, live)


def span_of(shifts: ShiftSet) -> Gf2Subspace:
    gens = []
    probe = Gf2Subspace(shifts.n)
    for d in iter_bits(shifts.mask & ~1):
        if d not in probe:
            gens.append(d)
            probe = Gf2Subspace(shifts.n, gens)
            if probe.dim == shifts.n:
                break
    return probe


def min_degree(shifts: ShiftSet) -> int:
    """Every vertex of the shift-induced Cayley graph has degree |D| - 1."""
    return len(shifts) - 1


def covering_radius_of_mask(mask: int, n: int) -> int:
    """Largest Hamming distance from a point of the cube to the set (n + 1 if empty)."""
    full = full_mask(n)
    if not mask:
        return n + 1
    r = 0
    while mask != full:
        mask = neighbourhood(mask, n)
        r += 1
    return r


class _SubspaceSearch:
    """Branch and bound for the largest linear subspace inside a shift set.

    Bases are built in canonical order: each new vector has a higher top bit
    than every chosen vector and is zero on their top bits, so every subspace
    is reached through exactly one basis. ``cand`` tracks the vectors w with
    w + L inside D; any completion of L lies in it, which gives two bounds:
    the number of distinct top bits still available, and n minus the covering
    radius of ``cand`` (a subspace of dimension d has covering radius at most
    n - d).
    """

    def __init__(self, n: int, mask: int):
        self.n = n
        self.best_dim = -1
        self.best_basis = ()
        self.nodes = 0
        self._range_masks = [
            full_mask(n) & ~((1 << (1 << j)) - 1) & ((1 << (1 << (j + 1))) - 1) for j in range(n)
        ]
        self.root = mask

    def run(self):
        root_bound = self.n - covering_radius_of_mask(self.root, self.n)
        self._dfs((), self.root, -1, 0, root_bound)
        return self.best_basis

    def _top_bits_available(self, allowed: int, after: int) -> int:
        return sum(1 for j in range(after + 1, self.n) if allowed & self._range_masks[j])

    def _dfs(self, basis, cand, top, pivot_free, bound):
        self.nodes += 1
        dim = len(basis)
        if dim > self.best_dim:
            self.best_dim = dim
            self.best_basis = basis
        if bound <= self.best_dim:
            return
        n = self.n
        allowed = cand & pivot_free if basis else cand & ~1
        if top >= 0:
            allowed &= ~((1 << (1 << (top + 1))) - 1)
        if dim + self._top_bits_available(allowed, top) <= self.best_dim:
            return
        for v in iter_bits(allowed):
            vtop = v.bit_length() - 1
            if dim + 1 + self._top_bits_available(allowed, vtop) <= self.best_dim:
                # Later candidates have no more room than this one.
                break
            new_cand = cand & xor_translate(cand, n, v)
            child_bound = min(bound, n - covering_radius_of_mask(new_cand, n))
            if child_bound <= self.best_dim:
                continue
            self._dfs(
                basis + (v,),
                new_cand,
                vtop,
                (pivot_free if basis else full_mask(n)) & low_half_mask(n, vtop),
                child_bound,
            )
            if self.best_dim >= bound:
                return


def max_subspace_in(shifts: ShiftSet) -> Gf2Subspace:
    """A linear subspace of maximum dimension contained in the shift set."""
    search = _SubspaceSearch(shifts.n, shifts.mask)
    basis = search.run()
    return Gf2Subspace(shifts.n, basis)
