"""Whole-mask operations on 2^n-bit point sets stored as Python ints.

Bit ``i`` of a mask refers to the point whose integer encoding is ``i``
(coordinate x_1 is the least significant bit of ``i``).
"""

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def full_mask(n: int) -> int:
    return (1 << (1 << n)) - 1


@lru_cache(maxsize=None)
def low_half_mask(n: int, j: int) -> int:
    """Mask of the points whose coordinate j (0-based) is zero."""
    half = 1 << j
    period = half << 1
    block = (1 << half) - 1
    return block * (full_mask(n) // ((1 << period) - 1))


def flip_coordinate(mask: int, n: int, j: int) -> int:
    """Image of the point set under x -> x ^ e_j."""
    lo = low_half_mask(n, j)
    h = 1 << j
    return ((mask & lo) << h) | ((mask >> h) & lo)


def xor_translate(mask: int, n: int, delta: int) -> int:
    """Image of the point set under x -> x ^ delta."""
    j = 0
    while delta:
        if delta & 1:
            mask = flip_coordinate(mask, n, j)
        delta >>= 1
        j += 1
    return mask


def gray_translates(mask: int, n: int):
    """Yield ``(delta, xor_translate(mask, n, delta))`` for every delta.

    Deltas come in Gray-code order so each step costs one coordinate flip.
    """
    delta = 0
    yield 0, mask
    for i in range(1, 1 << n):
        j = (i & -i).bit_length() - 1
        delta ^= 1 << j
        mask = flip_coordinate(mask, n, j)
        yield delta, mask


def neighbourhood(mask: int, n: int) -> int:
    """Closed distance-1 neighbourhood of a point set."""
    out = mask
    for j in range(n):
        out |= flip_coordinate(mask, n, j)
    return out


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_to_array(mask: int, n: int) -> np.ndarray:
    size = 1 << n
    raw = mask.to_bytes(max(1, (size + 7) // 8), "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:size].astype(bool)


def array_to_mask(arr) -> int:
    packed = np.packbits(np.asarray(arr, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def mask_from_points(points) -> int:
    out = 0
    for p in points:
        out |= 1 << int(p)
    return out


def walsh_hadamard(values) -> np.ndarray:
    """Unnormalised fast Walsh-Hadamard transform along the last axis (int64)."""
    a = np.array(values, dtype=np.int64, copy=True)
    size = a.shape[-1]
    lead = a.shape[:-1]
    h = 1
    while h < size:
        a = a.reshape(lead + (size // (2 * h), 2, h))
        x = a[..., 0, :].copy()
        y = a[..., 1, :]
        a[..., 0, :] += y
        a[..., 1, :] = x - y
        h *= 2
    return a.reshape(lead + (size,))


def xor_convolve_support(a_mask: int, b_mask: int, n: int) -> int:
    """Support of the XOR-convolution of two indicator vectors, i.e. the sumset."""
    if not a_mask or not b_mask:
        return 0
    fa = walsh_hadamard(mask_to_array(a_mask, n).astype(np.int64))
    fb = walsh_hadamard(mask_to_array(b_mask, n).astype(np.int64))
    conv = walsh_hadamard(fa * fb)
    return array_to_mask(conv != 0)


@lru_cache(maxsize=None)
def point_weights(n: int) -> np.ndarray:
    return np.bitwise_count(np.arange(1 << n, dtype=np.uint64)).astype(np.int64)


def even_parity_mask(s: int, n: int) -> int:
    """Mask of the points x with <s, x> = 0."""
    full = full_mask(n)
    even, odd = full, 0
    j = 0
    while s:
        if s & 1:
            lo = low_half_mask(n, j)
            hi = full ^ lo
            even, odd = (even & lo) | (odd & hi), (odd & lo) | (even & hi)
        s >>= 1
        j += 1
    return even
