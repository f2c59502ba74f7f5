"""Bitmask helpers for point subsets.

Bit ``i`` of a mask stands for point ``i + 1``.  Vectorised paths use int64
masks and therefore need ``n <= 63``; callers fall back to Python ints above
that.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Iterable

import numpy as np

MAX_VECTOR_DEGREE = 63


def to_mask(points: Iterable[int]) -> int:
    m = 0
    for p in points:
        m |= 1 << (p - 1)
    return m


def from_mask(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@lru_cache(maxsize=64)
def _colex(n: int, r: int) -> np.ndarray:
    if r == 0:
        return np.zeros(1, dtype=np.int64)
    if r > n:
        return np.zeros(0, dtype=np.int64)
    # colex: subsets avoiding point n come first, then those containing it
    without = _colex(n - 1, r)
    with_last = _colex(n - 1, r - 1) | np.int64(1 << (n - 1))
    out = np.concatenate([without, with_last])
    out.setflags(write=False)
    return out


def colex_masks(n: int, r: int) -> np.ndarray:
    """All ``r``-subsets of ``{1..n}`` as int64 masks, in colex order."""
    if n > MAX_VECTOR_DEGREE:
        raise ValueError(f"vectorised subsets need n <= {MAX_VECTOR_DEGREE}")
    if r < 0:
        raise ValueError("r must be non-negative")
    return _colex(n, r)


def n_subsets(n: int, r: int) -> int:
    return comb(n, r)


def contains_any(containers: np.ndarray, masks: np.ndarray, chunk: int = 1 << 16) -> np.ndarray:
    """For each of ``masks``, whether some container mask is a superset of it."""
    out = np.zeros(len(masks), dtype=bool)
    if len(containers) == 0:
        return out
    for start in range(0, len(masks), chunk):
        m = masks[start:start + chunk, None]
        out[start:start + chunk] = ((containers[None, :] & m) == m).any(axis=1)
    return out


def disjoint_from_any(bases: np.ndarray, masks: np.ndarray, chunk: int = 1 << 16) -> np.ndarray:
    """For each of ``masks``, whether it misses at least one of ``bases``."""
    out = np.zeros(len(masks), dtype=bool)
    if len(bases) == 0:
        return out
    for start in range(0, len(masks), chunk):
        m = masks[start:start + chunk, None]
        out[start:start + chunk] = ((bases[None, :] & m) == 0).any(axis=1)
    return out
