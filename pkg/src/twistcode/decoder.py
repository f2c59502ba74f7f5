"""Uncovering-by-bases decoding of twisted permutation codes.

For each base of the UBB (outer loop) and each component (inner loop) the
decoder reads the received symbols at the component's copy of the base,
recovers the unique group element that agrees there, re-encodes it as a
full codeword and accepts it if it lies within ``r_tw`` of the received
word.  With at most ``r_tw`` errors some component has at most ``r'``
errors, and a UBB of strength ``r'`` then has a base avoiding them all.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .group import BaseIndex
from .perm import Permutation, Word
from .twisted import TwistedCode
from .ubb import Ubb, verify_strength

__all__ = [
    "Attempt",
    "DecodeResult",
    "DecoderState",
    "decode",
    "guarantee_check",
]

SKIP_REPEAT = "skip-repeat"
SKIP_NOMATCH = "skip-nomatch"
REJECT = "reject"
ACCEPT = "accept"


@dataclass(frozen=True)
class Attempt:
    base: int  # 1-based UBB row
    component: int  # 1-based
    action: str
    distance: int | None = None

    def log_line(self) -> str:
        act = self.action if self.distance is None else f"{self.action} d={self.distance}"
        return f"base={self.base} comp={self.component} action={act}"


@dataclass(frozen=True)
class DecodeResult:
    success: bool
    element: int | None  # index into the enumeration of G1
    permutation: Permutation | None
    codeword: tuple[int, ...] | None
    attempts: tuple[Attempt, ...]

    def log(self) -> str:
        return "".join(a.log_line() + "\n" for a in self.attempts)


class DecoderState:
    """A code, a UBB for its first component group, and cached base indexes.

    Component ``i`` uses the bases ``psi_i(B)``.  With ``require_guarantee``
    (the default) construction fails unless the UBB really has strength
    ``r'`` for the code.
    """

    def __init__(self, code: TwistedCode, ubb: Ubb, require_guarantee: bool = True):
        self.code = code
        self.ubb = ubb
        self.r_tw, self.r_prime = code.correction_params()
        n = code.n
        for b in ubb.bases:
            if any(not 1 <= p <= n for p in b):
                raise ValueError(f"UBB row {b} has points outside 1..{n}")
        self.component_bases: tuple[tuple[tuple[int, ...], ...], ...] = tuple(
            tuple(tuple(psi(p) for p in b) for b in ubb.bases) for psi in code.psis
        )
        self._lock = threading.Lock()
        self._indexes: dict[tuple[int, int], BaseIndex] = {}
        if require_guarantee and not guarantee_check(self):
            raise ValueError(
                f"UBB does not have strength r' = {self.r_prime} for {code.name}; decoding is not guaranteed"
            )

    @property
    def max_attempts(self) -> int:
        return self.code.lam * len(self.ubb)

    def index(self, component: int, row: int) -> BaseIndex:
        """Base index for 0-based ``component`` and UBB ``row``."""
        key = (component, row)
        idx = self._indexes.get(key)
        if idx is None:
            with self._lock:
                idx = self._indexes.get(key)
                if idx is None:
                    group = self.code.alphas[component].target
                    idx = group.base_index(self.component_bases[component][row])
                    self._indexes[key] = idx
        return idx

    def warm(self):
        """Build every base index now rather than on first use."""
        for i in range(self.code.lam):
            for j in range(len(self.ubb)):
                self.index(i, j)


def guarantee_check(state: DecoderState) -> bool:
    """Whether the UBB has strength ``r' = floor(r_tw / lambda)`` and its rows are bases.

    The strength is verified exhaustively rather than read from the UBB's
    claimed value.
    """
    code, ubb = state.code, state.ubb
    for i, a in enumerate(code.alphas):
        if any(not a.target.is_base(b) for b in state.component_bases[i]):
            return False
    if state.r_prime > code.n:
        return False
    return bool(verify_strength(ubb, n=code.n, strength=state.r_prime))


def _as_array(state: DecoderState, w) -> np.ndarray:
    n, lam = state.code.n, state.code.lam
    if isinstance(w, Word):
        if w.alphabet_size != n:
            raise ValueError(f"word alphabet has size {w.alphabet_size}, code uses {n}")
        w = w.symbols
    arr = np.asarray(w, dtype=np.int64).ravel()
    if arr.size != lam * n:
        raise ValueError(f"received word has length {arr.size}, expected {lam * n}")
    if arr.size and (arr.min() < 1 or arr.max() > n):
        raise ValueError(f"received symbols must lie in 1..{n}")
    return arr


def decode(state: DecoderState, w: Word | Sequence[int] | np.ndarray) -> DecodeResult:
    """Decode a received word; failure is returned, not raised."""
    code = state.code
    arr = _as_array(state, w)
    n = code.n
    comps = arr.reshape(code.lam, n)
    attempts: list[Attempt] = []
    for j in range(len(state.ubb)):
        for i in range(code.lam):
            pts = state.component_bases[i][j]
            syms = [int(comps[i, p - 1]) for p in pts]
            if len(set(syms)) < len(syms):
                attempts.append(Attempt(j + 1, i + 1, SKIP_REPEAT))
                continue
            hit = state.index(i, j).lookup(syms)
            if hit is None:
                attempts.append(Attempt(j + 1, i + 1, SKIP_NOMATCH))
                continue
            g = int(code.alphas[i].inverse_map[hit])
            cand = code.encode_index(g)
            d = int(np.count_nonzero(cand != arr))
            if d <= state.r_tw:
                attempts.append(Attempt(j + 1, i + 1, ACCEPT, d))
                return DecodeResult(
                    True, g, code.g1.element(g), tuple(int(x) for x in cand), tuple(attempts)
                )
            attempts.append(Attempt(j + 1, i + 1, REJECT, d))
    return DecodeResult(False, None, None, None, tuple(attempts))
