"""Permutations in list form and Hamming distance on words.

Points are labelled ``1..n``.  Permutations act on the right: ``x^g`` is
``g(x)`` and ``compose(g, h)`` applies ``g`` first, then ``h``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Permutation",
    "Word",
    "compose",
    "inverse",
    "fix_count",
    "hamming_distance",
    "parse_permutation",
]

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``{1..n}`` stored as its image list."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", images)
        n = len(images)
        if n < 1:
            raise ValueError("permutation degree must be at least 1")
        if sorted(images) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {list(images)}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_array(cls, arr) -> Permutation:
        """Build from a 0-based image array."""
        return cls(tuple(int(x) + 1 for x in arr))

    @classmethod
    def from_cycles(cls, text: str, n: int) -> Permutation:
        """Parse cycle notation such as ``(1,4,6,8,5,3)(2,7)``.

        The identity may be written ``()``.
        """
        images = list(range(1, n + 1))
        seen: set[int] = set()
        stripped = text.replace(" ", "")
        if _CYCLE_RE.sub("", stripped):
            raise ValueError(f"malformed cycle string: {text!r}")
        for body in _CYCLE_RE.findall(stripped):
            if not body:
                continue
            pts = [int(tok) for tok in body.split(",")]
            for p in pts:
                if not 1 <= p <= n:
                    raise ValueError(f"point {p} outside 1..{n} in {text!r}")
                if p in seen:
                    raise ValueError(f"point {p} repeated in {text!r}")
                seen.add(p)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                images[a - 1] = b
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    @cached_property
    def array(self) -> np.ndarray:
        """0-based image array (read-only)."""
        arr = np.asarray(self.images, dtype=np.int64) - 1
        arr.setflags(write=False)
        return arr

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __invert__(self) -> Permutation:
        return inverse(self)

    def is_identity(self) -> bool:
        return all(img == i for i, img in enumerate(self.images, 1))

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles(include_fixed=True)))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        out = []
        seen = set()
        for start in range(1, self.degree + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self(x)
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cycs)

    def list_string(self) -> str:
        return "[" + ",".join(map(str, self.images)) + "]"

    def __str__(self) -> str:
        return self.cycle_string()


def parse_permutation(text: str, n: int) -> Permutation:
    """Parse either cycle notation or a bracketed image list of degree ``n``."""
    text = text.strip()
    if text.startswith("["):
        if not text.endswith("]"):
            raise ValueError(f"unterminated image list: {text!r}")
        body = text[1:-1].strip()
        images = tuple(int(tok) for tok in body.split(",")) if body else ()
        if len(images) != n:
            raise ValueError(f"image list has length {len(images)}, expected {n}")
        return Permutation(images)
    if text.startswith("("):
        return Permutation.from_cycles(text, n)
    raise ValueError(f"cannot parse permutation: {text!r}")


def compose(g: Permutation, h: Permutation) -> Permutation:
    """Return the permutation ``x -> (x^g)^h``."""
    if g.degree != h.degree:
        raise ValueError(f"degree mismatch: {g.degree} vs {h.degree}")
    return Permutation(tuple(h.images[x - 1] for x in g.images))


def inverse(g: Permutation) -> Permutation:
    inv = [0] * g.degree
    for i, img in enumerate(g.images, 1):
        inv[img - 1] = i
    return Permutation(tuple(inv))


def fix_count(g: Permutation) -> int:
    return sum(1 for i, img in enumerate(g.images, 1) if i == img)


@dataclass(frozen=True)
class Word:
    """A string of symbols over the alphabet ``{1..alphabet_size}``.

    No frequency constraint is imposed, so received words with errors are
    representable.
    """

    symbols: tuple[int, ...]
    alphabet_size: int

    def __post_init__(self):
        symbols = tuple(int(s) for s in self.symbols)
        object.__setattr__(self, "symbols", symbols)
        for s in symbols:
            if not 1 <= s <= self.alphabet_size:
                raise ValueError(f"symbol {s} outside alphabet 1..{self.alphabet_size}")

    @classmethod
    def concat(cls, parts: Iterable[Permutation | Sequence[int]], alphabet_size: int) -> Word:
        symbols: list[int] = []
        for part in parts:
            symbols.extend(part.images if isinstance(part, Permutation) else part)
        return cls(tuple(symbols), alphabet_size)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, item):
        return self.symbols[item]

    def components(self, lam: int) -> list[tuple[int, ...]]:
        """Split into ``lam`` equal-length components."""
        if len(self.symbols) % lam:
            raise ValueError(f"length {len(self.symbols)} not divisible by {lam}")
        m = len(self.symbols) // lam
        return [self.symbols[i * m:(i + 1) * m] for i in range(lam)]

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.symbols)) + "]"


def _symbols(w) -> Sequence[int]:
    if isinstance(w, Word):
        return w.symbols
    if isinstance(w, Permutation):
        return w.images
    return w


def hamming_distance(u, w) -> int:
    """Number of positions where ``u`` and ``w`` differ.

    Accepts :class:`Word`, :class:`Permutation` or plain integer sequences.
    """
    a, b = _symbols(u), _symbols(w)
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return int(np.count_nonzero(np.asarray(a) != np.asarray(b)))
