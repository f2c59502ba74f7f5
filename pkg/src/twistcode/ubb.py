"""Uncoverings-by-bases, covering designs, Saxl graphs and matching UBBs.

An uncovering-by-bases (UBB) of strength ``r`` is a list of bases such that
every ``r``-subset of points misses at least one of them.  Complements of
the bases form a covering design, which is how most UBBs are obtained.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from . import _subsets
from .group import NotABaseError, PermutationGroup
from .matching import maximum_matching
from .perm import Permutation

__all__ = [
    "CoverNotBasesError",
    "CoveringDesign",
    "Relabeling",
    "SaxlGraph",
    "StrengthBudgetError",
    "StrengthCheck",
    "Ubb",
    "matching_ubb",
    "relabel_search",
    "saxl_graph",
    "ubb_from_cover",
    "verify_strength",
]

STRENGTH_BUDGET = 10**7
SAMPLE_SIZE = 10**6


class StrengthBudgetError(ValueError):
    pass


class CoverNotBasesError(NotABaseError):
    """A block complement is not a base; ``block`` holds the offending block."""

    def __init__(self, message: str, block: tuple[int, ...]):
        super().__init__(message)
        self.block = block


@dataclass(frozen=True)
class Ubb:
    """An ordered list of bases with a claimed strength."""

    bases: tuple[tuple[int, ...], ...]
    strength: int
    group: PermutationGroup | None = field(default=None, compare=False)
    name: str = ""

    def __post_init__(self):
        bases = tuple(tuple(int(p) for p in b) for b in self.bases)
        for b in bases:
            if len(set(b)) != len(b):
                raise ValueError(f"base {b} repeats a point")
        object.__setattr__(self, "bases", bases)
        if self.strength < 0:
            raise ValueError("strength must be non-negative")

    def __len__(self) -> int:
        return len(self.bases)

    def __iter__(self):
        return iter(self.bases)

    @property
    def degree(self) -> int:
        if self.group is not None:
            return self.group.degree
        return max((max(b) for b in self.bases if b), default=0)

    def non_bases(self, group: PermutationGroup | None = None) -> list[tuple[int, ...]]:
        """Rows that fail to be bases for ``group`` (default: the attached group)."""
        group = group or self.group
        if group is None:
            raise ValueError("no group to check against")
        return [b for b in self.bases if not group.is_base(b)]

    def with_strength(self, strength: int) -> Ubb:
        return Ubb(self.bases, strength, self.group, self.name)

    def relabel(self, sigma: Permutation) -> Ubb:
        return Ubb(tuple(tuple(sigma(p) for p in b) for b in self.bases), self.strength, self.group, self.name)


@dataclass(frozen=True)
class StrengthCheck:
    """Outcome of :func:`verify_strength`; truthy iff the strength holds.

    ``certified`` is False when only a random sample of subsets was tested.
    """

    ok: bool
    witness: tuple[int, ...] | None
    checked: int
    certified: bool = True

    def __bool__(self) -> bool:
        return self.ok


def verify_strength(
    ubb: Ubb,
    n: int | None = None,
    strength: int | None = None,
    budget: int = STRENGTH_BUDGET,
    sample: bool = False,
    seed: int = 0,
) -> StrengthCheck:
    """Check that every ``r``-subset of ``{1..n}`` is disjoint from some base.

    Subsets are scanned exhaustively in colex order and the first failing
    subset is returned as the witness.  Above ``budget`` subsets a
    :class:`StrengthBudgetError` is raised unless ``sample=True``, in which
    case random subsets are tested and the result is marked uncertified.
    """
    n = ubb.degree if n is None else n
    r = ubb.strength if strength is None else strength
    if r > n:
        raise ValueError(f"strength {r} exceeds degree {n}")
    total = comb(n, r)
    if n > _subsets.MAX_VECTOR_DEGREE:
        return _verify_strength_slow(ubb, n, r, budget)
    bases = np.array([_subsets.to_mask(b) for b in ubb.bases], dtype=np.int64)
    if total > budget:
        if not sample:
            raise StrengthBudgetError(
                f"C({n},{r}) = {total} subsets exceeds budget {budget}; use sample=True"
            )
        rng = np.random.default_rng(seed)
        pts = np.argsort(rng.random((SAMPLE_SIZE, n)), axis=1)[:, :r]
        masks = (np.int64(1) << pts.astype(np.int64)).sum(axis=1)
        ok = _subsets.disjoint_from_any(bases, masks)
        bad = np.nonzero(~ok)[0]
        witness = _subsets.from_mask(int(masks[bad[0]])) if len(bad) else None
        return StrengthCheck(not len(bad), witness, SAMPLE_SIZE, certified=False)
    masks = _subsets.colex_masks(n, r)
    ok = _subsets.disjoint_from_any(bases, masks)
    bad = np.nonzero(~ok)[0]
    if len(bad):
        return StrengthCheck(False, _subsets.from_mask(int(masks[bad[0]])), int(bad[0]) + 1)
    return StrengthCheck(True, None, total)


def _verify_strength_slow(ubb: Ubb, n: int, r: int, budget: int) -> StrengthCheck:
    total = comb(n, r)
    if total > budget:
        raise StrengthBudgetError(f"C({n},{r}) = {total} subsets exceeds budget {budget}")
    bases = [_subsets.to_mask(b) for b in ubb.bases]
    checked = 0
    # colex order: iterate combinations of reversed points, reversed
    for combo in sorted(combinations(range(1, n + 1), r), key=lambda c: c[::-1]):
        checked += 1
        m = _subsets.to_mask(combo)
        if not any(m & b == 0 for b in bases):
            return StrengthCheck(False, combo, checked)
    return StrengthCheck(True, None, checked)


@dataclass(frozen=True)
class CoveringDesign:
    """An ``(n, k, r)`` covering design: ``k``-blocks covering every ``r``-subset."""

    n: int
    block_size: int
    strength: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(int(p) for p in b)) for b in self.blocks)
        for b in blocks:
            if len(b) != self.block_size or len(set(b)) != len(b):
                raise ValueError(f"block {b} is not a {self.block_size}-subset")
            if b and not (1 <= b[0] and b[-1] <= self.n):
                raise ValueError(f"block {b} has points outside 1..{self.n}")
        object.__setattr__(self, "blocks", blocks)

    def is_covering(self) -> bool:
        if self.n > _subsets.MAX_VECTOR_DEGREE:
            blocks = [_subsets.to_mask(b) for b in self.blocks]
            return all(
                any(_subsets.to_mask(c) & b == _subsets.to_mask(c) for b in blocks)
                for c in combinations(range(1, self.n + 1), self.strength)
            )
        blocks = np.array([_subsets.to_mask(b) for b in self.blocks], dtype=np.int64)
        return bool(_subsets.contains_any(blocks, _subsets.colex_masks(self.n, self.strength)).all())

    def complements(self) -> list[tuple[int, ...]]:
        full = set(range(1, self.n + 1))
        return [tuple(sorted(full - set(b))) for b in self.blocks]

    def relabel(self, sigma: Permutation) -> CoveringDesign:
        return CoveringDesign(
            self.n, self.block_size, self.strength,
            tuple(tuple(sigma(p) for p in b) for b in self.blocks),
        )

    @classmethod
    def from_ubb(cls, ubb: Ubb, n: int) -> CoveringDesign:
        full = set(range(1, n + 1))
        blocks = tuple(tuple(sorted(full - set(b))) for b in ubb.bases)
        sizes = {len(b) for b in blocks}
        if len(sizes) != 1:
            raise ValueError("bases of unequal size do not give a covering design")
        return cls(n, sizes.pop(), ubb.strength, blocks)


def ubb_from_cover(cover: CoveringDesign, group: PermutationGroup, name: str = "") -> Ubb:
    """UBB whose bases are the block complements of ``cover``."""
    if cover.n != group.degree:
        raise ValueError(f"cover has {cover.n} points, group has degree {group.degree}")
    comps = cover.complements()
    for block, base in zip(cover.blocks, comps):
        if not group.is_base(base):
            raise CoverNotBasesError(
                f"complement {base} of block {block} is not a base for {group.name or 'group'}",
                block,
            )
    return Ubb(tuple(comps), cover.strength, group, name)


@dataclass(frozen=True)
class Relabeling:
    sigma: Permutation
    attempt: int


def relabel_search(
    cover: CoveringDesign,
    group: PermutationGroup,
    attempts: int,
    seed: int = 0,
    repair_steps: int | None = None,
) -> Relabeling | None:
    """Find ``sigma`` making every complement of ``sigma(block)`` a base.

    Attempt 0 is the identity labelling.  Each of the ``attempts`` further
    tries starts from a random labelling and greedily swaps a point of a
    failing complement with another point whenever that does not increase
    the number of failing blocks.  Returns ``None`` when nothing works.
    """
    n = cover.n
    full = (1 << n) - 1
    block_masks = [_subsets.to_mask(b) for b in cover.blocks]

    def failing(images: list[int]) -> list[int]:
        out = []
        for j, b in enumerate(cover.blocks):
            m = 0
            for p in b:
                m |= 1 << (images[p - 1] - 1)
            if not group.is_base(_subsets.from_mask(full & ~m)):
                out.append(j)
        return out

    ident = list(range(1, n + 1))
    if not failing(ident):
        return Relabeling(Permutation(tuple(ident)), 0)
    rng = np.random.default_rng(seed)
    steps = repair_steps if repair_steps is not None else 40 * n
    for attempt in range(1, attempts + 1):
        images = [int(x) + 1 for x in rng.permutation(n)]
        bad = failing(images)
        for _ in range(steps):
            if not bad:
                break
            j = bad[int(rng.integers(len(bad)))]
            # points outside the block land in the complement
            outside = [p for p in range(1, n + 1) if not block_masks[j] >> (p - 1) & 1]
            x = outside[int(rng.integers(len(outside)))]
            y = int(rng.integers(1, n + 1))
            if x == y:
                continue
            images[x - 1], images[y - 1] = images[y - 1], images[x - 1]
            new_bad = failing(images)
            if len(new_bad) <= len(bad):
                bad = new_bad
            else:
                images[x - 1], images[y - 1] = images[y - 1], images[x - 1]
        if not bad:
            return Relabeling(Permutation(tuple(images)), attempt)
    return None


@dataclass(frozen=True)
class SaxlGraph:
    """Graph on ``{1..n}`` whose edges are the bases of size two."""

    n: int
    edges: frozenset[tuple[int, int]]

    def neighbours(self, v: int) -> list[int]:
        return sorted({b for a, b in self.edges if a == v} | {a for a, b in self.edges if b == v})

    def components(self) -> list[tuple[int, ...]]:
        parent = list(range(self.n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            parent[find(a)] = find(b)
        comps: dict[int, list[int]] = {}
        for v in range(1, self.n + 1):
            comps.setdefault(find(v), []).append(v)
        return sorted(tuple(c) for c in comps.values())

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def is_invariant_under(self, group: PermutationGroup) -> bool:
        """Whether every generator of ``group`` maps edges to edges."""
        for g in group.generators:
            for a, b in self.edges:
                x, y = sorted((g(a), g(b)))
                if (x, y) not in self.edges:
                    return False
        return True

    def is_vertex_transitive_via(self, group: PermutationGroup) -> bool:
        return group.is_transitive() and self.is_invariant_under(group)


def saxl_graph(group: PermutationGroup) -> SaxlGraph:
    """The Saxl graph of a group with base size 2."""
    b = group.base_size()
    if b != 2:
        raise ValueError(f"Saxl graph needs base size 2, {group.name or 'group'} has {b}")
    n = group.degree
    pairs = list(combinations(range(1, n + 1), 2))
    if n <= _subsets.MAX_VECTOR_DEGREE:
        masks = np.array([_subsets.to_mask(p) for p in pairs], dtype=np.int64)
        ok = group.are_bases(masks)
    else:
        ok = [group.is_base(p) for p in pairs]
    return SaxlGraph(n, frozenset(p for p, keep in zip(pairs, ok) if keep))


def matching_ubb(
    graph: SaxlGraph,
    required_size: int,
    group: PermutationGroup | None = None,
    name: str = "",
) -> Ubb:
    """UBB of ``required_size`` disjoint edges, hence strength ``required_size - 1``."""
    if required_size < 1:
        raise ValueError("required_size must be at least 1")
    if required_size > graph.n // 2:
        raise ValueError(f"required_size {required_size} exceeds floor(n/2) = {graph.n // 2}")
    matched = maximum_matching(graph.n, [(a - 1, b - 1) for a, b in graph.edges])
    if len(matched) < required_size:
        raise ValueError(
            f"maximum matching has {len(matched)} edges, fewer than the required {required_size}"
        )
    bases = tuple((u + 1, v + 1) for u, v in matched[:required_size])
    return Ubb(bases, required_size - 1, group, name)
