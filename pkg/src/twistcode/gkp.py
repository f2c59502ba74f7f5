"""The affine groups ``G_k(p) = F_p^k : <B_k>`` and their twisted codes.

``B_k`` is the lower unitriangular matrix with ones on the diagonal and
subdiagonal.  The group acts on the ``p^k`` row vectors ``(1, v)`` through
the block matrices ``A_{w,i} = [[1, w], [0, B_k^i]]``, so that
``(1, v) A_{w,i} = (1, w + v B_k^i)``.  Vectors ``v`` are numbered
``1..p^k`` in lexicographic order of their coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import comb

import numpy as np

from .automorphisms import Automorphism, representation_classes
from .group import PermutationGroup
from .perm import Permutation
from .twisted import IsomorphismTable, TwistedCode, correction_params
from .ubb import SaxlGraph, Ubb, matching_ubb, saxl_graph

__all__ = [
    "GkpGroup",
    "SaxlWitness",
    "TupleSearchError",
    "bk_matrix",
    "bk_power",
    "bk_order",
    "bk_power_iterated",
    "build_gkp",
    "canonical_base",
    "closed_form_ubb_size",
    "gkp_saxl_connected",
    "gkp_twisted_code",
    "gkp_ubb",
    "is_prime",
]

POINT_BUDGET = 4096


class TupleSearchError(RuntimeError):
    pass


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p**0.5) + 1))


def _check(p: int, k: int):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError("k must be at least 1")


def bk_matrix(p: int, k: int) -> np.ndarray:
    _check(p, k)
    return (np.eye(k, dtype=np.int64) + np.eye(k, k=-1, dtype=np.int64)) % p


def bk_power(p: int, k: int, i: int) -> np.ndarray:
    """``B_k^i`` from the closed form: entry ``(r, c)`` is ``C(i, r - c) mod p``.

    Valid for every ``i >= 0`` since ``B_k = I + N`` with ``N`` nilpotent.
    """
    _check(p, k)
    if i < 0:
        raise ValueError(f"exponent {i} is negative")
    out = np.zeros((k, k), dtype=np.int64)
    for r in range(k):
        for c in range(r + 1):
            out[r, c] = comb(i, r - c) % p
    return out


def bk_order(p: int, k: int) -> int:
    """Multiplicative order of ``B_k``: the least power of ``p`` that is ``>= k``.

    This equals ``p`` only when ``k <= p``.
    """
    _check(p, k)
    m = 1
    while m < k:
        m *= p
    return m


def bk_power_iterated(p: int, k: int, i: int) -> np.ndarray:
    """``B_k^i`` by repeated multiplication; the cross-check for :func:`bk_power`."""
    B = bk_matrix(p, k)
    out = np.eye(k, dtype=np.int64)
    for _ in range(i):
        out = out @ B % p
    return out


@dataclass
class GkpGroup:
    p: int
    k: int
    vectors: np.ndarray  # (p^k, k), lexicographic
    matrices: np.ndarray  # all A_{w,i}, 0 <= i < order of B_k
    as_perm_group: PermutationGroup

    @property
    def b_order(self) -> int:
        return len(self.matrices) // self.p**self.k

    @property
    def expected_order(self) -> int:
        """``p^(k+1)``, the order when ``B_k`` has order ``p``."""
        return self.p ** (self.k + 1)

    @property
    def order_anomaly(self) -> bool:
        """True when ``B_k`` has order above ``p`` (``k > p``), so ``|G| != p^(k+1)``."""
        return self.b_order != self.p

    @property
    def degree(self) -> int:
        return self.p**self.k

    def point(self, v) -> int:
        """1-based index of the point ``(1, v)``."""
        v = [int(x) % self.p for x in v]
        if len(v) != self.k:
            raise ValueError(f"vector must have {self.k} coordinates")
        idx = 0
        for x in v:
            idx = idx * self.p + x
        return idx + 1

    def vector(self, point: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.vectors[point - 1])

    def matrix_permutation(self, A: np.ndarray) -> Permutation:
        """Permutation of the points induced by right multiplication by ``A``."""
        rows = np.hstack([np.ones((self.degree, 1), dtype=np.int64), self.vectors])
        img = rows @ A % self.p
        if not (img[:, 0] == 1).all():
            raise ValueError("matrix does not preserve the affine points")
        codes = img[:, 1:] @ (self.p ** np.arange(self.k - 1, -1, -1))
        return Permutation(tuple(int(c) + 1 for c in codes))

    @cached_property
    def fixed_point_counts(self) -> np.ndarray:
        return self.as_perm_group.fix_counts()


def _affine(p: int, k: int, w, i: int) -> np.ndarray:
    A = np.zeros((k + 1, k + 1), dtype=np.int64)
    A[0, 0] = 1
    A[0, 1:] = w
    A[1:, 1:] = bk_power(p, k, i)
    return A


def build_gkp(p: int, k: int, point_budget: int = POINT_BUDGET) -> GkpGroup:
    """All matrices ``A_{w,i}`` and the permutation group they induce.

    ``i`` runs over ``0 .. ord(B_k) - 1``; see :func:`bk_order` for when this
    differs from ``0 .. p - 1``.
    """
    _check(p, k)
    if p**k > point_budget:
        raise ValueError(f"p^k = {p**k} points exceeds budget {point_budget}")
    vectors = np.array(list(itertools.product(range(p), repeat=k)), dtype=np.int64).reshape(-1, k)
    mats = np.array([_affine(p, k, w, i) for i in range(bk_order(p, k)) for w in vectors])
    # closure: every product lands back in the set
    keys = {m.tobytes() for m in mats}
    prods = np.einsum("aij,bjk->abik", mats, mats) % p
    if not all(m.tobytes() in keys for m in prods.reshape(-1, k + 1, k + 1)):  # pragma: no cover
        raise AssertionError("A_{w,i} matrices are not closed under multiplication")
    shell = GkpGroup(p, k, vectors, mats, None)  # type: ignore[arg-type]
    gens = [shell.matrix_permutation(_affine(p, k, np.eye(k, dtype=np.int64)[j], 0)) for j in range(k)]
    gens.append(shell.matrix_permutation(_affine(p, k, np.zeros(k, dtype=np.int64), 1)))
    shell.as_perm_group = PermutationGroup(gens, name=f"G{k}_{p}")
    return shell


def canonical_base(group: GkpGroup, j: int) -> tuple[int, int]:
    """The points ``(1, 0)`` and ``(1, e_j)`` for ``2 <= j <= k``."""
    if not 2 <= j <= group.k:
        raise ValueError(f"j must lie in 2..{group.k}, got {j}")
    e = [0] * group.k
    e[j - 1] = 1
    return group.point([0] * group.k), group.point(e)


@dataclass(frozen=True)
class SaxlWitness:
    graph: SaxlGraph
    parent: dict[int, int]  # BFS spanning tree rooted at (1, 0)
    checked_edges: int
    label_violations: tuple[tuple[int, int], ...] = ()


def gkp_saxl_connected(group: GkpGroup, samples: int = 200, seed: int = 0) -> SaxlWitness:
    """Connectivity of the Saxl graph, with a spanning tree as witness.

    Also tests on ``samples`` random ``(v, j, i)`` whether
    ``{(1, v), (1, v + e_j B^i)}`` is a base; pairs that are not are
    reported in ``label_violations`` (this happens when ``k > p``).
    """
    G = group.as_perm_group
    graph = saxl_graph(G)
    root = group.point([0] * group.k)
    parent = {root: root}
    frontier = [root]
    adj: dict[int, list[int]] = {v: [] for v in range(1, graph.n + 1)}
    for a, b in sorted(graph.edges):
        adj[a].append(b)
        adj[b].append(a)
    while frontier:
        nxt = []
        for v in frontier:
            for w in adj[v]:
                if w not in parent:
                    parent[w] = v
                    nxt.append(w)
        frontier = nxt
    if len(parent) != graph.n:
        raise AssertionError(f"Saxl graph is disconnected: components {graph.components()}")
    rng = np.random.default_rng(seed)
    p, k = group.p, group.k
    checked = 0
    bad = []
    if k >= 2:
        for _ in range(samples):
            v = rng.integers(p, size=k)
            j = int(rng.integers(2, k + 1))
            i = int(rng.integers(group.b_order))
            b = bk_power(p, k, i)[j - 1]
            pair = (group.point(v), group.point((v + b) % p))
            if not G.is_base(pair):
                bad.append(pair)
            checked += 1
    return SaxlWitness(graph, parent, checked, tuple(bad))


def closed_form_ubb_size(p: int, k: int) -> int:
    """``floor((p^k - 1) / 2)``; agrees with the definitional size for odd ``p``."""
    return (p**k - 1) // 2


def gkp_target_distance(p: int, k: int) -> int:
    return p ** (k + 1) - p


def gkp_ubb(group: GkpGroup) -> Ubb:
    """Matching UBB of size ``r' + 1``, with ``r'`` from the target distance."""
    p, k = group.p, group.k
    _, r_prime = correction_params(gkp_target_distance(p, k), p)
    graph = saxl_graph(group.as_perm_group)
    return matching_ubb(graph, r_prime + 1, group.as_perm_group, name=group.as_perm_group.name)


def gkp_twisted_code(group: GkpGroup, seed: int = 0, budget: int = 10**6) -> TwistedCode:
    """A ``lambda = p`` twisted code of minimum distance ``p^(k+1) - p``.

    Representations ``rho . alpha`` are taken one per equivalence class
    (automorphisms found by search), and tuples are explored depth first
    with the identity in component 1.  Partial fixed-point sums prune the
    search: the target allows at most ``p * n - target`` fixed points in
    total for every non-identity element.
    """
    G = group.as_perm_group
    p, n = group.p, group.degree
    target = gkp_target_distance(group.p, group.k)
    classes = representation_classes(G, seed=seed)
    fix = G.fix_counts().astype(np.int64)
    cols = [fix[c.table] for c in classes]
    limit = p * n - target
    visited = 0

    def dfs(chosen: list[int], total: np.ndarray, prune: bool, best: list):
        nonlocal visited
        visited += 1
        if visited > budget:
            raise TupleSearchError(
                f"budget of {budget} nodes exhausted; best delta_tw found {best[0]} (target {target})"
            )
        worst = int(total[1:].max())
        if len(chosen) == p:
            delta = p * n - worst
            if delta > best[0]:
                best[0], best[1] = delta, list(chosen)
            return delta >= target
        if prune and worst > limit:
            return False
        start = chosen[-1] if len(chosen) > 1 else 0
        for c in range(start, len(classes)):
            chosen.append(c)
            if dfs(chosen, total + cols[c], prune, best):
                return True
            chosen.pop()
        return False

    best: list = [-1, None]
    if not dfs([0], cols[0].copy(), True, best):
        # rerun without pruning to report how close the search got
        dfs([0], cols[0].copy(), False, best)
        raise TupleSearchError(f"no tuple reaches delta_tw = {target}; best found {best[0]}")
    alphas = [IsomorphismTable.identity(G)]
    for c in best[1][1:]:
        aut: Automorphism = classes[c]
        alphas.append(IsomorphismTable(G, G, aut.generator_images, aut.table))
    code = TwistedCode(G, alphas, name=f"Tw(G{group.k}_{p})")
    if code.delta_tw() != target:
        raise AssertionError("certified distance disagrees with the search")
    return code
