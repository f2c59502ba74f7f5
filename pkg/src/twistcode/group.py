"""Finite permutation groups given by generators.

Groups are enumerated in full by breadth-first closure; every query (fixed
points, bases, lookups by base images) then works on the element table.
Internally points are 0-based and elements are rows of an ``(order, n)``
integer array; the public surface speaks 1-based :class:`Permutation`.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import _subsets
from .perm import Permutation

__all__ = [
    "DEFAULT_BUDGET",
    "BaseIndex",
    "EnumerationBudgetError",
    "NotABaseError",
    "PermutationGroup",
    "Unbounded",
    "permutation_orders",
    "permutational_isomorphism_violations",
    "verify_permutational_isomorphism",
]

DEFAULT_BUDGET = 1 << 21


class EnumerationBudgetError(RuntimeError):
    """The group has more elements than the enumeration budget allows."""


class NotABaseError(ValueError):
    """A point set has non-trivial pointwise stabilizer."""


class Unbounded(int):
    """Minimum distance of a trivial group: ``n + 1`` standing in for infinity."""

    def __repr__(self):
        return f"Unbounded({int(self)})"


def _dtype_for(n: int):
    return np.uint8 if n <= 256 else np.uint16


def permutation_orders(arr: np.ndarray) -> np.ndarray:
    """Orders of the 0-based permutations stored as rows of ``arr``."""
    arr = np.asarray(arr, dtype=np.int64)
    if arr.ndim == 1:
        arr = arr[None, :]
    N, n = arr.shape
    rows = np.arange(N)[:, None]
    start = np.broadcast_to(np.arange(n), (N, n))
    cur = arr.copy()
    cycle_len = np.zeros((N, n), dtype=np.int64)
    for k in range(1, n + 1):
        hit = (cur == start) & (cycle_len == 0)
        cycle_len[hit] = k
        if (cycle_len > 0).all():
            break
        cur = arr[rows, cur]
    return np.lcm.reduce(cycle_len, axis=1)


@dataclass
class BaseIndex:
    """Lookup from the images of a base to the unique group element.

    ``lookup`` takes the 1-based image tuple and returns an element index
    into the owning group's enumeration, or ``None`` if no element of the
    group carries the base to those points.
    """

    base: tuple[int, ...]
    degree: int
    _codes: np.ndarray = field(repr=False)
    _order: np.ndarray = field(repr=False)

    @classmethod
    def build(cls, group: PermutationGroup, base: Sequence[int]) -> BaseIndex:
        base = tuple(base)
        n = group.degree
        cols = np.asarray(base, dtype=np.int64) - 1
        weights = n ** np.arange(len(base), dtype=np.int64)
        if n ** len(base) >= 1 << 62:
            raise ValueError("base too long for integer image codes")
        codes = group.elements[:, cols].astype(np.int64) @ weights
        order = np.argsort(codes, kind="stable")
        sorted_codes = codes[order]
        dup = np.nonzero(sorted_codes[1:] == sorted_codes[:-1])[0]
        if len(dup):
            a, b = order[dup[0]], order[dup[0] + 1]
            raise NotABaseError(
                f"{list(base)} is not a base for {group.name or 'group'}: elements "
                f"{group.element(int(a))} and {group.element(int(b))} agree on it"
            )
        return cls(base, n, sorted_codes, order)

    def __len__(self) -> int:
        return len(self._codes)

    def lookup(self, images: Sequence[int]) -> int | None:
        if len(images) != len(self.base):
            raise ValueError("image tuple length differs from base length")
        code = 0
        w = 1
        for img in images:
            if not 1 <= img <= self.degree:
                return None
            code += (img - 1) * w
            w *= self.degree
        pos = int(np.searchsorted(self._codes, code))
        if pos < len(self._codes) and self._codes[pos] == code:
            return int(self._order[pos])
        return None


class PermutationGroup:
    """Permutation group of degree ``n`` generated by ``generators``.

    Element enumeration happens on first use and is deterministic: BFS
    layers by word length, each layer sorted lexicographically by image
    list.  Element 0 is always the identity.
    """

    def __init__(
        self,
        generators: Iterable[Permutation],
        degree: int | None = None,
        name: str = "",
        budget: int = DEFAULT_BUDGET,
    ):
        gens = list(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree required when there are no generators")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise ValueError(f"generator {g} has degree {g.degree}, expected {degree}")
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(gens)
        self.name = name
        self.budget = budget
        self._lock = threading.RLock()
        self._enumerated = False
        self._cache: dict = {}
        self._base_indexes: dict[tuple[int, ...], BaseIndex] = {}

    def __repr__(self):
        label = self.name or "PermutationGroup"
        return f"<{label} degree={self.degree} gens={len(self.generators)}>"

    # -- enumeration -----------------------------------------------------

    def _ensure(self):
        if self._enumerated:
            return
        with self._lock:
            if not self._enumerated:
                self._enumerate()
                self._enumerated = True

    def _enumerate(self):
        n = self.degree
        dt = _dtype_for(n)
        gen_arrs = [g.array.astype(dt) for g in self.generators]
        ident = np.arange(n, dtype=dt)
        index = {ident.tobytes(): 0}
        chunks = [ident[None, :]]
        parents = [np.array([-1])]
        pgens = [np.array([-1])]
        layer_bounds = [0, 1]
        layer = ident[None, :]
        layer_start = 0
        count = 1
        while len(layer) and gen_arrs:
            prods = np.concatenate([g[layer] for g in gen_arrs])
            new_rows, new_src = [], []
            for f, row in enumerate(prods):
                key = row.tobytes()
                if key in index:
                    continue
                index[key] = -1
                new_rows.append(row)
                new_src.append(f)
                if count + len(new_rows) > self.budget:
                    raise EnumerationBudgetError(
                        f"{self.name or 'group'} exceeds enumeration budget of {self.budget} elements"
                    )
            if not new_rows:
                break
            rows = np.array(new_rows, dtype=dt)
            order = np.lexsort(rows.T[::-1])
            layer = rows[order]
            src = np.asarray(new_src)[order]
            L = len(prods) // len(gen_arrs)
            new_par = layer_start + src % L
            new_gen = src // L
            for row in layer:
                index[row.tobytes()] = count
                count += 1
            chunks.append(layer)
            parents.append(np.array(new_par))
            pgens.append(np.array(new_gen))
            layer_start = layer_bounds[-1]
            layer_bounds.append(layer_start + len(layer))
        self._elements = np.concatenate(chunks)
        self._elements.setflags(write=False)
        self._parent = np.concatenate(parents).astype(np.int64)
        self._parent_gen = np.concatenate(pgens).astype(np.int64)
        self._layer_bounds = layer_bounds
        self._index = index

    @property
    def elements(self) -> np.ndarray:
        """``(order, n)`` array of 0-based image lists."""
        self._ensure()
        return self._elements

    def order(self) -> int:
        self._ensure()
        return len(self._elements)

    def __len__(self) -> int:
        return self.order()

    def element(self, i: int) -> Permutation:
        return Permutation.from_array(self.elements[i])

    def __iter__(self) -> Iterator[Permutation]:
        for i in range(self.order()):
            yield self.element(i)

    def index_of(self, g: Permutation | np.ndarray) -> int | None:
        self._ensure()
        arr = g.array if isinstance(g, Permutation) else np.asarray(g)
        if len(arr) != self.degree:
            return None
        return self._index.get(arr.astype(self._elements.dtype).tobytes())

    def __contains__(self, g) -> bool:
        return self.index_of(g) is not None

    def lookup_rows(self, rows: np.ndarray) -> np.ndarray:
        """Element indices of many 0-based permutations (``-1`` if absent)."""
        self._ensure()
        rows = np.ascontiguousarray(rows, dtype=self._elements.dtype)
        get = self._index.get
        return np.fromiter((get(r.tobytes(), -1) for r in rows), dtype=np.int64, count=len(rows))

    def schreier_tree(self) -> tuple[np.ndarray, np.ndarray, list[int]]:
        """``(parent, generator, layer_bounds)``: element ``i`` equals
        ``parent[i]`` times generator ``generator[i]``."""
        self._ensure()
        return self._parent, self._parent_gen, self._layer_bounds

    def right_mult(self, j: int) -> np.ndarray:
        """Index table of ``e * generators[j]`` for every element ``e``."""
        key = ("rmul", j)
        if key not in self._cache:
            g = self.generators[j].array.astype(self.elements.dtype)
            self._cache[key] = self.lookup_rows(g[self.elements])
        return self._cache[key]

    def inverse_indices(self) -> np.ndarray:
        if "inv" not in self._cache:
            E = self.elements
            inv = np.empty_like(E)
            rows = np.arange(len(E))[:, None]
            inv[rows, E] = np.arange(self.degree, dtype=E.dtype)
            self._cache["inv"] = self.lookup_rows(inv)
        return self._cache["inv"]

    # -- homomorphisms ---------------------------------------------------

    def evaluate_homomorphism(self, gen_images: Sequence[Permutation | np.ndarray]) -> np.ndarray | None:
        """Extend generator images to every element along the Schreier tree.

        Returns the ``(order, m)`` array of 0-based images, or ``None`` when
        the generator assignment does not define a homomorphism.
        """
        arrs = [g.array if isinstance(g, Permutation) else np.asarray(g) for g in gen_images]
        if len(arrs) != len(self.generators):
            raise ValueError("need one image per generator")
        parent, pgen, bounds = self.schreier_tree()
        m = len(arrs[0]) if arrs else self.degree
        dt = _dtype_for(m)
        arrs = [a.astype(dt) for a in arrs]
        out = np.empty((self.order(), m), dtype=dt)
        out[0] = np.arange(m, dtype=dt)
        for lo, hi in zip(bounds[1:-1], bounds[2:]):
            par = parent[lo:hi]
            gj = pgen[lo:hi]
            for j, a in enumerate(arrs):
                sel = np.nonzero(gj == j)[0]
                if len(sel):
                    out[lo + sel] = a[out[par[sel]]]
        for j, a in enumerate(arrs):
            if not np.array_equal(out[self.right_mult(j)], a[out]):
                return None
        return out

    # -- point actions ---------------------------------------------------

    def orbits(self) -> list[tuple[int, ...]]:
        parent = list(range(self.degree + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.generators:
            for x in range(1, self.degree + 1):
                a, b = find(x), find(g(x))
                if a != b:
                    parent[a] = b
        groups: dict[int, list[int]] = {}
        for x in range(1, self.degree + 1):
            groups.setdefault(find(x), []).append(x)
        return sorted(tuple(v) for v in groups.values())

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def fix_counts(self) -> np.ndarray:
        if "fix" not in self._cache:
            E = self.elements
            self._cache["fix"] = (E == np.arange(self.degree, dtype=E.dtype)).sum(axis=1)
        return self._cache["fix"]

    def element_orders(self) -> np.ndarray:
        if "orders" not in self._cache:
            self._cache["orders"] = permutation_orders(self.elements)
        return self._cache["orders"]

    def min_distance(self) -> int:
        """``n`` minus the largest fixed-point count of a non-identity element."""
        fix = self.fix_counts()
        if len(fix) == 1:
            return Unbounded(self.degree + 1)
        return int(self.degree - fix[1:].max())

    def point_stabilizer(self, points: Iterable[int]) -> np.ndarray:
        """Indices of elements fixing every point in ``points``."""
        cols = np.asarray(list(points), dtype=np.int64) - 1
        E = self.elements
        if len(cols) == 0:
            return np.arange(len(E))
        return np.nonzero((E[:, cols] == cols.astype(E.dtype)).all(axis=1))[0]

    # -- bases -----------------------------------------------------------

    def maximal_fixed_sets(self) -> list[int]:
        """Inclusion-maximal fixed-point sets (as masks) of non-identity elements.

        A point set is a base exactly when no mask here contains it.
        """
        if "maxfix" not in self._cache:
            E = self.elements
            fixmat = E[1:] == np.arange(self.degree, dtype=E.dtype)
            if len(fixmat) == 0:
                self._cache["maxfix"] = []
                return []
            if self.degree <= _subsets.MAX_VECTOR_DEGREE:
                weights = np.int64(1) << np.arange(self.degree, dtype=np.int64)
                masks = [int(m) for m in np.unique(fixmat @ weights)]
            else:
                packed = np.packbits(fixmat, axis=1, bitorder="little")
                masks = list({int.from_bytes(row.tobytes(), "little") for row in packed})
            masks.sort(key=lambda m: -_subsets.popcount(m))
            kept: list[int] = []
            if self.degree <= _subsets.MAX_VECTOR_DEGREE:
                buf = np.zeros(len(masks), dtype=np.int64)
                for m in masks:
                    if not (buf[:len(kept)] & m == m).any():
                        buf[len(kept)] = m
                        kept.append(m)
            else:
                for m in masks:
                    if not any(m & k == m for k in kept):
                        kept.append(m)
            self._cache["maxfix"] = kept
        return self._cache["maxfix"]

    def _maxfix_array(self) -> np.ndarray:
        if "maxfix_arr" not in self._cache:
            self._cache["maxfix_arr"] = np.array(self.maximal_fixed_sets(), dtype=np.int64)
        return self._cache["maxfix_arr"]

    def _check_points(self, points: Iterable[int]) -> tuple[int, ...]:
        pts = tuple(int(p) for p in points)
        for p in pts:
            if not 1 <= p <= self.degree:
                raise ValueError(f"point {p} outside 1..{self.degree}")
        return pts

    def is_base(self, points: Iterable[int]) -> bool:
        """True iff the pointwise stabilizer of ``points`` is trivial."""
        mask = _subsets.to_mask(self._check_points(points))
        return not any(m & mask == mask for m in self.maximal_fixed_sets())

    def are_bases(self, masks: np.ndarray) -> np.ndarray:
        """Vectorised :meth:`is_base` over int64 point masks (``n <= 63``)."""
        return ~_subsets.contains_any(self._maxfix_array(), np.asarray(masks, dtype=np.int64))

    def _any_base_of_size(self, k: int) -> bool:
        if self.degree <= _subsets.MAX_VECTOR_DEGREE:
            return bool(self.are_bases(_subsets.colex_masks(self.degree, k)).any())
        return any(self.is_base(c) for c in combinations(range(1, self.degree + 1), k))

    def base_size(self, samples: int = 200, seed: int = 0) -> int:
        """Smallest size of a base.

        Random subsets are sampled at increasing sizes; at the first size
        with a hit, every subset one smaller is checked exhaustively (and
        the search steps down while that check still finds bases).
        """
        if "base_size" in self._cache:
            return self._cache["base_size"]
        rng = np.random.default_rng(seed)
        n = self.degree
        k = 0
        while k <= n:
            if k == 0 and self.is_base(()):
                break
            hit = any(
                self.is_base(rng.choice(np.arange(1, n + 1), size=k, replace=False))
                for _ in range(samples)
            ) if k else False
            if hit:
                while k > 0 and self._any_base_of_size(k - 1):
                    k -= 1
                break
            k += 1
        self._cache["base_size"] = k
        return k

    def base_index(self, base: Sequence[int]) -> BaseIndex:
        """Cached :class:`BaseIndex` for ``base``; raises :class:`NotABaseError`."""
        key = self._check_points(base)
        idx = self._base_indexes.get(key)
        if idx is None:
            with self._lock:
                idx = self._base_indexes.get(key)
                if idx is None:
                    idx = BaseIndex.build(self, key)
                    self._base_indexes[key] = idx
        return idx

    # -- classes and subgroups --------------------------------------------

    def conjugacy_labels(self) -> np.ndarray:
        """Conjugacy class label of every element (labels ordered by first element)."""
        if "classes" not in self._cache:
            E = self.elements
            N = len(E)
            src, dst = [], []
            for g in self.generators:
                ga = g.array.astype(E.dtype)
                ginv = np.argsort(ga).astype(E.dtype)
                conj = ga[E[:, ginv]]  # g^-1 e g
                src.append(np.arange(N))
                dst.append(self.lookup_rows(conj))
            if src:
                src_a, dst_a = np.concatenate(src), np.concatenate(dst)
                graph = coo_matrix((np.ones(len(src_a)), (src_a, dst_a)), shape=(N, N))
                _, labels = connected_components(graph, directed=False)
            else:
                labels = np.zeros(N, dtype=np.int64)
            self._cache["classes"] = _relabel_by_first(labels)
        return self._cache["classes"]

    def subgroup_closure(self, indices: Iterable[int]) -> np.ndarray:
        """Sorted element indices of the subgroup generated by ``indices``."""
        E = self.elements
        gens = [E[i] for i in indices]
        seen = {0}
        frontier = [0]
        while frontier:
            rows = E[frontier]
            nxt = []
            for g in gens:
                for idx in self.lookup_rows(g[rows]):
                    if idx not in seen:
                        seen.add(int(idx))
                        nxt.append(int(idx))
            frontier = nxt
        return np.array(sorted(seen))

    def coset_action(self, subgroup: np.ndarray) -> list[Permutation]:
        """Generators acting on the right cosets of ``subgroup`` (given by indices)."""
        E = self.elements
        H = E[np.asarray(subgroup)]
        label = -np.ones(len(E), dtype=np.int64)
        reps = []
        for e in range(len(E)):
            if label[e] >= 0:
                continue
            members = self.lookup_rows(E[e][H])  # h then e
            label[members] = len(reps)
            reps.append(e)
        out = []
        for j in range(len(self.generators)):
            rm = self.right_mult(j)
            out.append(Permutation(tuple(int(label[rm[r]]) + 1 for r in reps)))
        return out


def _relabel_by_first(labels: np.ndarray) -> np.ndarray:
    mapping: dict[int, int] = {}
    out = np.empty(len(labels), dtype=np.int64)
    for i, lab in enumerate(labels.tolist()):
        if lab not in mapping:
            mapping[lab] = len(mapping)
        out[i] = mapping[lab]
    return out


def _gen_images(phi) -> list[Permutation]:
    return list(getattr(phi, "generator_images", phi))


def permutational_isomorphism_violations(
    g1: PermutationGroup, g2: PermutationGroup, phi, psi: Permutation
) -> list[tuple[int, int]]:
    """Pairs ``(generator number, point)`` where ``psi(x^g) != psi(x)^(g^phi)``.

    ``phi`` is either a sequence of images of ``g1.generators`` or an object
    with a ``generator_images`` attribute.  Generator numbers are 1-based.
    """
    images = _gen_images(phi)
    if len(images) != len(g1.generators):
        raise ValueError("phi must give one image per generator of g1")
    if psi.degree != g1.degree or g1.degree != g2.degree:
        raise ValueError("degree mismatch")
    for img in images:
        if img not in g2:
            raise ValueError(f"phi image {img} is not an element of {g2.name or 'g2'}")
    bad = []
    for j, (g, gphi) in enumerate(zip(g1.generators, images), 1):
        for x in range(1, g1.degree + 1):
            if psi(g(x)) != gphi(psi(x)):
                bad.append((j, x))
    return bad


def verify_permutational_isomorphism(
    g1: PermutationGroup, g2: PermutationGroup, phi, psi: Permutation
) -> bool:
    """Check ``psi(x^g) = psi(x)^(g^phi)`` on every generator and point."""
    return not permutational_isomorphism_violations(g1, g2, phi, psi)
