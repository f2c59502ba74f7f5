"""Automorphisms of permutation groups by generator-image backtracking.

Every faithful representation of ``G`` whose image is ``G`` itself is
``rho . alpha`` for an automorphism ``alpha``.  Searching automorphisms up
to inner ones therefore reaches every such representation class, which is
what twisted codes need.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .group import PermutationGroup, permutation_orders
from .perm import Permutation

__all__ = [
    "Automorphism",
    "find_automorphisms",
    "generating_pair",
    "is_inner",
    "representation_classes",
    "representation_key",
]


@dataclass
class Automorphism:
    """An automorphism given by the images of ``group.generators``."""

    group: PermutationGroup
    generator_images: tuple[Permutation, ...]
    _table: np.ndarray | None = field(default=None, repr=False)

    @property
    def table(self) -> np.ndarray:
        """``table[i]`` is the index of the image of element ``i``."""
        if self._table is None:
            rows = self.group.evaluate_homomorphism(self.generator_images)
            if rows is None:
                raise ValueError("generator images do not define a homomorphism")
            idx = self.group.lookup_rows(rows)
            if (idx < 0).any() or len(np.unique(idx)) != len(idx):
                raise ValueError("generator images do not define an automorphism")
            self._table = idx
        return self._table

    def is_identity(self) -> bool:
        return all(a == b for a, b in zip(self.generator_images, self.group.generators))


def generating_pair(group: PermutationGroup, seed: int = 0, tries: int = 200):
    """Two elements generating ``group``, or ``None`` if random search fails."""
    rng = np.random.default_rng(seed)
    N = group.order()
    if N == 1:
        return None
    orders = group.element_orders()
    # prefer high-order elements: they generate more often
    pool = np.nonzero(orders >= np.sort(orders)[N // 2])[0]
    for _ in range(tries):
        a, b = (int(x) for x in rng.choice(pool, size=2))
        if len(group.subgroup_closure([a, b])) == N:
            return group.element(a), group.element(b)
    return None


def _words(Y1: np.ndarray, Y: np.ndarray) -> list[np.ndarray]:
    """Short words in (y1, y2) for every candidate row of ``Y`` (left factor first)."""
    r = np.arange(len(Y))[:, None]
    Yinv = np.argsort(Y, axis=1)
    Y1inv = np.argsort(Y1)
    Ysq = Y[r, Y]
    ab = Y[:, Y1]
    comm = Yinv[r, Y1inv[ab]]
    ab_abb = Y[r, Y[r, Y1[ab]]]
    return [Y, ab, Ysq[:, Y1], Y[:, Y1[Y1]], Yinv[:, Y1], comm, ab_abb]


def find_automorphisms(group: PermutationGroup, seed: int = 0) -> list[Automorphism]:
    """Automorphisms of ``group``, one or more per coset of the inner ones.

    A generating pair ``(a, b)`` is fixed; ``a`` is sent to a representative
    of each conjugacy class of matching order and ``b`` to every element
    passing a battery of word-order tests, and each candidate is then
    checked for being a bijective homomorphism on the whole group.
    """
    if group.order() == 1:
        return [Automorphism(group, group.generators)]
    pair = generating_pair(group, seed=seed)
    if pair is None:
        raise RuntimeError(f"no generating pair found for {group.name or 'group'}")
    helper = PermutationGroup(pair, name=f"{group.name}<a,b>", budget=group.budget)
    E = helper.elements.astype(np.int64)
    orders = helper.element_orders()
    labels = helper.conjugacy_labels()
    a, b = (p.array for p in pair)
    target = [int(permutation_orders(w)[0]) for w in _words(a, b[None, :])]
    reps = [int(np.nonzero(labels == c)[0][0]) for c in np.unique(labels)]
    orig = [helper.index_of(g) for g in group.generators]
    ident = np.arange(group.degree)
    found = []
    order_a = int(permutation_orders(a)[0])
    for c in reps:
        if orders[c] != order_a:
            continue
        Y1 = E[c]
        cand = np.nonzero(orders == target[0])[0]
        for w_idx in range(1, len(target)):
            if not len(cand):
                break
            words = _words(Y1, E[cand])
            cand = cand[permutation_orders(words[w_idx]) == target[w_idx]]
        for y2 in cand:
            rows = helper.evaluate_homomorphism([Y1, E[y2]])
            if rows is None:
                continue
            if (rows[1:] == ident).all(axis=1).any():
                continue
            images = tuple(Permutation.from_array(rows[i]) for i in orig)
            found.append(Automorphism(group, images))
    return found


def is_inner(group: PermutationGroup, generator_images) -> bool:
    """Whether some element ``h`` conjugates every generator onto its image."""
    E = group.elements.astype(np.int64)
    Einv = np.argsort(E, axis=1)
    r = np.arange(len(E))[:, None]
    ok = np.ones(len(E), dtype=bool)
    for x, y in zip(group.generators, generator_images):
        conj = E[r, x.array[Einv]]  # h^-1 x h
        ok &= (conj == y.array).all(axis=1)
        if not ok.any():
            return False
    return bool(ok.any())


def representation_key(group: PermutationGroup, table: np.ndarray) -> frozenset:
    """Canonical key of the representation ``rho . alpha`` up to equivalence.

    Two transitive representations are equivalent exactly when their point
    stabilizers form the same conjugacy class of subgroups, so the key is
    the set of preimages of all point stabilizers.
    """
    inv = np.empty_like(table)
    inv[table] = np.arange(len(table))
    E = group.elements
    key = set()
    for y in range(group.degree):
        stab = np.nonzero(E[:, y] == y)[0]
        key.add(frozenset(inv[stab].tolist()))
    return frozenset(key)


def representation_classes(group: PermutationGroup, automorphisms=None, seed: int = 0) -> list[Automorphism]:
    """One automorphism per inequivalent representation, identity first."""
    if automorphisms is None:
        automorphisms = find_automorphisms(group, seed=seed)
    ident = Automorphism(group, group.generators)
    keys = {representation_key(group, ident.table)}
    out = [ident]
    for aut in automorphisms:
        k = representation_key(group, aut.table)
        if k not in keys:
            keys.add(k)
            out.append(aut)
    return out
