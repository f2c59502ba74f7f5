"""Twisted permutation codes built from several representations of one group.

A code is anchored at a distinguished permutation group ``G1``.  Component
``i`` of the codeword for ``g`` is ``alpha_i(g)`` written in list form, where
``alpha_i: G1 -> G_i`` is an isomorphism stored as a full element table.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .group import PermutationGroup, Unbounded, verify_permutational_isomorphism
from .perm import Permutation, Word, compose, inverse

__all__ = [
    "Codeword",
    "IsomorphismTable",
    "PointBijection",
    "TwistedCode",
    "correction_params",
    "delta_rep",
    "delta_tw",
    "encode",
    "repetition_strength_check",
]


@dataclass
class IsomorphismTable:
    """Isomorphism ``source -> target`` materialised on every element.

    ``map[i]`` is the target index of the image of source element ``i``.
    """

    source: PermutationGroup
    target: PermutationGroup
    generator_images: tuple[Permutation, ...]
    map: np.ndarray = field(repr=False)

    @classmethod
    def build(
        cls,
        source: PermutationGroup,
        target: PermutationGroup,
        generator_images: Sequence[Permutation],
    ) -> IsomorphismTable:
        images = tuple(generator_images)
        for img in images:
            if img not in target:
                raise ValueError(f"{img} is not an element of {target.name or 'the target group'}")
        rows = source.evaluate_homomorphism(images)
        if rows is None:
            raise ValueError("generator images do not extend to a homomorphism")
        idx = target.lookup_rows(rows)
        if source.order() != target.order() or len(np.unique(idx)) != len(idx):
            raise ValueError("homomorphism is not a bijection (representation not faithful?)")
        return cls(source, target, images, idx)

    @classmethod
    def identity(cls, group: PermutationGroup) -> IsomorphismTable:
        return cls(group, group, group.generators, np.arange(group.order()))

    @cached_property
    def inverse_map(self) -> np.ndarray:
        inv = np.empty_like(self.map)
        inv[self.map] = np.arange(len(self.map))
        return inv

    def __call__(self, g: Permutation) -> Permutation:
        i = self.source.index_of(g)
        if i is None:
            raise ValueError(f"{g} is not in the source group")
        return self.target.element(int(self.map[i]))

    def is_identity(self) -> bool:
        return self.source is self.target and bool((self.map == np.arange(len(self.map))).all())

    def spot_check(self, samples: int = 200, seed: int = 0) -> bool:
        """``map(xy) == map(x) map(y)`` on random pairs of elements."""
        rng = np.random.default_rng(seed)
        S, T = self.source, self.target
        N = S.order()
        for _ in range(samples):
            x, y = (int(v) for v in rng.integers(N, size=2))
            xy = S.index_of(compose(S.element(x), S.element(y)))
            lhs = T.element(int(self.map[xy]))
            rhs = compose(T.element(int(self.map[x])), T.element(int(self.map[y])))
            if lhs != rhs:
                return False
        return True


@dataclass(frozen=True)
class PointBijection:
    map: Permutation

    @classmethod
    def identity(cls, n: int) -> PointBijection:
        return cls(Permutation.identity(n))

    def __call__(self, x: int) -> int:
        return self.map(x)

    def inverse(self) -> PointBijection:
        return PointBijection(inverse(self.map))

    def is_identity(self) -> bool:
        return self.map.is_identity()


@dataclass(frozen=True)
class Codeword:
    components: tuple[Permutation, ...]
    word: Word

    def symbol_counts(self) -> Counter:
        return Counter(self.word.symbols)


class TwistedCode:
    """The code ``{[alpha_1(g) | ... | alpha_lam(g)] : g in G1}``.

    ``alphas[0]`` must be the identity of ``g1``.  ``psis`` default to the
    identity, which is right whenever every component group equals ``g1``
    as a set of permutations.  With ``check_permutational=True`` each
    ``psi_i`` is verified to carry ``g1`` onto ``G_i`` by conjugation, which
    is the condition under which bases transfer between components.
    """

    def __init__(
        self,
        g1: PermutationGroup,
        alphas: Sequence[IsomorphismTable],
        psis: Sequence[PointBijection] | None = None,
        name: str = "",
        check_permutational: bool = False,
    ):
        if not alphas:
            raise ValueError("need at least one component")
        if not alphas[0].is_identity() or alphas[0].source is not g1:
            raise ValueError("the first isomorphism must be the identity of g1")
        for a in alphas:
            if a.source is not g1:
                raise ValueError("every isomorphism must start at g1")
            if a.target.degree != g1.degree:
                raise ValueError("all component groups must have the same degree")
        self.g1 = g1
        self.alphas = tuple(alphas)
        self.psis = tuple(psis) if psis is not None else tuple(
            PointBijection.identity(g1.degree) for _ in alphas
        )
        if len(self.psis) != len(self.alphas):
            raise ValueError("need one point bijection per component")
        self.name = name or g1.name
        if check_permutational:
            for i, (a, psi) in enumerate(zip(self.alphas, self.psis), 1):
                if not self.psi_transfers_bases(i - 1):
                    raise ValueError(f"psi_{i} does not carry g1 onto component group {i}")

    def __repr__(self):
        return f"<TwistedCode {self.name} n={self.n} lambda={self.lam}>"

    @property
    def lam(self) -> int:
        return len(self.alphas)

    @property
    def n(self) -> int:
        return self.g1.degree

    @property
    def length(self) -> int:
        return self.lam * self.n

    def __len__(self) -> int:
        return self.g1.order()

    @property
    def groups(self) -> tuple[PermutationGroup, ...]:
        return tuple(a.target for a in self.alphas)

    def psi_transfers_bases(self, i: int) -> bool:
        """Whether ``(psi_i, conjugation by psi_i)`` is a permutational isomorphism
        from ``g1`` onto component group ``i`` (0-based)."""
        psi = self.psis[i].map
        pinv = inverse(psi)
        target = self.alphas[i].target
        phi = [compose(compose(pinv, g), psi) for g in self.g1.generators]
        if any(img not in target for img in phi):
            return False
        return verify_permutational_isomorphism(self.g1, target, phi, psi) and target.order() == self.g1.order()

    # -- encoding --------------------------------------------------------

    @cached_property
    def _component_rows(self) -> list[np.ndarray]:
        return [a.target.elements[a.map].astype(np.int64) + 1 for a in self.alphas]

    def encode_index(self, i: int) -> np.ndarray:
        """Codeword of element ``i`` of ``g1`` as a 1-based symbol array."""
        return np.concatenate([rows[i] for rows in self._component_rows])

    def encode(self, g: Permutation) -> Codeword:
        i = self.g1.index_of(g)
        if i is None:
            raise ValueError(f"{g} is not an element of {self.g1.name or 'G1'}")
        comps = tuple(a.target.element(int(a.map[i])) for a in self.alphas)
        return Codeword(comps, Word.concat(comps, self.n))

    # -- distances -------------------------------------------------------

    @cached_property
    def fix_matrix(self) -> np.ndarray:
        """``(lam, |G|)``: fixed points of ``alpha_i(x)`` for every ``x`` in ``g1``."""
        return np.stack([a.target.fix_counts()[a.map] for a in self.alphas])

    def distance_to_identity(self) -> np.ndarray:
        """Distance from every codeword to the identity codeword."""
        return (self.n - self.fix_matrix).sum(axis=0)

    def delta_tw(self) -> int:
        """Minimum distance: ``d(g, h)`` only depends on ``g h^-1``, so one scan suffices."""
        if self.g1.order() == 1:
            return Unbounded(self.length + 1)
        return int(self.distance_to_identity()[1:].min())

    def delta_rep(self) -> int:
        dists = [a.target.min_distance() for a in self.alphas]
        if self.g1.order() == 1:
            return Unbounded(self.length + 1)
        return self.lam * min(dists)

    def correction_params(self) -> tuple[int, int]:
        return correction_params(self.delta_tw(), self.lam)

    def r_tw(self) -> int:
        return self.correction_params()[0]

    def r_prime(self) -> int:
        return self.correction_params()[1]


def encode(code: TwistedCode, g: Permutation) -> Codeword:
    return code.encode(g)


def delta_tw(code: TwistedCode) -> int:
    return code.delta_tw()


def delta_rep(code: TwistedCode) -> int:
    return code.delta_rep()


def correction_params(delta: int, lam: int) -> tuple[int, int]:
    """``(r_tw, r')`` with ``r_tw = floor((delta - 1) / 2)`` and ``r' = floor(r_tw / lam)``."""
    if lam < 1:
        raise ValueError("lam must be at least 1")
    r_tw = (delta - 1) // 2
    return r_tw, r_tw // lam


def repetition_strength_check(d: int, lam: int) -> tuple[int, int]:
    """For a group of minimum distance ``d``: its own capability ``r`` and the
    UBB strength ``r'`` its ``lam``-fold repetition code asks for."""
    if d < 1 or lam < 1:
        raise ValueError("d and lam must be positive")
    r = (d - 1) // 2
    _, r_prime = correction_params(lam * d, lam)
    return r, r_prime
