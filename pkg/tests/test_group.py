import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistcode.fixtures import load_group
from twistcode.group import (
    EnumerationBudgetError,
    NotABaseError,
    PermutationGroup,
    permutational_isomorphism_violations,
    verify_permutational_isomorphism,
)
from twistcode.perm import Permutation, compose, inverse

from conftest import cyc


def test_order_two_group():
    G = PermutationGroup([cyc("(1,2)", 2)])
    assert G.order() == 2
    assert G.element(0).is_identity()
    assert set(G) == {Permutation((1, 2)), Permutation((2, 1))}


@pytest.mark.parametrize("key,order", [("asl32", 1344), ("pgl27", 336), ("m12", 95040), ("psl2_11", 660)])
def test_fixture_orders(key, order):
    assert load_group(key).order() == order


def test_m22_order():
    assert load_group("m22").order() == 443520


def test_enumeration_is_deterministic():
    gens = load_group("asl32").generators
    a = PermutationGroup(gens).elements
    b = PermutationGroup(gens).elements
    assert (a == b).all()
    assert (a[0] == np.arange(8)).all()


def test_enumeration_budget():
    G = PermutationGroup(load_group("m12").generators, budget=1000)
    with pytest.raises(EnumerationBudgetError):
        G.order()


def test_min_distances(pgl27, s6):
    # sharply 3-transitive: at most 2 fixed points, so the distance is 8 - 2
    assert pgl27.min_distance() == 6
    assert s6.min_distance() == 2
    assert load_group("psl2_11").min_distance() == 8


def test_min_distance_brute_force(pgl27):
    E = [pgl27.element(i) for i in range(pgl27.order())]
    best = min(sum(a != b for a, b in zip(g.images, range(1, 9))) for g in E[1:])
    assert best == pgl27.min_distance()


def test_bases(pgl27):
    assert pgl27.is_base((1, 2, 3))
    assert not pgl27.is_base((1, 2))
    assert len(pgl27.point_stabilizer((1, 2))) == 6
    assert load_group("m12").is_base((1, 2, 3, 4, 5))


def test_every_triple_is_a_pgl27_base(pgl27):
    assert all(pgl27.is_base(t) for t in itertools.combinations(range(1, 9), 3))


@pytest.mark.parametrize("key,b", [("asl32", 4), ("m12", 5), ("pgl27", 3), ("psl2_11", 3)])
def test_base_size(key, b):
    assert load_group(key).base_size() == b


def test_base_size_s6(s6):
    assert s6.base_size() == 5


def test_is_base_matches_stabilizer_scan():
    G = load_group("asl32")
    for k in range(5):
        for pts in itertools.combinations(range(1, 9), k):
            assert G.is_base(pts) == (len(G.point_stabilizer(pts)) == 1)


def test_trivial_group_base_index():
    G = PermutationGroup([], degree=3)
    idx = G.base_index(())
    assert len(idx) == 1
    assert idx.lookup(()) == 0


def test_base_index_pgl27(pgl27):
    idx = pgl27.base_index((1, 2, 3))
    assert len(idx) == 336
    hits = {idx.lookup(t) for t in itertools.permutations(range(1, 9), 3)}
    assert hits == set(range(336))


def test_base_index_lookup_asl():
    G = load_group("asl32")
    idx = G.base_index((4, 5, 6, 7))
    g = G.element(idx.lookup((6, 7, 8, 2)))
    assert g.list_string() == "[4,3,5,6,7,8,2,1]"
    assert idx.lookup((6, 7, 8, 8)) is None


def test_base_index_rejects_non_base(pgl27):
    with pytest.raises(NotABaseError):
        pgl27.base_index((1, 2))


def test_permutational_identity(s6):
    assert verify_permutational_isomorphism(s6, s6, s6.generators, Permutation.identity(6))


def test_permutational_falsified(s6):
    psi = cyc("(1,2)", 6)
    bad = permutational_isomorphism_violations(s6, s6, s6.generators, psi)
    assert bad
    assert not verify_permutational_isomorphism(s6, s6, s6.generators, psi)


def test_twisted_asl_representation_is_not_permutationally_equivalent(asl):
    # the second representation shares its image with the first but no point
    # bijection intertwines them, so psi = id (or any psi) fails
    G = asl.g1
    images = asl.alphas[1].generator_images
    assert not verify_permutational_isomorphism(G, G, images, Permutation.identity(8))
    P = np.array(list(itertools.permutations(range(8))))
    ok = np.ones(len(P), dtype=bool)
    for g, h in zip(G.generators, images):
        ok &= (P[:, g.array] == h.array[P]).all(axis=1)
    assert not ok.any()


def test_twisted_asl_components_share_bases(asl):
    assert asl.psi_transfers_bases(1)
    for pts in itertools.combinations(range(1, 9), 4):
        assert asl.alphas[1].target.is_base(pts) == asl.g1.is_base(pts)


@settings(max_examples=25)
@given(st.permutations(range(1, 9)))
def test_conjugation_transfers_bases(images):
    G = load_group("asl32")
    sigma = Permutation(tuple(images))
    sinv = inverse(sigma)
    phi = [compose(compose(sinv, g), sigma) for g in G.generators]
    H = PermutationGroup(phi)
    assert verify_permutational_isomorphism(G, H, phi, sigma)
    for pts in [(1, 2, 3, 5), (4, 5, 6, 7), (1, 2, 4, 8)]:
        if G.is_base(pts):
            assert H.is_base([sigma(p) for p in pts])
