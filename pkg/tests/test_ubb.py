import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from twistcode.fixtures import load_code, load_cover, load_group, load_ubb
from twistcode.gkp import build_gkp
from twistcode.group import PermutationGroup
from twistcode.perm import Permutation
from twistcode.ubb import (
    CoverNotBasesError,
    CoveringDesign,
    SaxlGraph,
    StrengthBudgetError,
    Ubb,
    matching_ubb,
    relabel_search,
    saxl_graph,
    ubb_from_cover,
    verify_strength,
)


def test_pgl27_ubb_strength_two(pgl27):
    ubb = load_ubb("pgl27")
    assert ubb.bases == ((1, 2, 3), (4, 5, 6), (2, 3, 7), (1, 7, 8))
    assert not ubb.non_bases(pgl27)
    res = verify_strength(ubb, n=8, strength=2)
    assert res.ok and res.certified and res.checked == 28


def test_pgl27_ubb_not_strength_three():
    res = verify_strength(load_ubb("pgl27"), n=8, strength=3)
    assert not res
    assert len(res.witness) == 3
    assert all(set(res.witness) & set(b) for b in load_ubb("pgl27").bases)


def test_m22_ubb_strength_seven():
    ubb = load_ubb("m22")
    assert len(ubb) == 22
    res = verify_strength(ubb, n=22, strength=7)
    assert res.ok and res.checked == 170544


def test_m22_ubb_without_last_row_fails():
    ubb = load_ubb("m22")
    cut = Ubb(ubb.bases[:-1], 7)
    res = verify_strength(cut, n=22, strength=7)
    assert not res
    assert all(set(res.witness) & set(b) for b in cut.bases)


def test_truncated_asl_ubb_fails(asl_ubb):
    cut = Ubb(asl_ubb.bases[:3], 2)
    res = verify_strength(cut, n=8, strength=2)
    assert not res
    assert all(set(res.witness) & set(b) for b in cut.bases)


def brute_strength(bases, n, r):
    return all(
        any(not set(c) & set(b) for b in bases) for c in itertools.combinations(range(1, n + 1), r)
    )


@given(
    st.lists(st.sets(st.integers(1, 9), min_size=1, max_size=4), min_size=1, max_size=6),
    st.integers(0, 4),
)
def test_verify_strength_matches_brute_force(rows, r):
    ubb = Ubb(tuple(tuple(sorted(b)) for b in rows), r)
    assert bool(verify_strength(ubb, n=9, strength=r)) == brute_strength(ubb.bases, 9, r)


def test_strength_budget(asl_ubb):
    with pytest.raises(StrengthBudgetError):
        verify_strength(asl_ubb, n=8, strength=4, budget=10)
    res = verify_strength(asl_ubb, n=8, strength=2, budget=10, sample=True)
    assert res.ok and not res.certified


def test_pgl27_cover_gives_ubb(pgl27):
    cover = load_cover("pgl27_8_5_2")
    assert cover.is_covering()
    ubb = ubb_from_cover(cover, pgl27)
    assert ubb.strength == 2
    assert verify_strength(ubb, n=8)


def test_m12_cover_gives_ubb():
    cover = load_cover("m12_12_7_3")
    assert len(cover.blocks) == 11
    ubb = ubb_from_cover(cover, load_group("m12"))
    assert verify_strength(ubb, n=12, strength=3)


def test_complement_duality(asl_ubb):
    cover = CoveringDesign.from_ubb(asl_ubb, 8)
    assert cover.block_size == 4
    assert cover.is_covering() == bool(verify_strength(asl_ubb, n=8, strength=2))
    assert sorted(cover.complements()) == sorted(asl_ubb.bases)


@given(st.permutations(range(1, 9)))
def test_covering_iff_uncovering(images):
    sigma = Permutation(tuple(images))
    ubb = load_ubb("pgl27").relabel(sigma)
    cover = CoveringDesign.from_ubb(ubb, 8)
    assert cover.is_covering() == bool(verify_strength(ubb, n=8, strength=2))


def test_scrambled_cover_rejected_then_relabelled():
    code = load_code("aff_s6")
    G = code.g1
    cover = load_cover("aff_s6_16_11_3")
    with pytest.raises(CoverNotBasesError) as err:
        ubb_from_cover(cover, G)
    assert not G.is_base(sorted(set(range(1, 17)) - set(err.value.block)))
    found = relabel_search(cover, G, attempts=50, seed=0)
    assert found is not None and found.attempt >= 1
    ubb = ubb_from_cover(cover.relabel(found.sigma), G)
    assert verify_strength(ubb, n=16, strength=3)


def test_relabel_valid_cover_is_identity(pgl27):
    found = relabel_search(load_cover("pgl27_8_5_2"), pgl27, attempts=0)
    assert found.attempt == 0 and found.sigma.is_identity()


def test_relabel_zero_attempts_fails():
    cover = load_cover("aff_s6_16_11_3")
    assert relabel_search(cover, load_code("aff_s6").g1, attempts=0) is None


def test_saxl_g22():
    G = build_gkp(2, 2).as_perm_group
    graph = saxl_graph(G)
    assert graph.n == 4
    assert graph.is_connected()
    assert graph.edges == frozenset(p for p in itertools.combinations(range(1, 5), 2) if G.is_base(p))


def test_saxl_g32_transitive():
    G = build_gkp(3, 2).as_perm_group
    graph = saxl_graph(G)
    assert graph.is_connected()
    assert graph.is_vertex_transitive_via(G)
    degrees = {len(graph.neighbours(v)) for v in range(1, 10)}
    assert len(degrees) == 1


def test_saxl_edges_are_exactly_the_base_pairs():
    G = build_gkp(3, 2).as_perm_group
    graph = saxl_graph(G)
    for a, b in itertools.combinations(range(1, 10), 2):
        assert ((a, b) in graph.edges) == (len(G.point_stabilizer((a, b))) == 1)


def test_saxl_needs_base_size_two(pgl27):
    with pytest.raises(ValueError):
        saxl_graph(pgl27)
    regular = PermutationGroup([Permutation((2, 3, 1))])
    with pytest.raises(ValueError):
        saxl_graph(regular)


def test_matching_single_edge():
    ubb = matching_ubb(SaxlGraph(2, frozenset({(1, 2)})), 1)
    assert ubb.bases == ((1, 2),)
    assert ubb.strength == 0


def test_matching_k6():
    graph = SaxlGraph(6, frozenset(itertools.combinations(range(1, 7), 2)))
    ubb = matching_ubb(graph, 3)
    assert sorted(p for b in ubb.bases for p in b) == list(range(1, 7))


def test_matching_ubb_g32():
    G = build_gkp(3, 2).as_perm_group
    ubb = matching_ubb(saxl_graph(G), 4, G)
    pts = [p for b in ubb.bases for p in b]
    assert len(ubb) == 4 and len(set(pts)) == 8
    assert not ubb.non_bases()
    assert verify_strength(ubb, n=9, strength=3)


def test_matching_too_large():
    graph = SaxlGraph(4, frozenset({(1, 2), (1, 3), (1, 4)}))
    with pytest.raises(ValueError):
        matching_ubb(graph, 2)


@given(st.integers(2, 9), st.data())
def test_disjoint_bases_shortcut_agrees(m, data):
    # m pairwise-disjoint rows: strength m - 1 holds, strength m fails
    n = 2 * m + data.draw(st.integers(0, 3))
    perm = data.draw(st.permutations(range(1, n + 1)))
    bases = tuple(tuple(sorted(perm[2 * i: 2 * i + 2])) for i in range(m))
    ubb = Ubb(bases, m - 1)
    assert verify_strength(ubb, n=n, strength=m - 1)
    assert not verify_strength(ubb, n=n, strength=m)


def test_matching_size_matches_networkx():
    rng = np.random.default_rng(5)
    for _ in range(50):
        n = int(rng.integers(4, 14))
        edges = [e for e in itertools.combinations(range(1, n + 1), 2) if rng.random() < 0.3]
        graph = SaxlGraph(n, frozenset(edges))
        ref = nx.Graph()
        ref.add_nodes_from(range(1, n + 1))
        ref.add_edges_from(edges)
        best = len(nx.max_weight_matching(ref, maxcardinality=True))
        if best:
            ubb = matching_ubb(graph, best)
            assert len(ubb) == best
        if best < n // 2:
            with pytest.raises(ValueError):
                matching_ubb(graph, best + 1)
