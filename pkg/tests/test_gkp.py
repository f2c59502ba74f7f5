import numpy as np
import pytest

from twistcode.gkp import (
    TupleSearchError,
    bk_matrix,
    bk_order,
    bk_power,
    bk_power_iterated,
    build_gkp,
    canonical_base,
    closed_form_ubb_size,
    gkp_saxl_connected,
    gkp_twisted_code,
    gkp_ubb,
    is_prime,
)
from twistcode.twisted import IsomorphismTable, TwistedCode
from twistcode.ubb import verify_strength

INSTANCES = [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2)]


def test_is_prime():
    assert [q for q in range(20) if is_prime(q)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_bk_power_zero_is_identity():
    assert (bk_power(3, 4, 0) == np.eye(4)).all()


def test_bk_power_example():
    assert bk_power(3, 3, 2).tolist() == [[1, 0, 0], [2, 1, 0], [1, 2, 1]]


@pytest.mark.parametrize("p,k", INSTANCES + [(7, 3), (2, 5)])
def test_bk_power_closed_form_matches_product(p, k):
    for i in range(max(p, bk_order(p, k)) + 1):
        assert (bk_power(p, k, i) == bk_power_iterated(p, k, i)).all()


@pytest.mark.parametrize("p,k", [(2, 2), (3, 2), (3, 3), (5, 2), (5, 4)])
def test_bk_has_order_p_when_k_at_most_p(p, k):
    B = bk_matrix(p, k)
    assert bk_order(p, k) == p
    assert (np.linalg.matrix_power(B, p) % p == np.eye(k)).all()


def test_bk_order_exceeds_p_when_k_exceeds_p():
    B = bk_matrix(2, 3)
    assert not (B @ B % 2 == np.eye(3)).all()
    assert bk_order(2, 3) == 4
    assert (bk_power_iterated(2, 3, 4) == np.eye(3)).all()


def test_bad_parameters():
    with pytest.raises(ValueError):
        build_gkp(4, 2)
    with pytest.raises(ValueError):
        build_gkp(2, 13)


@pytest.mark.parametrize("p,k", INSTANCES)
def test_order_and_degree(p, k):
    G = build_gkp(p, k)
    assert G.degree == p**k
    assert G.as_perm_group.order() == p**k * bk_order(p, k)
    assert G.as_perm_group.is_transitive()
    assert G.order_anomaly == (k > p)


@pytest.mark.parametrize("p,k", [(2, 2), (3, 2), (3, 3), (5, 2)])
def test_order_p_to_k_plus_one(p, k):
    assert build_gkp(p, k).as_perm_group.order() == p ** (k + 1)


@pytest.mark.parametrize("p,k", [(2, 2), (3, 2), (3, 3), (5, 2)])
def test_min_distance(p, k):
    assert build_gkp(p, k).as_perm_group.min_distance() == p**k - p


def test_g23_min_distance():
    # k > p: elements of order 4 fix fewer points but B^2 has a larger fixed space
    assert build_gkp(2, 3).as_perm_group.min_distance() == 4


def test_point_numbering():
    G = build_gkp(3, 2)
    assert G.point([0, 0]) == 1
    assert G.point([0, 1]) == 2
    assert G.point([2, 2]) == 9
    assert all(G.point(G.vector(x)) == x for x in range(1, 10))


@pytest.mark.parametrize("p,k", [(2, 2), (3, 2), (3, 3), (5, 2)])
def test_canonical_bases(p, k):
    G = build_gkp(p, k)
    for j in range(2, k + 1):
        assert G.as_perm_group.is_base(canonical_base(G, j))
    assert G.as_perm_group.base_size() == 2


def test_g23_e2_pair_is_not_a_base():
    G = build_gkp(2, 3)
    assert not G.as_perm_group.is_base(canonical_base(G, 2))
    assert G.as_perm_group.is_base(canonical_base(G, 3))
    assert G.as_perm_group.base_size() == 2


def test_canonical_base_needs_j_at_least_two():
    G = build_gkp(2, 3)
    with pytest.raises(ValueError):
        canonical_base(G, 1)
    # the e_1 pair really is not a base
    e1 = (G.point([0, 0, 0]), G.point([1, 0, 0]))
    assert not G.as_perm_group.is_base(e1)


@pytest.mark.parametrize("p,k", INSTANCES)
def test_no_single_point_base(p, k):
    G = build_gkp(p, k).as_perm_group
    assert all(len(G.point_stabilizer([x])) > 1 for x in range(1, G.degree + 1))


@pytest.mark.parametrize("p,k", INSTANCES)
def test_saxl_connected(p, k):
    G = build_gkp(p, k)
    w = gkp_saxl_connected(G)
    assert len(w.parent) == G.degree
    for child, par in w.parent.items():
        if child != par:
            assert G.as_perm_group.is_base((child, par))
    assert w.graph.is_vertex_transitive_via(G.as_perm_group)


@pytest.mark.parametrize("p,k", [(3, 2), (3, 3), (5, 2)])
def test_saxl_edge_labels(p, k):
    G = build_gkp(p, k)
    assert gkp_saxl_connected(G).label_violations == ()
    for v in G.vectors:
        for j in range(2, k + 1):
            e = np.eye(k, dtype=np.int64)[j - 1]
            assert G.as_perm_group.is_base((G.point(v), G.point((v + e) % p)))


def test_saxl_edge_labels_fail_when_k_exceeds_p():
    assert gkp_saxl_connected(build_gkp(2, 3)).label_violations


@pytest.mark.parametrize("p,k,size", [(2, 2, 2), (3, 2, 4), (5, 2, 12), (2, 3, 4), (3, 3, 13)])
def test_gkp_ubb(p, k, size):
    G = build_gkp(p, k)
    ubb = gkp_ubb(G)
    assert len(ubb) == size
    pts = [x for b in ubb.bases for x in b]
    assert len(pts) == len(set(pts))
    assert not ubb.non_bases()
    if p % 2:
        assert size == closed_form_ubb_size(p, k)


def test_gkp_ubb_strength_exhaustive():
    for p, k in [(3, 2), (5, 2), (2, 3)]:
        ubb = gkp_ubb(build_gkp(p, k))
        assert verify_strength(ubb, n=p**k, strength=len(ubb) - 1)


@pytest.mark.parametrize("p,k,delta,rep", [(2, 2, 6, 4), (3, 2, 24, 18)])
def test_twisted_code(p, k, delta, rep):
    code = gkp_twisted_code(build_gkp(p, k))
    assert code.lam == p
    assert code.length == p ** (k + 1)
    assert code.delta_tw() == delta
    assert code.delta_rep() == rep
    assert code.delta_tw() > p ** (k + 1) - p**2


def test_twisted_code_g32_parameters():
    code = gkp_twisted_code(build_gkp(3, 2))
    assert code.correction_params() == (11, 3)


@pytest.mark.parametrize("p,k", [(2, 2), (3, 2), (5, 2)])
def test_degenerate_tuple_is_repetition(p, k):
    G = build_gkp(p, k).as_perm_group
    code = TwistedCode(G, [IsomorphismTable.identity(G)] * p)
    assert code.delta_tw() == p ** (k + 1) - p**2


def test_g33_target_unreachable():
    # a single representation class leaves only the repetition code
    with pytest.raises(TupleSearchError, match="best found 72"):
        gkp_twisted_code(build_gkp(3, 3))


def test_g23_target_unreachable():
    with pytest.raises(TupleSearchError, match="best found 12"):
        gkp_twisted_code(build_gkp(2, 3))


def test_search_budget_fails_loudly():
    with pytest.raises(TupleSearchError, match="budget"):
        gkp_twisted_code(build_gkp(3, 2), budget=1)
