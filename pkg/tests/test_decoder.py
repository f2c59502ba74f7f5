import itertools

import numpy as np
import pytest

from twistcode.decoder import DecoderState, decode, guarantee_check
from twistcode.fixtures import data_path, load_ubb
from twistcode.group import PermutationGroup
from twistcode.perm import Permutation, Word
from twistcode.twisted import IsomorphismTable, TwistedCode
from twistcode.ubb import Ubb

from conftest import cyc

RECEIVED = [4, 7, 1, 6, 7, 8, 2, 5, 4, 4, 6, 1, 8, 3, 5, 2]


@pytest.fixture(scope="module")
def state(asl, asl_ubb):
    s = DecoderState(asl, asl_ubb)
    s.warm()
    return s


def test_trace_replay(state):
    res = decode(state, RECEIVED)
    assert res.success
    assert res.permutation == cyc("(1,4,6,8,5,3)(2,7)", 8)
    assert res.codeword == (4, 7, 1, 6, 3, 8, 2, 5, 7, 4, 6, 1, 8, 3, 5, 2)
    assert [a.action for a in res.attempts] == ["skip-repeat", "skip-repeat", "reject", "accept"]
    assert [a.distance for a in res.attempts] == [None, None, 11, 2]
    assert res.log() == data_path("asl32_trace.log").read_text()


def test_trace_is_deterministic(state):
    assert decode(state, RECEIVED).log() == decode(state, Word(tuple(RECEIVED), 8)).log()


def test_zero_errors_single_attempt(state, asl):
    for i in range(0, asl.g1.order(), 50):
        res = decode(state, asl.encode_index(i))
        assert res.success and res.element == i
        assert len(res.attempts) == 1
        assert res.attempts[0].log_line() == "base=1 comp=1 action=accept d=0"


def corruptions(word, positions, n):
    for pos in itertools.combinations(range(len(word)), positions):
        for shifts in itertools.product(range(1, n), repeat=positions):
            w = word.copy()
            for p, s in zip(pos, shifts):
                w[p] = (w[p] - 1 + s) % n + 1
            yield w


@pytest.mark.parametrize("g", [0, 1, 517, 1343])
def test_exhaustive_up_to_two_errors(state, asl, g):
    sent = asl.encode_index(g)
    for e in (1, 2):
        for w in corruptions(sent, e, 8):
            res = decode(state, w)
            assert res.success and res.element == g
            assert len(res.attempts) <= state.max_attempts


def test_exhaustive_up_to_two_errors_more_elements(state, asl):
    rng = np.random.default_rng(9)
    for g in rng.choice(asl.g1.order(), size=24, replace=False):
        sent = asl.encode_index(int(g))
        for w in corruptions(sent, 2, 8):
            res = decode(state, w)
            assert res.success and res.element == g


def test_sampled_three_to_five_errors(state, asl):
    rng = np.random.default_rng(4)
    for _ in range(3000):
        g = int(rng.integers(asl.g1.order()))
        e = int(rng.integers(3, 6))
        w = asl.encode_index(g).copy()
        pos = rng.choice(16, size=e, replace=False)
        w[pos] = (w[pos] - 1 + rng.integers(1, 8, size=e)) % 8 + 1
        res = decode(state, w)
        assert res.success and res.element == g
        assert int(np.count_nonzero(np.asarray(res.codeword) != w)) <= state.r_tw


def test_adversarial_failure(state, asl):
    # every UBB row meets {1, 2, 4}; copying symbols so each row sees a repeat
    # defeats all twelve attempts with r_tw + 1 errors
    g = asl.g1.index_of(cyc("(1,4,6,8,5,3)(2,7)", 8))
    w = asl.encode_index(g).copy()
    for off in (0, 8):
        w[off + 0] = w[off + 4]
        w[off + 3] = w[off + 4]
        w[off + 1] = w[off + 2]
    assert int(np.count_nonzero(w != asl.encode_index(g))) == 6
    res = decode(state, w)
    assert not res.success
    assert res.element is None and res.codeword is None
    assert len(res.attempts) == state.max_attempts == 12
    assert {a.action for a in res.attempts} == {"skip-repeat"}


def test_heavy_corruption_never_miscorrects(state, asl):
    rng = np.random.default_rng(8)
    for _ in range(500):
        w = rng.integers(1, 9, size=16)
        res = decode(state, w)
        assert len(res.attempts) <= state.max_attempts
        if res.success:
            assert int(np.count_nonzero(np.asarray(res.codeword) != w)) <= state.r_tw


def test_malformed_words(state):
    with pytest.raises(ValueError):
        decode(state, RECEIVED[:-1])
    with pytest.raises(ValueError):
        decode(state, RECEIVED[:-1] + [9])
    with pytest.raises(ValueError):
        decode(state, Word(tuple(RECEIVED), 9))


def test_guarantee(state):
    assert guarantee_check(state)
    assert state.r_tw == 5 and state.r_prime == 2


def test_guarantee_fails_for_truncated_ubb(asl, asl_ubb):
    cut = Ubb(asl_ubb.bases[:3], 2, asl.g1)
    with pytest.raises(ValueError):
        DecoderState(asl, cut)
    assert not guarantee_check(DecoderState(asl, cut, require_guarantee=False))


def test_guarantee_repetition_code(pgl27):
    code = TwistedCode(pgl27, [IsomorphismTable.identity(pgl27)] * 2)
    s = DecoderState(code, load_ubb("pgl27"))
    assert s.r_prime == (pgl27.min_distance() - 1) // 2
    assert guarantee_check(s)


def test_non_base_rows_fail_guarantee(pgl27):
    code = TwistedCode(pgl27, [IsomorphismTable.identity(pgl27)] * 2)
    bad = Ubb(((1, 2), (3, 4), (5, 6)), 2, pgl27)
    assert not guarantee_check(DecoderState(code, bad, require_guarantee=False))


def test_trivial_group_code():
    G = PermutationGroup([], degree=3)
    code = TwistedCode(G, [IsomorphismTable.identity(G)])
    s = DecoderState(code, Ubb(((),), 0), require_guarantee=False)
    res = decode(s, [1, 2, 3])
    assert res.success and res.permutation == Permutation.identity(3)
