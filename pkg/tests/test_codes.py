import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from xorcc import PreconditionError, UsageError, VerificationError
from xorcc.boolfn import make_fk
from xorcc.codes import (
    CodeProtocol,
    CoveringCode,
    ball_volume,
    binary_entropy,
    code_message,
    covering_radius,
    direct_sum,
    fk_protocol_from_code,
    full_cube_code,
    greedy_bound_holds,
    greedy_covering,
    hamming_code,
    lower_bound_holds,
    reed_muller_1_5,
    repetition_code,
    rm15_distance,
    rm15_distance_direct,
    rm15_radius_sweep,
    verify_code_protocol_sampled,
    verify_covering,
    volume_bound_checks,
)
from xorcc.nadt import nadt_complexity
from xorcc.owcc import OneWayProtocol, verify_oneway, verify_oneway_pairs

from oracles import ball, dist


def brute_radius(code):
    return max(min(dist(x, c) for c in code.codewords) for x in range(1 << code.n))


@st.composite
def small_codes(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    words = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=1, max_size=6))
    radius = draw(st.integers(0, n))
    return CoveringCode(n, words, radius)


@pytest.mark.parametrize("m, params", [(2, (3, 2, 1)), (3, (7, 16, 1)), (4, (15, 2048, 1))])
def test_hamming_codes_are_perfect(m, params):
    code = hamming_code(m)
    assert code.params == params
    report = verify_covering(code)
    assert report.ok and report.max_distance == 1 and report.perfect
    # Balls are pairwise disjoint: every point is within distance 1 of exactly one codeword.
    counts = np.zeros(1 << code.n, dtype=int)
    for c in code.codewords:
        counts[c] += 1
        for i in range(code.n):
            counts[c ^ (1 << i)] += 1
    assert (counts == 1).all()


def test_hamming_small_codewords():
    assert hamming_code(2).strings() == ["000", "111"]
    with pytest.raises(UsageError):
        hamming_code(5)


def test_whole_cube_and_identity():
    assert verify_covering(full_cube_code(4)).ok
    h = hamming_code(3)
    same = direct_sum(h, full_cube_code(0))
    assert same.params == h.params and same.codewords == h.codewords


@pytest.mark.parametrize("n2, params", [(1, (1, 2, 0)), (2, (2, 2, 1)), (5, (5, 2, 2))])
def test_repetition(n2, params):
    code = repetition_code(n2)
    assert code.params == params
    assert covering_radius(code)[0] == n2 // 2


def test_direct_sum_examples():
    assert direct_sum(hamming_code(3), full_cube_code(2)).params == (9, 64, 1)
    assert direct_sum(reed_muller_1_5(), repetition_code(4)).params == (36, 128, 14)


@given(small_codes(), small_codes())
def test_direct_sum_radius_is_additive(c1, c2):
    r1, r2 = brute_radius(c1), brute_radius(c2)
    exact1 = CoveringCode(c1.n, c1.codewords, r1)
    exact2 = CoveringCode(c2.n, c2.codewords, r2)
    total = direct_sum(exact1, exact2)
    assert total.radius == r1 + r2
    assert covering_radius(total)[0] == r1 + r2


@given(small_codes())
def test_covering_radius_matches_brute_force(code):
    radius, witness = covering_radius(code)
    assert radius == brute_radius(code)
    assert min(dist(witness, c) for c in code.codewords) == radius
    report = verify_covering(code)
    assert report.ok == (radius <= code.radius)
    if report.ok:
        assert lower_bound_holds(code.n, code.size, code.radius)
    else:
        assert report.witness is not None


def test_sampled_mode_reports_seed_and_worst():
    code = hamming_code(4)
    report = verify_covering(code, "sampled", 5000, seed=3)
    assert report.ok and report.samples == 5000 and report.seed == 3 and report.max_distance <= 1
    bad = verify_covering(CoveringCode(10, [0], 2), "sampled", 2000, seed=1)
    assert not bad.ok and bad.witness is not None and bin(bad.witness).count("1") > 2
    with pytest.raises(UsageError):
        verify_covering(code, "fuzzy")


def test_reed_muller_parameters():
    rm = reed_muller_1_5()
    assert rm.params == (32, 64, 12)
    assert len(set(rm.codewords)) == 64
    for c in rm.codewords:
        assert rm15_distance(c) == 0


def test_reed_muller_distance_two_ways():
    rng = random.Random(17)
    rm = reed_muller_1_5()
    # x1x2 + x3x4 is bent in four variables (distance 6); ignoring x5 doubles it.
    bent = sum(((((i & 1) & (i >> 1)) ^ ((i >> 2) & (i >> 3))) & 1) << i for i in range(32))
    assert rm15_distance(bent) == rm15_distance_direct(bent, rm) == 12
    for _ in range(300):
        g = rng.getrandbits(32)
        assert rm15_distance(g) == rm15_distance_direct(g, rm) <= 12


def test_reed_muller_sweep_slice():
    radius, rep = rm15_radius_sweep(chunk_bits=12, start=0, stop=1 << 14)
    assert radius <= 12
    assert rm15_distance(rep) == radius


@pytest.mark.slow
def test_reed_muller_full_sweep():
    radius, rep = rm15_radius_sweep()
    assert radius == 12 and rm15_distance(rep) == 12


def test_greedy_examples():
    assert greedy_covering(5, 5).size == 1
    code = greedy_covering(4, 1)
    assert code.size <= 12 and verify_covering(code).ok
    code = greedy_covering(7, 1)
    assert code.size >= 16 and verify_covering(code).ok


@pytest.mark.parametrize("n", range(1, 13))
def test_greedy_meets_both_bounds(n):
    for r in range(n + 1):
        code = greedy_covering(n, r)
        assert verify_covering(code).ok
        assert lower_bound_holds(n, code.size, r)
        assert greedy_bound_holds(n, code.size, r)


def test_greedy_seeded_ties_are_reproducible():
    a = greedy_covering(6, 1, seed=4)
    assert a == greedy_covering(6, 1, seed=4)
    assert verify_covering(a).ok


def test_ball_volume_examples():
    assert ball_volume(9, 0) == 1
    assert ball_volume(7, 1) == 8
    assert ball_volume(10, 10) == 1024
    assert ball_volume(5, -1) == 0
    for n in range(12):
        for r in range(n + 1):
            assert ball_volume(n, r) == ball(n, r)


def test_binary_entropy():
    assert binary_entropy(0.5) == 1.0
    assert binary_entropy(0) == binary_entropy(1) == 0
    assert binary_entropy(0.11) == pytest.approx(binary_entropy(0.89))


def test_volume_bounds():
    report = volume_bound_checks()
    assert report.ok and report.checked == sum(n + 1 for n in range(1, 65))
    v = ball_volume(10, 3)
    assert v == 176
    assert Fraction(10, 3) ** 3 < v < (math.e * 10 / 3) ** 3
    assert round((10 / 3) ** 3, 2) == 37.04
    assert round((math.e * 10 / 3) ** 3, 1) == 743.9
    ratio = Fraction(ball_volume(64, 32), 1 << 63)
    assert Fraction(1, 2) < ratio < Fraction(11, 10)


def test_code_protocol_examples():
    f = make_fk(7, 4)
    p = fk_protocol_from_code(7, 4, hamming_code(3))
    assert isinstance(p, OneWayProtocol) and p.t == 4
    assert verify_oneway(f, p) and p.t < nadt_complexity(f)
    p = fk_protocol_from_code(3, 2, full_cube_code(3))
    assert p.t == 3 and verify_oneway(make_fk(3, 2), p)
    with pytest.raises(PreconditionError):
        fk_protocol_from_code(3, 2, repetition_code(3))
    with pytest.raises(PreconditionError):
        fk_protocol_from_code(7, 4, CoveringCode(7, [0], 1))


def test_large_code_protocol_is_implicit():
    code = direct_sum(reed_muller_1_5(), repetition_code(4))
    p = fk_protocol_from_code(36, 7, code)
    assert isinstance(p, CodeProtocol) and p.t == 7
    report = verify_code_protocol_sampled(p, 20000, seed=5)
    assert report.ok and 0 < report.one_pairs < report.pairs
    # Spot-check the implicit answers against f_7 directly.
    rng = random.Random(8)
    full = (1 << 36) - 1
    for _ in range(200):
        x = rng.getrandbits(36)
        z = full if rng.random() < 0.5 else sum(1 << i for i in rng.sample(range(36), rng.randint(0, 7)))
        assert p.answer(p.message(x), x ^ z) == int(z == full)


def test_code_message_rejects_uncovered_points():
    with pytest.raises(VerificationError):
        code_message(CoveringCode(4, [0], 1), np.array([15], dtype=np.uint64))


def class_diameter(code):
    labels = code_message(code, np.arange(1 << code.n, dtype=np.uint64))
    worst = 0
    for a in set(labels.tolist()):
        members = np.flatnonzero(labels == a)
        for x in members:
            worst = max(worst, max(dist(int(x), int(y)) for y in members))
    return worst


@pytest.mark.parametrize("n, code", [
    (7, hamming_code(3)), (7, repetition_code(7)), (6, greedy_covering(6, 2)),
    (8, greedy_covering(8, 2)), (5, repetition_code(5)),
])
def test_inflated_radius(n, code):
    # A protocol built for a small k checked against every larger k: it is
    # valid exactly when no ball class has diameter above n - k - 1.
    r = covering_radius(code)[0]
    base_k = n - 1 - 2 * r
    protocol = fk_protocol_from_code(n, base_k, CoveringCode(n, code.codewords, r))
    diameter = class_diameter(code)
    for k in range(base_k, n):
        f = make_fk(n, k)
        valid = verify_oneway(f, protocol)
        assert valid == verify_oneway_pairs(f, protocol)
        assert valid == (diameter <= n - k - 1)


def test_repetition_code_fails_past_its_radius():
    protocol = fk_protocol_from_code(7, 0, repetition_code(7))
    assert verify_oneway(make_fk(7, 0), protocol)
    assert not verify_oneway(make_fk(7, 4), protocol)
