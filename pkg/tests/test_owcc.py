import random

import pytest
from hypothesis import given, strategies as st

from xorcc import PreconditionError, UsageError
from xorcc.boolfn import MessageMap, PartialFn, make_fk
from xorcc.codes import fk_protocol_from_code, hamming_code
from xorcc.experiments import all_partial_functions
from xorcc.nadt import nadt_complexity
from xorcc.owcc import (
    ConflictGraph,
    OneWayProtocol,
    chromatic_number_exact,
    conflict_graph,
    dsatur_coloring,
    greedy_clique,
    is_colorable,
    message_width,
    optimal_message_map,
    owcc_bounds,
    owcc_exact,
    synthesize_oneway,
    verify_oneway,
    verify_oneway_pairs,
)
from xorcc.shifts import ShiftSet, good_shifts, max_subspace_in, preserving_shifts

from oracles import brute_owcc, brute_preserving, random_partial, weight


@st.composite
def partial_fns(draw, max_n=5, min_n=1):
    n = draw(st.integers(min_n, max_n))
    table = draw(st.lists(st.sampled_from([None, 0, 1]), min_size=1 << n, max_size=1 << n))
    return PartialFn.from_table(n, table)


def proper(g, colors):
    adj = g.adjacency()
    return all(colors[x] != colors[y] for x in range(g.order) for y in range(g.order) if (adj[x] >> y) & 1)


def test_message_width():
    assert [message_width(c) for c in (1, 2, 3, 4, 5, 16, 17)] == [0, 1, 2, 2, 3, 4, 5]


def test_conflict_graph_examples():
    assert conflict_graph(PartialFn.constant(3, 0)).degree == 0
    f = PartialFn.from_table(3, [0, None, None, None, None, 1, None, None])
    g = conflict_graph(f)
    assert all(g.is_edge(x, y) == ((x ^ y) == 5) for x in range(8) for y in range(8))
    g = conflict_graph(make_fk(3, 1))
    assert {d for d in range(8) if (g.connection >> d) & 1} == {d for d in range(8) if weight(d) >= 2}


@given(partial_fns(max_n=5))
def test_adjacency_is_the_cayley_graph(f):
    g = conflict_graph(f)
    bad = set(range(1 << f.n)) - brute_preserving(f)
    adj = g.adjacency()
    for x in range(1 << f.n):
        assert adj[x] == sum(1 << (x ^ d) for d in bad)
        assert not (adj[x] >> x) & 1


def test_chromatic_examples():
    assert chromatic_number_exact(ConflictGraph(3, ShiftSet(3, 0xFF))) == 1
    assert chromatic_number_exact(ConflictGraph(3, ShiftSet(3, 1))) == 8
    assert chromatic_number_exact(conflict_graph(make_fk(3, 1))) == 4
    with pytest.raises(UsageError):
        chromatic_number_exact(ConflictGraph(9, ShiftSet(9, 1)))


@given(partial_fns(max_n=5))
def test_heuristics_are_sound(f):
    g = conflict_graph(f)
    adj = g.adjacency()
    clique = greedy_clique(g, adj)
    assert all(g.is_edge(a, b) for a in clique for b in clique if a != b)
    assert proper(g, dsatur_coloring(g, adj))
    chi = chromatic_number_exact(g)
    coloring = is_colorable(g, chi, adj, clique)
    assert coloring is not None and proper(g, coloring) and len(set(coloring)) <= chi
    assert chi == 1 or is_colorable(g, chi - 1, adj) is None


def test_owcc_examples():
    assert owcc_exact(PartialFn.constant(4, 1)) == 0
    assert owcc_exact(make_fk(3, 1)) == 2
    f = make_fk(7, 4)
    assert owcc_exact(f) == 4 and nadt_complexity(f) == 5
    assert 8 < chromatic_number_exact(conflict_graph(f)) <= 16
    with pytest.raises(UsageError):
        owcc_exact(make_fk(9, 2))


def test_owcc_matches_plain_backtracking():
    rng = random.Random(13)
    for n in (1, 2, 3):
        for _ in range(40):
            f = random_partial(rng, n)
            assert owcc_exact(f) == brute_owcc(f)
    for _ in range(10):
        f = random_partial(rng, 4, density=0.3)
        assert owcc_exact(f) == brute_owcc(f)


def test_owcc_at_most_nadt_exhaustive_n3():
    for f in all_partial_functions(3):
        assert owcc_exact(f) <= nadt_complexity(f)


def test_owcc_at_most_nadt_sampled():
    rng = random.Random(21)
    for n in (4, 5, 6, 7):
        for _ in range(40):
            f = random_partial(rng, n)
            assert owcc_exact(f) <= nadt_complexity(f)


def test_one_bit_implies_one_query_exhaustive_n3():
    for f in all_partial_functions(3):
        if owcc_exact(f) == 1:
            assert nadt_complexity(f) == 1


@given(partial_fns(max_n=7, min_n=2))
def test_bounds_bracket_exact(f):
    lower, upper = owcc_bounds(f)
    if f.n <= 6:
        assert lower <= owcc_exact(f) <= upper
    assert upper <= nadt_complexity(f)


def test_bounds_examples():
    assert owcc_bounds(PartialFn.constant(5, 0)) == (0, 0)
    for n, k in [(5, 2), (6, 3), (9, 4)]:
        assert owcc_bounds(make_fk(n, k))[1] <= k + 1
    lower, upper = owcc_bounds(make_fk(14, 7))
    assert lower == 1 and upper == 8


@given(partial_fns(max_n=5))
def test_optimal_map_round_trip(f):
    h = optimal_message_map(f)
    assert h.t == owcc_exact(f)
    p = synthesize_oneway(f, h)
    assert verify_oneway(f, p) and verify_oneway_pairs(f, p)
    # Good shifts of a valid protocol are f-preserving.
    assert good_shifts(h).issubset(preserving_shifts(f))


@given(partial_fns(max_n=5))
def test_injective_and_coset_maps_always_work(f):
    n = f.n
    p = synthesize_oneway(f, MessageMap(n, n, range(1 << n)))
    assert verify_oneway(f, p)
    for x in range(1 << n):
        for y in range(1 << n):
            if f(x ^ y) is not None:
                assert p.answer(x, y) == f(x ^ y)
    sub = max_subspace_in(preserving_shifts(f))
    h = MessageMap.from_labels(n, [sub.coset_representative(x) for x in range(1 << n)])
    assert verify_oneway(f, synthesize_oneway(f, h))


def test_merging_conflicting_rows_fails():
    f = make_fk(3, 1)
    labels = list(range(8))
    labels[3] = labels[0]  # 0 ^ 3 has weight 2, a conflicting shift
    h = MessageMap(3, 3, labels)
    with pytest.raises(PreconditionError):
        synthesize_oneway(f, h)
    good = synthesize_oneway(f, MessageMap(3, 3, range(8)))
    forced = OneWayProtocol(h, good.phi)
    assert not verify_oneway(f, forced) and not verify_oneway_pairs(f, forced)


def test_protocol_shape_checked():
    h = MessageMap(2, 1, [0, 1, 0, 1])
    with pytest.raises(UsageError):
        OneWayProtocol(h, ((0, 0),))
    with pytest.raises(UsageError):
        OneWayProtocol(h, ((1, 0), (0, 0)))


def test_hamming_protocol_for_f4_n7():
    f = make_fk(7, 4)
    p = fk_protocol_from_code(7, 4, hamming_code(3))
    assert p.t == 4 and verify_oneway(f, p) and verify_oneway_pairs(f, p)


@given(partial_fns(max_n=6), st.randoms(use_true_random=False))
def test_fast_and_pairwise_verifiers_agree(f, rnd):
    t = rnd.randint(0, f.n)
    h = MessageMap(f.n, t, [rnd.randrange(1 << t) for _ in range(1 << f.n)])
    full = (1 << (1 << f.n)) - 1
    rows = []
    for _ in range(1 << t):
        c = rnd.getrandbits(1 << f.n) & full
        rows.append((rnd.getrandbits(1 << f.n) & c, c))
    p = OneWayProtocol(h, tuple(rows))
    assert verify_oneway(f, p) == verify_oneway_pairs(f, p)


@given(st.integers(2, 8), st.randoms(use_true_random=False))
def test_unbalanced_one_bit_map_has_every_shift_good(n, rnd):
    ones = rnd.randint(0, (1 << n))
    if ones == 1 << (n - 1):
        ones += 1
    labels = [1] * ones + [0] * ((1 << n) - ones)
    rnd.shuffle(labels)
    assert len(good_shifts(MessageMap(n, 1, labels))) == 1 << n


@given(st.integers(3, 7), st.randoms(use_true_random=False))
def test_two_bad_shifts_sum_to_a_good_one(n, rnd):
    size = 1 << n
    big = rnd.randint((size >> 2) + 1, size)
    labels = [0] * big + [rnd.randint(1, 3) for _ in range(size - big)]
    rnd.shuffle(labels)
    good = good_shifts(MessageMap(n, 2, labels))
    bad = [d for d in range(size) if d not in good]
    for a in bad:
        for b in bad:
            if a != b:
                assert (a ^ b) in good


def test_high_nadt_forces_equality_exhaustive_n3():
    for f in all_partial_functions(3):
        d = nadt_complexity(f)
        if d >= 2:
            assert owcc_exact(f) == d
