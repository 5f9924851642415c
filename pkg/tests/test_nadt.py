import random
from functools import lru_cache

import pytest
from hypothesis import given, strategies as st

from xorcc import PreconditionError, UsageError
from xorcc.boolfn import PartialFn, make_fk
from xorcc.experiments import all_partial_functions
from xorcc.gf2 import Gf2Matrix, Gf2Subspace, kernel_basis
from xorcc.nadt import NadtProtocol, dtp_exact, nadt_complexity, synthesize_nadt, syndromes, verify_nadt
from xorcc.shifts import preserving_shifts

from oracles import brute_nadt, random_partial, span_set, weight


@st.composite
def partial_fns(draw, max_n=6, min_n=1):
    n = draw(st.integers(min_n, max_n))
    table = draw(st.lists(st.sampled_from([None, 0, 1]), min_size=1 << n, max_size=1 << n))
    return PartialFn.from_table(n, table)


def brute_dtp(f):
    """Adaptive parity tree depth by plain minimax over sets of points."""
    n = f.n

    @lru_cache(maxsize=None)
    def depth(points):
        values = {f(x) for x in points} - {None}
        if len(values) <= 1:
            return 0
        best = n
        for s in range(1, 1 << n):
            zero = frozenset(x for x in points if weight(x & s) % 2 == 0)
            if not zero or zero == points:
                continue
            best = min(best, 1 + max(depth(zero), depth(points - zero)))
        return best

    return depth(frozenset(range(1 << n)))


def test_nadt_examples():
    assert nadt_complexity(PartialFn.constant(4, 1)) == 0
    assert nadt_complexity(PartialFn.from_callable(3, lambda x: x & 1)) == 1
    assert nadt_complexity(PartialFn.empty(3)) == 0
    assert dtp_exact(PartialFn.empty(3)) == 0


@pytest.mark.parametrize("n", range(1, 13))
def test_fk_nadt_is_k_plus_one(n):
    for k in range(n):
        assert nadt_complexity(make_fk(n, k)) == k + 1


def test_nadt_exhaustive_n3():
    for f in all_partial_functions(3):
        assert nadt_complexity(f) == brute_nadt(f)


def test_nadt_random_n4():
    rng = random.Random(2)
    for _ in range(150):
        f = random_partial(rng, 4)
        assert nadt_complexity(f) == brute_nadt(f)


def test_synthesize_examples():
    p = synthesize_nadt(PartialFn.constant(3, 1), Gf2Subspace.full(3))
    assert p.p == 0 and p.table == (1,)
    f1 = make_fk(3, 1)
    p = synthesize_nadt(f1, Gf2Subspace(3, [0b001]))
    assert p.p == 2 and verify_nadt(f1, p)
    x1 = PartialFn.from_callable(3, lambda x: x & 1)
    p = synthesize_nadt(x1, kernel_basis(Gf2Matrix(3, [1])))
    assert p.queries.rows == (1,)


def test_synthesize_rejects_bad_subspace():
    with pytest.raises(PreconditionError):
        synthesize_nadt(make_fk(3, 1), Gf2Subspace(3, [0b011]))


def test_verify_examples():
    f1 = make_fk(3, 1)
    assert not verify_nadt(f1, NadtProtocol(Gf2Matrix(3, [0b111]), (0, 1)))
    rng = random.Random(4)
    for _ in range(20):
        f = random_partial(rng, 4)
        table = tuple(f(x) or 0 for x in range(16))
        assert verify_nadt(f, NadtProtocol(Gf2Matrix.identity(4), table))


def test_protocol_shape_checked():
    with pytest.raises(UsageError):
        NadtProtocol(Gf2Matrix(3, [1]), (0, 1, 0))
    with pytest.raises(UsageError):
        NadtProtocol(Gf2Matrix(3, [1]), (0, 2))


@given(partial_fns(max_n=7))
def test_optimal_protocol_round_trip(f):
    p = synthesize_nadt(f)
    assert p.p == nadt_complexity(f)
    assert verify_nadt(f, p)


@given(partial_fns(max_n=6), st.randoms(use_true_random=False))
def test_any_subspace_inside_preserving_shifts_works(f, rnd):
    allowed = preserving_shifts(f)
    gens = []
    for d in rnd.sample(allowed.members(), len(allowed)):
        if span_set(f.n, gens + [d]) <= set(allowed.members()):
            gens.append(d)
    p = synthesize_nadt(f, Gf2Subspace(f.n, gens))
    assert verify_nadt(f, p)


@given(partial_fns(max_n=6))
def test_verify_matches_pointwise_check(f):
    rnd = random.Random(f.defined ^ f.value)
    rows = [rnd.randrange(1 << f.n) for _ in range(rnd.randint(0, f.n))]
    table = tuple(rnd.randint(0, 1) for _ in range(1 << len(rows)))
    p = NadtProtocol(Gf2Matrix(f.n, rows), table)
    want = all(p(x) == f(x) for x in range(1 << f.n) if f(x) is not None)
    assert verify_nadt(f, p) == want


def test_syndromes_vector():
    q = Gf2Matrix(3, [0b011, 0b100])
    got = syndromes(q)
    for x in range(8):
        assert got[x] == (weight(x & 3) % 2) | ((x >> 2) << 1)


def test_dtp_examples():
    assert dtp_exact(PartialFn.constant(3, 0)) == 0
    assert dtp_exact(make_fk(4, 1)) == 2
    assert dtp_exact(PartialFn.from_callable(3, lambda x: weight(x & 3) % 2)) == 1
    with pytest.raises(UsageError):
        dtp_exact(make_fk(7, 2))


@pytest.mark.parametrize("n", range(1, 7))
def test_fk_dtp_is_k_plus_one(n):
    for k in range(n):
        assert dtp_exact(make_fk(n, k)) == k + 1


def test_dtp_matches_minimax_oracle():
    rng = random.Random(9)
    for n in (2, 3):
        for _ in range(60):
            f = random_partial(rng, n)
            assert dtp_exact(f) == brute_dtp(f)
    for _ in range(12):
        f = random_partial(rng, 4, density=0.4)
        assert dtp_exact(f) == brute_dtp(f)


@given(partial_fns(max_n=5))
def test_adaptivity_never_hurts(f):
    assert dtp_exact(f) <= nadt_complexity(f)
