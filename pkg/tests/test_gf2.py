import pytest
from hypothesis import given, strategies as st

from xorcc import UsageError
from xorcc.gf2 import (
    BitVector,
    Gf2Matrix,
    Gf2Subspace,
    from_bitstring,
    inner_product,
    kernel_basis,
    parity_check_matrix,
    rank,
    rref,
    syndrome,
    to_bitstring,
)

from oracles import all_subspaces, span_set


def bv(s):
    return BitVector.from_string(s)


def m(*rows):
    return Gf2Matrix.from_strings(rows)


@st.composite
def matrices(draw, max_n=8, max_rows=8):
    n = draw(st.integers(1, max_n))
    rows = draw(st.lists(st.integers(0, (1 << n) - 1), max_size=max_rows))
    return Gf2Matrix(n, rows)


def test_bit_order_puts_first_coordinate_lowest():
    assert from_bitstring("110") == 3
    assert to_bitstring(3, 3) == "110"
    assert bv("101").weight == 2


@pytest.mark.parametrize("x, y, want", [("000", "101", 0), ("110", "011", 1), ("111", "111", 1)])
def test_inner_product_examples(x, y, want):
    assert inner_product(bv(x), bv(y)) == want


def test_inner_product_dimension_mismatch():
    with pytest.raises(UsageError):
        inner_product(bv("10"), bv("101"))


def test_rref_examples():
    assert rref(m("11", "01")).to_strings() == ["10", "01"]
    assert rref(m("101", "101")).to_strings() == ["101"]
    assert rref(Gf2Matrix(3, [])).rows == ()


def test_rank_examples():
    assert rank(Gf2Matrix.identity(3)) == 3
    assert rank(m("000", "000")) == 0
    assert rank(m("110", "011", "101")) == 2


def test_kernel_examples():
    assert kernel_basis(Gf2Matrix.identity(3)).dim == 0
    even = kernel_basis(m("111"))
    assert even.dim == 2
    assert set(even.elements()) == {x for x in range(8) if bin(x).count("1") % 2 == 0}
    assert kernel_basis(Gf2Matrix(3, [])).dim == 3


def test_parity_check_examples():
    assert len(parity_check_matrix(Gf2Subspace.full(3))) == 0
    assert parity_check_matrix(Gf2Subspace(3, [])).rows == Gf2Matrix.identity(3).rows
    assert parity_check_matrix(Gf2Subspace(3, [bv("110"), bv("011")])).to_strings() == ["111"]


def test_syndrome_examples():
    assert str(syndrome(Gf2Matrix.identity(3), bv("101"))) == "101"
    assert syndrome(m("111"), bv("110")).bits == 0
    assert syndrome(m("111"), bv("100")).bits == 1
    with pytest.raises(UsageError):
        syndrome(m("111"), bv("10"))


def test_dimension_cap_and_bad_rows():
    with pytest.raises(UsageError):
        Gf2Matrix(25, [])
    with pytest.raises(UsageError):
        Gf2Matrix(2, [4])
    with pytest.raises(UsageError):
        BitVector(2, 4)


@given(matrices())
def test_rref_idempotent_and_preserves_row_space(a):
    r = rref(a)
    assert rref(r) == r
    assert span_set(a.n, a.rows) == span_set(a.n, r.rows)
    pivots = [(row & -row).bit_length() - 1 for row in r.rows]
    assert pivots == sorted(set(pivots))
    for row, p in zip(r.rows, pivots):
        assert sum((other >> p) & 1 for other in r.rows) == 1


@given(matrices())
def test_rank_nullity(a):
    assert rank(a) + kernel_basis(a).dim == a.n
    assert 1 << rank(a) == len(span_set(a.n, a.rows))


@given(matrices())
def test_kernel_is_exactly_the_annihilated_set(a):
    want = {x for x in range(1 << a.n) if all(bin(r & x).count("1") % 2 == 0 for r in a.rows)}
    assert set(kernel_basis(a).elements()) == want


@given(matrices(max_n=6))
def test_parity_check_round_trip(a):
    sub = Gf2Subspace(a.n, a.rows)
    checks = parity_check_matrix(sub)
    assert len(checks) == a.n - sub.dim
    assert kernel_basis(checks) == sub


@pytest.mark.parametrize("n", range(1, 7))
def test_syndromes_separate_cosets_exhaustively(n):
    for members in all_subspaces(n):
        sub = Gf2Subspace(n, members)
        assert set(sub.elements()) == members
        checks = parity_check_matrix(sub)
        syn = [syndrome(checks, x) for x in range(1 << n)]
        reps = [sub.coset_representative(x) for x in range(1 << n)]
        assert len(set(syn)) == 1 << (n - sub.dim)
        for x in range(1 << n):
            for d in members:
                assert syn[x ^ d] == syn[x]
                assert reps[x ^ d] == reps[x]
        assert len(set(reps)) == len(set(syn))


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.integers(0, (1 << n) - 1), max_size=6), st.randoms(use_true_random=False))))
def test_serialization_is_canonical(args):
    n, gens, rnd = args
    a = Gf2Subspace(n, gens)
    # A different generating set of the same span: shuffled random combinations.
    members = sorted(span_set(n, gens))
    other = [rnd.choice(members) for _ in range(8)] + list(a.basis)
    rnd.shuffle(other)
    b = Gf2Subspace(n, other)
    assert a.serialize() == b.serialize()
    assert a.mask() == sum(1 << x for x in members)
