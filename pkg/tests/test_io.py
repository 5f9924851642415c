import pytest
from hypothesis import given, strategies as st

from xorcc.boolfn import PartialFn, make_fk
from xorcc.codes import greedy_covering, hamming_code
from xorcc.io import (
    ParseError,
    dump_code,
    dump_function,
    dump_nadt_protocol,
    dump_oneway_protocol,
    hex_to_mask,
    load_code,
    load_function,
    load_nadt_protocol,
    load_oneway_protocol,
    mask_to_hex,
    parse_table,
)
from xorcc.nadt import synthesize_nadt
from xorcc.owcc import optimal_message_map, synthesize_oneway


@st.composite
def partial_fns(draw, max_n=6):
    n = draw(st.integers(0, max_n))
    table = draw(st.lists(st.sampled_from([None, 0, 1]), min_size=1 << n, max_size=1 << n))
    return PartialFn.from_table(n, table)


def test_fk_file_bytes():
    text = dump_function(make_fk(3, 1))
    assert text == "xorcc-fn v1\nn 3\ndefined 97\nvalue 80\n"


def test_hex_layout():
    assert mask_to_hex(0x0102, 4) == "0201"
    assert hex_to_mask("0201", 4) == 0x0102
    assert mask_to_hex(1, 0) == "01"
    with pytest.raises(ValueError):
        hex_to_mask("00", 4)
    with pytest.raises(ValueError):
        hex_to_mask("10", 2)


@given(partial_fns())
def test_function_round_trip(f):
    text = dump_function(f)
    assert load_function(text) == f
    assert dump_function(load_function(text)) == text


def test_code_round_trip_keeps_order():
    code = greedy_covering(6, 1, seed=3)
    loaded = load_code(dump_code(code))
    assert loaded == code and loaded.codewords == code.codewords
    assert dump_code(hamming_code(2)) == "xorcc-code v1\nn 3 K 2 R 1\n000\n111\n"


@given(partial_fns(max_n=5))
def test_protocol_round_trips(f):
    p = synthesize_nadt(f)
    assert load_nadt_protocol(dump_nadt_protocol(p)) == p
    q = synthesize_oneway(f, optimal_message_map(f))
    assert load_oneway_protocol(dump_oneway_protocol(q)) == q


@pytest.mark.parametrize("text, line, column", [
    ("xorcc-fn v2\n", 1, 1),
    ("xorcc-fn v1\nn x\n", 2, 3),
    ("xorcc-fn v1\nm 3\n", 2, 1),
    ("xorcc-fn v1\nn 3\ndefined 97\n", 4, 1),
    ("xorcc-fn v1\nn 3\ndefined 97\nvalue zz\n", 4, 7),
    ("xorcc-fn v1\nn 3\ndefined 01\nvalue 80\n", 4, 1),
    ("xorcc-fn v1\nn 3\ndefined 97\nvalue 80\nextra\n", 5, 1),
])
def test_function_parse_errors(text, line, column):
    with pytest.raises(ParseError) as err:
        load_function(text, "f.txt")
    assert (err.value.line, err.value.column) == (line, column)
    assert str(err.value).startswith(f"f.txt:{line}:{column}:")


def test_code_parse_errors():
    with pytest.raises(ParseError) as err:
        load_code("xorcc-code v1\nn 3 K 2 R 1\n000\n1a1\n")
    assert (err.value.line, err.value.column) == (4, 2)
    with pytest.raises(ParseError) as err:
        load_code("xorcc-code v1\nn 3 K 2 R 1\n000\n")
    assert err.value.line == 4
    with pytest.raises(ParseError):
        load_code("xorcc-code v1\nn 3 K 1 R 1\n0000\n")


def test_protocol_parse_errors():
    with pytest.raises(ParseError):
        load_nadt_protocol("xorcc-nadt v1\nn 3\np 1\n111\n012\n")
    with pytest.raises(ParseError):
        load_nadt_protocol("xorcc-nadt v1\nn 3\np 4\n")
    with pytest.raises(ParseError) as err:
        load_oneway_protocol("xorcc-oneway v1\nn 1\nt 0\n0 1\n03 03\n")
    assert (err.value.line, err.value.column) == (4, 3)


def test_parse_table():
    f = parse_table("01*1")
    assert f.n == 2 and f.table() == [0, 1, None, 1]
    with pytest.raises(ParseError):
        parse_table("01x1")
    with pytest.raises(Exception):
        parse_table("011")
