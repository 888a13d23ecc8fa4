import pytest
from hypothesis import given, strategies as st

from geolabel.bits import BitReader, BitWriter, DecodeError, Label, clog2, gamma_length


def test_clog2_small_values():
    assert [clog2(n) for n in (1, 2, 3, 4, 5, 8, 9, 1024, 1025)] == [0, 1, 2, 2, 3, 3, 4, 10, 11]
    with pytest.raises(ValueError):
        clog2(0)


def test_gamma_codewords():
    def code(x):
        w = BitWriter()
        w.gamma(x)
        return w.finish().to_str()

    assert code(1) == "1"
    assert code(2) == "010"
    assert code(5) == "00101"
    assert code(8) == "0001000"


def test_dump_format_is_length_and_hex():
    lab = Label(0b101, 6)
    assert lab.to_str() == "000101"
    assert lab.dump() == "6:05"
    assert Label.parse("6:05") == lab
    assert Label(0, 0).dump() == "0:"
    with pytest.raises(DecodeError):
        Label.parse("garbage")
    with pytest.raises(ValueError):
        Label(8, 3)


def test_reader_errors():
    r = BitReader(Label(0, 3))
    with pytest.raises(DecodeError):
        r.gamma()
    r = BitReader(Label(1, 2))
    r.read(1)
    with pytest.raises(DecodeError):
        r.done()
    with pytest.raises(DecodeError):
        BitReader(Label(1, 2)).read(3)


def test_flip_inverts_one_position():
    lab = Label(0b1000, 4)
    assert lab.flip(0).to_str() == "0000"
    assert lab.flip(3).to_str() == "1001"
    with pytest.raises(IndexError):
        lab.flip(4)


@given(st.lists(st.tuples(st.integers(1, 10 ** 6), st.integers(0, 40)), max_size=30))
def test_writer_reader_round_trip(items):
    w = BitWriter()
    for g, width in items:
        w.gamma(g)
        w.write(g & ((1 << width) - 1), width)
    lab = w.finish()
    assert lab.length == sum(gamma_length(g) + width for g, width in items)
    assert Label.parse(lab.dump()) == lab
    r = BitReader(lab)
    for g, width in items:
        assert r.gamma() == g
        assert r.read(width) == g & ((1 << width) - 1)
    r.done()
