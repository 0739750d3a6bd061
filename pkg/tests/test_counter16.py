import json
from pathlib import Path

import pytest

from pdol import counter16 as c16
from pdol.compiler import bin_word
from pdol.engine import limit_prefix
from pdol.words import subword_complexity

HERE = Path(__file__).parent


def test_flags():
    f = c16.flags(13)
    assert (f.a, f.r, f.c, f.o) == (True, True, False, True)
    assert not any((c16.flags(0).a, c16.flags(0).r, c16.flags(0).c, c16.flags(0).o))
    assert all(c16.index(c16.flags(i)) == i for i in range(16))
    with pytest.raises(ValueError):
        c16.flags(16)


def test_table_entries():
    sys = c16.build_counter16()
    img = lambda i, t: " ".join(sys.image(i, t))  # noqa: E731
    assert all(img(i, "L") == "L" for i in range(16))
    assert all((img(i, "Z3"), img(i, "Z2"), img(i, "Z1")) == ("Z2", "Z1", "Z") for i in range(16))
    # running, output zero, not active
    assert img(c16.index(c16.Flags(False, True, False, False)), "R") == "0 R"
    assert img(0, "+") == "_ _"
    assert img(0, "-") == " ".join(["_"] * 16)
    assert img(0, "*") == "_ _ -"


def test_final_trace_block():
    sys = c16.build_counter16()
    assert "".join(c16.extract_digits(limit_prefix(sys, 100_000)))[:12] == "010010011100"
    blocks = c16.marked_blocks(limit_prefix(sys, 100_000))
    assert "010010011100" in blocks
    assert "".join(bin_word(12)) == "010010011100"


def test_empty_prefix():
    assert "".join(c16.extract_digits(limit_prefix(c16.build_counter16(), 0))) == ""


def test_digit_invariant():
    prefix = limit_prefix(c16.build_counter16(), 10**6)
    blocks = c16.marked_blocks(prefix)
    ref = "".join(bin_word(max(map(len, blocks))))
    assert all(ref.startswith(b) for b in blocks)
    assert [len(b) for b in blocks] == sorted(len(b) for b in blocks)


def test_trace_head():
    lines = c16.trace_lines(3)
    assert lines[0] == "s@0"
    assert lines[1] == "+@14 a@15 c@15 P@7 O@7 Z1@7 L@6 R1@7"
    assert lines[2] == "*@13 +@10 +@11 B@12 d@12 P@12 O@12 Z@12 L@11 R@12"


def test_trace_stream_frozen():
    # non-pad tokens of the first iterations; frozen after comparing with the printed trace
    frozen = json.loads((HERE / "data" / "counter16_stream.json").read_text())
    got = [t.split("@") for t in " ".join(c16.trace_lines(frozen["iterations"])).split()]
    n = len(frozen["tokens"])
    assert [t for t, _ in got[:n]] == frozen["tokens"]
    # the printed trace gives an index only for the first symbol of a repeated block
    for (_, i), want in zip(got, frozen["indices"]):
        if want is not None:
            assert int(i) == want


def test_exponential_complexity():
    prof = subword_complexity(limit_prefix(c16.build_counter16(), 10**6), 6)
    assert all(c >= 2**n for n, c in prof.items())


def test_separator_count():
    # between the n-th and (n+1)-th bit symbols there are 2^(n-1) c/d symbols
    for w in c16.line_words(12):
        toks = [t for t in w if t in ("a", "A", "b", "B", "c", "d")]
        bits = [k for k, t in enumerate(toks) if t in ("a", "A", "b", "B")]
        for n, (x, y) in enumerate(zip(bits, bits[1:]), 1):
            assert y - x - 1 == 2 ** (n - 1)
