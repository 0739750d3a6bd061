from math import lcm, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pdol.compiler import (
    P_ADD_TABLE,
    P_BIN_TABLE,
    FractranNProgram,
    assign_primes,
    bin_word,
    build_bin_n,
    build_p_add,
    build_p_bin,
    compile_program,
    flatten,
    format_n_program,
    parse_n_program,
    run_n,
    split_loops,
    zrep,
    zval,
)
from pdol.errors import IncompleteAssignmentError, InvalidAssignmentError, ParseError
from pdol.fractran import Fraction, output_word, run, valuation

P_BIN_TEXT = (
    "1189/86 259/2 19393/259 13/7 7/11 629/559 19/13 13/17 989/31939 "
    "3/779 5/817 19/23 1271/1247 19/29 29/31 2/3 2/5"
)


def text(w):
    return "".join(w) or "eps"


class TestSplit:
    def test_p_add(self):
        split = split_loops(build_p_add())
        assert list(split.lines) == ["alpha", "alpha~", "beta", "beta~"]
        assert split.lines["alpha~"] == [(Fraction(1, 1), "alpha")]
        assert split.lines["beta~"] == [(Fraction(1, 1), "beta")]
        assert split.looping() == []

    def test_no_loops_unchanged(self):
        prog = parse_n_program("a: 1/3 -> b\nb: 3/5 -> a\n")
        assert split_loops(prog).lines == prog.lines

    def test_bin_gets_four_mirrors(self):
        assert len(split_loops(build_bin_n()).lines) == 11


class TestAssign:
    def test_default_p_add(self):
        prog, assignment = compile_program(build_p_add())
        assert assignment == P_ADD_TABLE

    def test_table_accepted(self):
        assert assign_primes(split_loops(build_bin_n()), (), P_BIN_TABLE) == P_BIN_TABLE

    def test_shared_prime(self):
        with pytest.raises(InvalidAssignmentError):
            assign_primes(split_loops(build_p_add()), table={"alpha": 7, "alpha~": 7, "beta": 13, "beta~": 17})

    def test_register_clash(self):
        with pytest.raises(InvalidAssignmentError):
            assign_primes(split_loops(build_p_add()), table={"alpha": 3, "alpha~": 11, "beta": 13, "beta~": 17})

    def test_incomplete(self):
        with pytest.raises(IncompleteAssignmentError):
            assign_primes(split_loops(build_p_add()), table={"alpha": 7})


class TestFlatten:
    def test_p_add(self):
        prog, _ = compile_program(build_p_add(), table=P_ADD_TABLE)
        # the adder loop is 13/7 then 7/11: alpha re-enters through its mirror
        assert str(prog) == "110/21 13/7 7/11 51/65 13/17"
        assert sorted(map(str, prog)) == sorted(["110/21", "7/11", "13/7", "51/65", "13/17"])

    @pytest.mark.parametrize("a", range(6))
    @pytest.mark.parametrize("b", range(6))
    def test_p_add_adds(self, a, b):
        prog, _ = compile_program(build_p_add(), table=P_ADD_TABLE)
        t = run(prog, 2**a * 3**b * 7, 1000)
        assert t.halted
        assert t.values[-1] == 2 ** (a + b) * 3**b * 13

    def test_single_self_loop(self):
        prog, asg = compile_program(parse_n_program("a: 1/1 -> a\n"))
        a, m = asg["a"], asg["a~"]
        assert [(f.num, f.den) for f in prog] == [(m, a), (a, m)]

    def test_needs_split(self):
        with pytest.raises(ValueError):
            flatten(build_p_add(), P_ADD_TABLE)


class TestBin:
    def test_p_bin_matches_display(self):
        assert str(build_p_bin()) == P_BIN_TEXT

    def test_lcm(self):
        assert lcm(*build_p_bin().denominators) == 536393214598471230

    def test_output_is_bin(self):
        w, halted = output_word(build_p_bin(), 20_000)
        assert not halted
        assert text(w)[:22] == "0100100111000100010110"
        assert list(w) == list(bin_word(len(w)))

    def test_direct_interpreter_agrees(self):
        direct = run_n(build_bin_n(), 1, 5000)
        digits = "".join({"out0": "0", "out1": "1"}.get(s, "") for s in direct.states[1:])
        w, _ = output_word(build_p_bin(), 20_000)
        n = min(len(digits), len(w))
        assert digits[:n] == text(w)[:n]
        assert n > 50

    def test_adder_direct(self):
        t = run_n(build_p_add(), 2 * 3, 100)
        assert t.halted and t.states[-1] == "beta" and t.values[-1] == 2**2 * 3


class TestZrep:
    def test_examples(self):
        assert text(zrep(0)) == "eps"
        assert [text(zrep(n)) for n in range(1, 7)] == ["0", "1", "00", "10", "01", "11"]
        assert text(bin_word(13)) == "0100100111000"
        assert text(bin_word(12)) == "010010011100"

    def test_round_trip(self):
        for n in range(2**16):
            assert zval(zrep(n)) == n

    def test_length(self):
        for n in range(2**14):
            assert len(zrep(n)) == (n + 1).bit_length() - 1


class TestText:
    def test_parse_p_add(self):
        prog = parse_n_program("alpha: 10/3 -> alpha, 1/1 -> beta\nbeta: 3/5 -> beta\n")
        assert prog.looping() == ["alpha", "beta"]
        assert prog.lines == build_p_add().lines

    def test_round_trip(self):
        for prog in (build_p_add(), build_bin_n()):
            out = format_n_program(prog)
            assert format_n_program(parse_n_program(out)) == out

    def test_unknown_successor(self):
        with pytest.raises(ParseError) as exc:
            parse_n_program("a: 1/2 -> b\n")
        assert exc.value.line == 1

    def test_duplicate_state(self):
        with pytest.raises(ParseError):
            parse_n_program("a: 1/2 -> a\na: 1/3 -> a\n")

    def test_zero(self):
        with pytest.raises(ParseError):
            parse_n_program("a: 1/0 -> a\n")


REGS = (11, 13, 17, 19)


@st.composite
def n_programs(draw):
    k = draw(st.integers(1, 4))
    names = [f"q{i}" for i in range(k)]
    factor = st.lists(st.sampled_from(REGS), max_size=2).map(lambda ps: prod(ps))
    lines = {}
    for s in names:
        entries = []
        for _ in range(draw(st.integers(0, 3))):
            entries.append((Fraction(draw(factor), draw(factor)), draw(st.sampled_from(names))))
        lines[s] = entries
    return FractranNProgram(lines)


@settings(max_examples=40, deadline=None)
@given(n_programs(), st.lists(st.integers(0, 3), min_size=4, max_size=4))
def test_compiled_simulates_direct(prog, exps):
    regs = 1
    for p, e in zip(REGS, exps):
        regs *= p**e
    # registers absent from every fraction are invisible to the compiler
    flat, asg = compile_program(prog, reserved=(2, 3, 5, *REGS))
    primes = set(asg.values())
    direct = run_n(prog, regs, 30)
    t = run(flat, regs * asg[prog.entry], 200)
    seen = []
    for v in t.values:
        holders = [s for s, p in asg.items() if v % p == 0]
        assert len(holders) == 1
        if not holders[0].endswith("~"):
            seen.append((holders[0], tuple(valuation(v, p) for p in REGS)))
    expected = [(s, tuple(valuation(v, p) for p in REGS)) for s, v in zip(direct.states, direct.values)]
    n = min(len(seen), len(expected))
    assert seen[:n] == expected[:n]
    assert not primes & set(REGS)
    if direct.halted and len(direct.values) <= 30:
        assert t.halted and seen == expected
