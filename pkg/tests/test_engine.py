import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from helpers import make_system, naive_apply, naive_limit, systems
from pdol import gallery
from pdol.engine import (
    FiniteLimit,
    Productive,
    Unknown,
    apply_periodic,
    format_system,
    generate_limit,
    iterate_lines,
    limit_cursor,
    limit_prefix,
    parse_system,
    productivity_fuel,
    productivity_locally_uniform,
    table_system,
    to_automatic,
)
from pdol.errors import NotUniformError, ParseError, SeedNotPrefixError
from pdol.words import Alphabet, Word, lcp_length

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def text(w):
    return "".join(w)


class TestApply:
    def test_kolakoski_examples(self):
        k = gallery.kolakoski()
        assert text(k.apply(Word.parse(k.alphabet, "12"), 0)) == "122"
        assert text(k.apply(Word.parse(k.alphabet, "12211"), 0)) == "1221121"
        assert len(k.apply(Word.parse(k.alphabet, "eps"), 1)) == 0

    @SETTINGS
    @given(systems(), st.data())
    def test_homomorphism_law(self, spec, data):
        letters, tables = spec
        sys = make_system(letters, tables, "a")
        toks = st.lists(st.sampled_from(letters), max_size=12)
        u, v = data.draw(toks), data.draw(toks)
        i = data.draw(st.integers(0, 5))
        U, V = Word.from_tokens(sys.alphabet, u), Word.from_tokens(sys.alphabet, v)
        whole = apply_periodic(sys, U + V, i)
        assert whole == apply_periodic(sys, U, i) + apply_periodic(sys, V, (i + len(u)) % sys.period)
        assert list(whole) == naive_apply(tables, u + v, i)


class TestSeed:
    def test_seed_must_be_prefix(self):
        with pytest.raises(SeedNotPrefixError):
            table_system("ab", [{"a": "b", "b": "a"}], "a")


class TestGenerate:
    @SETTINGS
    @given(systems())
    def test_matches_naive_iteration(self, spec):
        letters, tables = spec
        sys = make_system(letters, tables, "a")
        expected = naive_limit(tables, ["a"], 300)
        got = limit_prefix(sys, 300)
        # the naive iteration stops at 60 rounds, so only a prefix can be compared
        n = min(len(got), len(expected))
        assert list(got)[:n] == expected[:n]
        if len(got) < 300:
            assert list(got) == expected

    @SETTINGS
    @given(systems(), st.integers(1, 50))
    def test_chunk_size_independent(self, spec, step):
        letters, tables = spec
        sys = make_system(letters, tables, "a")
        a, b = limit_cursor(sys), limit_cursor(sys)
        pieces = []
        while a.produced < 400:
            got = a.pull(min(step, 400 - a.produced))
            if not len(got):
                break
            pieces.extend(got)
        assert pieces == list(b.prefix(400))

    @SETTINGS
    @given(systems(), st.integers(0, 8))
    def test_prefix_chain(self, spec, n):
        letters, tables = spec
        sys = make_system(letters, tables, "a")
        u, v = sys.iterate(n), sys.iterate(n + 1)
        if len(u) < 5000:
            assert lcp_length(u, v) == len(u)

    def test_finite_limit_when_image_is_seed(self):
        sys = table_system("ab", [{"a": "a", "b": "b"}], "ab")
        cur, verdict = generate_limit(sys, 10)
        assert verdict == FiniteLimit(2)
        assert productivity_fuel(sys, 5) == FiniteLimit(2)
        assert cur.exhausted

    def test_identity_code_not_productive(self):
        sys = table_system("0", [{"0": "0"}], "0")
        assert productivity_locally_uniform(sys) is False

    def test_galleries(self):
        assert text(limit_prefix(gallery.kolakoski(), 20)) == "12211212212211211221"
        assert text(limit_prefix(gallery.erasing_example(), 37)) == "0121120101221201120212010120201001210"
        assert text(limit_prefix(gallery.arshon(), 33)) == "012021201210201021201210120102120"


class TestLines:
    def test_lines_concatenate_to_limit(self):
        sys = gallery.kolakoski()
        lines = list(iterate_lines(sys, 12))
        joined = list(sys.seed) + [t for ln in lines for t in ln.word]
        assert joined == list(limit_prefix(sys, len(joined)))
        for a, b in zip(lines, lines[1:]):
            assert b.start == a.start + len(a.word)

    def test_cycle_detected_productive(self):
        # every line is a single "b"; the residue pattern repeats after two lines
        sys = table_system("ab", [{"a": "a b", "b": "b"}, {"a": "a", "b": "b"}], "a")
        assert productivity_fuel(sys, 50) == Productive()

    def test_symbol_budget(self):
        assert productivity_fuel(gallery.kolakoski(), 10_000, 10_000) == Unknown(10_000)


class TestLocallyUniform:
    def test_erasing_example(self):
        assert gallery.erasing_example().widths() == [3, 0, 1]
        assert productivity_locally_uniform(gallery.erasing_example())

    def test_not_uniform(self):
        with pytest.raises(NotUniformError):
            productivity_locally_uniform(gallery.kolakoski())

    @given(st.integers(2, 4), st.integers(1, 3))
    def test_globally_uniform_k2(self, k, p):
        tables = [{"a": "a" + " b" * (k - 1), "b": " ".join("ab"[(i + j) % 2] for j in range(k))} for i in range(p)]
        assert productivity_locally_uniform(table_system("ab", tables, "a"))

    @SETTINGS
    @given(st.lists(st.integers(0, 3), min_size=1, max_size=4).filter(lambda ws: ws[0] >= 1).flatmap(
        lambda ws: systems(max_letters=4, uniform=ws)))
    def test_agrees_with_fuel(self, spec):
        letters, tables = spec
        sys = make_system(letters, tables, "a")
        decided = productivity_locally_uniform(sys)
        verdict = productivity_fuel(sys, 400, 200_000)
        if isinstance(verdict, FiniteLimit):
            assert not decided
        elif isinstance(verdict, Productive):
            assert decided
        else:
            # still growing after the budget: must be productive
            assert decided


class TestAutomatic:
    def test_two_uniform_example(self):
        sys = table_system("01", [{"0": "0 1", "1": "1 0"}, {"0": "0 0", "1": "1 1"}], "0")
        pres = to_automatic(sys)
        got = pres.prefix(12)
        assert len(got) == 2**12
        assert got == limit_prefix(sys, 2**12)

    def test_plain_d0l(self):
        sys = table_system("01", [{"0": "0 1", "1": "1 0"}], "0")
        pres = to_automatic(sys)
        assert len(pres.pairs) == 2
        assert text(pres.prefix(4)) == "0110100110010110"

    def test_kolakoski_rejected(self):
        with pytest.raises(NotUniformError):
            to_automatic(gallery.kolakoski())

    @settings(max_examples=20, deadline=None)
    @given(st.integers(2, 3), st.integers(1, 4), st.data())
    def test_random_globally_uniform(self, k, p, data):
        letters, tables = data.draw(systems(uniform=[k] * p))
        sys = make_system(letters, tables, "a")
        pres = to_automatic(sys)
        n_iter = 12 if k == 2 else 8
        got = pres.prefix(n_iter)
        assert got == limit_prefix(sys, len(got))


class TestTextFormat:
    def test_round_trip(self):
        for sys in (gallery.kolakoski(), gallery.arshon(), gallery.erasing_example()):
            out = format_system(sys)
            again = parse_system(out)
            assert format_system(again) == out
            assert limit_prefix(again, 200) == limit_prefix(sys, 200)

    def test_missing_rule(self):
        with pytest.raises(ParseError):
            parse_system("alphabet: a b\nseed: a\nh0: a -> a b\n")

    def test_duplicate_rule(self):
        with pytest.raises(ParseError):
            parse_system("alphabet: a\nseed: a\nh0: a -> a\nh0: a -> a a\n")

    def test_eps_image(self):
        sys = parse_system("alphabet: a b\nseed: a\nh0: a -> a b\nh0: b -> eps  # erased\n")
        assert text(limit_prefix(sys, 10)) == "ab"
