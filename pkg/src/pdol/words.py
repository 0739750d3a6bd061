"""Alphabets, run-length compressed words, lazy prefixes and factor counting.

Words are stored as tuples of ``(ordinal, count)`` runs so that padding
blocks of hundreds of thousands of identical symbols cost one entry.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import accumulate
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import AlphabetError, InsufficientPrefixError

PAD = "_"
EMPTY_TEXT = "eps"

Run = tuple[int, int]


class Alphabet:
    """An ordered set of tokens; each token gets the ordinal of its position."""

    __slots__ = ("symbols", "index")

    def __init__(self, symbols: Iterable[str]):
        symbols = tuple(symbols)
        index = {}
        for k, tok in enumerate(symbols):
            if not isinstance(tok, str) or not tok or any(ch.isspace() for ch in tok):
                raise AlphabetError(f"invalid token {tok!r}")
            if tok in index:
                raise AlphabetError(f"duplicate token {tok!r}")
            index[tok] = k
        self.symbols = symbols
        self.index = index

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, tok):
        return tok in self.index

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.symbols == other.symbols

    def __hash__(self):
        return hash(self.symbols)

    def __repr__(self):
        return f"Alphabet({list(self.symbols)!r})"

    def ordinal(self, tok: str) -> int:
        try:
            return self.index[tok]
        except KeyError:
            raise AlphabetError(f"symbol {tok!r} not in {self!r}") from None

    def subset(self, keep: Iterable[str]) -> "Alphabet":
        """Sub-alphabet restricted to ``keep``, preserving this alphabet's order."""
        keep = set(keep)
        for tok in keep:
            self.ordinal(tok)
        return Alphabet(t for t in self.symbols if t in keep)

    def extend(self, *tokens: str) -> "Alphabet":
        return Alphabet(self.symbols + tokens)


def merge_runs(runs: Iterable[Run]) -> list[Run]:
    """Drop empty runs and fuse neighbours carrying the same ordinal."""
    out: list[Run] = []
    for sym, cnt in runs:
        if cnt <= 0:
            continue
        if out and out[-1][0] == sym:
            out[-1] = (sym, out[-1][1] + cnt)
        else:
            out.append((sym, cnt))
    return out


def append_runs(dst: list, runs: Iterable[Run]) -> None:
    """In-place version of :func:`merge_runs` appending onto ``dst``."""
    for sym, cnt in runs:
        if cnt <= 0:
            continue
        if dst and dst[-1][0] == sym:
            dst[-1] = (sym, dst[-1][1] + cnt)
        else:
            dst.append((sym, cnt))


class Word:
    """An immutable finite word over an :class:`Alphabet`."""

    __slots__ = ("alphabet", "runs", "_ends")

    def __init__(self, alphabet: Alphabet, runs: Iterable[Run] = ()):
        runs = tuple(merge_runs(runs))
        n = len(alphabet)
        for sym, _ in runs:
            if not 0 <= sym < n:
                raise AlphabetError(f"ordinal {sym} outside alphabet of size {n}")
        self.alphabet = alphabet
        self.runs = runs
        self._ends = None

    # constructors

    @classmethod
    def from_tokens(cls, alphabet: Alphabet, tokens: Iterable[str]) -> "Word":
        return cls(alphabet, ((alphabet.ordinal(t), 1) for t in tokens))

    @classmethod
    def from_ordinals(cls, alphabet: Alphabet, ordinals: Iterable[int]) -> "Word":
        return cls(alphabet, ((int(o), 1) for o in ordinals))

    @classmethod
    def parse(cls, alphabet: Alphabet, text: str) -> "Word":
        """Parse the literal text form.

        Tokens are whitespace separated; ``tok^k`` repeats a token; ``eps``
        is the empty word.  A single glued token such as ``0110`` is split
        into characters when every character is a symbol.
        """
        runs = []
        for raw in text.split():
            if raw == EMPTY_TEXT:
                continue
            tok, _, rep = raw.partition("^")
            count = int(rep) if rep else 1
            if tok in alphabet.index:
                runs.append((alphabet.index[tok], count))
            elif not rep and all(ch in alphabet.index for ch in tok):
                runs.extend((alphabet.index[ch], 1) for ch in tok)
            else:
                raise AlphabetError(f"symbol {tok!r} not in {alphabet!r}")
        return cls(alphabet, runs)

    # basic protocol

    @property
    def ends(self) -> list[int]:
        if self._ends is None:
            self._ends = list(accumulate(c for _, c in self.runs))
        return self._ends

    def __len__(self):
        return self.ends[-1] if self.runs else 0

    def __bool__(self):
        return bool(self.runs)

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.alphabet == other.alphabet and self.runs == other.runs

    def __hash__(self):
        return hash((self.alphabet, self.runs))

    def __iter__(self) -> Iterator[str]:
        syms = self.alphabet.symbols
        for sym, cnt in self.runs:
            tok = syms[sym]
            for _ in range(cnt):
                yield tok

    def ordinals(self) -> Iterator[int]:
        for sym, cnt in self.runs:
            for _ in range(cnt):
                yield sym

    def to_array(self, dtype=np.int16) -> np.ndarray:
        if not self.runs:
            return np.zeros(0, dtype=dtype)
        syms, counts = zip(*self.runs)
        return np.repeat(np.asarray(syms, dtype=dtype), np.asarray(counts, dtype=np.int64))

    def __getitem__(self, key):
        if isinstance(key, slice):
            start, stop, step = key.indices(len(self))
            if step != 1:
                return Word.from_ordinals(self.alphabet, list(self.ordinals())[key])
            return self._slice(start, stop)
        n = len(self)
        if key < 0:
            key += n
        if not 0 <= key < n:
            raise IndexError(key)
        return self.alphabet.symbols[self.runs[bisect_right(self.ends, key)][0]]

    def _slice(self, start: int, stop: int) -> "Word":
        if stop <= start:
            return Word(self.alphabet)
        ends = self.ends
        i = bisect_right(ends, start)
        j = bisect_right(ends, stop - 1)
        out = []
        for k in range(i, j + 1):
            sym, cnt = self.runs[k]
            lo = ends[k] - cnt
            out.append((sym, min(ends[k], stop) - max(lo, start)))
        return Word(self.alphabet, out)

    def __add__(self, other: "Word") -> "Word":
        _same_alphabet(self, other)
        return Word(self.alphabet, self.runs + other.runs)

    def __repr__(self):
        text = str(self)
        if len(text) > 80:
            text = text[:77] + "..."
        return f"Word({text!r})"

    def __str__(self):
        return format_word(self)

    def count(self, tok: str) -> int:
        sym = self.alphabet.ordinal(tok)
        return sum(c for s, c in self.runs if s == sym)

    def is_prefix_of(self, other: "Word") -> bool:
        return lcp_length(self, other) == len(self)

    def compact(self) -> str:
        """Characters glued together; only sensible for one-character tokens."""
        return "".join(self)


def format_word(w: Word, compress: bool = False) -> str:
    """Render ``w`` in the literal text form (``tok^k`` when ``compress``)."""
    if not w.runs:
        return EMPTY_TEXT
    syms = w.alphabet.symbols
    parts = []
    for sym, cnt in w.runs:
        if compress and cnt > 1:
            parts.append(f"{syms[sym]}^{cnt}")
        else:
            parts.extend([syms[sym]] * cnt)
    return " ".join(parts)


def _same_alphabet(u: Word, v: Word) -> None:
    if u.alphabet != v.alphabet:
        raise AlphabetError("words over different alphabets")


def lcp_length(u: Word, v: Word) -> int:
    _same_alphabet(u, v)
    n = 0
    ru, rv = list(u.runs), list(v.runs)
    i = j = 0
    # remaining counts within the current runs
    cu = ru[0][1] if ru else 0
    cv = rv[0][1] if rv else 0
    while i < len(ru) and j < len(rv):
        if ru[i][0] != rv[j][0]:
            return n
        step = min(cu, cv)
        n += step
        cu -= step
        cv -= step
        if cu == 0:
            i += 1
            cu = ru[i][1] if i < len(ru) else 0
        if cv == 0:
            j += 1
            cv = rv[j][1] if j < len(rv) else 0
    return n


def longest_common_prefix(u: Word, v: Word) -> tuple[int, Fraction]:
    """Length ``n`` of the longest common prefix and the distance ``2**-n``."""
    n = lcp_length(u, v)
    return n, Fraction(1, 2**n)


def run_lengths(w: Word) -> list[tuple[str, int]]:
    """Maximal blocks of identical symbols as ``(symbol, length)`` pairs."""
    syms = w.alphabet.symbols
    return [(syms[s], c) for s, c in w.runs]


def erase_letters(w: Word, keep: Iterable[str]) -> Word:
    """Subsequence of ``w`` over ``keep``, re-expressed over the sub-alphabet."""
    sub = w.alphabet.subset(keep)
    remap = {w.alphabet.index[t]: sub.index[t] for t in sub.symbols}
    return Word(sub, ((remap[s], c) for s, c in w.runs if s in remap))


@dataclass(frozen=True)
class ComplexityProfile:
    """Factor counts ``p(n)`` for ``n = 0 .. max_n`` of a finite prefix."""

    counts: dict[int, int]
    max_n: int
    prefix_length: int

    def __getitem__(self, n: int) -> int:
        return self.counts[n]

    def items(self):
        return sorted(self.counts.items())


def _count_factors(arr: np.ndarray, n: int, radix: int) -> int:
    m = arr.size - n + 1
    if n == 0:
        return 1
    if m <= 0:
        return 0
    if radix ** n < 2**62:
        codes = np.zeros(m, dtype=np.int64)
        for k in range(n):
            codes *= radix
            codes += arr[k:k + m]
        return int(np.unique(codes).size)
    windows = np.lib.stride_tricks.sliding_window_view(arr, n)
    return int(np.unique(windows, axis=0).shape[0])


def subword_complexity(prefix: Word, n_max: int) -> ComplexityProfile:
    """Number of distinct length-``n`` factors of ``prefix`` for every ``n <= n_max``."""
    length = len(prefix)
    if n_max > length:
        raise InsufficientPrefixError(f"n_max={n_max} exceeds prefix length {length}")
    arr = prefix.to_array(np.int64)
    radix = max(len(prefix.alphabet), 1)
    counts = {n: _count_factors(arr, n, radix) for n in range(n_max + 1)}
    return ComplexityProfile(counts, n_max, length)


@dataclass
class StreamCursor:
    """Incremental reader over a (possibly infinite) word.

    ``chunks`` yields lists of runs in order; the cursor records everything
    it has seen, so symbols once emitted never change.
    """

    alphabet: Alphabet
    chunks: Iterator[Sequence[Run]]
    produced: int = 0
    _runs: list = field(default_factory=list)
    _available: int = 0
    _exhausted: bool = False

    @property
    def exhausted(self) -> bool:
        return self._exhausted and self.produced == self._available

    @property
    def total_length(self) -> int | None:
        return self._available if self._exhausted else None

    @property
    def status(self) -> str:
        return f"exhausted({self._available})" if self.exhausted else "more-available"

    def _fill(self, target: int) -> None:
        while self._available < target and not self._exhausted:
            try:
                chunk = next(self.chunks)
            except StopIteration:
                self._exhausted = True
                return
            for sym, cnt in chunk:
                if cnt > 0:
                    self._available += cnt
            append_runs(self._runs, chunk)

    def available(self) -> int:
        """Symbols generated so far, emitted or not."""
        return self._available

    def pull(self, n: int) -> Word:
        """Emit the next ``n`` symbols (fewer if the word ends)."""
        self._fill(self.produced + n)
        stop = min(self.produced + n, self._available)
        out = self.materialized()[self.produced:stop]
        self.produced = stop
        return out

    def prefix(self, n: int) -> Word:
        """The first ``n`` symbols, pulling as needed."""
        if n > self.produced:
            self.pull(n - self.produced)
        return self.materialized()[:min(n, self._available)]

    def materialized(self) -> Word:
        return Word(self.alphabet, self._runs)
