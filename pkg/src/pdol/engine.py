"""Periodically iterated morphisms.

A system ``<Σ, (h_0..h_{p-1}), s>`` rewrites position ``j`` of a word with
``h_{j mod p}``.  Images are kept as run lists so that systems whose
images contain long padding blocks stay cheap to iterate.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .errors import (
    AlphabetError,
    NotUniformError,
    ParseError,
    SeedNotPrefixError,
)
from .words import (
    EMPTY_TEXT,
    Alphabet,
    Run,
    StreamCursor,
    Word,
    append_runs,
    format_word,
    lcp_length,
    merge_runs,
)

Rule = Callable[[int, int], Sequence[Run]]


class Morphism:
    """A letter-to-word map ``h: Σ -> Σ*`` given by a table of images."""

    def __init__(self, alphabet: Alphabet, images: dict[str, Word | str]):
        table = {}
        for tok, img in images.items():
            alphabet.ordinal(tok)
            if isinstance(img, str):
                img = Word.parse(alphabet, img)
            if img.alphabet != alphabet:
                raise AlphabetError(f"image of {tok!r} over a different alphabet")
            table[tok] = img
        missing = [t for t in alphabet if t not in table]
        if missing:
            raise AlphabetError(f"no image for {missing!r}")
        self.alphabet = alphabet
        self.images = table
        self._by_ordinal = tuple(table[t].runs for t in alphabet)

    def __call__(self, w: Word) -> Word:
        out: list = []
        for sym, cnt in w.runs:
            for _ in range(cnt):
                append_runs(out, self._by_ordinal[sym])
        return Word(self.alphabet, out)

    def image(self, tok: str) -> Word:
        return self.images[tok]

    @property
    def erasing(self) -> bool:
        return any(len(img) == 0 for img in self.images.values())

    @property
    def width(self) -> int | None:
        """Common image length when the morphism is uniform, else ``None``."""
        widths = {len(img) for img in self.images.values()}
        return widths.pop() if len(widths) == 1 else None

    def __eq__(self, other):
        return isinstance(other, Morphism) and self.images == other.images

    def __repr__(self):
        body = ", ".join(f"{t}->{format_word(w)}" for t, w in self.images.items())
        return f"Morphism({body})"


@dataclass(frozen=True)
class Productive:
    pass


@dataclass(frozen=True)
class FiniteLimit:
    length: int


@dataclass(frozen=True)
class Unknown:
    fuel: int


ProductivityVerdict = Productive | FiniteLimit | Unknown


@dataclass(frozen=True)
class Line:
    """One block ``v_n`` of the limit together with its start position ``z``."""

    index: int
    start: int
    word: Word

    @property
    def residue(self) -> int:
        return self.start


class PdolSystem:
    """A tuple of ``p`` morphisms applied periodically, iterated from a seed.

    Either pass ``morphisms`` (a sequence of :class:`Morphism`) or a
    functional ``rule(i, ordinal) -> runs`` together with ``period``.
    The seed condition ``s ⪯ H(s)`` is checked on construction.
    """

    CACHE_LIMIT = 200_000

    def __init__(
        self,
        alphabet: Alphabet,
        morphisms: Sequence[Morphism] | None = None,
        seed: Word | str = "",
        *,
        rule: Rule | None = None,
        period: int | None = None,
        check_seed: bool = True,
    ):
        if isinstance(seed, str):
            seed = Word.parse(alphabet, seed)
        if seed.alphabet != alphabet:
            raise AlphabetError("seed over a different alphabet")
        if len(seed) == 0:
            raise SeedNotPrefixError("seed must be non-empty")
        if morphisms is not None:
            morphisms = tuple(morphisms)
            if not morphisms:
                raise ValueError("need at least one morphism")
            for h in morphisms:
                if h.alphabet != alphabet:
                    raise AlphabetError("morphism over a different alphabet")
            period = len(morphisms)
            tables = [h._by_ordinal for h in morphisms]
            rule = lambda i, a: tables[i][a]  # noqa: E731
        elif rule is None or period is None or period < 1:
            raise ValueError("give morphisms, or a rule with a positive period")
        self.alphabet = alphabet
        self.morphisms = morphisms
        self.period = period
        self.seed = seed
        self._rule = rule
        self._cache: dict = {}
        self._cycles: dict = {}
        if check_seed:
            image = self.apply(seed, 0)
            if lcp_length(seed, image) != len(seed):
                raise SeedNotPrefixError(
                    f"seed {format_word(seed)!r} is not a prefix of its image"
                )

    # image lookup

    def image_runs(self, i: int, sym: int) -> tuple:
        key = (i, sym)
        hit = self._cache.get(key)
        if hit is None:
            hit = tuple(merge_runs(self._rule(i, sym)))
            if len(self._cache) < self.CACHE_LIMIT:
                self._cache[key] = hit
        return hit

    def image(self, i: int, tok: str) -> Word:
        """``h_i(tok)`` as a word."""
        return Word(self.alphabet, self.image_runs(i % self.period, self.alphabet.ordinal(tok)))

    def morphism(self, i: int) -> Morphism:
        return Morphism(self.alphabet, {t: self.image(i, t) for t in self.alphabet})

    def _cycle(self, i: int, sym: int) -> list:
        key = (i, sym)
        hit = self._cycles.get(key)
        if hit is None:
            p = self.period
            hit = []
            for j in range(p):
                append_runs(hit, self.image_runs((i + j) % p, sym))
            if len(self._cycles) < self.CACHE_LIMIT:
                self._cycles[key] = hit
        return hit

    def run_image(self, start: int, sym: int, count: int, out: list) -> None:
        """Append the image of ``sym^count`` read from position ``start`` to ``out``."""
        p = self.period
        i = start % p
        full, rem = divmod(count, p)
        if full:
            cycle = self._cycle(i, sym)
            if len(cycle) == 1:
                append_runs(out, [(cycle[0][0], cycle[0][1] * full)])
            elif cycle:
                for _ in range(full):
                    append_runs(out, cycle)
        for j in range(rem):
            append_runs(out, self.image_runs((i + j) % p, sym))

    # the map H_i

    def apply(self, w: Word, start_index: int = 0) -> Word:
        """``H_i(w)``: position ``j`` of ``w`` is rewritten by ``h_{(i+j) mod p}``."""
        if w.alphabet != self.alphabet:
            raise AlphabetError("word over a different alphabet")
        out: list = []
        pos = start_index
        for sym, cnt in w.runs:
            self.run_image(pos, sym, cnt, out)
            pos += cnt
        return Word(self.alphabet, out)

    def iterate(self, n: int) -> Word:
        """``H^n(s)``."""
        w = self.seed
        for _ in range(n):
            w = self.apply(w, 0)
        return w

    # shape queries

    def widths(self) -> list[int] | None:
        """Per-morphism uniform widths ``k_i``, or ``None`` if some ``h_i`` is not uniform."""
        out = []
        for i in range(self.period):
            ws = {sum(c for _, c in self.image_runs(i, a)) for a in range(len(self.alphabet))}
            if len(ws) != 1:
                return None
            out.append(ws.pop())
        return out

    def __repr__(self):
        return (
            f"PdolSystem(|Σ|={len(self.alphabet)}, p={self.period}, "
            f"seed={format_word(self.seed)!r})"
        )


def apply_periodic(sys: PdolSystem, w: Word, start_index: int = 0) -> Word:
    return sys.apply(w, start_index)


# generation


def _limit_chunks(sys: PdolSystem) -> Iterator[list]:
    """Chunks of the limit word following the per-position extension scheme.

    Starting from ``H(s)``, position ``n`` (for ``n >= |s|``) contributes
    ``h_{n mod p}`` of the symbol found there.  Whole runs are handled at
    once; the scheme ends exactly when ``n`` reaches the current length.
    """
    first = sys.apply(sys.seed, 0)
    runs = list(first.runs)
    yield list(runs)
    total = len(first)
    n = len(sys.seed)
    # locate position n inside runs
    k, offset = 0, n
    while k < len(runs) and offset >= runs[k][1]:
        offset -= runs[k][1]
        k += 1
    while n < total:
        sym, cnt = runs[k]
        take = cnt - offset
        chunk: list = []
        sys.run_image(n, sym, take, chunk)
        n += take
        # runs[k] may grow by merging with the chunk; keep offset consistent
        append_runs(runs, chunk)
        added = sum(c for _, c in chunk)
        total += added
        if runs[k][1] > cnt:
            offset = cnt
        else:
            k += 1
            offset = 0
        if chunk:
            yield chunk


class LimitCursor(StreamCursor):
    """Cursor over ``H^ω(s)`` that also reports what generation has revealed."""

    def verdict(self) -> ProductivityVerdict:
        if self._exhausted:
            return FiniteLimit(self._available)
        return Unknown(self.produced)


def limit_cursor(sys: PdolSystem) -> LimitCursor:
    return LimitCursor(sys.alphabet, _limit_chunks(sys))


def generate_limit(sys: PdolSystem, max_symbols: int) -> tuple[LimitCursor, ProductivityVerdict]:
    """Generate up to ``max_symbols`` of the limit word.

    Returns a cursor positioned after the pulled symbols and the verdict
    known so far: ``FiniteLimit`` when the limit ended, else ``Unknown``.
    """
    cur = limit_cursor(sys)
    cur.pull(max_symbols)
    # one look-ahead so an exactly exhausted word is recognised as finite
    cur._fill(cur.produced + 1)
    return cur, cur.verdict()


def limit_prefix(sys: PdolSystem, n: int) -> Word:
    return limit_cursor(sys).prefix(n)


def iterate_lines(sys: PdolSystem, count: int | None = None) -> Iterator[Line]:
    """The blocks ``v_1, v_2, ...`` of the limit with absolute start positions.

    ``v_1`` is the tail of ``H(s)`` after ``s`` and ``v_n = H_{z}(v_{n-1})``
    where ``z`` is the start of ``v_{n-1}``.  Iteration stops after
    ``count`` lines or after the first empty line.
    """
    first = sys.apply(sys.seed, 0)
    z = len(sys.seed)
    v = first[z:]
    n = 1
    while count is None or n <= count:
        yield Line(n, z, v)
        if not v:
            return
        nxt = sys.apply(v, z)
        z += len(v)
        v = nxt
        n += 1


def productivity_fuel(
    sys: PdolSystem, fuel: int, max_symbols: int | None = None
) -> ProductivityVerdict:
    """Follow the line scheme for up to ``fuel`` lines.

    ``FiniteLimit`` as soon as a line is empty.  If a non-empty line recurs
    at the same residue mod ``p`` the lines cycle forever, so the verdict
    is ``Productive``.  Otherwise ``Unknown(fuel)``; this also happens once
    the lines so far hold more than ``max_symbols`` symbols.
    """
    seen = set()
    p = sys.period
    for line in iterate_lines(sys, fuel):
        if not line.word:
            return FiniteLimit(line.start)
        if max_symbols is not None and line.start + len(line.word) > max_symbols:
            break
        key = (line.start % p, line.word.runs)
        if key in seen:
            return Productive()
        seen.add(key)
    return Unknown(fuel)


def productivity_locally_uniform(sys: PdolSystem) -> bool:
    """Decide productivity of a locally uniform system.

    With ``s(n) = k_0 + ... + k_{n-1}`` (indices mod ``p``) the limit is
    infinite iff ``s(n) > n`` for every ``n >= |seed|``.  The excess
    ``s(n) - n`` changes by ``sum(k) - p`` per period, so one period
    starting at ``|seed|`` settles the question when that drift is
    non-negative.
    """
    widths = sys.widths()
    if widths is None:
        raise NotUniformError("some morphism is not uniform")
    p = sys.period
    if sum(widths) < p:
        return False
    q = len(sys.seed)
    s = sum(widths[j % p] for j in range(q))
    for n in range(q, q + p):
        if s <= n:
            return False
        s += widths[n % p]
    return True


# automatic presentation


@dataclass(frozen=True)
class AutomaticPresentation:
    """A k-uniform morphism ``g`` over pairs, its seed ``t`` and the coding ``τ``."""

    pairs: Alphabet
    g: Morphism
    coding: dict[str, str]
    seed: Word
    k: int
    source_alphabet: Alphabet

    def decode(self, w: Word) -> Word:
        return Word.from_tokens(self.source_alphabet, (self.coding[t] for t in w))

    def prefix(self, n_iter: int) -> Word:
        """``τ(g^n(t))``."""
        w = self.seed
        for _ in range(n_iter):
            w = self.g(w)
        return self.decode(w)


def pair_token(i: int, tok: str) -> str:
    return f"{i}:{tok}"


def to_automatic(sys: PdolSystem) -> AutomaticPresentation:
    widths = sys.widths()
    if widths is None or len(set(widths)) != 1:
        raise NotUniformError("system is not globally uniform")
    k = widths[0]
    if k < 2:
        raise NotUniformError(f"uniform width {k} < 2")
    p = sys.period
    syms = sys.alphabet.symbols
    pairs = Alphabet(pair_token(i, t) for i in range(p) for t in syms)
    images = {}
    for i in range(p):
        for a, tok in enumerate(syms):
            body = [o for o, c in sys.image_runs(i, a) for _ in range(c)]
            images[pair_token(i, tok)] = Word.from_tokens(
                pairs, (pair_token((k * i + j) % p, syms[b]) for j, b in enumerate(body))
            )
    g = Morphism(pairs, images)
    seed = Word.from_tokens(pairs, (pair_token(j % p, t) for j, t in enumerate(sys.seed)))
    coding = {pair_token(i, t): t for i in range(p) for t in syms}
    return AutomaticPresentation(pairs, g, coding, seed, k, sys.alphabet)


# text format

_RULE = re.compile(r"^h(\d+)\s*:\s*(\S+)\s*->\s*(.*)$")


def parse_system(text: str) -> PdolSystem:
    """Read the line-oriented system format (``alphabet:``, ``seed:``, ``h<i>: a -> w``)."""
    alphabet = None
    seed_text = None
    rules: dict[tuple[int, str], tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("alphabet:"):
            try:
                alphabet = Alphabet(line[len("alphabet:"):].split())
            except AlphabetError as exc:
                raise ParseError(str(exc), lineno) from None
            continue
        if line.startswith("seed:"):
            seed_text = line[len("seed:"):].strip()
            continue
        m = _RULE.match(line)
        if not m:
            raise ParseError(f"cannot read {line!r}", lineno)
        key = (int(m.group(1)), m.group(2))
        if key in rules:
            raise ParseError(f"duplicate rule for h{key[0]}({key[1]})", lineno)
        rules[key] = (m.group(3).strip(), lineno)
    if alphabet is None or seed_text is None:
        raise ParseError("missing alphabet or seed line")
    period = max((i for i, _ in rules), default=-1) + 1
    if period == 0:
        raise ParseError("no rules")
    morphisms = []
    for i in range(period):
        images = {}
        for tok in alphabet:
            if (i, tok) not in rules:
                raise ParseError(f"no rule for h{i}({tok})")
            body, lineno = rules.pop((i, tok))
            try:
                images[tok] = Word.parse(alphabet, body)
            except AlphabetError as exc:
                raise ParseError(str(exc), lineno) from None
        morphisms.append(Morphism(alphabet, images))
    if rules:
        (i, tok), (_, lineno) = next(iter(rules.items()))
        raise ParseError(f"symbol {tok!r} not in alphabet", lineno)
    try:
        seed = Word.parse(alphabet, seed_text)
    except AlphabetError as exc:
        raise ParseError(str(exc)) from None
    return PdolSystem(alphabet, morphisms, seed)


def format_system(sys: PdolSystem, max_period: int | None = None) -> str:
    if max_period is not None and sys.period > max_period:
        raise ValueError(f"period {sys.period} exceeds export cap {max_period}")
    lines = [
        "alphabet: " + " ".join(sys.alphabet),
        "seed: " + format_word(sys.seed),
    ]
    for i in range(sys.period):
        for tok in sys.alphabet:
            img = sys.image(i, tok)
            lines.append(f"h{i}: {tok} -> {format_word(img) if img else EMPTY_TEXT}")
    return "\n".join(lines) + "\n"


def table_system(
    alphabet: Alphabet | Iterable[str],
    tables: Sequence[dict[str, str]],
    seed: str,
) -> PdolSystem:
    """Convenience constructor from per-morphism dicts of literal images."""
    if not isinstance(alphabet, Alphabet):
        alphabet = Alphabet(alphabet)
    return PdolSystem(alphabet, [Morphism(alphabet, t) for t in tables], seed)
