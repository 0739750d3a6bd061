"""Checks that a generated prefix carries a target word, plus complexity reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .words import (
    Alphabet,
    ComplexityProfile,
    StreamCursor,
    Word,
    erase_letters,
    lcp_length,
    subword_complexity,
)


@dataclass(frozen=True)
class Violation:
    position: int
    condition: str

    def __str__(self):
        return f"violation({self.position}, {self.condition})"


@dataclass
class EmbeddingReport:
    mode: str
    verdict: str | Violation
    marked_words: list[Word] = field(default_factory=list)
    recovered: Word | None = None
    witnessed: list[int] = field(default_factory=list)
    examined: int = 0

    @property
    def consistent(self) -> bool:
        return self.verdict == "consistent"

    def render(self) -> str:
        lines = [
            f"mode: {self.mode}",
            f"verdict: {self.verdict}",
            f"examined: {self.examined}",
        ]
        if self.mode == "prefix":
            lines.append(f"marked: {len(self.marked_words)}")
            lines.append("witnessed: " + " ".join(map(str, self.witnessed)))
            if self.marked_words:
                lines.append(f"longest: {_digits(self.marked_words[-1])}")
        elif self.recovered is not None:
            lines.append(f"recovered: {_digits(self.recovered)}")
        return "\n".join(lines) + "\n"


def _digits(w: Word) -> str:
    return "".join(w) or "eps"


def _runs(u: Word):
    """``(position, token, count)`` for each run of ``u``."""
    pos = 0
    syms = u.alphabet.symbols
    for x, c in u.runs:
        yield pos, syms[x], c
        pos += c


def _marked_spans(u: Word, l: str, r: str) -> list[tuple[int, list[str]]]:
    spans = []
    start = None
    body: list[str] = []
    for pos, tok, cnt in _runs(u):
        if tok == l:
            start, body = pos + cnt - 1, []
        elif tok == r:
            if start is not None:
                spans.append((start, body))
            start = None
        elif start is not None:
            body.extend([tok] * cnt)
    return spans


def extract_marked(u: Word, l: str, r: str, sigma: Alphabet | None = None) -> list[Word]:
    """Bodies ``v`` of the factors ``l v r`` of ``u``, in order.

    An ``l`` with no closing ``r`` yet is ignored; a later ``l`` restarts
    the body.  Bodies are re-expressed over ``sigma`` when given.
    """
    if l == r:
        raise ValueError("markers must differ")
    out = []
    for _, body in _marked_spans(u, l, r):
        if sigma is None:
            out.append(Word.from_tokens(u.alphabet, body))
        else:
            out.append(Word.from_tokens(sigma, body))
    return out


def check_prefix_embedding(
    u: Word,
    w: Word,
    sigma: Iterable[str],
    l: str = "l",
    r: str = "r",
    shields: Iterable[tuple[str, str]] = (),
) -> EmbeddingReport:
    """Check the three prefix-embedding conditions on a finite prefix ``u``.

    (ii) each marked body is a prefix of ``w``; (iii) letters of ``sigma``
    appear only inside marked blocks.  For (i) only the set of prefix
    lengths actually witnessed can be reported.

    ``shields`` lists extra marker pairs whose blocks may also hold
    ``sigma`` letters.  Their bodies are held to (ii) as well but are not
    reported as marked words.  The encodings need ``("L", "R")`` here since
    every other line carries the digits between upper-case markers.
    """
    sigma = list(sigma)
    closers = {l: r, **dict(shields)}
    if set(sigma) & (set(closers) | set(closers.values())):
        raise ValueError("markers must not belong to the target alphabet")
    target = set(sigma)
    sub = Alphabet(sigma) if w.alphabet.symbols != tuple(sigma) else w.alphabet
    marked: list[Word] = []
    witnessed: set[int] = set()
    verdict: str | Violation = "consistent"
    opener = None
    body: list[str] = []
    body_start = 0
    w_tokens = list(w)
    for pos, tok, cnt in _runs(u):
        if tok in closers:
            opener, body, body_start = tok, [], pos + cnt
        elif opener is not None and tok == closers[opener]:
            # only the overlap with the known part of w can be judged
            n = min(len(body), len(w_tokens))
            k = next((j for j in range(n) if body[j] != w_tokens[j]), n)
            if k < n:
                verdict = Violation(body_start + k, "ii")
                break
            if opener == l:
                marked.append(Word.from_tokens(sub, body))
                witnessed.add(len(body))
            opener = None
        elif opener is not None:
            body.extend([tok] * cnt)
        elif tok in target:
            verdict = Violation(pos, "iii")
            break
    return EmbeddingReport(
        "prefix", verdict, marked, None, sorted(witnessed), len(u)
    )


def check_sparse_embedding(u: Word, w: Word, sigma: Iterable[str]) -> EmbeddingReport:
    """Erase everything outside ``sigma`` and compare with ``w`` up to the shorter length."""
    sigma = list(sigma)
    keep = [t for t in u.alphabet if t in set(sigma)]
    recovered = erase_letters(u, keep) if keep else Word(Alphabet(sigma))
    rec = list(recovered)
    tgt = list(w)
    n = min(len(rec), len(tgt))
    k = next((j for j in range(n) if rec[j] != tgt[j]), n)
    verdict: str | Violation = "consistent" if k == n else Violation(k, "sparse")
    return EmbeddingReport("sparse", verdict, [], recovered, [], len(u))


@dataclass(frozen=True)
class ComplexityReport:
    profile: ComplexityProfile
    exponential: dict[int, bool]
    truncated: bool

    def flagged(self) -> list[int]:
        return [n for n, f in sorted(self.exponential.items()) if f]


def complexity_report(cursor: StreamCursor, prefix_len: int, n_max: int) -> ComplexityReport:
    """Pull ``prefix_len`` symbols and flag every ``n`` with ``p(n) >= 2^n``."""
    if prefix_len < n_max:
        raise ValueError("prefix_len must be at least n_max")
    prefix = cursor.prefix(prefix_len)
    truncated = len(prefix) < prefix_len
    profile = subword_complexity(prefix, min(n_max, len(prefix)))
    flags = {n: c >= 2**n for n, c in profile.items()}
    return ComplexityReport(profile, flags, truncated)


def chain_ok(words: list[Word]) -> bool:
    """True when each word is a prefix of the next."""
    return all(lcp_length(a, b) == len(a) for a, b in zip(words, words[1:]))
