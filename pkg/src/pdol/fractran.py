"""Fractran: ordered fraction lists acting on unbounded naturals."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import lcm
from typing import Iterable, Iterator, Mapping

from sympy import factorint, isprime

from .errors import (
    FractranDomainError,
    InvalidMappingError,
    ParseError,
    ReservedPrimeError,
)
from .words import Alphabet, Word

BITS = Alphabet(["0", "1"])


@dataclass(frozen=True)
class Fraction:
    """``num/den`` kept exactly as written (never reduced)."""

    num: int
    den: int

    def __post_init__(self):
        if self.num < 1 or self.den < 1:
            raise ValueError(f"fraction {self.num}/{self.den} needs positive parts")

    def __str__(self):
        return f"{self.num}/{self.den}"

    @classmethod
    def parse(cls, text: str) -> "Fraction":
        a, sep, b = text.partition("/")
        if not sep:
            return cls(int(a), 1)
        return cls(int(a), int(b))


@dataclass(frozen=True)
class FractranProgram:
    fractions: tuple[Fraction, ...]
    note: str = ""

    def __init__(self, fractions: Iterable[Fraction | tuple[int, int] | str], note: str = ""):
        fr = []
        for f in fractions:
            if isinstance(f, str):
                f = Fraction.parse(f)
            elif isinstance(f, tuple):
                f = Fraction(*f)
            fr.append(f)
        object.__setattr__(self, "fractions", tuple(fr))
        object.__setattr__(self, "note", note)

    def __len__(self):
        return len(self.fractions)

    def __iter__(self):
        return iter(self.fractions)

    def __getitem__(self, i):
        return self.fractions[i]

    def __str__(self):
        return " ".join(str(f) for f in self.fractions)

    @property
    def denominators(self) -> list[int]:
        return [f.den for f in self.fractions]

    def common_denominator(self) -> int | None:
        dens = set(self.denominators)
        return dens.pop() if len(dens) == 1 else None

    def primes(self) -> set[int]:
        out: set[int] = set()
        for f in self.fractions:
            out.update(factorint(f.num))
            out.update(factorint(f.den))
        return out


@dataclass
class RunTrace:
    values: list[int] = field(default_factory=list)
    halted: bool = False

    @property
    def steps(self) -> int:
        return max(len(self.values) - 1, 0)


@dataclass(frozen=True)
class ValuationVector:
    primes: tuple[int, ...]
    exponents: tuple[int, ...]

    @classmethod
    def of(cls, n: int, primes: Iterable[int]) -> "ValuationVector":
        primes = tuple(primes)
        return cls(primes, tuple(valuation(n, p) for p in primes))


def valuation(n: int, p: int) -> int:
    """Exponent of the prime ``p`` in ``n >= 1``."""
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _select(prog: FractranProgram, n: int) -> int | None:
    for i, f in enumerate(prog.fractions):
        if (n * f.num) % f.den == 0:
            return i
    return None


def psi(prog: FractranProgram, n: int) -> int | None:
    """1-based index of the first fraction making ``n`` integral, or ``None``."""
    if n < 1:
        raise FractranDomainError("psi needs N >= 1")
    i = _select(prog, n)
    return None if i is None else i + 1


def step(prog: FractranProgram, n: int) -> int | None:
    i = _select(prog, n)
    if i is None:
        return None
    f = prog.fractions[i]
    return n * f.num // f.den


def iter_values(prog: FractranProgram, n0: int) -> Iterator[int]:
    """Successor values ``P(N0), P^2(N0), ...`` until the program halts."""
    if n0 < 1:
        raise FractranDomainError("start value must be >= 1")
    n = n0
    while True:
        n = step(prog, n)
        if n is None:
            return
        yield n


def run(prog: FractranProgram, n0: int, fuel: int) -> RunTrace:
    """Execute at most ``fuel`` steps from ``n0``; ``halted`` only on a genuine halt."""
    trace = RunTrace([n0])
    it = iter_values(prog, n0)
    for _ in range(fuel):
        nxt = next(it, None)
        if nxt is None:
            trace.halted = True
            return trace
        trace.values.append(nxt)
    if step(prog, trace.values[-1]) is None:
        trace.halted = True
    return trace


def digit_of(n: int) -> str | None:
    """0 for multiples of 3, else 1 for multiples of 5, else nothing."""
    if n % 3 == 0:
        return "0"
    if n % 5 == 0:
        return "1"
    return None


def output_word(prog: FractranProgram, fuel: int, start: int = 2) -> tuple[Word, bool]:
    """Digits read from the successor values of the run from ``start``.

    Returns the word and whether the run halted (as opposed to running
    out of fuel).
    """
    trace = run(prog, start, fuel)
    digits = [d for d in map(digit_of, trace.values[1:]) if d is not None]
    return Word.from_tokens(BITS, digits), trace.halted


def output_digits(prog: FractranProgram, count: int, max_steps: int, start: int = 2) -> str:
    """Up to ``count`` output digits, spending at most ``max_steps`` steps."""
    out = []
    for k, n in enumerate(iter_values(prog, start)):
        if k >= max_steps or len(out) >= count:
            break
        d = digit_of(n)
        if d is not None:
            out.append(d)
    return "".join(out)


# program transformations


def _substitute(n: int, mapping: Mapping[int, int]) -> int:
    out = 1
    for p, e in factorint(n).items():
        if p not in mapping:
            raise InvalidMappingError(f"prime {p} has no image")
        out *= mapping[p] ** e
    return out


def rename_primes(prog: FractranProgram, mapping: Mapping[int, int]) -> FractranProgram:
    """Substitute primes uniformly in every numerator and denominator."""
    targets = list(mapping.values())
    if len(set(targets)) != len(targets):
        raise InvalidMappingError("mapping is not injective")
    for src, dst in mapping.items():
        if not isprime(src) or not isprime(dst):
            raise InvalidMappingError(f"{src} -> {dst} is not prime to prime")
    return FractranProgram(
        (Fraction(_substitute(f.num, mapping), _substitute(f.den, mapping)) for f in prog),
        note=prog.note,
    )


def halting_to_letter(prog: FractranProgram) -> FractranProgram:
    """Program whose output contains a 1 iff ``prog`` halts on 7.

    Wraps ``prog`` as ``21/2, prog..., 5/3, 1/1``: the start 2 becomes
    ``3 * 7``, the factor 3 rides along (emitting 0s) while ``prog`` runs,
    and once ``prog`` is stuck ``5/3`` swaps it for a 5 and ``1/1`` repeats
    that value forever (emitting 1s).
    """
    for f in prog:
        for p in (2, 3, 5):
            if f.num % p == 0 or f.den % p == 0:
                raise ReservedPrimeError(f"fraction {f} uses prime {p}")
    return FractranProgram(
        [Fraction(21, 2), *prog.fractions, Fraction(5, 3), Fraction(1, 1)],
        note="halting-to-letter",
    )


def normalize_denominator(prog: FractranProgram) -> FractranProgram:
    """Rewrite over the least common denominator ``d``: ``n/b -> (n*d/b)/d``."""
    if not prog.fractions:
        return prog
    d = lcm(*prog.denominators)
    return FractranProgram((Fraction(f.num * d // f.den, d) for f in prog), note=prog.note)


# text format

_FRACTION = re.compile(r"^(\d+)/(\d+)$")


def parse_program(text: str) -> FractranProgram:
    """Whitespace separated ``a/b`` entries; ``#`` starts a comment."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        for m in re.finditer(r"\S+", body):
            tok = m.group()
            fm = _FRACTION.match(tok)
            if not fm:
                raise ParseError(f"malformed fraction {tok!r}", lineno, m.start() + 1)
            a, b = int(fm.group(1)), int(fm.group(2))
            if a == 0 or b == 0:
                raise ParseError(f"zero in fraction {tok!r}", lineno, m.start() + 1)
            out.append(Fraction(a, b))
    return FractranProgram(out)


def format_program(prog: FractranProgram) -> str:
    return str(prog) + "\n"
