"""Periodic systems built from Fractran programs.

All three constructions use ``p = d`` morphisms, where ``d`` is the common
denominator of the program, and rely on the fact that the first fraction
applicable to ``N`` depends only on ``N mod d``.  Morphism ``i`` therefore
"knows" which fraction fires for any value whose remainder is ``i``.

* ``productivity``: the limit is infinite iff the program runs forever on 2.
* ``prefix``: the output word appears, growing, between markers ``l`` and ``r``.
* ``sparse``: every output digit appears exactly once; erasing the other
  letters leaves the output word.

Images are computed on demand from ``(i, symbol)``, so a system with
``d = 210`` costs no more to build than one with ``d = 6``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .engine import PdolSystem
from .errors import (
    BadDenominatorError,
    FractranDomainError,
    NotNormalizedError,
    UnknownLetterError,
)
from .fractran import FractranProgram, _select
from .words import PAD, Alphabet, Word

MAX_PERIOD = 10_000
EXPORT_CAP = 64

GAMMA_PROD = Alphabet(["s", PAD, "a", "A", "b", "B"])
# "-" is the compensating block letter; each copy later becomes d pads.
GAMMA_PREFIX = Alphabet(
    ["s", PAD, "-", "a", "A", "b", "B", "z", "Z", "l", "L", "0", "1", "r", "R", "e", "E", "Q"]
)


class Mode(str, enum.Enum):
    PRODUCTIVITY = "productivity"
    PREFIX = "prefix"
    SPARSE = "sparse"


class KappaDigit(enum.Enum):
    ZERO = "0"
    ONE = "1"
    EMPTY = ""


def kappa(n: int) -> KappaDigit:
    """0 if 3 divides ``n``, 1 if 5 (but not 3) does, else nothing."""
    if n < 1:
        raise FractranDomainError("kappa needs N >= 1")
    if n % 3 == 0:
        return KappaDigit.ZERO
    if n % 5 == 0:
        return KappaDigit.ONE
    return KappaDigit.EMPTY


@dataclass(frozen=True)
class EncodedSystem:
    system: PdolSystem
    d: int
    mode: Mode
    source: FractranProgram

    @property
    def alphabet(self) -> Alphabet:
        return self.system.alphabet


def _denominator(prog: FractranProgram, max_period: int) -> int:
    d = prog.common_denominator()
    if d is None:
        raise NotNormalizedError("fractions do not share one denominator; normalize first")
    if d > max_period:
        raise ValueError(f"denominator {d} exceeds the period limit {max_period}")
    return d


def _selector(prog: FractranProgram, d: int) -> list[int | None]:
    """Numerator of the fraction firing on residue ``i`` (``None`` if none fires)."""
    nums = []
    for i in range(d):
        k = _select(prog, i)
        nums.append(None if k is None else prog.fractions[k].num)
    return nums


def encode_productivity(
    prog: FractranProgram, max_period: int = MAX_PERIOD
) -> EncodedSystem:
    """Six-letter system whose limit is infinite iff ``prog`` never halts on 2.

    Even lines hold ``a^N`` for the current value ``N``; odd lines hold one
    ``A`` per full block of ``d`` and a ``B`` sitting at index ``N mod d``.
    """
    d = _denominator(prog, max_period)
    if d < 2:
        raise NotNormalizedError("common denominator must be at least 2")
    num = _selector(prog, d)
    o = GAMMA_PROD.index
    s, sp, a, A, b, B = (o[t] for t in ("s", PAD, "a", "A", "b", "B"))

    def rule(i: int, x: int):
        if x == s:
            return [(s, 1), (sp, d - 1), (a, 2), (b, 1), (sp, d - 1)]
        if x == sp:
            return []
        if x == a:
            return [(A, 1), (sp, d - 1)] if i == d - 1 else []
        if x == b:
            return [(B, 1), (sp, d - 1 - i)]
        n = num[i]
        if n is None:
            return []
        if x == A:
            return [(a, n)]
        return [(a, i * n // d), (b, 1), (sp, d - 1)]

    sys = PdolSystem(GAMMA_PROD, rule=rule, period=d, seed=Word.parse(GAMMA_PROD, "s"))
    return EncodedSystem(sys, d, Mode.PRODUCTIVITY, prog)


def _encode_marked(prog: FractranProgram, sparse: bool, max_period: int) -> EncodedSystem:
    d = _denominator(prog, max_period)
    if d % 15:
        raise BadDenominatorError(f"common denominator {d} is not divisible by 3 and 5")
    num = _selector(prog, d)
    o = GAMMA_PREFIX.index
    s, sp, minus = o["s"], o[PAD], o["-"]
    a, A, b, B = o["a"], o["A"], o["b"], o["B"]
    z, Z, l, L = o["z"], o["Z"], o["l"], o["L"]
    zero, one, r, R = o["0"], o["1"], o["r"], o["R"]
    e, E, Q = o["e"], o["E"], o["Q"]
    fixed = {b: B, z: Z, l: L, r: R, L: l, E: e, Q: Q, sp: sp}

    def rule(i: int, x: int):
        if x in fixed:
            return [(fixed[x], 1)]
        if x == s:
            return [
                (s, 1), (sp, d - 1), (a, 2), (b, 1), (sp, d - 1),
                (z, 1), (sp, d - 2), (l, 1), (r, 1), (sp, d - 1), (e, 1),
            ]
        if x == a:
            return [(A, 1), (sp, d - 1)] if i == d - 1 else [(sp, d)]
        if x == e:
            return [(E, 1), (minus, d - i)]
        if x == minus:
            return [(sp, d)]
        if x == A:
            n = num[i]
            return [(Q, 1)] if n is None else [(a, n), (sp, 1)]
        if x == B:
            n = num[i]
            return [(Q, 1)] if n is None else [(a, i * n // d), (b, 1)]
        if x == Z:
            return [(z, 1), (sp, d - 1)] if (i % 3 == 0 or i % 5 == 0) else [(z, 1)]
        if x in (zero, one):
            return [(sp, 1)] if sparse else [(x, 1)]
        # x == R
        if i % 3 == 0:
            return [(zero, 1), (r, 1)]
        if i % 5 == 0:
            return [(one, 1), (r, 1)]
        return [(r, 1)]

    sys = PdolSystem(GAMMA_PREFIX, rule=rule, period=d, seed=Word.parse(GAMMA_PREFIX, "s"))
    return EncodedSystem(sys, d, Mode.SPARSE if sparse else Mode.PREFIX, prog)


def encode_prefix(prog: FractranProgram, max_period: int = MAX_PERIOD) -> EncodedSystem:
    """Eighteen-letter system carrying the growing output word between ``l`` and ``r``."""
    return _encode_marked(prog, False, max_period)


def encode_sparse(prog: FractranProgram, max_period: int = MAX_PERIOD) -> EncodedSystem:
    """As :func:`encode_prefix`, but each digit turns into a pad one step after it appears."""
    return _encode_marked(prog, True, max_period)


def canonicalize_mod_blocks(w: Word, d: int, pad: str = PAD) -> Word:
    """Delete every factor ``pad^d``; what is left of each pad run is its length mod ``d``."""
    if pad not in w.alphabet:
        return w
    sp = w.alphabet.index[pad]
    return Word(w.alphabet, ((s, c % d if s == sp else c) for s, c in w.runs))


def letter_to_equality(sys: PdolSystem, letter: str, fresh: str | None = None) -> PdolSystem:
    """Rename ``letter`` to a fresh copy everywhere and let the old letter map to itself.

    The new system generates the same word as ``sys`` (read over the
    larger alphabet) exactly when ``letter`` never occurs in the limit.
    """
    if letter not in sys.alphabet:
        raise UnknownLetterError(f"{letter!r} is not in the alphabet")
    fresh = fresh or letter + "'"
    while fresh in sys.alphabet:
        fresh += "'"
    alphabet = sys.alphabet.extend(fresh)
    old = sys.alphabet.index[letter]
    new = len(sys.alphabet)

    def swap(runs):
        return [(new if x == old else x, c) for x, c in runs]

    def rule(i: int, x: int):
        if x == old:
            return [(old, 1)]
        src = old if x == new else x
        return swap(sys.image_runs(i, src))

    seed = Word(alphabet, swap(sys.seed.runs))
    return PdolSystem(alphabet, rule=rule, period=sys.period, seed=seed)


def lift(w: Word, alphabet: Alphabet) -> Word:
    """Re-express ``w`` over a larger alphabet that contains all its tokens."""
    return Word.from_tokens(alphabet, w)
