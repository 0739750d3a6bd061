"""Classic periodic systems: Kolakoski, Arshon, Lepistö, Toeplitz and a small erasing one."""

from __future__ import annotations

from .engine import Morphism, PdolSystem, table_system
from .errors import InvalidSeedError
from .words import Alphabet, Word


def kolakoski() -> PdolSystem:
    """The run-length self-describing word 1221121221221121122... over {1, 2}."""
    return table_system(
        ["1", "2"],
        [{"1": "1", "2": "1 1"}, {"1": "2", "2": "2 2"}],
        "1 2",
    )


def _mod3_system(tables_fn, period_tables: int, seed: str) -> PdolSystem:
    sigma = ["0", "1", "2"]
    tables = []
    for i in range(period_tables):
        tables.append({str(b): " ".join(str(x % 3) for x in tables_fn(i, b)) for b in range(3)})
    return table_system(sigma, tables, seed)


def arshon() -> PdolSystem:
    """Square-free word over {0,1,2}: ``h0(a) = a, a+1, a+2`` and ``h1(a) = a+2, a+1, a``."""
    return _mod3_system(
        lambda i, a: (a, a + 1, a + 2) if i == 0 else (a + 2, a + 1, a), 2, "0"
    )


def erasing_example() -> PdolSystem:
    """Three morphisms over Z_3: ``b -> b(b+1)(b+2)``, ``b -> ε``, ``b -> b+2``."""

    def img(i, b):
        if i == 0:
            return (b, b + 1, b + 2)
        if i == 1:
            return ()
        return (b + 2,)

    return _mod3_system(img, 3, "0")


def lepisto(p: int) -> PdolSystem:
    """``h0 = {0->01, 1->00}`` followed by ``p-1`` copies of the bit flip."""
    if p < 2:
        raise ValueError("period must be at least 2")
    flip = {"0": "1", "1": "0"}
    return table_system(["0", "1"], [{"0": "0 1", "1": "0 0"}] + [flip] * (p - 1), "0")


def _pattern_letters(pattern: str) -> list[str]:
    letters = []
    for ch in pattern:
        if ch != "?" and ch not in letters:
            letters.append(ch)
    return letters


def _check_pattern(pattern: str) -> None:
    if not pattern or pattern[0] == "?":
        raise InvalidSeedError("pattern must start with a letter")
    if "?" not in pattern:
        raise InvalidSeedError("pattern has no '?'")
    if any(ch.isspace() for ch in pattern):
        raise InvalidSeedError("pattern must not contain whitespace")


def toeplitz_fill(pattern: str, n: int) -> str:
    """First ``n`` letters of the Toeplitz word: repeat the pattern, fill holes with the word itself."""
    _check_pattern(pattern)
    out: list[str] = []
    hole = 0
    q = len(pattern)
    for pos in range(n):
        ch = pattern[pos % q]
        if ch == "?":
            ch = out[hole]
            hole += 1
        out.append(ch)
    return "".join(out)


def toeplitz(pattern: str) -> PdolSystem:
    """Periodic-morphism form of a Toeplitz word.

    The pattern is cut after every '?', giving groups ``g_0 ?, g_1 ?, ...``.
    Morphism ``i`` maps each letter ``a`` to ``g_i a`` and the seed is the
    first letter.  Only patterns ending in '?' have this form.
    """
    _check_pattern(pattern)
    if pattern[-1] != "?":
        raise InvalidSeedError("periodic-morphism form needs a pattern ending in '?'")
    groups = pattern[:-1].split("?")
    letters = _pattern_letters(pattern)
    alphabet = Alphabet(letters)
    morphisms = [
        Morphism(alphabet, {a: Word.from_tokens(alphabet, list(g) + [a]) for a in letters})
        for g in groups
    ]
    return PdolSystem(alphabet, morphisms, Word.from_tokens(alphabet, pattern[0]))


def get(name: str) -> PdolSystem:
    """Look up a gallery system by name, e.g. ``kolakoski``, ``lepisto:3``, ``toeplitz:12???``."""
    base, _, arg = name.partition(":")
    base = base.lower()
    if base == "kolakoski":
        return kolakoski()
    if base == "arshon":
        return arshon()
    if base in ("erasing", "example"):
        return erasing_example()
    if base == "lepisto":
        return lepisto(int(arg or 2))
    if base == "toeplitz":
        return toeplitz(arg or "12???")
    raise KeyError(f"unknown gallery system {name!r}")


NAMES = ("kolakoski", "arshon", "erasing", "lepisto:<p>", "toeplitz:<pattern>")
