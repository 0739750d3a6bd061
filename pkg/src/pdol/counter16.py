"""A sixteen-morphism system that counts in bijective binary.

Morphism indices carry four flags, ``i = 8a + 4r + 2c + o``: active,
running, carry and output-one.  The word between ``L`` and ``R`` grows
into ever longer prefixes of BIN.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import PdolSystem, iterate_lines, limit_cursor
from .fractran import BITS
from .words import PAD, Alphabet, Word, format_word

# "+" pads two, "-" pads sixteen, "*" pads two then a "-"
ALPHABET = Alphabet(
    ["s", PAD, "+", "-", "*", "0", "1", "a", "A", "b", "B", "c", "d", "P", "o", "O",
     "Z", "Z1", "Z2", "Z3", "L", "R", "R1", "R2", "R3"]
)


@dataclass(frozen=True)
class Flags:
    a: bool
    r: bool
    c: bool
    o: bool

    def __str__(self):
        return "".join(ch if on else "." for ch, on in zip("arco", (self.a, self.r, self.c, self.o)))


def flags(i: int) -> Flags:
    if not 0 <= i < 16:
        raise ValueError(f"morphism index {i} outside 0..15")
    return Flags(bool(i & 8), bool(i & 4), bool(i & 2), bool(i & 1))


def index(f: Flags) -> int:
    return 8 * f.a + 4 * f.r + 2 * f.c + f.o


def _w(text: str) -> Word:
    return Word.parse(ALPHABET, text)


def _image(i: int) -> dict[str, str]:
    f = flags(i)
    a, r, c, o = f.a, f.r, f.c, f.o
    img = {
        "s": "s _^13 + a _^15 c _^7 P _^15 O _^15 Z1 _^14 L R1 _^8",
        "_": "_",
        "+": "_^2",
        "-": "_^16",
        "*": "_^2 -",
        "0": "0",
        "1": "1",
        "Z1": "Z",
        "Z2": "Z1",
        "Z3": "Z2",
        "L": "L",
        "R1": "R",
        "R2": "R1",
        "R3": "R2",
    }
    if not a:
        img["a"] = "a"
    elif not c:
        img["a"] = "_^14 * A"
    else:
        img["a"] = "_^14 * _^12 +^2 B"
    img["A"] = "A" if r else "a"
    img["b"] = "b" if not a else ("B" if not c else "A")
    img["B"] = "B" if r else "b"
    img["c"] = "d _^8" if a else "c"
    img["d"] = "d" if r else "c _^8"
    img["P"] = "a" if (c and a) else "P"
    img["o"] = "d" if (c and a) else "o"
    if not a:
        img["O"] = "O"
    elif not c:
        img["O"] = "o _^15 O"
    else:
        img["O"] = "d _^15 P _^15 O"
    if not r:
        img["Z"] = "Z"
    else:
        img["Z"] = "Z3 _^15" if a else "Z _^15"
    if not r:
        img["R"] = "R"
    else:
        digit = "1" if o else "0"
        if not a:
            img["R"] = f"{digit} R"
        else:
            img["R"] = f"{digit} R3 _^8 *^4 -^{8 if c else 10}"
    return img


_TABLES = [{k: _w(v).runs for k, v in _image(i).items()} for i in range(16)]


def build_counter16() -> PdolSystem:
    o = ALPHABET.symbols
    return PdolSystem(
        ALPHABET,
        rule=lambda i, x: _TABLES[i][o[x]],
        period=16,
        seed=_w("s"),
    )


def marked_blocks(prefix: Word) -> list[str]:
    """Digit words of all complete ``L ... R`` blocks, in order."""
    out = []
    current = None
    for tok in prefix:
        if tok == "L":
            current = []
        elif tok == "R" and current is not None:
            out.append("".join(current))
            current = None
        elif tok in ("0", "1") and current is not None:
            current.append(tok)
    return out


def extract_digits(prefix: Word) -> Word:
    """Digits inside the last complete ``L ... R`` block of ``prefix``."""
    blocks = marked_blocks(prefix)
    return Word.from_tokens(BITS, blocks[-1] if blocks else "")


def digits_from_symbols(n: int) -> Word:
    return extract_digits(limit_cursor(build_counter16()).prefix(n))


def trace_lines(iterations: int, show_pads: bool = False) -> list[str]:
    """Lines of the limit with each symbol annotated by its morphism index.

    The first line is the seed at index 0.  Pad runs are shown as
    ``_^k@i`` when ``show_pads`` is set and dropped otherwise.
    """
    sys = build_counter16()
    out = [_annotate(sys.seed, 0, show_pads)]
    for line in iterate_lines(sys, iterations):
        out.append(_annotate(line.word, line.start, show_pads))
    return out


def _annotate(w: Word, start: int, show_pads: bool) -> str:
    parts = []
    pos = start
    syms = w.alphabet.symbols
    for sym, cnt in w.runs:
        tok = syms[sym]
        if tok == PAD:
            if show_pads:
                parts.append(f"{tok}^{cnt}@{pos % 16}")
            pos += cnt
            continue
        for _ in range(cnt):
            parts.append(f"{tok}@{pos % 16}")
            pos += 1
    return " ".join(parts) if parts else "eps"


def line_words(iterations: int) -> list[Word]:
    sys = build_counter16()
    return [sys.seed] + [ln.word for ln in iterate_lines(sys, iterations)]


__all__ = [
    "ALPHABET",
    "Flags",
    "build_counter16",
    "extract_digits",
    "flags",
    "format_word",
    "index",
    "marked_blocks",
    "trace_lines",
]
