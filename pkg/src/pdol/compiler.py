"""Stateful multi-line Fractran programs and their compilation to flat fraction lists.

Compilation runs in three passes: :func:`split_loops` gives every
self-looping state a mirror state, :func:`assign_primes` picks a prime per
state, and :func:`flatten` turns each entry ``n/d -> β`` of line ``α``
into the fraction ``(n * β) / (d * α)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from sympy import factorint, isprime, nextprime

from .errors import (
    CollisionError,
    IncompleteAssignmentError,
    InvalidAssignmentError,
    ParseError,
)
from .fractran import BITS, Fraction, FractranProgram, valuation
from .words import Word

MIRROR = "~"

Entry = tuple[Fraction, str]


@dataclass
class FractranNProgram:
    """Ordered lines ``state: n/d -> successor, ...``; the first line is the entry unless given."""

    lines: dict[str, list[Entry]]
    entry: str | None = None
    terminals: set[str] = field(default_factory=set)

    def __post_init__(self):
        self.lines = {k: [(_as_fraction(f), s) for f, s in v] for k, v in self.lines.items()}
        if self.entry is None:
            self.entry = next(iter(self.lines), None)
        known = set(self.lines) | set(self.terminals)
        for state, entries in self.lines.items():
            for _, succ in entries:
                if succ not in known:
                    raise ParseError(f"state {state!r} refers to unknown state {succ!r}")

    @property
    def states(self) -> list[str]:
        out = list(self.lines)
        out += [t for t in sorted(self.terminals) if t not in self.lines]
        return out

    def looping(self) -> list[str]:
        return [s for s, entries in self.lines.items() if any(t == s for _, t in entries)]

    def register_primes(self) -> set[int]:
        out: set[int] = set()
        for entries in self.lines.values():
            for f, _ in entries:
                out.update(factorint(f.num))
                out.update(factorint(f.den))
        return out

    def __str__(self):
        return format_n_program(self)


def _as_fraction(f) -> Fraction:
    if isinstance(f, Fraction):
        return f
    if isinstance(f, tuple):
        return Fraction(*f)
    return Fraction.parse(str(f))


def mirror_name(state: str) -> str:
    return state + MIRROR


def split_loops(prog: FractranNProgram) -> FractranNProgram:
    """Break self-loops: ``α`` refers to ``α~`` instead, and ``α~: 1/1 -> α`` follows ``α``'s line."""
    looping = set(prog.looping())
    taken = set(prog.states)
    lines: dict[str, list[Entry]] = {}
    for state, entries in prog.lines.items():
        if state not in looping:
            lines[state] = list(entries)
            continue
        m = mirror_name(state)
        if m in taken:
            raise CollisionError(f"mirror name {m!r} already used")
        lines[state] = [(f, m if s == state else s) for f, s in entries]
        lines[m] = [(Fraction(1, 1), state)]
    return FractranNProgram(lines, prog.entry, set(prog.terminals))


def assign_primes(
    prog: FractranNProgram,
    reserved: Iterable[int] = (),
    table: Mapping[str, int] | None = None,
) -> dict[str, int]:
    """Map every state to a prime.

    Without a table the smallest primes outside ``reserved`` and the
    register primes are handed out in declaration order.  A supplied
    table must be injective, prime-valued and avoid the register primes.
    """
    registers = prog.register_primes()
    states = prog.states
    if table is not None:
        table = dict(table)
        if len(set(table.values())) != len(table):
            raise InvalidAssignmentError("two states share a prime")
        for s, p in table.items():
            if not isprime(p):
                raise InvalidAssignmentError(f"{s} -> {p} is not prime")
            if p in registers or p in set(reserved):
                raise InvalidAssignmentError(f"{s} -> {p} clashes with a register or reserved prime")
        missing = [s for s in states if s not in table]
        if missing:
            raise IncompleteAssignmentError(f"no prime for {missing!r}")
        return {s: table[s] for s in states}
    blocked = set(reserved) | registers
    out = {}
    p = 1
    for s in states:
        p = nextprime(p)
        while p in blocked:
            p = nextprime(p)
        out[s] = p
    return out


def flatten(prog: FractranNProgram, assignment: Mapping[str, int]) -> FractranProgram:
    """One fraction ``(n * P(β)) / (d * P(α))`` per entry, in line and entry order."""
    if prog.looping():
        raise ValueError("split loops before flattening")
    out = []
    for state, entries in prog.lines.items():
        if state not in assignment:
            raise IncompleteAssignmentError(f"no prime for state {state!r}")
        for f, succ in entries:
            if succ not in assignment:
                raise IncompleteAssignmentError(f"no prime for state {succ!r}")
            out.append(Fraction(f.num * assignment[succ], f.den * assignment[state]))
    return FractranProgram(out, note="compiled")


def compile_program(
    prog: FractranNProgram,
    reserved: Iterable[int] = (2, 3, 5),
    table: Mapping[str, int] | None = None,
) -> tuple[FractranProgram, dict[str, int]]:
    split = split_loops(prog)
    assignment = assign_primes(split, reserved, table)
    return flatten(split, assignment), assignment


# direct interpretation (reference semantics)


@dataclass
class NRunTrace:
    states: list[str]
    values: list[int]
    halted: bool


def run_n(prog: FractranNProgram, n0: int, fuel: int, state: str | None = None) -> NRunTrace:
    """Interpret a multi-line program directly: first applicable entry of the current line."""
    state = state or prog.entry
    n = n0
    states, values = [state], [n]
    for _ in range(fuel):
        for f, succ in prog.lines.get(state, ()):
            if (n * f.num) % f.den == 0:
                n = n * f.num // f.den
                state = succ
                break
        else:
            return NRunTrace(states, values, True)
        states.append(state)
        values.append(n)
    halted = not any((n * f.num) % f.den == 0 for f, _ in prog.lines.get(state, ()))
    return NRunTrace(states, values, halted)


# the adder and the counting program


def build_p_add() -> FractranNProgram:
    """``α: 10/3 -> α, 1/1 -> β``; ``β: 3/5 -> β``.  Maps ``2^a 3^b`` to ``2^(a+b) 3^b``."""
    return FractranNProgram(
        {
            "alpha": [(Fraction(10, 3), "alpha"), (Fraction(1, 1), "beta")],
            "beta": [(Fraction(3, 5), "beta")],
        }
    )


P_ADD_TABLE = {"alpha": 7, "alpha~": 11, "beta": 13, "beta~": 17}

R1, R2, R3 = 37, 41, 43

P_BIN_TABLE = {
    "s1": 2,
    "s2": 7,
    "s2~": 11,
    "s3": 13,
    "s3~": 17,
    "s4": 19,
    "s4~": 23,
    "s5": 29,
    "s5~": 31,
    "out0": 3,
    "out1": 5,
}


def build_bin_n() -> FractranNProgram:
    """Seven-line program whose sequence of output states spells BIN."""
    f = Fraction
    return FractranNProgram(
        {
            "s1": [(f(R2, R3), "s5"), (f(R1, 1), "s2")],
            "s2": [(f(R2 * R3, R1), "s2"), (f(1, 1), "s3")],
            "s3": [(f(R1, R3), "s3"), (f(1, 1), "s4")],
            "s4": [(f(R3, R2 * R2), "s4"), (f(1, R2), "out0"), (f(1, R3), "out1")],
            "s5": [(f(R2, R3), "s5"), (f(1, 1), "s4")],
            "out0": [(f(1, 1), "s1")],
            "out1": [(f(1, 1), "s1")],
        }
    )


def build_p_bin() -> FractranProgram:
    """The compiled 17-fraction program computing BIN, with its fixed prime table."""
    prog, _ = compile_program(build_bin_n(), reserved=(), table=P_BIN_TABLE)
    return prog


# z-representation


def zrep(n: int) -> Word:
    digits = []
    while n > 0:
        if n % 2:
            digits.append("0")
            n = (n - 1) // 2
        else:
            digits.append("1")
            n = (n - 2) // 2
    return Word.from_tokens(BITS, digits)


def zval(w: Word | str) -> int:
    toks = list(w)
    v = 0
    for t in reversed(toks):
        v = 2 * v + (1 if t == "0" else 2)
    return v


def bin_word(length: int) -> Word:
    """First ``length`` symbols of ``zrep(0) zrep(1) zrep(2) ...``."""
    out: list[str] = []
    n = 0
    while len(out) < length:
        out.extend(zrep(n))
        n += 1
    return Word.from_tokens(BITS, out[:length])


# text format

_ENTRY = re.compile(r"^\s*(\d+)\s*/\s*(\d+)\s*->\s*(\S+)\s*$")


def parse_n_program(text: str) -> FractranNProgram:
    """Lines ``state: a/b -> state, a/b -> state``; the first line's state is the entry."""
    lines: dict[str, list[Entry]] = {}
    refs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        state, sep, rest = body.partition(":")
        state = state.strip()
        if not sep or not state or " " in state:
            raise ParseError("expected 'state: entries'", lineno)
        if MIRROR in state:
            raise ParseError(f"state names may not contain {MIRROR!r}", lineno)
        if state in lines:
            raise ParseError(f"duplicate state {state!r}", lineno)
        entries = []
        col = body.index(":") + 2
        if rest.strip():
            for part in rest.split(","):
                m = _ENTRY.match(part)
                if not m:
                    raise ParseError(f"malformed entry {part.strip()!r}", lineno, col)
                a, b = int(m.group(1)), int(m.group(2))
                if a == 0 or b == 0:
                    raise ParseError("zero in fraction", lineno, col)
                entries.append((Fraction(a, b), m.group(3)))
                refs.append((m.group(3), lineno, col))
                col += len(part) + 1
        lines[state] = entries
    if not lines:
        raise ParseError("empty program")
    for succ, lineno, col in refs:
        if succ not in lines:
            raise ParseError(f"unknown successor state {succ!r}", lineno, col)
    return FractranNProgram(lines)


def format_n_program(prog: FractranNProgram) -> str:
    out = []
    for state, entries in prog.lines.items():
        body = ", ".join(f"{f} -> {s}" for f, s in entries)
        out.append(f"{state}: {body}".rstrip())
    return "\n".join(out) + "\n"


def state_of(value: int, assignment: Mapping[str, int]) -> list[str]:
    """States whose prime divides ``value``."""
    return [s for s, p in assignment.items() if value % p == 0]


def registers_of(value: int, primes: Iterable[int]) -> tuple[int, ...]:
    return tuple(valuation(value, p) for p in primes)
