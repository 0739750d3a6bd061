"""Command-line front end.

Exit codes: 0 ok, 1 violation or negative verdict, 2 usage or parse error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import sys
from dataclasses import dataclass, field
from typing import Callable, TextIO

from . import compiler, counter16, embedding, encoder, engine, fractran, gallery
from .errors import ParseError, PdolError
from .words import EMPTY_TEXT, ComplexityProfile, Word, format_word, subword_complexity

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

DEFAULT_FUEL = 10_000
DEFAULT_SYMBOLS = 100_000


class CliIOError(Exception):
    pass


@dataclass
class CommandSpec:
    name: str
    args: argparse.Namespace
    paths: list[str] = field(default_factory=list)


# input helpers


def read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliIOError(f"{path}: {exc.strerror or exc}") from None


def parse_fractran(text: str) -> fractran.FractranProgram | compiler.FractranNProgram:
    """Fractran-n when any non-comment line has a ``state:`` prefix, else Fractran-1."""
    for raw in text.splitlines():
        body = raw.split("#", 1)[0].strip()
        if body:
            if ":" in body:
                return compiler.parse_n_program(text)
    return fractran.parse_program(text)


def load_flat_program(path: str) -> fractran.FractranProgram:
    prog = parse_fractran(read_text(path))
    if isinstance(prog, compiler.FractranNProgram):
        prog, _ = compiler.compile_program(prog)
    return prog


def load_system(args) -> engine.PdolSystem:
    if getattr(args, "system", None):
        return engine.parse_system(read_text(args.system))
    if getattr(args, "gallery", None):
        return gallery.get(args.gallery)
    raise ParseError("give --system FILE or --gallery NAME")


def emit_csv(profile: ComplexityProfile | dict, sink: TextIO) -> None:
    items = profile.items() if hasattr(profile, "items") else []
    sink.write("n,count\n")
    for n, c in sorted(items):
        sink.write(f"{n},{c}\n")


def _open_sink(path: str):
    if path == "-":
        return sys.stdout, False
    try:
        return open(path, "w", encoding="utf-8", newline=""), True
    except OSError as exc:
        raise CliIOError(f"{path}: {exc.strerror or exc}") from None


def _word_text(w: Word, compress: bool = False) -> str:
    return format_word(w, compress) if len(w) else EMPTY_TEXT


def _glued(w: Word) -> str:
    """Single-character alphabets print without separators."""
    if all(len(t) == 1 for t in w.alphabet.symbols):
        return "".join(w) or EMPTY_TEXT
    return _word_text(w)


# fractran


def cmd_fractran_run(args, out: TextIO) -> int:
    prog = load_flat_program(args.program)
    trace = fractran.run(prog, args.start, args.fuel)
    for v in trace.values:
        out.write(f"{v}\n")
    out.write("halted\n" if trace.halted else f"fuel exhausted after {trace.steps} steps\n")
    return EXIT_OK


def cmd_fractran_out(args, out: TextIO) -> int:
    prog = load_flat_program(args.program)
    w, halted = fractran.output_word(prog, args.fuel, args.start)
    out.write(("".join(w) or EMPTY_TEXT) + "\n")
    return EXIT_OK


def _parse_table(text: str | None) -> dict[str, int] | None:
    if not text:
        return None
    table = {}
    for part in text.split(","):
        state, sep, p = part.partition("=")
        if not sep:
            raise ParseError(f"table entry {part!r} is not state=prime")
        table[state.strip()] = int(p)
    return table


def cmd_fractran_compile(args, out: TextIO) -> int:
    prog = parse_fractran(read_text(args.program))
    if isinstance(prog, compiler.FractranNProgram):
        reserved = [int(x) for x in args.reserved.split(",") if x.strip()] if args.reserved else []
        flat, assignment = compiler.compile_program(prog, reserved, _parse_table(args.table))
        if args.show_primes:
            for s, p in assignment.items():
                out.write(f"# {s} = {p}\n")
    else:
        flat = prog
    if args.normalize:
        flat = fractran.normalize_denominator(flat)
    out.write(fractran.format_program(flat))
    return EXIT_OK


# pdol


def cmd_pdol_generate(args, out: TextIO) -> int:
    sys_ = load_system(args)
    cur, verdict = engine.generate_limit(sys_, args.symbols)
    w = cur.prefix(args.symbols)
    out.write((_word_text(w, True) if args.compress else _glued(w)) + "\n")
    if isinstance(verdict, engine.FiniteLimit):
        out.write(f"# finite limit of length {verdict.length}\n")
    return EXIT_OK


def cmd_pdol_check(args, out: TextIO) -> int:
    sys_ = load_system(args)
    if sys_.widths() is not None:
        ok = engine.productivity_locally_uniform(sys_)
        out.write(("productive" if ok else "not productive") + " (locally uniform)\n")
        return EXIT_OK if ok else EXIT_VIOLATION
    verdict = engine.productivity_fuel(sys_, args.fuel, args.symbols)
    if isinstance(verdict, engine.Productive):
        out.write("productive\n")
        return EXIT_OK
    if isinstance(verdict, engine.FiniteLimit):
        out.write(f"finite limit of length {verdict.length}\n")
        return EXIT_VIOLATION
    out.write(f"unknown after {verdict.fuel} lines\n")
    return EXIT_OK


# encode


_ENCODERS: dict[str, Callable] = {
    "prod": encoder.encode_productivity,
    "prefix": encoder.encode_prefix,
    "sparse": encoder.encode_sparse,
}


def cmd_encode(args, out: TextIO) -> int:
    prog = load_flat_program(args.program)
    if prog.common_denominator() is None:
        prog = fractran.normalize_denominator(prog)
    enc = _ENCODERS[args.mode](prog)
    if not args.stream and enc.d <= encoder.EXPORT_CAP:
        out.write(engine.format_system(enc.system, encoder.EXPORT_CAP))
        return EXIT_OK
    if not args.stream:
        out.write(f"# d = {enc.d} exceeds the export cap {encoder.EXPORT_CAP}; streaming instead\n")
    w = engine.limit_prefix(enc.system, args.symbols)
    out.write(_word_text(w, True) + "\n")
    return EXIT_OK


# analysis


def _complexity_prefix(args) -> Word:
    name = (args.gallery or "").lower()
    if name == "bin":
        return compiler.bin_word(args.prefix)
    if name == "counter16":
        return engine.limit_prefix(counter16.build_counter16(), args.prefix)
    return engine.limit_prefix(load_system(args), args.prefix)


def cmd_analyze_complexity(args, out: TextIO) -> int:
    if args.n_max < 0 or args.prefix < 0:
        raise ParseError("--n-max and --prefix must be non-negative")
    w = _complexity_prefix(args)
    profile = subword_complexity(w, min(args.n_max, len(w)))
    if args.csv:
        sink, close = _open_sink(args.csv)
        try:
            emit_csv(profile, sink if sink is not sys.stdout else out)
        finally:
            if close:
                sink.close()
        return EXIT_OK
    out.write(f"# prefix length {len(w)}\n")
    for n, c in profile.items():
        mark = "  >= 2^n" if c >= 2**n else ""
        out.write(f"{n} {c}{mark}\n")
    return EXIT_OK


def cmd_check_embedding(args, out: TextIO) -> int:
    prog = load_flat_program(args.program)
    if prog.common_denominator() is None:
        prog = fractran.normalize_denominator(prog)
    enc = (encoder.encode_sparse if args.mode == "sparse" else encoder.encode_prefix)(prog)
    u = engine.limit_prefix(enc.system, args.symbols)
    w, _ = fractran.output_word(prog, args.fuel)
    if args.mode == "sparse":
        report = embedding.check_sparse_embedding(u, w, ["0", "1"])
    else:
        report = embedding.check_prefix_embedding(u, w, ["0", "1"], shields=[("L", "R")])
    out.write(report.render())
    return EXIT_OK if report.consistent else EXIT_VIOLATION


# counter16 and gallery


def cmd_counter16_digits(args, out: TextIO) -> int:
    w = counter16.digits_from_symbols(args.symbols)
    out.write(("".join(w) or EMPTY_TEXT) + "\n")
    return EXIT_OK


def cmd_counter16_trace(args, out: TextIO) -> int:
    for i, line in enumerate(counter16.trace_lines(args.iterations, args.pads)):
        out.write(f"x{i}: {line}\n")
    return EXIT_OK


def cmd_gallery(args, out: TextIO) -> int:
    if args.name == "list":
        out.write("\n".join(gallery.NAMES) + "\n")
        return EXIT_OK
    sys_ = gallery.get(args.name)
    w = engine.limit_prefix(sys_, args.symbols)
    if args.format:
        out.write(engine.format_system(sys_))
    else:
        out.write(_glued(w) + "\n")
    return EXIT_OK


# parser


def _positive(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _add_system_source(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--system", help="PD0L system file")
    g.add_argument("--gallery", help="built-in system, e.g. kolakoski or lepisto:3")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pdol", description="Periodic D0L systems and Fractran.")
    sub = parser.add_subparsers(dest="command", required=True)

    fr = sub.add_parser("fractran", help="run or compile Fractran programs").add_subparsers(
        dest="action", required=True
    )
    p = fr.add_parser("run", help="print the value trace")
    p.add_argument("--program", required=True)
    p.add_argument("--start", type=int, default=2)
    p.add_argument("--fuel", type=_positive, default=DEFAULT_FUEL)
    p.set_defaults(func=cmd_fractran_run)
    p = fr.add_parser("out", help="print the output word")
    p.add_argument("--program", required=True)
    p.add_argument("--start", type=int, default=2)
    p.add_argument("--fuel", type=_positive, default=DEFAULT_FUEL)
    p.set_defaults(func=cmd_fractran_out)
    p = fr.add_parser("compile", help="flatten a Fractran-n program")
    p.add_argument("--program", required=True)
    p.add_argument("--table", help="state=prime,... (complete assignment)")
    p.add_argument("--reserved", default="2,3,5", help="primes never handed out")
    p.add_argument("--normalize", action="store_true", help="rewrite over one denominator")
    p.add_argument("--show-primes", action="store_true")
    p.set_defaults(func=cmd_fractran_compile)

    pd = sub.add_parser("pdol", help="generate or analyse a PD0L system").add_subparsers(
        dest="action", required=True
    )
    p = pd.add_parser("generate", help="print a prefix of the limit word")
    _add_system_source(p)
    p.add_argument("--symbols", type=_positive, default=DEFAULT_SYMBOLS)
    p.add_argument("--compress", action="store_true", help="print runs as tok^k")
    p.set_defaults(func=cmd_pdol_generate)
    p = pd.add_parser("check-productive", help="decide or semi-decide productivity")
    _add_system_source(p)
    p.add_argument("--fuel", type=_positive, default=DEFAULT_FUEL, help="lines to follow")
    p.add_argument("--symbols", type=_positive, default=DEFAULT_SYMBOLS, help="symbol budget")
    p.set_defaults(func=cmd_pdol_check)

    p = sub.add_parser("encode", help="build the PD0L system of a Fractran program")
    p.add_argument("--mode", choices=sorted(_ENCODERS), required=True)
    p.add_argument("--program", required=True)
    p.add_argument("--stream", action="store_true", help="print the generated word instead")
    p.add_argument("--symbols", type=_positive, default=DEFAULT_SYMBOLS)
    p.set_defaults(func=cmd_encode)

    an = sub.add_parser("analyze", help="word statistics").add_subparsers(dest="action", required=True)
    p = an.add_parser("complexity", help="subword complexity of a prefix")
    _add_system_source(p)
    p.add_argument("--prefix", type=_positive, default=DEFAULT_SYMBOLS)
    p.add_argument("--n-max", type=_positive, default=10)
    p.add_argument("--csv", help="write n,count rows to a file ('-' for stdout)")
    p.set_defaults(func=cmd_analyze_complexity)

    ch = sub.add_parser("check", help="embedding checks").add_subparsers(dest="action", required=True)
    p = ch.add_parser("embedding", help="check the output word is carried by the encoding")
    p.add_argument("--mode", choices=["prefix", "sparse"], required=True)
    p.add_argument("--program", required=True)
    p.add_argument("--symbols", type=_positive, default=DEFAULT_SYMBOLS)
    p.add_argument("--fuel", type=_positive, default=DEFAULT_FUEL)
    p.set_defaults(func=cmd_check_embedding)

    c16 = sub.add_parser("counter16", help="the sixteen-morphism counter").add_subparsers(
        dest="action", required=True
    )
    p = c16.add_parser("digits", help="digits of the last complete marked block")
    p.add_argument("--symbols", type=_positive, default=DEFAULT_SYMBOLS)
    p.set_defaults(func=cmd_counter16_digits)
    p = c16.add_parser("trace", help="annotated lines")
    p.add_argument("--iterations", type=_positive, default=8)
    p.add_argument("--pads", action="store_true", help="show pad runs")
    p.set_defaults(func=cmd_counter16_trace)

    p = sub.add_parser("gallery", help="built-in example systems")
    p.add_argument("name", help="kolakoski, arshon, erasing, lepisto:P, toeplitz:PATTERN or list")
    p.add_argument("--symbols", type=_positive, default=60)
    p.add_argument("--format", action="store_true", help="print the system instead of the word")
    p.set_defaults(func=cmd_gallery)
    return parser


def dispatch(spec: CommandSpec, out: TextIO) -> int:
    return spec.args.func(spec.args, out)


def main(argv: list[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        # argparse writes usage errors and help straight to the process streams
        with contextlib.redirect_stderr(err), contextlib.redirect_stdout(out):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    spec = CommandSpec(args.command, args)
    buf = io.StringIO()
    try:
        code = dispatch(spec, buf)
    except CliIOError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_IO
    except (PdolError, KeyError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    out.write(buf.getvalue())
    return code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
