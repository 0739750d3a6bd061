"""Periodic D0L systems, Fractran, and the encodings between them."""

from .compiler import FractranNProgram, bin_word, build_bin_n, build_p_add, build_p_bin, compile_program, zrep
from .embedding import check_prefix_embedding, check_sparse_embedding, complexity_report, extract_marked
from .encoder import encode_prefix, encode_productivity, encode_sparse, kappa
from .engine import (
    FiniteLimit,
    Morphism,
    PdolSystem,
    Productive,
    Unknown,
    generate_limit,
    iterate_lines,
    limit_cursor,
    limit_prefix,
    parse_system,
    productivity_fuel,
    productivity_locally_uniform,
    to_automatic,
)
from .errors import PdolError
from .fractran import Fraction, FractranProgram, output_word, parse_program, psi, run
from .words import Alphabet, Word, subword_complexity

__version__ = "0.1.0"
