"""Fractran programs encoded as periodic morphism systems.

Run with ``python3 demos/03_encodings.py``.
"""
# %%
from pdol.embedding import check_prefix_embedding, extract_marked
from pdol.encoder import canonicalize_mod_blocks, encode_prefix, encode_productivity, encode_sparse
from pdol.engine import iterate_lines, limit_prefix, productivity_fuel
from pdol.fractran import FractranProgram, normalize_denominator, output_word, run
from pdol.words import erase_letters, format_word


def text(w):
    return "".join(w) or "eps"


# %% Productivity encoding: even lines carry a^N for the current value N.
prog = FractranProgram(["27/6", "10/6"])
enc = encode_productivity(prog)
print("values:", run(prog, 2, 20).values)
for ln in iterate_lines(enc.system, 9):
    print(f"  x{ln.index - 1}: {format_word(canonicalize_mod_blocks(ln.word, enc.d), True)}")
print("verdict:", productivity_fuel(enc.system, 50))

# %% Marked encoding of F over the denominator 210: lines grow the output word between l and r.
F = normalize_denominator(FractranProgram(["2/7", "21/10", "3/2", "5/3", "2/1"]))
enc = encode_prefix(F)
print("d =", enc.d, "| morphisms:", enc.system.period)
for ln in iterate_lines(enc.system, 40):
    for m in extract_marked(ln.word, "l", "r"):
        if (ln.index - 1) % 8 == 0:
            print(f"  x{ln.index - 1}: {text(m)}")

# %% The limit word, checked against the output word. Odd lines hold L v R, so they are shielded.
u = limit_prefix(enc.system, 1_000_000)
w, _ = output_word(F, 2000)
print(check_prefix_embedding(u, w, ["0", "1"], shields=[("L", "R")]).render(), end="")

# %% The sparse variant keeps digits only and pads heavily, so digits are rare in the limit.
sparse = encode_sparse(F).system
for n in (10**5, 10**6):
    got = erase_letters(limit_prefix(sparse, n), ["0", "1"])
    print(f"  digits in first {n} symbols: {text(got)}")
