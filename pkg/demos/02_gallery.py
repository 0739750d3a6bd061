"""Periodic morphism systems: Kolakoski, Arshon, Toeplitz and their statistics.

Run with ``python3 demos/02_gallery.py``.
"""
# %%
from pdol import gallery
from pdol.engine import format_system, iterate_lines, limit_prefix, productivity_locally_uniform, to_automatic
from pdol.words import format_word, run_lengths, subword_complexity


def text(w):
    return "".join(w)


# %% Kolakoski as two alternating morphisms; the lines converge to the limit.
kol = gallery.kolakoski()
print(format_system(kol), end="")
for ln in iterate_lines(kol, 6):
    print(f"  x{ln.index - 1}: {text(ln.word)}")
k = limit_prefix(kol, 10_000)
print("first 40:", text(k)[:40])
runs = "".join(str(c) for _, c in run_lengths(k)[:-1])
print("run lengths describe the word:", runs == text(k)[: len(runs)])

# %% Arshon's square-free word uses the parity of the position.
a = limit_prefix(gallery.arshon(), 60)
print("arshon:", text(a))
print("locally uniform, so productivity is decided:", productivity_locally_uniform(gallery.arshon()))

# %% Uniform systems convert to a single morphism over (index, letter) pairs.
pres = to_automatic(gallery.arshon())
print("pairs:", len(pres.pairs), "| width:", pres.k)
print("tau(g^4(t)) agrees:", pres.prefix(4) == limit_prefix(gallery.arshon(), 3**4))

# %% A Toeplitz word fills the holes of a pattern with the word itself.
print("toeplitz 12???:", gallery.toeplitz_fill("12???", 30))
print("same from morphisms:", text(limit_prefix(gallery.toeplitz("12???"), 30)))

# %% Factor counts p(n); Kolakoski grows slowly.
prof = subword_complexity(k, 10)
for n, c in prof.items():
    print(f"  p({n}) = {c}")
print("compressed lepisto:3 prefix:", format_word(limit_prefix(gallery.lepisto(3), 24), True))
