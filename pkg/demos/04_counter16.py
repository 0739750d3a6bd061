"""The sixteen-morphism binary counter and its exponential factor growth.

Run with ``python3 demos/04_counter16.py``.
"""
# %%
import numpy as np

from pdol import counter16 as c16
from pdol.compiler import bin_word
from pdol.engine import limit_prefix
from pdol.words import subword_complexity

# %% Morphism indices pack four flags: active, running, carry, output-one.
for i in (0, 5, 13):
    print(f"  index {i:2d}: {c16.flags(i)}")

# %% Annotated lines, each symbol tagged with the morphism index that rewrites it.
for line in c16.trace_lines(5):
    print(" ", line[:110])

# %% Digits between L and R spell BIN.
prefix = limit_prefix(c16.build_counter16(), 1_000_000)
blocks = c16.marked_blocks(prefix)
longest = max(blocks, key=len)
print("blocks:", len(blocks), "| longest:", longest)
ref = "".join(bin_word(len(longest)))
print("all prefixes of BIN:", all(ref.startswith(b) for b in blocks))

# %% p(n) against 2^n.
prof = subword_complexity(prefix, 8)
n = np.arange(9)
counts = np.array([c for _, c in prof.items()])
print(np.column_stack([n, counts, 2**n]))
