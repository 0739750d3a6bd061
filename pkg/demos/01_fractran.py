"""Fractran runs, the register-program compiler and the BIN output word.

Run with ``python3 demos/01_fractran.py``.
"""
# %%
from math import lcm

from pdol.compiler import (
    P_ADD_TABLE,
    bin_word,
    build_p_add,
    build_p_bin,
    compile_program,
    format_n_program,
    run_n,
)
from pdol.fractran import FractranProgram, output_word, run

# %% A small program that halts: each step moves one factor of 2 and 3 into 5.
golden = FractranProgram(["5/6", "1/2", "1/3"])
trace = run(golden, 2**3 * 3**5, 100)
print("golden run:", " -> ".join(map(str, trace.values)), "| halted:", trace.halted)

# %% Output digits are read from the successor values (3 | N gives 0, else 5 | N gives 1).
alt = FractranProgram(["3/2", "5/3", "3/5"])
w, _ = output_word(alt, 20)
print("alternating output:", "".join(w))

# %% A two-state register program: alpha moves register 3 into 2, then beta.
padd = build_p_add()
print(format_n_program(padd), end="")
flat, primes = compile_program(padd, table=P_ADD_TABLE)
print("flattened:", flat, "| states:", primes)
for a, b in [(1, 2), (3, 0), (2, 2)]:
    end = run(flat, 2**a * 3**b * 7, 1000).values[-1]
    print(f"  2^{a} 3^{b} 7 ends at {end} = 2^{a + b} 3^{b} 13:", end == 2 ** (a + b) * 3**b * 13)

# %% The direct interpreter and the compiled program agree on the final state.
print("direct run of P_add from 6:", run_n(padd, 6, 50).states)

# %% P_BIN writes every binary word: its output is zrep(0) zrep(1) zrep(2) ...
p_bin = build_p_bin()
print("P_BIN:", p_bin)
print("lcm of denominators:", lcm(*p_bin.denominators))
w, _ = output_word(p_bin, 20_000)
print("output:", "".join(w)[:40], "...")
print("matches BIN:", list(w) == list(bin_word(len(w))))
