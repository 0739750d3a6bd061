"""Reference implementations used as test oracles."""

from hypothesis import strategies as st

from pdol.engine import Morphism, PdolSystem
from pdol.words import Alphabet, Word


def naive_apply(images, word, start=0):
    """``H_start`` on a token list; ``images[i][tok]`` is a token list."""
    p = len(images)
    out = []
    for j, tok in enumerate(word):
        out.extend(images[(start + j) % p][tok])
    return out


def naive_limit(images, seed, n, max_iter=60):
    """First ``n`` symbols of the limit by iterating ``H_0`` on whole words."""
    w = list(seed)
    for _ in range(max_iter):
        nxt = naive_apply(images, w)
        if len(w) >= n or nxt == w:
            break
        w = nxt
    return w[:n]


def kolakoski_direct(n):
    out = [1, 2, 2]
    i = 2
    while len(out) < n:
        out.extend([1 if out[-1] == 2 else 2] * out[i])
        i += 1
    return "".join(map(str, out[:n]))


def is_square_free(s):
    n = len(s)
    for i in range(n):
        for k in range(1, (n - i) // 2 + 1):
            if s[i:i + k] == s[i + k:i + 2 * k]:
                return False
    return True


def make_system(letters, tables, seed):
    alphabet = Alphabet(letters)
    morphisms = [
        Morphism(alphabet, {a: Word.from_tokens(alphabet, t[a]) for a in letters}) for t in tables
    ]
    return PdolSystem(alphabet, morphisms, Word.from_tokens(alphabet, seed))


@st.composite
def systems(draw, max_letters=3, max_period=3, max_width=3, uniform=None):
    """Random PD0L systems whose seed is one letter ``a`` with ``h_0(a)`` starting with ``a``."""
    letters = "abcd"[: draw(st.integers(1, max_letters))]
    p = len(uniform) if uniform is not None else draw(st.integers(1, max_period))
    img = st.lists(st.sampled_from(letters), min_size=0, max_size=max_width)
    tables = []
    for i in range(p):
        t = {}
        for a in letters:
            if uniform is not None:
                t[a] = draw(st.lists(st.sampled_from(letters), min_size=uniform[i], max_size=uniform[i]))
            else:
                t[a] = draw(img)
        tables.append(t)
    if uniform is not None:
        tables[0]["a"][0] = "a"
    elif not tables[0]["a"] or tables[0]["a"][0] != "a":
        tables[0]["a"] = ["a"] + list(tables[0]["a"])[: max_width - 1]
    return letters, tables


# summary lines written by the acceptance suite, printed by conftest
ACCEPTANCE = []
