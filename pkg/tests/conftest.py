import random

import pytest
from hypothesis import strategies as st

from nanophrases import AB_SWAP, Alphabet, Nanophrase, parse_phrase


def P(text, alphabet=AB_SWAP):
    return parse_phrase(text, alphabet)


def random_alphabet(rng: random.Random, max_size: int = 4) -> Alphabet:
    """Random alphabet of 1..max_size symbols with a random involution."""
    n = rng.randint(1, max_size)
    symbols = [chr(ord("a") + i) for i in range(n)]
    free = symbols[:]
    rng.shuffle(free)
    tau = {}
    while free:
        s = free.pop()
        if free and rng.random() < 0.6:
            t = free.pop()
            tau[s], tau[t] = t, s
        else:
            tau[s] = s
    return Alphabet(symbols, tau)


def random_phrase(rng: random.Random, alphabet: Alphabet, max_letters: int = 6, max_k: int = 4) -> Nanophrase:
    n = rng.randint(0, max_letters)
    k = rng.randint(1, max_k)
    entries = [i for i in range(n) for _ in (0, 1)]
    rng.shuffle(entries)
    cuts = sorted(rng.randint(0, len(entries)) for _ in range(k - 1))
    words, prev = [], 0
    for c in cuts + [len(entries)]:
        words.append(entries[prev:c])
        prev = c
    proj = {i: rng.choice(alphabet.symbols) for i in range(n)}
    return Nanophrase(words, proj, alphabet)


@st.composite
def alphabets(draw, max_size=4):
    return random_alphabet(random.Random(draw(st.integers(0, 2**32 - 1))), max_size)


@st.composite
def phrases(draw, alphabet=None, max_letters=6, max_k=4):
    rng = random.Random(draw(st.integers(0, 2**32 - 1)))
    alpha = alphabet if alphabet is not None else random_alphabet(rng)
    return random_phrase(rng, alpha, max_letters, max_k)


@pytest.fixture
def alpha0():
    return AB_SWAP


def random_walk(phrase, data, rng: random.Random, steps: int, max_letters: int = 8):
    """Apply up to ``steps`` random moves (inverses included); returns the
    phrases visited and the moves taken."""
    from nanophrases import applicable_moves, apply_move

    visited, path = [phrase], []
    for _ in range(steps):
        moves = applicable_moves(phrase, data, allow_inverse=True, max_letters=max_letters)
        if not moves:
            break
        mv = rng.choice(moves)
        phrase = apply_move(phrase, mv, data)
        visited.append(phrase)
        path.append(mv)
    return visited, path
