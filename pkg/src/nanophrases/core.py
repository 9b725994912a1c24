"""Alphabets with involution, nanophrases and their canonical forms.

A nanophrase is stored as a tuple of words (each a tuple of opaque letter
ids) together with a projection of every letter to a symbol of an
:class:`Alphabet`.  Letters carry no meaning beyond their projection, so two
phrases are isomorphic exactly when their :class:`CanonicalForm` agree.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

__all__ = [
    "Alphabet",
    "AB_SWAP",
    "OrbitDecomposition",
    "HomotopyData",
    "EtalePhrase",
    "Nanophrase",
    "GaussVerdict",
    "CanonicalForm",
    "NanophraseError",
    "NotGaussError",
    "AlphabetMismatch",
    "validate",
    "canonical_form",
    "is_isomorphic",
    "concat_components",
    "orbit_decomposition",
    "rename",
    "fresh_letters",
]


class NanophraseError(ValueError):
    """Base class for malformed alphabets, phrases and related input."""


class NotGaussError(NanophraseError):
    def __init__(self, letter, count):
        super().__init__(f"letter {letter!r} occurs {count} time(s), expected 2")
        self.letter = letter
        self.count = count


class AlphabetMismatch(NanophraseError):
    pass


class Alphabet:
    """A finite symbol set with an involution ``tau``.

    The declared order of ``symbols`` is significant: it fixes orbit
    representatives and every enumeration order downstream.
    """

    __slots__ = ("symbols", "_index", "_tau")

    def __init__(self, symbols: Iterable[str], tau: Mapping[str, str]):
        symbols = tuple(symbols)
        if len(set(symbols)) != len(symbols):
            raise NanophraseError(f"duplicate symbols in {symbols}")
        index = {s: i for i, s in enumerate(symbols)}
        try:
            images = tuple(index[tau[s]] for s in symbols)
        except KeyError as exc:
            raise NanophraseError(f"tau is undefined or leaves the alphabet at {exc}") from None
        for i, j in enumerate(images):
            if images[j] != i:
                raise NanophraseError(f"tau is not an involution at {symbols[i]!r}")
        self.symbols = symbols
        self._index = index
        self._tau = images

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, str]]) -> "Alphabet":
        pairs = list(pairs)
        return cls([s for s, _ in pairs], dict(pairs))

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, symbol):
        return symbol in self._index

    def __eq__(self, other):
        if not isinstance(other, Alphabet):
            return NotImplemented
        return self.symbols == other.symbols and self._tau == other._tau

    def __hash__(self):
        return hash((self.symbols, self._tau))

    def __repr__(self):
        pairs = ", ".join(f"{s}->{self.tau(s)}" for s in self.symbols)
        return f"Alphabet({pairs})"

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise NanophraseError(f"unknown symbol {symbol!r}") from None

    def tau(self, symbol: str) -> str:
        return self.symbols[self._tau[self.index(symbol)]]

    @property
    def tau_indices(self) -> tuple[int, ...]:
        return self._tau

    def is_fixed(self, symbol: str) -> bool:
        return self.tau(symbol) == symbol


#: The two-symbol alphabet {a, b} with tau swapping a and b.
AB_SWAP = Alphabet(("a", "b"), {"a": "b", "b": "a"})


@dataclass(frozen=True)
class OrbitDecomposition:
    two_orbits: tuple[tuple[str, str], ...]
    fixed_orbits: tuple[str, ...]

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.two_orbits)

    @property
    def m(self) -> int:
        return len(self.fixed_orbits)

    @property
    def representatives(self) -> tuple[str, ...]:
        return tuple(rep for rep, _ in self.two_orbits) + self.fixed_orbits

    def orbit_of(self, symbol: str) -> int:
        """1-based orbit index; 2-orbits come first."""
        for i, pair in enumerate(self.two_orbits, 1):
            if symbol in pair:
                return i
        if symbol not in self.fixed_orbits:
            raise NanophraseError(f"unknown symbol {symbol!r}")
        return self.l + 1 + self.fixed_orbits.index(symbol)

    def sign(self, symbol: str) -> int:
        """+1 on representatives and fixed symbols, -1 on their tau partners."""
        for rep, partner in self.two_orbits:
            if symbol == partner:
                return -1
            if symbol == rep:
                return 1
        if symbol in self.fixed_orbits:
            return 1
        raise NanophraseError(f"unknown symbol {symbol!r}")


def orbit_decomposition(alphabet: Alphabet) -> OrbitDecomposition:
    two, fixed, seen = [], [], set()
    for s in alphabet.symbols:
        if s in seen:
            continue
        t = alphabet.tau(s)
        seen.update((s, t))
        if t == s:
            fixed.append(s)
        else:
            two.append((s, t))
    return OrbitDecomposition(tuple(two), tuple(fixed))


class HomotopyData:
    """An alphabet plus the set ``S`` of symbol triples that license move 3.

    ``s_set=None`` means the diagonal ``{(x, x, x)}``.
    """

    def __init__(self, alphabet: Alphabet, s_set: Iterable[tuple[str, str, str]] | None = None):
        self.alphabet = alphabet
        diagonal = frozenset((s, s, s) for s in alphabet.symbols)
        if s_set is None:
            self.s_set = diagonal
        else:
            self.s_set = frozenset(tuple(t) for t in s_set)
            for triple in self.s_set:
                for s in triple:
                    alphabet.index(s)
        self.is_diagonal = self.s_set == diagonal
        self._s_idx = frozenset(tuple(alphabet.index(s) for s in t) for t in self.s_set)

    def allows(self, a: int, b: int, c: int) -> bool:
        """Move-3 test on symbol indices."""
        return (a, b, c) in self._s_idx

    def __eq__(self, other):
        return (
            isinstance(other, HomotopyData)
            and self.alphabet == other.alphabet
            and self.s_set == other.s_set
        )

    def __hash__(self):
        return hash((self.alphabet, self.s_set))

    def __repr__(self):
        kind = "diagonal" if self.is_diagonal else f"{len(self.s_set)} triples"
        return f"HomotopyData({self.alphabet!r}, {kind})"


class EtalePhrase:
    """A sequence of words over an alphabet-projected letter set.

    Letters may occur any number of times.  Instances are immutable.
    """

    __slots__ = ("words", "projection", "alphabet")

    def __init__(
        self,
        words: Iterable[Iterable[Hashable]],
        projection: Mapping[Hashable, str],
        alphabet: Alphabet = AB_SWAP,
    ):
        words = tuple(tuple(w) for w in words)
        used = {x for w in words for x in w}
        missing = used - projection.keys()
        if missing:
            raise NanophraseError(f"letters without projection: {sorted(map(str, missing))}")
        proj = {}
        for x in _first_occurrence_order(words):
            s = projection[x]
            if s not in alphabet:
                raise NanophraseError(f"projection of {x!r} is {s!r}, not in {alphabet!r}")
            proj[x] = s
        object.__setattr__(self, "words", words)
        object.__setattr__(self, "projection", proj)
        object.__setattr__(self, "alphabet", alphabet)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @property
    def k(self) -> int:
        return len(self.words)

    @property
    def letters(self) -> tuple:
        """Letters in order of first occurrence in the concatenation."""
        return tuple(self.projection)

    def concatenation(self) -> tuple:
        return tuple(x for w in self.words for x in w)

    def __len__(self):
        return sum(len(w) for w in self.words)

    def __eq__(self, other):
        if not isinstance(other, EtalePhrase):
            return NotImplemented
        return (
            self.words == other.words
            and self.projection == other.projection
            and self.alphabet == other.alphabet
        )

    def __hash__(self):
        return hash((self.words, tuple(self.projection.items()), self.alphabet))

    def __repr__(self):
        body = "|".join("".join(map(str, w)) or "0" for w in self.words)
        proj = " ".join(f"{x}={s}" for x, s in self.projection.items())
        return f"{type(self).__name__}({body!r}; {proj})" if proj else f"{type(self).__name__}({body!r})"


class Nanophrase(EtalePhrase):
    """An étale phrase whose concatenation is a Gauss word."""

    __slots__ = ()

    def __init__(self, words, projection, alphabet: Alphabet = AB_SWAP):
        super().__init__(words, projection, alphabet)
        verdict = validate(self)
        if not verdict.valid:
            raise NotGaussError(verdict.letter, verdict.count)

    @classmethod
    def empty(cls, k: int = 1, alphabet: Alphabet = AB_SWAP) -> "Nanophrase":
        return cls([()] * k, {}, alphabet)

    @property
    def n_letters(self) -> int:
        return len(self.projection)


@dataclass(frozen=True)
class GaussVerdict:
    valid: bool
    letter: Hashable = None
    count: int = 2

    def __bool__(self):
        return self.valid


def validate(phrase: EtalePhrase) -> GaussVerdict:
    counts = Counter(phrase.concatenation())
    for x in phrase.projection:
        if counts[x] != 2:
            return GaussVerdict(False, x, counts[x])
    return GaussVerdict(True)


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Letters renumbered 1, 2, ... by first occurrence; 0 marks a separator."""

    shape: tuple[int, ...]
    projections: tuple[str, ...]

    @property
    def k(self) -> int:
        return self.shape.count(0) + 1

    @property
    def n_letters(self) -> int:
        return len(self.projections)

    def words(self) -> tuple[tuple[int, ...], ...]:
        out, cur = [], []
        for x in self.shape:
            if x == 0:
                out.append(tuple(cur))
                cur = []
            else:
                cur.append(x)
        out.append(tuple(cur))
        return tuple(out)


def canonical_form(phrase: EtalePhrase) -> CanonicalForm:
    if not isinstance(phrase, Nanophrase):
        verdict = validate(phrase)
        if not verdict.valid:
            raise NotGaussError(verdict.letter, verdict.count)
    number = {x: i for i, x in enumerate(phrase.projection, 1)}
    shape = []
    for j, w in enumerate(phrase.words):
        if j:
            shape.append(0)
        shape.extend(number[x] for x in w)
    return CanonicalForm(tuple(shape), tuple(phrase.projection.values()))


def is_isomorphic(p1: Nanophrase, p2: Nanophrase) -> bool:
    if p1.alphabet != p2.alphabet:
        raise AlphabetMismatch(f"{p1.alphabet!r} vs {p2.alphabet!r}")
    return canonical_form(p1) == canonical_form(p2)


def concat_components(phrase: Nanophrase, l: int) -> Nanophrase:  # noqa: E741
    """Join components ``l`` and ``l + 1`` (1-based)."""
    if not 1 <= l <= phrase.k - 1:
        raise IndexError(f"component index {l} outside 1..{phrase.k - 1}")
    words = list(phrase.words)
    words[l - 1 : l + 1] = [words[l - 1] + words[l]]
    return type(phrase)(words, phrase.projection, phrase.alphabet)


def rename(phrase: EtalePhrase, mapping: Mapping[Hashable, Hashable]) -> EtalePhrase:
    """Apply a letter bijection; projections travel with the letters."""
    words = [[mapping[x] for x in w] for w in phrase.words]
    proj = {mapping[x]: s for x, s in phrase.projection.items()}
    if len(proj) != len(phrase.projection):
        raise NanophraseError("renaming is not injective")
    return type(phrase)(words, proj, phrase.alphabet)


_UPPER = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"


def fresh_letters(used: Iterable[Hashable], n: int) -> list:
    """``n`` letter ids not in ``used``, uppercase characters first."""
    used = set(used)
    out = [c for c in _UPPER if c not in used][:n]
    i = 0
    while len(out) < n:
        cand = f"L{i}"
        if cand not in used:
            out.append(cand)
        i += 1
    return out


def _first_occurrence_order(words: Sequence[Sequence[Hashable]]) -> list:
    seen = {}
    for w in words:
        for x in w:
            seen.setdefault(x, None)
    return list(seen)
