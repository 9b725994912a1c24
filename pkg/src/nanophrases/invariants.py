"""Homotopy invariants of nanophrases.

``Pi`` is the free product generated by ``z_x`` (``x`` in the alphabet) with
``z_x z_tau(x) = 1``: an infinite cyclic factor per 2-orbit (generated by
``z`` of the orbit representative) and a ``Z/2`` factor per fixed symbol.
``pi`` is its abelianization.  Orbits are numbered from 1 with 2-orbits
first, following :func:`orbit_decomposition`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .core import (
    Alphabet,
    EtalePhrase,
    HomotopyData,
    Nanophrase,
    NanophraseError,
    OrbitDecomposition,
    orbit_decomposition,
)

__all__ = [
    "PiElement",
    "AbelianPiElement",
    "TValue",
    "Signature",
    "UnsupportedHomotopyData",
    "pi_normalize",
    "gamma",
    "t_invariant",
    "pairing",
    "length_parity",
    "desingularize",
    "etale_homotopic",
    "signature",
    "signature_difference",
]


class UnsupportedHomotopyData(NanophraseError):
    pass


@lru_cache(maxsize=None)
def _decomp(alphabet: Alphabet) -> OrbitDecomposition:
    return orbit_decomposition(alphabet)


@dataclass(frozen=True)
class PiElement:
    """Reduced word in Pi as ``(orbit, exponent)`` syllables.

    2-orbit exponents are nonzero integers (powers of the representative's
    generator); fixed-orbit syllables always have exponent 1.
    """

    syllables: tuple[tuple[int, int], ...]
    n_two_orbits: int

    def is_identity(self) -> bool:
        return not self.syllables

    def __mul__(self, other: "PiElement") -> "PiElement":
        return PiElement(_reduce(self.syllables + other.syllables, self.n_two_orbits), self.n_two_orbits)

    def abelianize(self, n_orbits: int) -> "AbelianPiElement":
        exps = [0] * n_orbits
        for orbit, e in self.syllables:
            exps[orbit - 1] += e
        return AbelianPiElement.make(exps, self.n_two_orbits)

    def to_json(self):
        return [list(s) for s in self.syllables]

    def __str__(self):
        if not self.syllables:
            return "1"
        return " ".join(f"z{o}^{e}" if e != 1 else f"z{o}" for o, e in self.syllables)


def _reduce(syllables, l):  # noqa: E741
    stack = []
    for orbit, e in syllables:
        if stack and stack[-1][0] == orbit:
            e += stack.pop()[1]
        if orbit > l:
            e %= 2
        if e:
            stack.append((orbit, e))
    return tuple(stack)


@dataclass(frozen=True)
class AbelianPiElement:
    """Exponent vector in pi; entries for fixed orbits are taken mod 2."""

    exponents: tuple[int, ...]

    @classmethod
    def make(cls, exps: Iterable[int], n_two_orbits: int) -> "AbelianPiElement":
        return cls(tuple(e if i < n_two_orbits else e % 2 for i, e in enumerate(exps)))

    def is_identity(self) -> bool:
        return not any(self.exponents)

    def to_json(self):
        return list(self.exponents)


class TValue:
    """Sparse element of the product of K_(p,q) over ordered orbit pairs.

    Entries with both orbits of size 2 are integers; all others live in Z/2.
    Zero entries are dropped.
    """

    __slots__ = ("entries",)

    def __init__(self, entries: dict[tuple[int, int], int], n_two_orbits: int):
        out = {}
        for (p, q), v in entries.items():
            if p > n_two_orbits or q > n_two_orbits:
                v %= 2
            if v:
                out[(p, q)] = v
        object.__setattr__(self, "entries", dict(sorted(out.items())))

    def __setattr__(self, name, value):
        raise AttributeError("TValue is immutable")

    def __getitem__(self, key):
        return self.entries.get(key, 0)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        return isinstance(other, TValue) and self.entries == other.entries

    def __hash__(self):
        return hash(tuple(self.entries.items()))

    def __repr__(self):
        return f"TValue({self.entries})"

    def to_json(self):
        return {f"({p},{q})": v for (p, q), v in self.entries.items()}


def pi_normalize(raw: Iterable[tuple[str, int]], alphabet: Alphabet) -> PiElement:
    """Normal form of ``z_{x1}^{e1} z_{x2}^{e2} ...`` with each ``e = +-1``."""
    dec = _decomp(alphabet)
    syllables = []
    for symbol, e in raw:
        if e not in (1, -1):
            raise ValueError(f"exponent must be +-1, got {e}")
        orbit = dec.orbit_of(symbol)
        syllables.append((orbit, e * dec.sign(symbol)))
    return PiElement(_reduce(syllables, dec.l), dec.l)


def gamma(phrase: Nanophrase) -> tuple[PiElement, ...]:
    """Per component, product of ``z_|A|`` at first occurrences of letters and
    ``z_tau|A|`` at second occurrences (first/second in the whole phrase)."""
    alphabet = phrase.alphabet
    seen = set()
    out = []
    for w in phrase.words:
        raw = []
        for x in w:
            s = phrase.projection[x]
            if x in seen:
                raw.append((alphabet.tau(s), 1))
            else:
                seen.add(x)
                raw.append((s, 1))
        out.append(pi_normalize(raw, alphabet))
    return tuple(out)


def _require_diagonal(data):
    if data is not None and not data.is_diagonal:
        raise UnsupportedHomotopyData("T is only defined here for diagonal homotopy data")


def t_invariant(phrase: Nanophrase, data: HomotopyData | None = None) -> tuple[TValue, ...]:
    _require_diagonal(data)
    dec = _decomp(phrase.alphabet)
    proj = phrase.projection
    pos = {}
    for i, x in enumerate(phrase.concatenation()):
        pos.setdefault(x, []).append(i)
    orbit = {x: dec.orbit_of(s) for x, s in proj.items()}
    sign = {x: dec.sign(s) for x, s in proj.items()}

    def t_of_letter(a, acc):
        a1, a2 = pos[a]
        p = orbit[a]
        for b in proj:
            if b == a:
                continue
            b1, b2 = pos[b]
            if a1 < b1 < a2 < b2:
                v = sign[b]
            elif b1 < a1 < b2 < a2:
                v = -sign[b]
            else:
                continue
            key = (p, orbit[b])
            acc[key] = acc.get(key, 0) + sign[a] * v

    out = []
    for w in phrase.words:
        acc = {}
        counts = {}
        for x in w:
            counts[x] = counts.get(x, 0) + 1
        for x, c in counts.items():
            if c == 2:
                t_of_letter(x, acc)
        out.append(TValue(acc, dec.l))
    return tuple(out)


def pairing(phrase: Nanophrase) -> tuple[AbelianPiElement, ...]:
    """Products of ``|A|`` in pi over letters shared by components i < j,
    ordered (1,2), (1,3), ..., (k-1,k)."""
    dec = _decomp(phrase.alphabet)
    n = dec.l + dec.m
    home = {}
    for c, w in enumerate(phrase.words):
        for x in w:
            home.setdefault(x, []).append(c)
    k = phrase.k
    acc = {(i, j): [0] * n for i in range(k) for j in range(i + 1, k)}
    for x, (c1, c2) in home.items():
        if c1 != c2:
            s = phrase.projection[x]
            acc[(c1, c2)][dec.orbit_of(s) - 1] += dec.sign(s)
    return tuple(AbelianPiElement.make(acc[key], dec.l) for key in sorted(acc))


def length_parity(phrase: EtalePhrase) -> tuple[int, ...]:
    return tuple(len(w) % 2 for w in phrase.words)


def desingularize(word: EtalePhrase) -> Nanophrase:
    """Canonical nanoword of an étale word with one component.

    Letters of multiplicity one disappear; the i-th entry of a letter ``A``
    of multiplicity ``m >= 2`` becomes ``A(1,i) ... A(i-1,i) A(i,i+1) ... A(i,m)``
    where ``A(i,j)`` is the letter ``(A, i, j)``.
    """
    if word.k != 1:
        raise NanophraseError("desingularization takes a single word")
    (w,) = word.words
    mult = {}
    for x in w:
        mult[x] = mult.get(x, 0) + 1
    seen = {}
    out = []
    for x in w:
        m = mult[x]
        if m < 2:
            continue
        i = seen[x] = seen.get(x, 0) + 1
        out.extend((x, j, i) for j in range(1, i))
        out.extend((x, i, j) for j in range(i + 1, m + 1))
    proj = {y: word.projection[y[0]] for y in out}
    return Nanophrase([out], proj, word.alphabet)


def etale_homotopic(w1: EtalePhrase, w2: EtalePhrase, data: HomotopyData, budget=None, graph=None):
    from .moves import SearchBudget, homotopic

    return homotopic(desingularize(w1), desingularize(w2), data, budget or SearchBudget(), graph)


@dataclass(frozen=True)
class Signature:
    k: int
    parities: tuple[int, ...]
    gamma: tuple[PiElement, ...]
    t: tuple[TValue, ...]
    pairing: tuple[AbelianPiElement, ...]

    def to_json(self):
        return {
            "k": self.k,
            "parities": list(self.parities),
            "gamma": [g.to_json() for g in self.gamma],
            "t": [t.to_json() for t in self.t],
            "pairing": [p.to_json() for p in self.pairing],
        }


@lru_cache(maxsize=1 << 16)
def _signature(phrase: Nanophrase) -> Signature:
    return Signature(phrase.k, length_parity(phrase), gamma(phrase), t_invariant(phrase), pairing(phrase))


def signature(phrase: Nanophrase, data: HomotopyData | None = None) -> Signature:
    _require_diagonal(data)
    return _signature(phrase)


def signature_difference(s1: Signature, s2: Signature) -> dict | None:
    """First invariant on which two signatures differ, as a witness record."""
    for name in ("pairing", "gamma", "t", "parities"):
        v1, v2 = getattr(s1, name), getattr(s2, name)
        if v1 != v2:
            return {"invariant": name, "values": [_json(v1), _json(v2)]}
    return None


def _json(values):
    return [v if isinstance(v, int) else v.to_json() for v in values]
