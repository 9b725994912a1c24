"""Normal forms of nanophrases with at most two letters and their classification.

Every nanophrase with at most four entries is homotopic to exactly one
catalog representative: the empty phrase, a single letter split over two
components, or one of the two-letter families below (``A`` projects to the
label's first symbol, ``B`` to the second).  Families marked ``*`` exist only
for ``a != tau(b)``.

=========  ======================  =========  ======================
family     components p<q<r<s      family     components p<q<r<s
=========  ======================  =========  ======================
P4 *       ABAB                    P121I      A, AB, B
P31        ABA, B                  P121II     A, BA, B
P13        A, BAB                  P112I      A, B, AB
P22I *     AB, AB                  P112II     A, B, BA
P22II *    AB, BA                  P1111I     A, A, B, B
P211I      AB, A, B                P1111II    A, B, A, B
P211II     BA, A, B                P1111III   A, B, B, A
=========  ======================  =========  ======================
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .core import (
    Alphabet,
    HomotopyData,
    Nanophrase,
    NanophraseError,
    canonical_form,
)
from .invariants import Signature, signature, signature_difference
from .moves import (
    MoveGraph,
    SearchBudget,
    _kernel_step,
    _realize_path,
    search_path,
)

__all__ = [
    "ClassLabel",
    "CatalogEntry",
    "ClassificationError",
    "OutOfScope",
    "FAMILIES",
    "catalog",
    "classify",
    "classify_with_path",
    "enumerate_phrases",
    "separations",
]


class ClassificationError(NanophraseError):
    pass


class OutOfScope(ClassificationError):
    pass


# family -> (number of components used, component words, needs a != tau(b))
FAMILIES = {
    "EMPTY": (0, (), False),
    "P11": (2, ("A", "A"), False),
    "P4": (1, ("ABAB",), True),
    "P31": (2, ("ABA", "B"), False),
    "P13": (2, ("A", "BAB"), False),
    "P22I": (2, ("AB", "AB"), True),
    "P22II": (2, ("AB", "BA"), True),
    "P211I": (3, ("AB", "A", "B"), False),
    "P211II": (3, ("BA", "A", "B"), False),
    "P121I": (3, ("A", "AB", "B"), False),
    "P121II": (3, ("A", "BA", "B"), False),
    "P112I": (3, ("A", "B", "AB"), False),
    "P112II": (3, ("A", "B", "BA"), False),
    "P1111I": (4, ("A", "A", "B", "B"), False),
    "P1111II": (4, ("A", "B", "A", "B"), False),
    "P1111III": (4, ("A", "B", "B", "A"), False),
}

_POSITION_NAMES = "pqrs"


@dataclass(frozen=True, order=True)
class ClassLabel:
    family: str
    positions: tuple[int, ...] = ()
    letters: tuple[str, ...] = ()

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if list(self.positions) != sorted(set(self.positions)) or any(p < 1 for p in self.positions):
            raise ValueError(f"positions must be strictly increasing and >= 1: {self.positions}")

    def __str__(self):
        parts = [self.family]
        if self.positions:
            parts.append(",".join(f"{n}={p}" for n, p in zip(_POSITION_NAMES, self.positions)))
        if self.letters:
            parts.append(",".join(f"{n}={s}" for n, s in zip("ab", self.letters)))
        return ";".join(parts)

    @classmethod
    def parse(cls, text: str) -> "ClassLabel":
        family, *rest = text.strip().split(";")
        positions, letters = (), ()
        for part in rest:
            items = dict(kv.split("=", 1) for kv in part.split(","))
            if set(items) <= set(_POSITION_NAMES):
                positions = tuple(int(items[n]) for n in _POSITION_NAMES if n in items)
            else:
                letters = tuple(items[n] for n in "ab" if n in items)
        return cls(family, positions, letters)

    def to_json(self):
        return {"family": self.family, "positions": list(self.positions), "letters": list(self.letters)}

    def representative(self, k: int, alphabet: Alphabet) -> Nanophrase:
        _, words, _ = FAMILIES[self.family]
        if self.positions and self.positions[-1] > k:
            raise ValueError(f"{self} does not fit in {k} components")
        out = [""] * k
        for p, w in zip(self.positions, words):
            out[p - 1] = w
        proj = dict(zip("AB", self.letters))
        return Nanophrase(out, proj, alphabet)

    @property
    def n_letters(self) -> int:
        return {"EMPTY": 0, "P11": 1}.get(self.family, 2)


@dataclass(frozen=True)
class CatalogEntry:
    label: ClassLabel
    representative: Nanophrase
    signature: Signature


def _labels(alphabet: Alphabet, k: int):
    yield ClassLabel("EMPTY")
    for family, (width, _, restricted) in FAMILIES.items():
        if family == "EMPTY" or width > k:
            continue
        combos = list(itertools.combinations(range(1, k + 1), width))
        if family == "P11":
            for pos in combos:
                for a in alphabet.symbols:
                    yield ClassLabel(family, pos, (a,))
            continue
        for pos in combos:
            for a in alphabet.symbols:
                for b in alphabet.symbols:
                    if restricted and a == alphabet.tau(b):
                        continue
                    yield ClassLabel(family, pos, (a, b))


@lru_cache(maxsize=None)
def _catalog(alphabet: Alphabet, k: int):
    entries = []
    for label in _labels(alphabet, k):
        rep = label.representative(k, alphabet)
        entries.append(CatalogEntry(label, rep, signature(rep)))
    index = {canonical_form(e.representative): e for e in entries}
    if len(index) != len(entries):
        raise AssertionError("catalog representatives collide")
    return tuple(entries), index


def catalog(alphabet: Alphabet, k: int) -> list[CatalogEntry]:
    if k < 1:
        raise ValueError("phrase length must be at least 1")
    return list(_catalog(alphabet, k)[0])


def classify_with_path(
    phrase: Nanophrase,
    budget: SearchBudget = SearchBudget(),
    data: HomotopyData | None = None,
    graph: MoveGraph | None = None,
):
    """Class label of ``phrase`` and a move path to its catalog representative."""
    if phrase.n_letters > 2:
        raise OutOfScope(f"{phrase!r} has {2 * phrase.n_letters} entries; at most 4 are classified")
    if data is None:
        data = HomotopyData(phrase.alphabet)
    if not data.is_diagonal:
        raise ClassificationError("classification assumes diagonal homotopy data")
    if graph is None:
        graph = MoveGraph(data, budget)
    cf = canonical_form(phrase)
    cached = graph.labels.get(cf)
    if cached is not None:
        label, steps = cached
        return label, _realize_path(phrase, steps, data)[0]
    entries, index = _catalog(phrase.alphabet, phrase.k)
    hit = index.get(cf)
    if hit is not None:
        graph.labels[cf] = (hit.label, [])
        return hit.label, ()
    sig = signature(phrase)
    # A phrase matching no representative of its own size lies in a class
    # whose normal form is smaller.
    candidates = [e for e in entries if e.signature == sig and e.label.n_letters < phrase.n_letters]
    tried = []
    for entry in sorted(candidates, key=lambda e: canonical_form(e.representative)):
        path, exhaustive = search_path(phrase, entry.representative, data, budget, graph)
        if path is not None:
            graph.labels[cf] = (entry.label, [_kernel_step(m, data) for m in path])
            return entry.label, path
        tried.append((str(entry.label), exhaustive))
    raise ClassificationError(
        f"no catalog form reached from {phrase!r} within {budget}; "
        f"candidates tried (label, exhaustive): {tried}"
    )


def classify(
    phrase: Nanophrase,
    budget: SearchBudget = SearchBudget(),
    data: HomotopyData | None = None,
    graph: MoveGraph | None = None,
) -> ClassLabel:
    return classify_with_path(phrase, budget, data, graph)[0]


def _gauss_patterns(n: int):
    """Gauss words on letters 0..n-1 introduced in order, each used twice."""

    def grow(prefix, used, opened):
        if len(prefix) == 2 * n:
            yield tuple(prefix)
            return
        if opened < n:
            yield from grow(prefix + [opened], used + [1], opened + 1)
        for x in range(opened):
            if used[x] == 1:
                used2 = list(used)
                used2[x] = 2
                yield from grow(prefix + [x], used2, opened)

    yield from grow([], [], 0)


def _compositions(total: int, k: int, nonempty: bool):
    lo = 1 if nonempty else 0
    if k == 1:
        if total >= lo:
            yield (total,)
        return
    for first in range(lo, total + 1):
        for rest in _compositions(total - first, k - 1, nonempty):
            yield (first,) + rest


def enumerate_phrases(alphabet: Alphabet, k: int, n_letters: int, nonempty_only: bool = False):
    """One phrase per isomorphism class with ``n_letters`` letters and ``k`` components."""
    if n_letters > 3 or k > 6 or k < 1 or n_letters < 0:
        raise ValueError(f"enumeration limited to n <= 3 letters and 1 <= k <= 6, got n={n_letters}, k={k}")
    names = "ABC"
    seen = set()
    patterns = sorted(_gauss_patterns(n_letters))
    for pattern in patterns:
        for lengths in _compositions(2 * n_letters, k, nonempty_only):
            words, pos = [], 0
            for ln in lengths:
                words.append([names[x] for x in pattern[pos : pos + ln]])
                pos += ln
            for symbols in itertools.product(alphabet.symbols, repeat=n_letters):
                phrase = Nanophrase(words, dict(zip(names, symbols)), alphabet)
                cf = canonical_form(phrase)
                if cf not in seen:
                    seen.add(cf)
                    yield phrase


def separations(alphabet: Alphabet, k: int) -> dict[tuple[str, str], str]:
    """For each pair of distinct catalog labels, the first invariant separating
    them, or ``"catalog"`` when every invariant agrees."""
    entries = catalog(alphabet, k)
    out = {}
    for e1, e2 in itertools.combinations(entries, 2):
        diff = signature_difference(e1.signature, e2.signature)
        out[(str(e1.label), str(e2.label))] = diff["invariant"] if diff else "catalog"
    return out

