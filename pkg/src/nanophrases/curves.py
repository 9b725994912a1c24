"""Ordered, pointed multi-component curves on surfaces as nanophrases.

A curve is given by its signed Gauss code: the crossings met along each
component from its origin, and for each crossing whether the tangent at the
first passage followed by the tangent at the second is positively oriented.
Crossings become letters projecting to ``a`` (positive) or ``b`` (negative)
in the two-symbol alphabet with ``tau`` swapping them.

The atlas lists the stable-equivalence classes of irreducible curves with at
most two crossings, i.e. homotopy classes of nanophrases with at most two
letters that never reach a phrase with an empty component.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Hashable, Mapping

from .classify import ClassificationError, ClassLabel, classify_with_path, enumerate_phrases
from .core import AB_SWAP, HomotopyData, Nanophrase, NanophraseError, fresh_letters
from .invariants import signature
from .moves import Move, MoveGraph, SearchBudget, _chain, _explore, _realize_path, _state

__all__ = [
    "SignedGaussCode",
    "IrreducibilityVerdict",
    "AtlasEntry",
    "Atlas",
    "FIGURE_FAMILIES",
    "encode",
    "parse_gauss_code",
    "render_gauss_code",
    "is_irreducible",
    "build_atlas",
    "family_of",
]

#: Letter-distribution shapes, in the order the curve pictures are counted.
FIGURE_FAMILIES = ("4", "1,1", "3,1", "2,2", "2,1,1", "1,1,1,1")

_DATA = HomotopyData(AB_SWAP)


@dataclass(frozen=True)
class SignedGaussCode:
    components: tuple[tuple[Hashable, ...], ...]
    signs: Mapping[Hashable, str]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(tuple(c) for c in self.components))
        object.__setattr__(self, "signs", dict(self.signs))
        counts = Counter(x for c in self.components for x in c)
        for x, n in counts.items():
            if n != 2:
                raise NanophraseError(f"crossing {x!r} is passed {n} time(s), expected 2")
            if x not in self.signs:
                raise NanophraseError(f"crossing {x!r} has no sign")
        for x, s in self.signs.items():
            if x not in counts:
                raise NanophraseError(f"sign given for unknown crossing {x!r}")
            if s not in ("+", "-"):
                raise NanophraseError(f"sign of crossing {x!r} must be + or -, got {s!r}")


def encode(code: SignedGaussCode) -> Nanophrase:
    order = []
    for c in code.components:
        for x in c:
            if x not in order:
                order.append(x)
    names = dict(zip(order, fresh_letters((), len(order))))
    words = [[names[x] for x in c] for c in code.components]
    proj = {names[x]: ("a" if code.signs[x] == "+" else "b") for x in order}
    return Nanophrase(words, proj, AB_SWAP)


def parse_gauss_code(text: str) -> SignedGaussCode:
    lines = text.rstrip("\n").split("\n")
    if not lines or not lines[-1].strip().startswith("signs:"):
        raise NanophraseError("signed Gauss code must end with a 'signs:' line")
    signs = {}
    body = lines[-1].strip()[len("signs:") :].strip()
    for item in filter(None, (s.strip() for s in body.split(","))):
        x, eq, s = item.partition("=")
        if not eq:
            raise NanophraseError(f"bad sign entry {item!r}")
        signs[x.strip()] = s.strip()
    components = []
    for line in lines[:-1]:
        line = line.strip()
        if line in ("", "0"):
            components.append(())
        else:
            components.append(tuple(x.strip() for x in line.split(",")))
    return SignedGaussCode(components, signs)


def render_gauss_code(code: SignedGaussCode) -> str:
    out = [",".join(map(str, c)) or "0" for c in code.components]
    out.append("signs: " + ",".join(f"{x}={s}" for x, s in code.signs.items()))
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class IrreducibilityVerdict:
    outcome: str  # "irreducible" | "reducible" | "inconclusive"
    path: tuple[Move, ...] = ()
    witness: dict | None = None

    @property
    def irreducible(self) -> bool:
        return self.outcome == "irreducible"

    @property
    def reducible(self) -> bool:
        return self.outcome == "reducible"


def _component_certificates(phrase: Nanophrase):
    """Per component, an invariant showing it can never become empty."""
    sig = signature(phrase)
    k = phrase.k
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    out = {}
    for c in range(k):
        if sig.parities[c]:
            out[c + 1] = "parity"
        elif any(not v.is_identity() for (i, j), v in zip(pairs, sig.pairing) if c in (i, j)):
            out[c + 1] = "pairing"
        elif not sig.gamma[c].is_identity():
            out[c + 1] = "gamma"
        elif not sig.t[c].is_zero():
            out[c + 1] = "t"
    return out


def is_irreducible(
    phrase: Nanophrase,
    budget: SearchBudget = SearchBudget(),
    graph: MoveGraph | None = None,
) -> IrreducibilityVerdict:
    """Decide whether ``phrase`` is homotopic to a phrase with an empty component.

    The move graph is searched without growth for an empty component; phrases
    with at most two letters are then reduced to their normal form, whose
    empty components (if any) witness reducibility.  Irreducibility is
    certified per component by an invariant, or by the normal form itself.
    """
    if phrase.alphabet != AB_SWAP:
        data = HomotopyData(phrase.alphabet)
    else:
        data = _DATA
    if graph is None:
        graph = MoveGraph(data, budget)
    root = _state(phrase)
    parent, _ = _explore(
        root, data, len(root[1]), budget.max_states, stop=lambda s: any(not w for w in s[0])
    )
    hits = [s for s in parent if any(not w for w in s[0])]
    if hits:
        steps, _ = _chain(parent, hits[-1])
        path, _ = _realize_path(phrase, steps, data)
        return IrreducibilityVerdict("reducible", path, {"reached": "empty component"})
    label = None
    if phrase.n_letters <= 2:
        try:
            label, path = classify_with_path(phrase, budget, data=data, graph=graph)
        except ClassificationError:
            label = None
        else:
            rep = label.representative(phrase.k, phrase.alphabet)
            if any(not w for w in rep.words):
                return IrreducibilityVerdict("reducible", path, {"normal_form": str(label)})
    certs = _component_certificates(phrase)
    if len(certs) == phrase.k:
        return IrreducibilityVerdict("irreducible", (), {"components": certs})
    if label is not None:
        return IrreducibilityVerdict("irreducible", (), {"components": certs, "catalog": str(label)})
    return IrreducibilityVerdict("inconclusive", (), {"components": certs})


def family_of(label: ClassLabel) -> str:
    """Letter-distribution shape of a two-letter label, e.g. ``"2,1,1"``."""
    if label.family == "P11":
        return "1,1"
    rep = label.representative(label.positions[-1], AB_SWAP)
    return ",".join(str(n) for n in sorted((len(w) for w in rep.words if w), reverse=True))


@dataclass(frozen=True)
class AtlasEntry:
    label: ClassLabel
    representative: Nanophrase
    family: str
    members: int

    def to_json(self):
        from .formats import render_phrase

        return {
            "label": str(self.label),
            "k": self.representative.k,
            "representative": render_phrase(self.representative),
            "family": self.family,
            "members": self.members,
        }


@dataclass(frozen=True)
class Atlas:
    entries: tuple[AtlasEntry, ...]
    family_counts: dict[str, int]
    reducible: int

    @property
    def total(self) -> int:
        return len(self.entries)

    def summary(self) -> str:
        return " ".join(str(self.family_counts.get(f, 0)) for f in FIGURE_FAMILIES) + f" total={self.total}"

    def to_json(self):
        return [e.to_json() for e in self.entries]

    def table(self) -> str:
        from .formats import render_phrase

        rows = [("label", "representative", "family")]
        rows += [(str(e.label), render_phrase(e.representative), e.family) for e in self.entries]
        widths = [max(len(r[i]) for r in rows) for i in range(3)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
        return "\n".join(lines) + "\n"


def _atlas_for_length(args):
    k, max_crossings, budget = args
    graph = MoveGraph(_DATA, budget)
    classes, reducible, inconclusive = {}, 0, []
    for n in range(max_crossings + 1):
        if 2 * n < k:
            continue
        for phrase in enumerate_phrases(AB_SWAP, k, n, nonempty_only=True):
            verdict = is_irreducible(phrase, budget, graph)
            if verdict.reducible:
                reducible += 1
                continue
            if not verdict.irreducible:
                inconclusive.append(phrase)
                continue
            label, _ = classify_with_path(phrase, budget, data=_DATA, graph=graph)
            classes[label] = classes.get(label, 0) + 1
    return k, classes, reducible, inconclusive


def _jobs(jobs):
    if jobs is None:
        env = os.environ.get("NANO_ATLAS_JOBS")
        jobs = int(env) if env else 1
    return max(1, min(jobs, os.cpu_count() or 1))


def build_atlas(
    max_crossings: int = 2,
    budget: SearchBudget = SearchBudget(),
    jobs: int | None = None,
    max_components: int = 4,
) -> Atlas:
    """Classes of irreducible curves with at most ``max_crossings`` crossings.

    Curves with more components than ``2 * max_crossings`` always have an
    empty component, so ``k`` runs up to that bound.  ``jobs`` (default: the
    ``NANO_ATLAS_JOBS`` environment variable, else 1) spreads lengths over
    worker processes.
    """
    if max_crossings > 2:
        raise ValueError("the atlas is only available for at most 2 crossings")
    ks = range(1, min(max_components, 2 * max_crossings) + 1)
    tasks = [(k, max_crossings, budget) for k in ks]
    jobs = _jobs(jobs)
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_atlas_for_length, tasks))
    else:
        results = [_atlas_for_length(t) for t in tasks]
    entries, reducible = [], 0
    for k, classes, red, inconclusive in sorted(results, key=lambda r: r[0]):
        if inconclusive:
            raise ClassificationError(f"irreducibility undecided for {inconclusive}")
        reducible += red
        for label in sorted(classes, key=_label_order):
            rep = label.representative(k, AB_SWAP)
            entries.append(AtlasEntry(label, rep, family_of(label), classes[label]))
    counts = Counter(e.family for e in entries)
    return Atlas(tuple(entries), {f: counts.get(f, 0) for f in FIGURE_FAMILIES}, reducible)


def _label_order(label: ClassLabel):
    from .classify import FAMILIES

    return (list(FAMILIES).index(label.family), label.positions, label.letters)
