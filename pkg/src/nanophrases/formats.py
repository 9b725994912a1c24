"""Text formats: phrases, alphabet files and signed Gauss codes.

Phrase grammar::

    phrase      := components [ ";" projections ]
    components  := word ( "|" word )*
    word        := "0" | [A-Z]+
    projections := ( LETTER "=" symbol )*

An empty string is the empty phrase of length 1.  Alphabet files list
``symbol tau(symbol)`` pairs, one per line, in declared order; ``#`` starts a
comment.  Signed Gauss codes list one component per line as comma-separated
crossing ids (``0`` or a blank line for an empty component) followed by a
final ``signs: 1=+,2=-`` line.
"""

from __future__ import annotations

import json
import re
from importlib import resources
from pathlib import Path

from .core import AB_SWAP, Alphabet, EtalePhrase, Nanophrase, NanophraseError

__all__ = [
    "PhraseSyntaxError",
    "parse_phrase",
    "parse_etale",
    "render_phrase",
    "parse_alphabet",
    "render_alphabet",
    "load_alphabet",
    "BUILTIN_ALPHABETS",
    "load_schema",
]

BUILTIN_ALPHABETS = {"ab-swap": AB_SWAP}


class PhraseSyntaxError(NanophraseError):
    def __init__(self, message, text, position):
        super().__init__(f"{message} at column {position + 1}: {text!r}")
        self.position = position


_WORD = re.compile(r"0|[A-Z]+")
_PROJ = re.compile(r"([A-Z])=([^\s=|;]+)")


def _parse(text: str, alphabet: Alphabet):
    body, sep, tail = text.partition(";")
    words = []
    offset = 0
    for raw in body.split("|"):
        stripped = raw.strip()
        start = offset + (len(raw) - len(raw.lstrip()))
        if stripped == "" and body.strip() == "" and "|" not in body:
            words.append("")
        elif not _WORD.fullmatch(stripped):
            bad = next((i for i, ch in enumerate(stripped) if not ch.isupper()), 0)
            raise PhraseSyntaxError("expected '0' or uppercase letters", text, start + bad)
        else:
            words.append("" if stripped == "0" else stripped)
        offset += len(raw) + 1
    letters = {x for w in words for x in w}
    proj = {}
    pos = len(body) + len(sep)
    for token in tail.split():
        at = text.index(token, pos)
        pos = at + len(token)
        m = _PROJ.fullmatch(token)
        if not m:
            raise PhraseSyntaxError("expected LETTER=symbol", text, at)
        x, s = m.groups()
        if x in proj:
            raise PhraseSyntaxError(f"letter {x} projected twice", text, at)
        if s not in alphabet:
            raise PhraseSyntaxError(f"symbol {s!r} not in alphabet", text, at + 2)
        if x not in letters:
            raise PhraseSyntaxError(f"letter {x} does not occur", text, at)
        proj[x] = s
    missing = sorted(letters - proj.keys())
    if missing:
        raise PhraseSyntaxError(f"no projection for {', '.join(missing)}", text, len(text))
    return words, proj


def parse_phrase(text: str, alphabet: Alphabet = AB_SWAP) -> Nanophrase:
    words, proj = _parse(text, alphabet)
    return Nanophrase(words, proj, alphabet)


def parse_etale(text: str, alphabet: Alphabet = AB_SWAP) -> EtalePhrase:
    words, proj = _parse(text, alphabet)
    return EtalePhrase(words, proj, alphabet)


def render_phrase(phrase: EtalePhrase) -> str:
    """Canonical grammar form of ``phrase``: letters renamed A, B, ... by
    first occurrence, projections listed in that order."""
    if len(phrase.projection) > 26:
        raise NanophraseError("too many letters to render")
    names = {x: chr(ord("A") + i) for i, x in enumerate(phrase.projection)}
    body = "|".join("".join(names[x] for x in w) or "0" for w in phrase.words)
    if not names:
        return body
    proj = " ".join(f"{names[x]}={s}" for x, s in phrase.projection.items())
    return f"{body} ; {proj}"


def parse_alphabet(text: str) -> Alphabet:
    pairs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise NanophraseError(f"alphabet line {lineno}: expected 'symbol tau(symbol)', got {line!r}")
        pairs.append((parts[0], parts[1]))
    return Alphabet.from_pairs(pairs)


def render_alphabet(alphabet: Alphabet) -> str:
    return "".join(f"{s} {alphabet.tau(s)}\n" for s in alphabet.symbols)


def load_alphabet(source: str) -> Alphabet:
    """A built-in alphabet name or the path of an alphabet file."""
    if source in BUILTIN_ALPHABETS:
        return BUILTIN_ALPHABETS[source]
    path = Path(source)
    if not path.is_file():
        raise NanophraseError(f"unknown alphabet {source!r} (not built in, not a file)")
    return parse_alphabet(path.read_text())


def load_schema(name: str) -> dict:
    """One of the shipped JSON schemas: move, signature, label, verdict,
    reduce or atlas."""
    text = resources.files("nanophrases").joinpath("schemas", f"{name}.json").read_text()
    return json.loads(text)
