"""Homotopy moves on nanophrases and a bounded search over the move graph.

Moves act on the concatenation ``w1 w2 ... wk`` but every two-letter subword
they touch (``AA``, ``AB``, ``BA``, ``AC``, ``BC``) must sit inside a single
component; the stretches between them may cross separators.  Positions in a
:class:`Move` are indices into the concatenation, so a move computed on one
phrase replays on any isomorphic one.

The search works on canonical states ``(words, projections)`` where letters
are numbered ``0, 1, ...`` by first occurrence and projections are symbol
indices.  Searches are two-sided breadth-first searches restricted to the
components that carry letters at either end; :class:`MoveGraph` caches their
results (and classification labels) so that batch work such as classifying
every small phrase or checking all pairs repeats no search.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Any

from .core import (
    AlphabetMismatch,
    CanonicalForm,
    HomotopyData,
    Nanophrase,
    NanophraseError,
    canonical_form,
    fresh_letters,
)

__all__ = [
    "Move",
    "SearchBudget",
    "Verdict",
    "ReduceResult",
    "MoveGraph",
    "StaleMoveError",
    "applicable_moves",
    "apply_move",
    "replay",
    "reduce",
    "homotopic",
    "path_to_jsonl",
    "path_from_jsonl",
]

FORWARD_KINDS = ("M1", "M2", "M3", "M3inv")
INVERSE_KINDS = ("M1inv", "M2inv")


class StaleMoveError(NanophraseError):
    """The move's pattern is not present in the phrase it is applied to."""


@dataclass(frozen=True)
class Move:
    """One homotopy move.

    ``positions`` index the concatenated word.  Insertions (``M1inv``,
    ``M2inv``) have no positions; their ``payload`` holds the projected
    symbols followed by ``(component, offset)`` insertion sites, and
    ``letters`` names the new letters.  ``M2inv`` inserts ``AB`` at the first
    site and ``BA`` at the second.
    """

    kind: str
    positions: tuple[int, ...] = ()
    letters: tuple = ()
    payload: tuple = ()

    def to_json(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "positions": list(self.positions),
            "letters": [_jsonable(x) for x in self.letters],
            "payload": list(self.payload),
        }

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> "Move":
        return cls(
            obj["kind"],
            tuple(obj.get("positions", ())),
            tuple(_unjson(x) for x in obj.get("letters", ())),
            tuple(obj.get("payload", ())),
        )


def _jsonable(x):
    return list(x) if isinstance(x, tuple) else x


def _unjson(x):
    return tuple(_unjson(y) for y in x) if isinstance(x, list) else x


@dataclass(frozen=True)
class SearchBudget:
    max_letters: int = 4
    max_states: int = 10**6

    def __post_init__(self):
        if self.max_letters < 1 or self.max_states < 1:
            raise ValueError("search budget entries must be positive")


@dataclass(frozen=True)
class Verdict:
    outcome: str  # "equivalent" | "distinct" | "inconclusive"
    path: tuple[Move, ...] = ()
    witness: dict | None = None

    @property
    def equivalent(self) -> bool:
        return self.outcome == "equivalent"

    @property
    def distinct(self) -> bool:
        return self.outcome == "distinct"

    @property
    def inconclusive(self) -> bool:
        return self.outcome == "inconclusive"


@dataclass(frozen=True)
class ReduceResult:
    phrase: Nanophrase
    path: tuple[Move, ...]
    exhaustive: bool

    @property
    def best_effort(self) -> bool:
        return not self.exhaustive


# --------------------------------------------------------------------------
# move kernels on (words, symbol-of-letter) layouts


def _layout(words):
    flat, comp, start = [], [], []
    for c, w in enumerate(words):
        start.append(len(flat))
        flat.extend(w)
        comp.extend([c] * len(w))
    return flat, comp, start


def _sites(words, sym, data: HomotopyData, room: int):
    """All moves available on ``words``; ``room`` = letters that may be added.

    Yields ``(kind, positions, payload)`` with symbol indices in payloads.
    """
    tau = data.alphabet.tau_indices
    flat, comp, _ = _layout(words)
    n = len(flat)
    other = [0] * n
    first = {}
    for i, x in enumerate(flat):
        if x in first:
            j = first[x]
            other[i], other[j] = j, i
        else:
            first[x] = i
    adj = [i for i in range(n - 1) if comp[i] == comp[i + 1]]
    out = []
    for i in adj:
        if flat[i] == flat[i + 1]:
            out.append(("M1", (i, i + 1), ()))
    for i in adj:
        x, y = flat[i], flat[i + 1]
        if x == y:
            continue
        jy, jx = other[i + 1], other[i]
        if jy > i + 1 and jx == jy + 1 and comp[jy] == comp[jx] and tau[sym[x]] == sym[y]:
            out.append(("M2", (i, i + 1, jy, jx), ()))
    for i in adj:
        a, b = flat[i], flat[i + 1]
        if a == b:
            continue
        # xAB yAC zBC t
        j = other[i]
        if j > i + 1 and j + 1 < n and comp[j] == comp[j + 1]:
            c = flat[j + 1]
            m = other[i + 1]
            if (
                c != a
                and c != b
                and m > j + 1
                and m + 1 < n
                and comp[m] == comp[m + 1]
                and flat[m + 1] == c
                and data.allows(sym[a], sym[b], sym[c])
            ):
                out.append(("M3", (i, i + 1, j, j + 1, m, m + 1), ()))
    for i in adj:
        b, a = flat[i], flat[i + 1]
        if a == b:
            continue
        # xBA yCA zCB t
        ja = other[i + 1]
        j = ja - 1
        if j > i + 1 and comp[j] == comp[ja]:
            c = flat[j]
            mb = other[i]
            m = mb - 1
            if (
                c != a
                and c != b
                and m > ja
                and comp[m] == comp[mb]
                and flat[m] == c
                and data.allows(sym[a], sym[b], sym[c])
            ):
                out.append(("M3inv", (i, i + 1, j, j + 1, m, m + 1), ()))
    if room >= 1:
        gaps = [(c, o) for c, w in enumerate(words) for o in range(len(w) + 1)]
        for s in range(len(tau)):
            for c, o in gaps:
                out.append(("M1inv", (), (s, c, o)))
        if room >= 2:
            for s in range(len(tau)):
                t = tau[s]
                for g1 in range(len(gaps)):
                    c1, o1 = gaps[g1]
                    for g2 in range(g1, len(gaps)):
                        c2, o2 = gaps[g2]
                        out.append(("M2inv", (), (s, t, c1, o1, c2, o2)))
    return out


def _apply(words, kind, positions, payload, new):
    """Apply a kernel move; ``new`` supplies ids for inserted letters."""
    flat, comp, start = _layout(words)
    lengths = [len(w) for w in words]
    if kind in ("M1", "M2"):
        for p in sorted(positions, reverse=True):
            lengths[comp[p]] -= 1
            del flat[p]
    elif kind in ("M3", "M3inv"):
        for p in positions[::2]:
            flat[p], flat[p + 1] = flat[p + 1], flat[p]
    elif kind == "M1inv":
        _, c, o = payload
        x = new[0]
        g = start[c] + o
        flat[g:g] = [x, x]
        lengths[c] += 2
    elif kind == "M2inv":
        _, _, c1, o1, c2, o2 = payload
        a, b = new[0], new[1]
        g2 = start[c2] + o2
        flat[g2:g2] = [b, a]
        lengths[c2] += 2
        g1 = start[c1] + o1
        flat[g1:g1] = [a, b]
        lengths[c1] += 2
    else:
        raise NanophraseError(f"unknown move kind {kind!r}")
    out, pos = [], 0
    for ln in lengths:
        out.append(tuple(flat[pos : pos + ln]))
        pos += ln
    return tuple(out)


def _new_symbols(kind, payload):
    if kind == "M1inv":
        return (payload[0],)
    if kind == "M2inv":
        return (payload[0], payload[1])
    return ()


# --------------------------------------------------------------------------
# canonical search states


def _canon(words, proj):
    """Renumber letters by first occurrence; ``proj`` maps old id -> symbol index."""
    number = {}
    out = []
    for w in words:
        row = []
        for x in w:
            y = number.get(x)
            if y is None:
                y = number[x] = len(number)
            row.append(y)
        out.append(tuple(row))
    p = [0] * len(number)
    for x, y in number.items():
        p[y] = proj[x]
    return tuple(out), tuple(p)


def _state(phrase: Nanophrase):
    idx = phrase.alphabet.index
    return _canon(phrase.words, {x: idx(s) for x, s in phrase.projection.items()})


def _step(state, kind, positions, payload):
    words, proj = state
    n = len(proj)
    new = tuple(range(n, n + len(_new_symbols(kind, payload))))
    proj_map = dict(enumerate(proj))
    for x, s in zip(new, _new_symbols(kind, payload)):
        proj_map[x] = s
    return _canon(_apply(words, kind, positions, payload, new), proj_map)


def _state_key(state, symbols):
    words, proj = state
    shape = []
    for j, w in enumerate(words):
        if j:
            shape.append(0)
        shape.extend(x + 1 for x in w)
    return (len(proj), CanonicalForm(tuple(shape), tuple(symbols[s] for s in proj)))


def _state_phrase(state, alphabet):
    words, proj = state
    names = fresh_letters((), len(proj))
    return Nanophrase(
        [[names[x] for x in w] for w in words],
        {names[x]: alphabet.symbols[s] for x, s in enumerate(proj)},
        alphabet,
    )


# --------------------------------------------------------------------------
# public move API


def applicable_moves(
    phrase: Nanophrase,
    data: HomotopyData,
    allow_inverse: bool = True,
    max_letters: int | None = None,
) -> list[Move]:
    """Every move site on ``phrase``.

    Insertions are offered only when ``allow_inverse`` is set and the result
    stays within ``max_letters`` letters (no cap when ``None``).
    """
    _check_alphabet(phrase, data)
    if not allow_inverse:
        room = 0
    elif max_letters is None:
        room = 2
    else:
        room = max(0, max_letters - phrase.n_letters)
    idx = data.alphabet.index
    sym = {x: idx(s) for x, s in phrase.projection.items()}
    flat = phrase.concatenation()
    symbols = data.alphabet.symbols
    out = []
    for kind, positions, payload in _sites(phrase.words, sym, data, room):
        out.append(_realize(kind, positions, payload, flat, phrase, symbols))
    return out


def _realize(kind, positions, payload, flat, phrase, symbols):
    if kind in INVERSE_KINDS:
        syms = _new_symbols(kind, payload)
        letters = tuple(fresh_letters(phrase.projection, len(syms)))
        named = tuple(symbols[s] for s in syms) + payload[len(syms) :]
        return Move(kind, (), letters, named)
    letters = []
    for p in positions:
        if flat[p] not in letters:
            letters.append(flat[p])
    return Move(kind, positions, tuple(letters), ())


def _kernel_form(mv: Move, data: HomotopyData):
    if mv.kind in INVERSE_KINDS:
        n = 1 if mv.kind == "M1inv" else 2
        syms = tuple(data.alphabet.index(s) for s in mv.payload[:n])
        return syms + tuple(mv.payload[n:])
    return ()


def apply_move(phrase: Nanophrase, mv: Move, data: HomotopyData | None = None) -> Nanophrase:
    """Apply ``mv``; raises :class:`StaleMoveError` if its pattern is absent."""
    if data is None:
        data = HomotopyData(phrase.alphabet)
    _check_alphabet(phrase, data)
    idx = data.alphabet.index
    sym = {x: idx(s) for x, s in phrase.projection.items()}
    if mv.kind in FORWARD_KINDS:
        found = {(k, p) for k, p, _ in _sites(phrase.words, sym, data, 0)}
        if (mv.kind, tuple(mv.positions)) not in found:
            raise StaleMoveError(f"{mv.kind} at {tuple(mv.positions)} does not apply to {phrase!r}")
        words = _apply(phrase.words, mv.kind, tuple(mv.positions), (), ())
        proj = phrase.projection
    elif mv.kind in INVERSE_KINDS:
        payload = _kernel_form(mv, data)
        syms = _new_symbols(mv.kind, payload)
        tau = data.alphabet.tau_indices
        if mv.kind == "M2inv" and tau[syms[0]] != syms[1]:
            raise StaleMoveError("M2inv needs |B| = tau(|A|)")
        sites = [payload[len(syms) + 2 * i : len(syms) + 2 * i + 2] for i in range(len(syms))]
        for c, o in sites:
            if not (0 <= c < phrase.k and 0 <= o <= len(phrase.words[c])):
                raise StaleMoveError(f"insertion site {(c, o)} outside {phrase!r}")
        if len(sites) == 2 and tuple(sites[0]) > tuple(sites[1]):
            raise StaleMoveError("M2inv sites must be ordered")
        letters = tuple(mv.letters) or tuple(fresh_letters(phrase.projection, len(syms)))
        if len(letters) != len(syms) or set(letters) & phrase.projection.keys():
            raise StaleMoveError(f"new letters {letters} clash with {phrase!r}")
        words = _apply(phrase.words, mv.kind, (), payload, letters)
        proj = dict(phrase.projection)
        for x, s in zip(letters, syms):
            proj[x] = data.alphabet.symbols[s]
    else:
        raise NanophraseError(f"unknown move kind {mv.kind!r}")
    return Nanophrase(words, proj, phrase.alphabet)


def replay(phrase: Nanophrase, path, data: HomotopyData | None = None) -> Nanophrase:
    for mv in path:
        phrase = apply_move(phrase, mv, data)
    return phrase


def path_to_jsonl(path) -> str:
    return "".join(json.dumps(mv.to_json(), sort_keys=True) + "\n" for mv in path)


def path_from_jsonl(text: str) -> list[Move]:
    return [Move.from_json(json.loads(line)) for line in text.splitlines() if line.strip()]


def _check_alphabet(phrase, data):
    if phrase.alphabet != data.alphabet:
        raise AlphabetMismatch(f"{phrase.alphabet!r} vs {data.alphabet!r}")


# --------------------------------------------------------------------------
# bounded search on canonical states


def _neighbors(state, data, cap):
    words, proj = state
    for kind, positions, payload in _sites(words, proj, data, cap - len(proj)):
        yield _step(state, kind, positions, payload), (kind, positions, payload)


def _undo(state, prev, data):
    """A kernel move taking ``state`` back to ``prev``."""
    words, proj = state
    room = max(0, len(prev[1]) - len(proj))
    for kind, positions, payload in _sites(words, proj, data, room):
        if _step(state, kind, positions, payload) == prev:
            return kind, positions, payload
    raise AssertionError("move graph edge without an inverse")


def _chain(parent, state):
    """Moves from the root of ``parent`` to ``state`` and the states visited."""
    steps, states = [], [state]
    while parent[state] is not None:
        state, mv = parent[state]
        steps.append(mv)
        states.append(state)
    return steps[::-1], states[::-1]


def _explore(root, data, cap, max_states, stop=None):
    """Breadth-first exploration from ``root``.

    Returns ``(parent, complete)``; stops early once ``stop(state)`` holds.
    """
    parent = {root: None}
    if stop is not None and stop(root):
        return parent, True
    queue = deque([root])
    while queue:
        state = queue.popleft()
        for nxt, mv in _neighbors(state, data, cap):
            if nxt in parent:
                continue
            if len(parent) >= max_states:
                return parent, False
            parent[nxt] = (state, mv)
            if stop is not None and stop(nxt):
                return parent, True
            queue.append(nxt)
    return parent, True


def _bidirectional(s, t, data, cap, max_states):
    """Shortest move path ``s -> t`` within ``cap`` letters.

    Returns ``(steps or None, exhaustive, visited_from_s)``; ``exhaustive``
    means one side ran out of states, so no path exists within ``cap``.
    """
    if s == t:
        return [], True, {s: None}
    ps, pt = {s: None}, {t: None}
    fs, ft = [s], [t]
    while fs and ft:
        forward = len(fs) <= len(ft)
        mine, theirs = (ps, pt) if forward else (pt, ps)
        frontier = fs if forward else ft
        nxt_frontier = []
        for state in frontier:
            for nxt, mv in _neighbors(state, data, cap):
                if nxt in mine:
                    continue
                mine[nxt] = (state, mv)
                if nxt in theirs:
                    head, _ = _chain(ps, nxt)
                    _, back = _chain(pt, nxt)
                    tail = [_undo(back[i], back[i - 1], data) for i in range(len(back) - 1, 0, -1)]
                    return head + tail, True, ps
                nxt_frontier.append(nxt)
                if len(ps) + len(pt) >= max_states:
                    return None, False, ps
        if forward:
            fs = nxt_frontier
        else:
            ft = nxt_frontier
    return None, True, ps


def _support(*states):
    k = len(states[0][0])
    return tuple(c for c in range(k) if any(st[0][c] for st in states))


def _project(state, keep):
    words, proj = state
    return tuple(words[c] for c in keep), proj


def _lift(steps, keep):
    """Map component indices of insertion sites back to the full phrase."""
    out = []
    for kind, positions, payload in steps:
        if kind == "M1inv":
            s, c, o = payload
            payload = (s, keep[c], o)
        elif kind == "M2inv":
            s, t, c1, o1, c2, o2 = payload
            payload = (s, t, keep[c1], o1, keep[c2], o2)
        out.append((kind, positions, payload))
    return out


def _replay_states(state, steps):
    states = [state]
    for kind, positions, payload in steps:
        state = _step(state, kind, positions, payload)
        states.append(state)
    return states


def _reverse(state, steps, data):
    """Moves undoing ``steps`` (which start at ``state``), in order."""
    states = _replay_states(state, steps)
    return [_undo(states[i], states[i - 1], data) for i in range(len(states) - 1, 0, -1)]


class MoveGraph:
    """Memo of bounded searches, shared across calls at the caller's choice.

    Searches run only on the components that hold letters in either
    endpoint; components empty at both ends are never touched, and results
    are cached on the projected pair so that placements of the same pattern
    among empty components share one search.
    """

    def __init__(self, data: HomotopyData, budget: SearchBudget | None = None):
        self.data = data
        self.budget = budget or SearchBudget()
        self._paths = {}
        self.labels = {}

    def path(self, s, t, cap):
        """Kernel steps ``s -> t`` or ``None``; second value is exhaustiveness."""
        keep = _support(s, t)
        ps, pt = _project(s, keep), _project(t, keep)
        key = (ps, pt, cap)
        hit = self._paths.get(key)
        if hit is None:
            rkey = (pt, ps, cap)
            if rkey in self._paths:
                steps, done = self._paths[rkey]
                hit = (None if steps is None else _reverse(pt, steps, self.data), done)
            else:
                steps, done, _ = _bidirectional(ps, pt, self.data, cap, self.budget.max_states)
                hit = (steps, done)
            self._paths[key] = hit
        steps, done = hit
        return (None if steps is None else _lift(steps, keep)), done


def _graph_for(data, budget, graph):
    if graph is None:
        return MoveGraph(data, budget)
    if graph.data != data:
        raise AlphabetMismatch("move graph built for different homotopy data")
    return graph


def _realize_path(phrase: Nanophrase, steps, data: HomotopyData):
    symbols = data.alphabet.symbols
    path = []
    for kind, positions, payload in steps:
        mv = _realize(kind, positions, payload, phrase.concatenation(), phrase, symbols)
        phrase = apply_move(phrase, mv, data)
        path.append(mv)
    return tuple(path), phrase


def search_path(
    p1: Nanophrase,
    p2: Nanophrase,
    data: HomotopyData,
    budget: SearchBudget = SearchBudget(),
    graph: MoveGraph | None = None,
):
    """A replayable move path from ``p1`` to a phrase isomorphic to ``p2``.

    Returns ``(path or None, exhaustive)``.
    """
    _check_alphabet(p1, data)
    _check_alphabet(p2, data)
    if p1.k != p2.k:
        raise NanophraseError(f"phrase lengths differ: {p1.k} vs {p2.k}")
    graph = _graph_for(data, budget, graph)
    cap = max(p1.n_letters, p2.n_letters) + budget.max_letters
    steps, done = graph.path(_state(p1), _state(p2), cap)
    if steps is None:
        return None, done
    path, _ = _realize_path(p1, steps, data)
    return path, done


def lower_bound(phrase: Nanophrase) -> int:
    """Letters any homotopic phrase must have, as certified by invariants (0-2)."""
    from .classify import enumerate_phrases
    from .invariants import signature

    sig = signature(phrase)
    for n in (0, 1):
        for q in enumerate_phrases(phrase.alphabet, phrase.k, n):
            if signature(q) == sig:
                return n
    return 2


def reduce(
    phrase: Nanophrase,
    data: HomotopyData,
    budget: SearchBudget = SearchBudget(),
    graph: MoveGraph | None = None,
) -> ReduceResult:
    """Smallest reachable phrase by ``(letter count, canonical form)``.

    First explores without growing the phrase.  If that does not reach the
    invariant lower bound, every smaller phrase with matching invariants is
    tried as a target of a bounded two-sided search, smallest first.
    ``exhaustive`` is false when a state cap cut some search short.
    """
    from .classify import enumerate_phrases
    from .invariants import signature

    _check_alphabet(phrase, data)
    graph = _graph_for(data, budget, graph)
    symbols = data.alphabet.symbols
    root = _state(phrase)
    lb = lower_bound(phrase) if data.is_diagonal else 0
    parent, complete = _explore(
        root, data, len(root[1]), budget.max_states, stop=lambda s: len(s[1]) <= lb
    )
    best = min(parent, key=lambda s: _state_key(s, symbols))
    steps, _ = _chain(parent, best)
    n_best = len(best[1])
    if n_best > lb and data.is_diagonal:
        sig = signature(phrase)
        cap = phrase.n_letters + budget.max_letters
        found = False
        for n in range(lb, min(n_best, 3)):
            targets = [q for q in enumerate_phrases(phrase.alphabet, phrase.k, n) if signature(q) == sig]
            for q in targets:
                t = _state(q)
                got, done = graph.path(root, t, cap)
                complete = complete and done
                if got is not None:
                    steps, best, found = got, t, True
                    break
            if found:
                break
    path, result = _realize_path(phrase, steps, data)
    return ReduceResult(result, path, complete)


def homotopic(
    p1: Nanophrase,
    p2: Nanophrase,
    data: HomotopyData,
    budget: SearchBudget = SearchBudget(),
    graph: MoveGraph | None = None,
) -> Verdict:
    """Semi-decide homotopy of two phrases of equal length.

    Invariants are compared first; a difference gives a ``distinct`` verdict
    naming the invariant.  Phrases with at most two letters are then settled
    through their normal forms (a path through the shared normal form, or a
    catalog citation when the normal forms differ).  Anything else goes to
    a bounded two-sided search.
    """
    _check_alphabet(p1, data)
    _check_alphabet(p2, data)
    if p1.k != p2.k:
        raise NanophraseError(f"phrase lengths differ: {p1.k} vs {p2.k}")
    if canonical_form(p1) == canonical_form(p2):
        return Verdict("equivalent", ())
    graph = _graph_for(data, budget, graph)
    if data.is_diagonal:
        from .invariants import signature, signature_difference

        diff = signature_difference(signature(p1), signature(p2))
        if diff is not None:
            return Verdict("distinct", (), diff)
        if p1.n_letters <= 2 and p2.n_letters <= 2:
            from .classify import ClassificationError, classify_with_path

            try:
                l1, path1 = classify_with_path(p1, budget, data=data, graph=graph)
                l2, path2 = classify_with_path(p2, budget, data=data, graph=graph)
            except ClassificationError:
                pass
            else:
                if l1 != l2:
                    return Verdict("distinct", (), {"catalog": [str(l1), str(l2)]})
                back = _reverse(_state(p2), [_kernel_step(m, data) for m in path2], data)
                steps = [_kernel_step(m, data) for m in path1] + back
                path, _ = _realize_path(p1, steps, data)
                return Verdict("equivalent", path)
    path, done = search_path(p1, p2, data, budget, graph)
    if path is not None:
        return Verdict("equivalent", path)
    return Verdict("inconclusive", (), {"exhaustive": done})


def _kernel_step(mv: Move, data: HomotopyData):
    return mv.kind, tuple(mv.positions), _kernel_form(mv, data)
