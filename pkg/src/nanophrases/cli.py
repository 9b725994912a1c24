"""Command-line front end.

Every verb takes phrases either inline (``"AB|AB ; A=a B=b"``) or as the path
of a file holding one.  Exit status: 0 on success, 1 on input errors, 2 on
inconclusive verdicts.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .classify import ClassificationError, OutOfScope, classify_with_path
from .core import HomotopyData, NanophraseError, canonical_form, validate
from .curves import build_atlas, encode, is_irreducible, parse_gauss_code
from .formats import load_alphabet, parse_etale, parse_phrase, render_phrase
from .invariants import signature
from .moves import SearchBudget, homotopic, path_to_jsonl, reduce

EXIT_OK, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2


def _read(arg: str) -> str:
    """Inline text, or the contents of ``arg`` when it names a file."""
    if arg and len(arg) < 4096:
        path = Path(arg)
        try:
            if path.is_file():
                return path.read_text().strip()
        except OSError:
            pass
    return arg


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _path_lines(path) -> str:
    return path_to_jsonl(path) if path else ""


def _budget(args) -> SearchBudget:
    return SearchBudget(args.max_extra_letters, args.max_states)


def cmd_validate(args, out):
    alphabet = load_alphabet(args.alphabet)
    phrase = parse_etale(_read(args.phrase), alphabet)
    verdict = validate(phrase)
    if args.json:
        rec = {"valid": verdict.valid}
        if not verdict.valid:
            rec.update(letter=str(verdict.letter), count=verdict.count)
        out.write(_dump(rec) + "\n")
    elif verdict.valid:
        out.write("valid\n")
    else:
        out.write(f"invalid: letter {verdict.letter} occurs {verdict.count} time(s)\n")
    return EXIT_OK if verdict.valid else EXIT_INPUT


def cmd_canon(args, out):
    phrase = parse_phrase(_read(args.phrase), load_alphabet(args.alphabet))
    cf = canonical_form(phrase)
    if args.json:
        out.write(_dump({"shape": list(cf.shape), "projections": list(cf.projections)}) + "\n")
    else:
        out.write(render_phrase(phrase) + "\n")
    return EXIT_OK


def cmd_invariants(args, out):
    phrase = parse_phrase(_read(args.phrase), load_alphabet(args.alphabet))
    sig = signature(phrase)
    if args.json:
        out.write(_dump(sig.to_json()) + "\n")
        return EXIT_OK
    out.write(f"parities: {' '.join(map(str, sig.parities))}\n")
    out.write(f"gamma:    {' | '.join(str(g) for g in sig.gamma)}\n")
    out.write(f"T:        {' | '.join(_dump(t.to_json()) for t in sig.t)}\n")
    pairs = [(i, j) for i in range(1, sig.k + 1) for j in range(i + 1, sig.k + 1)]
    body = ", ".join(f"({i},{j})={list(v.exponents)}" for (i, j), v in zip(pairs, sig.pairing))
    out.write(f"pairing:  {body or '-'}\n")
    return EXIT_OK


def cmd_reduce(args, out):
    alphabet = load_alphabet(args.alphabet)
    phrase = parse_phrase(_read(args.phrase), alphabet)
    result = reduce(phrase, HomotopyData(alphabet), _budget(args))
    if args.json:
        rec = {
            "phrase": render_phrase(result.phrase),
            "exhaustive": result.exhaustive,
            "path": [m.to_json() for m in result.path],
        }
        out.write(_dump(rec) + "\n")
    else:
        out.write(render_phrase(result.phrase) + ("" if result.exhaustive else "  (best effort)") + "\n")
        out.write(_path_lines(result.path))
    return EXIT_OK if result.exhaustive else EXIT_INCONCLUSIVE


def cmd_equiv(args, out):
    alphabet = load_alphabet(args.alphabet)
    p1 = parse_phrase(_read(args.first), alphabet)
    p2 = parse_phrase(_read(args.second), alphabet)
    verdict = homotopic(p1, p2, HomotopyData(alphabet), _budget(args))
    if args.json:
        rec = {
            "outcome": verdict.outcome,
            "path": [m.to_json() for m in verdict.path],
            "witness": verdict.witness,
        }
        out.write(_dump(rec) + "\n")
    else:
        out.write(verdict.outcome.capitalize() + "\n")
        if verdict.witness:
            out.write(_dump(verdict.witness) + "\n")
        out.write(_path_lines(verdict.path))
    return EXIT_INCONCLUSIVE if verdict.inconclusive else EXIT_OK


def cmd_classify(args, out):
    alphabet = load_alphabet(args.alphabet)
    phrase = parse_phrase(_read(args.phrase), alphabet)
    try:
        label, path = classify_with_path(phrase, _budget(args), HomotopyData(alphabet))
    except OutOfScope:
        raise
    except ClassificationError as exc:
        if args.json:
            out.write(_dump({"outcome": "inconclusive", "reason": str(exc)}) + "\n")
        else:
            out.write(f"Inconclusive: {exc}\n")
        return EXIT_INCONCLUSIVE
    if args.json:
        rec = dict(label.to_json(), label=str(label), path=[m.to_json() for m in path])
        out.write(_dump(rec) + "\n")
    else:
        out.write(f"{label}\n")
        out.write(_path_lines(path))
    return EXIT_OK


def cmd_encode_curve(args, out):
    code = parse_gauss_code(_read(args.code) + "\n")
    phrase = encode(code)
    if args.irreducible:
        verdict = is_irreducible(phrase, _budget(args))
    if args.json:
        rec = {"phrase": render_phrase(phrase)}
        if args.irreducible:
            rec["irreducible"] = verdict.outcome
        out.write(_dump(rec) + "\n")
    else:
        out.write(render_phrase(phrase) + "\n")
        if args.irreducible:
            out.write(verdict.outcome + "\n")
    if args.irreducible and verdict.outcome == "inconclusive":
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_atlas(args, out):
    atlas = build_atlas(args.max_crossings, _budget(args))
    if args.json:
        out.write(json.dumps(atlas.to_json(), indent=2) + "\n")
    else:
        out.write(atlas.table())
        out.write(atlas.summary() + "\n")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # Usage errors are input errors; exit status 2 is reserved for
    # inconclusive verdicts.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--alphabet", default="ab-swap", help="built-in alphabet name or alphabet file (default: ab-swap)")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument(
        "--max-extra-letters",
        type=int,
        default=SearchBudget().max_letters,
        help="letters a search may add beyond the larger endpoint (default: %(default)s)",
    )
    common.add_argument(
        "--max-states", type=int, default=SearchBudget().max_states, help="state cap per search (default: %(default)s)"
    )

    parser = _Parser(prog="nanophrases", description="Homotopy of nanophrases and surface curves.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("validate", parents=[common], help="check the Gauss condition")
    p.add_argument("phrase")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("canon", parents=[common], help="canonical form")
    p.add_argument("phrase")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("invariants", parents=[common], help="parities, gamma, T and pairing")
    p.add_argument("phrase")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("reduce", parents=[common], help="smallest reachable phrase")
    p.add_argument("phrase")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("equiv", parents=[common], help="decide homotopy of two phrases")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("classify", parents=[common], help="catalog label of a phrase with at most two letters")
    p.add_argument("phrase")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("encode-curve", parents=[common], help="nanophrase of a signed Gauss code")
    p.add_argument("code", help="signed Gauss code file (or inline text with newlines)")
    p.add_argument("--irreducible", action="store_true", help="also decide irreducibility")
    p.set_defaults(func=cmd_encode_curve)

    p = sub.add_parser("atlas", parents=[common], help="classes of irreducible curves")
    p.add_argument("--max-crossings", type=int, default=2)
    p.set_defaults(func=cmd_atlas)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (NanophraseError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
