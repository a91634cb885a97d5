"""Command line front end.

    sl3web bracket "N- . (I+ * N- * I-) . (I+ * I+ * Y-) . (Y+ * I+) . U+"
    sl3web tangle "X+ . X-"
    sl3web normalize "(I+ * X+) . (X+ * I+)"
    sl3web check all --seed 7
    sl3web catalog trefoil_right --format json

One structured document goes to stdout; human-readable notes go to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from pathlib import Path

from . import __version__
from .grammar import ParseError, UnknownGenerator, parse_word
from .laurent import LaurentPoly
from .skein import NotClosed, WebCombo, kuperberg_bracket, lweb_ops, normalize_combo
from .tangle import (
    CATALOG,
    NotALink,
    TooManyCrossings,
    catalog_word,
    reidemeister_suite,
    sl3_invariant,
    sl3_state_sum,
    tangle_images,
    web_presentation_suite,
)
from .relations import tangle_relations
from .webgraph import empty_web, is_closed, word_to_web
from .words import TypeMismatch, Word, canonical_layered, extend_functor, layered_code, layered_to_word, normalize

__all__ = ["main", "build_parser", "parse_word", "ResultCache"]

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_SUITE = 0, 1, 2, 3

CACHE_STAMP = f"sl3web-engine/{__version__}"


class SuiteFailure(Exception):
    def __init__(self, document: dict):
        super().__init__("relation check failed")
        self.document = document


class ResultCache:
    """JSON file of results keyed by canonical layered code.

    A file written by another engine version is ignored and overwritten.
    """

    def __init__(self, path: str | os.PathLike | None):
        self.path = Path(path) if path else None
        self.entries: dict[str, object] = {}
        self.dirty = False
        if self.path and self.path.exists():
            try:
                data = json.loads(self.path.read_text())
            except (OSError, json.JSONDecodeError):
                data = {}
            if data.get("version") == CACHE_STAMP:
                self.entries = data.get("entries", {})

    def get(self, key: str):
        return self.entries.get(key)

    def put(self, key: str, value) -> None:
        if self.path is not None:
            self.entries[key] = value
            self.dirty = True

    def save(self) -> None:
        if self.path is None or not self.dirty:
            return
        tmp = self.path.with_suffix(self.path.suffix + ".tmp")
        tmp.write_text(json.dumps({"version": CACHE_STAMP, "entries": self.entries}, sort_keys=True, indent=1))
        os.replace(tmp, self.path)


def _parse_any(text: str, alphabet: str) -> Word:
    if alphabet != "auto":
        return parse_word(text, alphabet)
    try:
        return parse_word(text, "tangle")
    except UnknownGenerator:
        return parse_word(text, "web")


def _poly_result(p: LaurentPoly) -> dict:
    return {"polynomial": p.to_json(), "text": str(p)}


def _combo_result(c: WebCombo) -> dict:
    out: dict = {"source": "".join(c.source_sig), "target": "".join(c.target_sig), "terms": c.to_json()}
    if not c.source_sig and not c.target_sig:
        out.update(_poly_result(c.coefficient(empty_web())))
    return out


def _bracket(text: str, args, cache: ResultCache) -> dict:
    w = parse_word(text, "web")
    key = "bracket:" + layered_code(normalize(w))
    hit = cache.get(key)
    if hit is not None:
        return hit
    d = word_to_web(w)
    if not is_closed(d):
        raise NotClosed(f"bracket needs a closed web; this word has boundary {d.source_sig} -> {d.target_sig}")
    result = _poly_result(kuperberg_bracket(d))
    cache.put(key, result)
    return result


def _tangle(w: Word, args, cache: ResultCache) -> dict:
    key = f"tangle:{args.method}:" + layered_code(normalize(w))
    hit = cache.get(key)
    if hit is not None:
        return hit
    if args.method == "statesum":
        combo = sl3_state_sum(w, args.max_crossings)
    else:
        combo = sl3_invariant(w)
    result = _combo_result(combo)
    cache.put(key, result)
    return result


def _normalize(text: str, args) -> dict:
    w = _parse_any(text, args.alphabet)
    lw = canonical_layered(normalize(w))
    return {
        "word": str(layered_to_word(lw)),
        "source": "".join(lw.source),
        "target": "".join(lw.target),
        "layers": len(lw.layers),
        "code": layered_code(lw),
    }


def _confluence_checks(seed: int) -> list[dict]:
    """Reduce both sides of each tangle relation in a random order."""
    rng = random.Random(seed)
    images = tangle_images()
    rows = []
    for name, lhs, rhs in tangle_relations():
        raw = [extend_functor(images, lweb_ops, side) for side in (lhs, rhs)]
        fixed = [normalize_combo(r) for r in raw]
        shuffled = [normalize_combo(r, rng) for r in raw]
        rows.append({"relation": name, "passed": fixed == shuffled and fixed[0] == fixed[1]})
    return rows


def _check(scope: str, args) -> dict:
    doc: dict = {}
    if scope in ("webs", "all"):
        doc["webs"] = [{"relation": r.name, "passed": r.passed} for r in web_presentation_suite()]
    if scope in ("tangles", "all"):
        doc["tangles"] = [{"relation": r.name, "passed": r.passed} for r in reidemeister_suite()]
        if args.seed is not None:
            doc["confluence"] = _confluence_checks(args.seed)
    doc["passed"] = all(row["passed"] for rows in doc.values() for row in rows)
    if not doc["passed"]:
        raise SuiteFailure(doc)
    return doc


def _catalog(name: str | None, args, cache: ResultCache) -> dict:
    if name is None:
        return {"links": [{"name": n, "word": CATALOG[n]} for n in CATALOG]}
    if name not in CATALOG:
        raise KeyError(name)
    result = _tangle(catalog_word(name), args, cache)
    return {"name": name, "word": CATALOG[name], **result}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--cache", metavar="PATH", help="JSON result cache, keyed by canonical layered code")
    common.add_argument("--max-crossings", type=int, default=20, help="cap for the state-sum method")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized reduction orders")
    common.add_argument("--timings", action="store_true", help="include wall-clock timings in the output")

    p = argparse.ArgumentParser(prog="sl3web", description="sl(3) webs, the Kuperberg bracket and tangle invariants")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bracket", parents=[common], help="Kuperberg bracket of a closed web word")
    b.add_argument("word")

    t = sub.add_parser("tangle", parents=[common], help="reduced invariant of a tangle word")
    t.add_argument("word")
    t.add_argument("--method", choices=("functor", "statesum"), default="functor")

    n = sub.add_parser("normalize", parents=[common], help="canonical layered form of a word")
    n.add_argument("word")
    n.add_argument("--alphabet", choices=("auto", "web", "tangle"), default="auto")

    c = sub.add_parser("check", parents=[common], help="verify defining relations")
    c.add_argument("scope", nargs="?", choices=("webs", "tangles", "all"), default="all")

    k = sub.add_parser("catalog", parents=[common], help="list builtin links, or evaluate one")
    k.add_argument("name", nargs="?")
    k.add_argument("--method", choices=("functor", "statesum"), default="functor")
    return p


def _text(command: str, result: dict) -> str:
    if "text" in result and command != "tangle":
        return result["text"]
    if command == "normalize":
        return result["word"]
    if command == "catalog" and "links" in result:
        return "\n".join(f"{row['name']}: {row['word']}" for row in result["links"])
    if command == "check":
        lines = []
        for group in ("webs", "tangles", "confluence"):
            for row in result.get(group, []):
                lines.append(f"{group:10s} {row['relation']:5s} {'ok' if row['passed'] else 'FAIL'}")
        return "\n".join(lines)
    lines = [f"{t['coefficient_text']}  *  [{t['interior']} vertices] {t['web']}" for t in result["terms"]]
    if "text" in result:
        lines.append(f"polynomial: {result['text']}")
    return "\n".join(lines) or "0"


def _emit(args, command: str, payload: str | None, result: dict, timings: dict) -> None:
    if args.format == "json":
        doc = {"command": command, "input": payload, "result": result, "timings": timings}
        sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")
        return
    if "terms" in result:
        for t in result["terms"]:
            t["coefficient_text"] = str(LaurentPoly.from_json(t["coefficient"]))
    sys.stdout.write(_text(command, result) + "\n")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cache = ResultCache(args.cache)
    payload = getattr(args, "word", None) or getattr(args, "scope", None) or getattr(args, "name", None)
    start = time.perf_counter()
    try:
        if args.command == "bracket":
            result = _bracket(args.word, args, cache)
        elif args.command == "tangle":
            result = _tangle(parse_word(args.word, "tangle"), args, cache)
        elif args.command == "normalize":
            result = _normalize(args.word, args)
        elif args.command == "check":
            result = _check(args.scope, args)
        else:
            result = _catalog(args.name, args, cache)
    except (ParseError, TypeMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except KeyError as exc:
        print(f"error: no catalog entry {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (NotClosed, NotALink, TooManyCrossings) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except SuiteFailure as exc:
        _emit(args, args.command, payload, exc.document, {})
        print("error: some relations failed", file=sys.stderr)
        return EXIT_SUITE
    timings = {"seconds": round(time.perf_counter() - start, 6)} if args.timings else {}
    cache.save()
    _emit(args, args.command, payload, result, timings)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
