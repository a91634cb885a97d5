"""Text syntax for words.

Tokens: generators ``Y+ Y- N+ N- U+ U- X+ X-``, strand identities ``I+ I-``,
the empty identity ``I0``, tensor ``*``, composition ``.`` (left operand on
top) and parentheses.  ``*`` binds tighter than ``.``; both associate to
the left.  Whitespace is ignored.
"""

from __future__ import annotations

import re

from .words import (
    TANGLE_ALPHABET,
    WEB_ALPHABET,
    Compose,
    Gen,
    Generator,
    Id,
    Tensor,
    TypeMismatch,
    Word,
    word_type,
)

__all__ = ["ParseError", "UnknownGenerator", "parse_word", "format_word", "ALPHABETS"]

ALPHABETS: dict[str, dict[str, Generator]] = {"web": WEB_ALPHABET, "tangle": TANGLE_ALPHABET}

_TOKEN = re.compile(r"\s*(?:(?P<sym>[A-Za-z][+\-0])|(?P<op>[*.()]))")


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownGenerator(ParseError):
    pass


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        tokens.append((m.group("sym") or m.group("op"), m.start(m.lastindex)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, alphabet: dict[str, Generator]):
        self.text = text
        self.alphabet = alphabet
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def pos(self) -> int:
        return self.tokens[self.i][1] if self.i < len(self.tokens) else len(self.text)

    def take(self) -> tuple[str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def composite(self) -> tuple[Word, int]:
        start = self.pos()
        upper, _ = self.tensor()
        while self.peek() == ".":
            self.take()
            lower, _ = self.tensor()
            node = Compose(upper, lower)
            try:
                word_type(node)
            except TypeMismatch as exc:
                span = self.text[start : self.pos()].strip()
                raise TypeMismatch(f"{exc} in '{span}' (position {start})", node) from None
            upper = node
        return upper, start

    def tensor(self) -> tuple[Word, int]:
        start = self.pos()
        left = self.atom()
        while self.peek() == "*":
            self.take()
            left = Tensor(left, self.atom())
        return left, start

    def atom(self) -> Word:
        if self.i >= len(self.tokens):
            raise ParseError("unexpected end of input", len(self.text))
        tok, pos = self.take()
        if tok == "(":
            inner, _ = self.composite()
            if self.peek() != ")":
                raise ParseError("expected ')'", self.pos())
            self.take()
            return inner
        if tok in ("*", ".", ")"):
            raise ParseError(f"unexpected {tok!r}", pos)
        if tok == "I0":
            return Id(())
        if tok in ("I+", "I-"):
            return Id((tok[1],))
        if tok not in self.alphabet:
            raise UnknownGenerator(f"unknown generator {tok!r}", pos)
        return Gen(self.alphabet[tok])


def parse_word(text: str, alphabet: str = "tangle") -> Word:
    p = _Parser(text, ALPHABETS[alphabet])
    word, _ = p.composite()
    if p.peek() is not None:
        raise ParseError(f"trailing input {p.peek()!r}", p.pos())
    word_type(word)
    return word


def format_word(w: Word) -> str:
    """Fully parenthesized text that `parse_word` reads back."""
    return str(w)
