"""Seeded generators of random well-typed words, shared by the test modules."""

from __future__ import annotations

import random

from sl3web.grammar import parse_word
from sl3web.relations import TANGLE_RELATIONS
from sl3web.words import TANGLE_ALPHABET, WEB_ALPHABET, Layer, LayeredWord, Word, layered_to_word, normalize

CUPS = {("-", "+"): "U+", ("+", "-"): "U-"}
CAPS = {("-", "+"): "N+", ("+", "-"): "N-"}


def _layer(state: tuple[str, ...], i: int, width: int, name: str, alphabet) -> Layer:
    return Layer(state[:i], alphabet[name], state[i + width :])


def random_tangle_layers(
    rng: random.Random,
    source: tuple[str, ...],
    steps: int,
    max_crossings: int,
    close: bool = False,
    max_width: int = 6,
) -> LayeredWord:
    """Random walk of cups, caps and crossings; with *close*, cap everything at the end."""
    state = tuple(source)
    layers: list[Layer] = []
    crossings = 0
    for _ in range(steps):
        moves = []
        if len(state) + 2 <= max_width:
            moves += [("cup", i) for i in range(len(state) + 1)]
        moves += [("cap", i) for i in range(len(state) - 1) if (state[i], state[i + 1]) in CAPS]
        if crossings < max_crossings:
            moves += [("cross", i) for i in range(len(state) - 1) if state[i] == state[i + 1] == "+"] * 3
        if not moves:
            break
        kind, i = rng.choice(moves)
        if kind == "cup":
            pair = rng.choice(list(CUPS))
            layer = Layer(state[:i], TANGLE_ALPHABET[CUPS[pair]], state[i:])
        elif kind == "cap":
            layer = _layer(state, i, 2, CAPS[(state[i], state[i + 1])], TANGLE_ALPHABET)
        else:
            layer = _layer(state, i, 2, rng.choice(["X+", "X-"]), TANGLE_ALPHABET)
            crossings += 1
        layers.append(layer)
        state = layer.target
    while close and state:
        i = rng.choice([i for i in range(len(state) - 1) if (state[i], state[i + 1]) in CAPS])
        layer = _layer(state, i, 2, CAPS[(state[i], state[i + 1])], TANGLE_ALPHABET)
        layers.append(layer)
        state = layer.target
    return LayeredWord(tuple(source), state, tuple(layers))


def random_tangle_word(rng: random.Random, max_crossings: int = 5) -> Word:
    source = tuple(rng.choice("+-") for _ in range(rng.randint(0, 3)))
    return layered_to_word(random_tangle_layers(rng, source, rng.randint(1, 10), max_crossings))


def random_link_layers(rng: random.Random, max_crossings: int = 5, steps: int | None = None) -> LayeredWord:
    steps = rng.randint(2, 14) if steps is None else steps
    return random_tangle_layers(rng, (), steps, max_crossings, close=True)


def random_link_word(rng: random.Random, max_crossings: int = 5) -> Word:
    return layered_to_word(random_link_layers(rng, max_crossings))


def random_web_layers(rng: random.Random, steps: int = 8, max_width: int = 6) -> LayeredWord:
    """Random closed web word: cups, caps and splits, then capped off.

    Y+ : (-) -> (+,+) and Y- : (+) -> (-,-) shift #plus - #minus by 3, so
    that difference stays divisible by 3 and the string can always close.
    """
    state: tuple[str, ...] = ()
    layers: list[Layer] = []
    for _ in range(steps):
        moves = [("cap", i) for i in range(len(state) - 1) if (state[i], state[i + 1]) in CAPS]
        if len(state) + 2 <= max_width:
            moves += [("cup", i) for i in range(len(state) + 1)]
            moves += [("split", i) for i in range(len(state))] * 2
        if not moves:
            break
        kind, i = rng.choice(moves)
        if kind == "cup":
            layer = Layer(state[:i], WEB_ALPHABET[CUPS[rng.choice(list(CUPS))]], state[i:])
        elif kind == "cap":
            layer = _layer(state, i, 2, CAPS[(state[i], state[i + 1])], WEB_ALPHABET)
        else:
            layer = _layer(state, i, 1, "Y+" if state[i] == "-" else "Y-", WEB_ALPHABET)
        layers.append(layer)
        state = layer.target
    while state:
        opts = [i for i in range(len(state) - 1) if (state[i], state[i + 1]) in CAPS]
        if opts:
            i = rng.choice(opts)
            layer = _layer(state, i, 2, CAPS[(state[i], state[i + 1])], WEB_ALPHABET)
        else:
            i = rng.randrange(len(state))
            layer = _layer(state, i, 1, "Y+" if state[i] == "-" else "Y-", WEB_ALPHABET)
        layers.append(layer)
        state = layer.target
    return LayeredWord((), (), tuple(layers))


RELATION_INSERTS = {
    name: normalize(parse_word(rhs if name.endswith("R") else lhs, "tangle"))
    for name, lhs, rhs in TANGLE_RELATIONS
    if name in ("c1", "c2", "e+", "e-", "a+L", "a+R", "a-L", "a-R")
}


def insert_relation(rng: random.Random, lw: LayeredWord, name: str) -> LayeredWord | None:
    """Insert the non-identity side of a relation at a random height and offset."""
    piece = RELATION_INSERTS[name]
    slots = []
    for h in range(len(lw.layers) + 1):
        state = lw.source if h == 0 else lw.layers[h - 1].target
        for i in range(len(state) - len(piece.source) + 1):
            if state[i : i + len(piece.source)] == piece.source:
                slots.append((h, i, state))
    if not slots:
        return None
    h, i, state = rng.choice(slots)
    left, right = state[:i], state[i + len(piece.source) :]
    new = [Layer(left + l.left, l.gen, l.right + right) for l in piece.layers]
    return LayeredWord(lw.source, lw.target, lw.layers[:h] + tuple(new) + lw.layers[h:])
