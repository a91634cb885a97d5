"""The sl(3) tangle invariant: a functor from tangle words to reduced web combinations."""

from __future__ import annotations

import itertools
from collections.abc import Iterator

from .grammar import parse_word
from .laurent import ONE, LaurentPoly, lp_monomial
from .relations import tangle_relations, web_relations
from .skein import (
    WebCombo,
    normalize_combo,
    normalizing_ops,
    singleton,
)
from .webgraph import (
    WebDiagram,
    empty_web,
    generator_web,
    identity_web,
    web_canonical_key,
    web_from_layered,
    web_ops,
)
from .words import (
    TANGLE_ALPHABET,
    WEB_ALPHABET,
    Layer,
    LayeredWord,
    RelationResult,
    Word,
    check_relation_set,
    extend_functor,
    normalize,
)

__all__ = [
    "NotALink",
    "TooManyCrossings",
    "CROSSING_WEIGHTS",
    "hourglass_web",
    "crossing_image",
    "tangle_images",
    "crossing_count",
    "sl3_invariant",
    "resolution_terms",
    "sl3_state_sum",
    "sl3_link_polynomial",
    "reidemeister_suite",
    "web_presentation_suite",
    "mirror_word",
    "CATALOG",
    "catalog_word",
]


class NotALink(Exception):
    pass


class TooManyCrossings(Exception):
    pass


# (weight of the parallel resolution, weight of the hourglass resolution)
CROSSING_WEIGHTS: dict[str, tuple[LaurentPoly, LaurentPoly]] = {
    "X+": (lp_monomial(1, 2), lp_monomial(-1, 3)),
    "X-": (lp_monomial(1, -2), lp_monomial(-1, -3)),
}

# The hourglass (++) -> (++): a sink below a source, joined by one edge.
_HOURGLASS = LayeredWord(
    ("+", "+"),
    ("+", "+"),
    (
        Layer((), WEB_ALPHABET["Y-"], ("+",)),
        Layer(("-",), WEB_ALPHABET["N+"], ()),
        Layer((), WEB_ALPHABET["Y+"], ()),
    ),
)


def hourglass_web() -> WebDiagram:
    return web_from_layered(_HOURGLASS)


def crossing_image(sign: str) -> WebCombo:
    """X+ -> q^2 id - q^3 H and X- -> q^-2 id - q^-3 H, with H the hourglass."""
    par, hour = CROSSING_WEIGHTS["X" + sign]
    return WebCombo(("+", "+"), ("+", "+"), [(identity_web(("+", "+")), par), (hourglass_web(), hour)])


def tangle_images() -> dict[str, WebCombo]:
    images = {name: singleton(generator_web(g)) for name, g in TANGLE_ALPHABET.items() if not name.startswith("X")}
    images["X+"] = crossing_image("+")
    images["X-"] = crossing_image("-")
    return images


def crossing_count(t: Word) -> int:
    return len(normalize(t).crossing_indices())


def sl3_invariant(t: Word) -> WebCombo:
    """F(t) in reduced form, normalizing after every composition."""
    return normalize_combo(extend_functor(tangle_images(), normalizing_ops, t))


def _resolved_layers(lw: LayeredWord, choice: dict[int, int]) -> LayeredWord:
    layers = []
    for k, layer in enumerate(lw.layers):
        if k not in choice:
            layers.append(layer)
        elif choice[k] == 1:
            layers += [Layer(layer.left + h.left, h.gen, h.right + layer.right) for h in _HOURGLASS.layers]
        # choice 0: parallel strands, nothing to draw
    return LayeredWord(lw.source, lw.target, tuple(layers))


def resolution_terms(t: Word, max_crossings: int = 20) -> Iterator[tuple[tuple[int, ...], LaurentPoly, WebDiagram]]:
    """All 2^n resolutions ``(bits, weight, web)``; bits follow crossings top to bottom."""
    lw = normalize(t)
    crossings = lw.crossing_indices()
    if len(crossings) > max_crossings:
        raise TooManyCrossings(f"{len(crossings)} crossings exceed the cap of {max_crossings}")
    for bits in itertools.product((0, 1), repeat=len(crossings)):
        weight = ONE
        for k, b in zip(crossings, bits):
            weight = weight * CROSSING_WEIGHTS[lw.layers[k].gen.name][b]
        yield bits, weight, web_from_layered(_resolved_layers(lw, dict(zip(crossings, bits))))


def sl3_state_sum(t: Word, max_crossings: int = 20) -> WebCombo:
    """Sum of weighted resolutions, then reduced."""
    src, tgt = normalize(t).source, normalize(t).target
    total = WebCombo(src, tgt, [(d, w) for _, w, d in resolution_terms(t, max_crossings)])
    return normalize_combo(total)


def sl3_link_polynomial(t: Word) -> LaurentPoly:
    lw = normalize(t)
    if lw.source or lw.target:
        raise NotALink(f"word has boundary {lw.source} -> {lw.target}")
    return sl3_invariant(t).coefficient(empty_web())


def reidemeister_suite() -> list[RelationResult]:
    return check_relation_set(tangle_images(), normalizing_ops, tangle_relations(), normalize_combo)


def web_presentation_suite() -> list[RelationResult]:
    images = {name: generator_web(g) for name, g in WEB_ALPHABET.items()}
    return check_relation_set(images, web_ops, web_relations(), web_canonical_key)


def mirror_word(text: str) -> str:
    """Swap X+ and X- in a word's text."""
    return text.replace("X+", "X#").replace("X-", "X+").replace("X#", "X-")


def _closure2(braid: str) -> str:
    return f"N- . (I+ * N- * I-) . (({braid}) * I- * I-) . (I+ * U- * I-) . U-"


def _closure3(braid: str) -> str:
    return (
        "N- . (I+ * N- * I-) . (I+ * I+ * N- * I- * I-) . "
        f"(({braid}) * I- * I- * I-) . (I+ * I+ * U- * I- * I-) . (I+ * U- * I-) . U-"
    )


CATALOG: dict[str, str] = {
    "unknot": "N+ . U+",
    "hopf_pos": _closure2("X+ . X+"),
    "hopf_neg": _closure2("X- . X-"),
    "trefoil_right": _closure2("X+ . X+ . X+"),
    "trefoil_left": _closure2("X- . X- . X-"),
    "figure_eight": _closure3("(X+ * I+) . (I+ * X-) . (X+ * I+) . (I+ * X-)"),
}


def catalog_word(name: str) -> Word:
    return parse_word(CATALOG[name], "tangle")
