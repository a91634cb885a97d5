"""Defining relations of the web category and of the oriented tangle category."""

from __future__ import annotations

from .grammar import parse_word
from .words import Word

__all__ = ["WEB_RELATIONS", "TANGLE_RELATIONS", "web_relations", "tangle_relations"]

_FLIP = {"+": "-", "-": "+"}


def _sub(template: str, sign: str) -> str:
    # "p" is the chosen sign, "m" its opposite
    return template.replace("p", sign).replace("m", _FLIP[sign])


_WEB_TEMPLATES = [
    ("R1a", "(Nm * Ip) . (Ip * Up)", "Ip"),
    ("R1b", "Ip", "(Ip * Np) . (Um * Ip)"),
    ("R2", "(Ip * Nm) . (Yp * Im)", "(Np * Ip) . (Im * Yp)"),
]

WEB_RELATIONS: list[tuple[str, str, str]] = [
    (f"{name}{s}", _sub(lhs, s), _sub(rhs, s)) for name, lhs, rhs in _WEB_TEMPLATES for s in "+-"
]

_B_LHS = "(I- * I- * N-) . (I- * I- * I+ * N- * I-) . (I- * I- * {x} * I- * I-) . (I- * U+ * I+ * I- * I-) . (U+ * I- * I-)"
_B_RHS = "(N+ * I- * I-) . (I- * N+ * I+ * I- * I-) . (I- * I- * {x} * I- * I-) . (I- * I- * I+ * U- * I-) . (I- * I- * U-)"

TANGLE_RELATIONS: list[tuple[str, str, str]] = [
    ("a+L", "(N- * I+) . (I+ * U+)", "I+"),
    ("a+R", "I+", "(I+ * N+) . (U- * I+)"),
    ("a-L", "(N+ * I-) . (I- * U-)", "I-"),
    ("a-R", "I-", "(I- * N-) . (U+ * I-)"),
    ("b+", _B_LHS.format(x="X+"), _B_RHS.format(x="X+")),
    ("b-", _B_LHS.format(x="X-"), _B_RHS.format(x="X-")),
    ("c1", "X+ . X-", "I+ * I+"),
    ("c2", "X- . X+", "I+ * I+"),
    ("d", "(X+ * I+) . (I+ * X+) . (X+ * I+)", "(I+ * X+) . (X+ * I+) . (I+ * X+)"),
    ("e+", "(I+ * N-) . (X+ * I-) . (I+ * U-)", "I+"),
    ("e-", "(I+ * N-) . (X- * I-) . (I+ * U-)", "I+"),
    (
        "f",
        "(I- * I+ * N-) . (I- * X+ * I-) . (U+ * I+ * I-) . (N+ * I+ * I-) . (I- * X- * I-) . (I- * I+ * U-)",
        "I- * I+",
    ),
    (
        "g",
        "(N+ * I+ * I-) . (I- * X- * I-) . (I- * I+ * U-) . (I- * I+ * N-) . (I- * X+ * I-) . (U+ * I+ * I-)",
        "I+ * I-",
    ),
]


def web_relations() -> list[tuple[str, Word, Word]]:
    return [(n, parse_word(a, "web"), parse_word(b, "web")) for n, a, b in WEB_RELATIONS]


def tangle_relations() -> list[tuple[str, Word, Word]]:
    return [(n, parse_word(a, "tangle"), parse_word(b, "tangle")) for n, a, b in TANGLE_RELATIONS]
