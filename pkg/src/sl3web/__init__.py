"""Quantum sl(3) webs: the Kuperberg bracket and a tangle invariant built from words."""

__version__ = "0.1.0"

from .laurent import LaurentPoly, lp_add, lp_monomial, lp_mul  # noqa: E402
from .words import (  # noqa: E402
    Compose,
    Gen,
    Id,
    LayeredWord,
    Tensor,
    TypeMismatch,
    canonical_layered,
    check_relation_set,
    extend_functor,
    normalize,
    words_equivalent,
)
from .grammar import ParseError, UnknownGenerator, parse_word  # noqa: E402
from .webgraph import WebDiagram, find_reducible, web_canonical_key, word_to_web  # noqa: E402
from .skein import NotClosed, WebCombo, kuperberg_bracket, normalize_combo  # noqa: E402
from .tangle import (  # noqa: E402
    CATALOG,
    NotALink,
    catalog_word,
    reidemeister_suite,
    sl3_invariant,
    sl3_link_polynomial,
    sl3_state_sum,
    web_presentation_suite,
)
