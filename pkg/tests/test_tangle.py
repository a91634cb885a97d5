import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from randwords import random_link_layers, random_tangle_layers
from sl3web.grammar import parse_word
from sl3web.laurent import LaurentPoly, lp_monomial
from sl3web.relations import tangle_relations
from sl3web.skein import combo_compose, combo_tensor, normalize_combo, normalizing_ops, singleton
from sl3web.tangle import (
    CATALOG,
    NotALink,
    TooManyCrossings,
    catalog_word,
    crossing_count,
    crossing_image,
    hourglass_web,
    mirror_word,
    reidemeister_suite,
    resolution_terms,
    sl3_invariant,
    sl3_link_polynomial,
    sl3_state_sum,
    tangle_images,
)
from sl3web.webgraph import identity_web, validate, web_canonical_key
from sl3web.words import (
    TANGLE_ALPHABET,
    Compose,
    Layer,
    LayeredWord,
    Tensor,
    check_relation_set,
    extend_functor,
    layered_to_word,
)

q = sympy.Symbol("q")


def poly(expr) -> LaurentPoly:
    expr = sympy.expand(expr * q**40)
    return LaurentPoly({m[0] - 40: int(c) for m, c in sympy.Poly(expr, q).terms()})


def P(name):
    return sl3_link_polynomial(catalog_word(name))


def test_crossing_images():
    pos = crossing_image("+")
    assert pos.coefficient(identity_web(("+", "+"))) == lp_monomial(1, 2)
    assert pos.coefficient(hourglass_web()) == lp_monomial(-1, 3)
    neg = crossing_image("-")
    assert neg.coefficient(identity_web(("+", "+"))) == lp_monomial(1, -2)
    assert neg.coefficient(hourglass_web()) == lp_monomial(-1, -3)


def test_hourglass_shape():
    h = hourglass_web()
    validate(h)
    assert h.n_interior == 2 and (h.source_sig, h.target_sig) == (("+", "+"), ("+", "+"))


def test_unknot():
    assert P("unknot") == poly(q**2 + 1 + q**-2)


def test_hopf_from_skein_recursion():
    # q^-3 P(L+) - q^3 P(L-) = (q^-1 - q) P(L0); for the Hopf link L- is two unlinked circles
    U = q**2 + 1 + q**-2
    hopf = sympy.expand(q**3 * (q**3 * U**2 + (q**-1 - q) * U))
    assert P("hopf_pos") == poly(hopf)


def test_trefoil_from_skein_recursion():
    U = q**2 + 1 + q**-2
    hopf = q**3 * (q**3 * U**2 + (q**-1 - q) * U)
    trefoil = q**3 * (q**3 * U + (q**-1 - q) * hopf)
    assert P("trefoil_right") == poly(trefoil)
    assert P("trefoil_right") == poly(-(q**14) - q**12 + q**8 + 2 * q**6 + q**4 + q**2)


def test_figure_eight_is_amphichiral():
    f = P("figure_eight")
    assert f == f.bar()
    assert f == poly(q**8 + q**6 - 1 + q**-6 + q**-8)


@pytest.mark.parametrize("a,b", [("hopf_pos", "hopf_neg"), ("trefoil_right", "trefoil_left")])
def test_catalog_mirror_pairs(a, b):
    assert P(a).bar() == P(b)
    assert CATALOG[b] == mirror_word(CATALOG[a])


def test_not_a_link():
    with pytest.raises(NotALink):
        sl3_link_polynomial(parse_word("X+", "tangle"))


def test_crossing_cap():
    w = catalog_word("trefoil_right")
    with pytest.raises(TooManyCrossings):
        list(resolution_terms(w, max_crossings=2))
    assert crossing_count(w) == 3


def test_reidemeister_suite_passes():
    report = reidemeister_suite()
    assert {r.name for r in report} >= {"a+L", "a-R", "b+", "b-", "c1", "c2", "d", "e+", "e-", "f", "g"}
    assert all(r.passed for r in report), [r.name for r in report if not r.passed]


def test_state_sum_matches_functor_on_catalog():
    for name in CATALOG:
        w = catalog_word(name)
        assert sl3_state_sum(w) == sl3_invariant(w), name


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_state_sum_matches_functor_on_random_tangles(seed):
    rng = random.Random(seed)
    source = tuple(rng.choice("+-") for _ in range(rng.randint(0, 3)))
    w = layered_to_word(random_tangle_layers(rng, source, rng.randint(1, 8), 4))
    assert sl3_state_sum(w) == sl3_invariant(w)


def _with_crossing(lw: LayeredWord, k: int, replacement: str) -> LayeredWord:
    layer = lw.layers[k]
    if replacement == "smooth":
        new: tuple[Layer, ...] = ()
    else:
        new = (Layer(layer.left, TANGLE_ALPHABET[replacement], layer.right),)
    return LayeredWord(lw.source, lw.target, lw.layers[:k] + new + lw.layers[k + 1 :])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_skein_relation_on_random_links(seed):
    rng = random.Random(seed)
    crossings = []
    while not crossings:
        lw = random_link_layers(rng, 4)
        crossings = lw.crossing_indices()
    k = rng.choice(crossings)
    plus, minus, zero = (
        sl3_link_polynomial(layered_to_word(_with_crossing(lw, k, r))) for r in ("X+", "X-", "smooth")
    )
    assert lp_monomial(1, -3) * plus - lp_monomial(1, 3) * minus == (lp_monomial(1, -1) - lp_monomial(1, 1)) * zero


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_mirror_inverts_q(seed):
    lw = random_link_layers(random.Random(seed), 4)
    text = str(layered_to_word(lw))
    mirrored = parse_word(mirror_word(text), "tangle")
    assert sl3_link_polynomial(mirrored) == sl3_link_polynomial(layered_to_word(lw)).bar()


def test_resolution_weights_sum_for_a_single_crossing():
    terms = list(resolution_terms(parse_word("X+", "tangle")))
    assert [bits for bits, _, _ in terms] == [(0,), (1,)]
    keys = {web_canonical_key(d) for _, _, d in terms}
    assert keys == {web_canonical_key(identity_web(("+", "+"))), web_canonical_key(hourglass_web())}


def test_functor_is_already_reduced():
    w = catalog_word("hopf_pos")
    inv = sl3_invariant(w)
    assert normalize_combo(inv) == inv


def test_corrupted_crossing_image_breaks_relation_c():
    images = tangle_images()
    images["X+"] = singleton(identity_web(("+", "+")), lp_monomial(1, 2))
    rel = [r for r in tangle_relations() if r[0] == "c1"]
    (result,) = check_relation_set(images, normalizing_ops, rel, normalize_combo)
    assert not result.passed and result.lhs_image != result.rhs_image


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_functor_respects_compose_and_tensor(seed):
    rng = random.Random(seed)
    lower = random_tangle_layers(rng, ("+", "-"), rng.randint(1, 4), 2)
    upper = random_tangle_layers(rng, lower.target, rng.randint(1, 4), 2)
    a, b = layered_to_word(upper), layered_to_word(lower)
    images = tangle_images()
    glued = normalize_combo(combo_compose(sl3_invariant(a), sl3_invariant(b)))
    assert sl3_invariant(Compose(a, b)) == glued
    side = normalize_combo(combo_tensor(sl3_invariant(a), sl3_invariant(b)))
    assert sl3_invariant(Tensor(a, b)) == side
    assert extend_functor(images, normalizing_ops, Tensor(a, b)) == side
