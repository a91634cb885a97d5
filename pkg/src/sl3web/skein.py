"""Linear combinations of webs modulo the loop, digon and square relations."""

from __future__ import annotations

import dataclasses
import random
from collections.abc import Iterable

from .laurent import DIGON_VALUE, LOOP_VALUE, ONE, ZERO, LaurentPoly
from .words import SignString, TargetOps
from .webgraph import (
    ReduciblePattern,
    WebDiagram,
    all_reducible,
    empty_web,
    find_reducible,
    identity_web,
    is_closed,
    splice,
    web_canonical_key,
    web_compose,
    web_tensor,
)

__all__ = [
    "WebCombo",
    "SignatureMismatch",
    "NotClosed",
    "NonterminatingReduction",
    "combo_add",
    "combo_scale",
    "combo_compose",
    "combo_tensor",
    "singleton",
    "identity_combo",
    "zero_combo",
    "reduce_step",
    "normalize_combo",
    "kuperberg_bracket",
    "lweb_ops",
    "normalizing_ops",
]


class SignatureMismatch(Exception):
    pass


class NotClosed(Exception):
    pass


class NonterminatingReduction(RuntimeError):
    pass


class WebCombo:
    """A finitely supported map from web isotopy classes to Z[q, q^-1].

    Terms are keyed by canonical code; each key keeps one diagram as its
    representative.
    """

    __slots__ = ("source_sig", "target_sig", "_terms")

    def __init__(
        self,
        source_sig: SignString,
        target_sig: SignString,
        terms: Iterable[tuple[WebDiagram, LaurentPoly]] = (),
    ):
        self.source_sig = tuple(source_sig)
        self.target_sig = tuple(target_sig)
        acc: dict[bytes, tuple[WebDiagram, LaurentPoly]] = {}
        for d, c in terms:
            if (d.source_sig, d.target_sig) != (self.source_sig, self.target_sig):
                raise SignatureMismatch(f"{d!r} does not have signature {self.source_sig}->{self.target_sig}")
            k = web_canonical_key(d)
            if k in acc:
                acc[k] = (acc[k][0], acc[k][1] + c)
            else:
                acc[k] = (d, c)
        self._terms = {k: v for k, v in sorted(acc.items()) if not v[1].is_zero()}

    @property
    def terms(self) -> dict[bytes, tuple[WebDiagram, LaurentPoly]]:
        return dict(self._terms)

    def items(self):
        return self._terms.values()

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, d: WebDiagram) -> LaurentPoly:
        entry = self._terms.get(web_canonical_key(d))
        return entry[1] if entry else ZERO

    def coefficients(self) -> dict[bytes, LaurentPoly]:
        return {k: c for k, (_, c) in self._terms.items()}

    def __eq__(self, other) -> bool:
        if not isinstance(other, WebCombo):
            return NotImplemented
        return (
            self.source_sig == other.source_sig
            and self.target_sig == other.target_sig
            and self.coefficients() == other.coefficients()
        )

    def __hash__(self):
        return hash((self.source_sig, self.target_sig, tuple(self.coefficients().items())))

    def __add__(self, other: WebCombo) -> WebCombo:
        return combo_add(self, other)

    def __sub__(self, other: WebCombo) -> WebCombo:
        return combo_add(self, combo_scale(other, -ONE))

    def __rmul__(self, c) -> WebCombo:
        return combo_scale(self, c if isinstance(c, LaurentPoly) else LaurentPoly({0: c}))

    def to_json(self) -> list[dict]:
        return [
            {"web": k.decode(), "interior": d.n_interior, "coefficient": c.to_json()}
            for k, (d, c) in self._terms.items()
        ]

    def __repr__(self) -> str:
        body = ", ".join(f"({c})*{d!r}" for d, c in self._terms.values())
        return f"WebCombo({''.join(self.source_sig)}->{''.join(self.target_sig)}: {body or '0'})"


def singleton(d: WebDiagram, c: LaurentPoly = ONE) -> WebCombo:
    return WebCombo(d.source_sig, d.target_sig, [(d, c)])


def identity_combo(sig: SignString) -> WebCombo:
    return singleton(identity_web(tuple(sig)))


def zero_combo(source: SignString, target: SignString) -> WebCombo:
    return WebCombo(source, target)


def combo_add(a: WebCombo, b: WebCombo) -> WebCombo:
    if (a.source_sig, a.target_sig) != (b.source_sig, b.target_sig):
        raise SignatureMismatch("cannot add combos with different signatures")
    return WebCombo(a.source_sig, a.target_sig, list(a.items()) + list(b.items()))


def combo_scale(a: WebCombo, c: LaurentPoly) -> WebCombo:
    return WebCombo(a.source_sig, a.target_sig, [(d, k * c) for d, k in a.items()])


def combo_compose(upper: WebCombo, lower: WebCombo) -> WebCombo:
    """Bilinear stacking; the result is not normalized."""
    if lower.target_sig != upper.source_sig:
        raise SignatureMismatch(f"cannot compose {upper!r} over {lower!r}")
    return WebCombo(
        lower.source_sig,
        upper.target_sig,
        [(web_compose(du, dl), cu * cl) for du, cu in upper.items() for dl, cl in lower.items()],
    )


def combo_tensor(left: WebCombo, right: WebCombo) -> WebCombo:
    return WebCombo(
        left.source_sig + right.source_sig,
        left.target_sig + right.target_sig,
        [(web_tensor(da, db), ca * cb) for da, ca in left.items() for db, cb in right.items()],
    )


# -- reductions ---------------------------------------------------------------


def _arrays(d: WebDiagram):
    return d.kinds, d.owner, d.twin, d.out, d.rotation


def _third(d: WebDiagram, v: int, used: set[int]) -> int:
    (h,) = [h for h in d.rotation[v] if h not in used]
    return h


def _remove_digon(d: WebDiagram, face: tuple[int, ...]) -> WebDiagram:
    h0, h1 = face
    v0, v1 = d.owner[h0], d.owner[h1]
    c0 = _third(d, v0, {h0, d.twin[h1]})
    c1 = _third(d, v1, {h1, d.twin[h0]})
    return splice(*_arrays(d), {v0, v1}, {c0: c1, c1: c0}, d.free_loops, d.source_sig, d.target_sig)


def _resolve_square(d: WebDiagram, face: tuple[int, ...]) -> tuple[WebDiagram, WebDiagram]:
    vs = [d.owner[h] for h in face]
    legs = [_third(d, vs[i], {face[i], d.twin[face[i - 1]]}) for i in range(4)]
    out = []
    for pairs in (((0, 1), (2, 3)), ((1, 2), (3, 0))):
        conn = {}
        for i, j in pairs:
            conn[legs[i]], conn[legs[j]] = legs[j], legs[i]
        out.append(splice(*_arrays(d), set(vs), conn, d.free_loops, d.source_sig, d.target_sig))
    return out[0], out[1]


def reduce_step(d: WebDiagram, pattern: ReduciblePattern | None = None) -> WebCombo | None:
    """Apply one loop/digon/square relation to *d*, or return None if irreducible."""
    if pattern is None:
        pattern = find_reducible(d)
    if pattern is None:
        return None
    if pattern.kind == "loop":
        return singleton(dataclasses.replace(d, free_loops=d.free_loops - 1), LOOP_VALUE)
    if pattern.kind == "digon":
        return singleton(_remove_digon(d, pattern.face), DIGON_VALUE)
    if pattern.kind == "square":
        a, b = _resolve_square(d, pattern.face)
        return WebCombo(d.source_sig, d.target_sig, [(a, ONE), (b, ONE)])
    raise ValueError(f"unknown pattern {pattern.kind!r}")


def _measure(d: WebDiagram) -> tuple[int, int]:
    return (d.n_interior, d.free_loops)


def normalize_combo(c: WebCombo, rng: random.Random | None = None) -> WebCombo:
    """Reduce every term until no loop, digon or square remains.

    With *rng*, the term processed next and the pattern applied to it are
    chosen at random; the result must not depend on these choices.
    """
    pending: dict[bytes, tuple[WebDiagram, LaurentPoly]] = dict(c.terms)
    done: list[tuple[WebDiagram, LaurentPoly]] = []
    while pending:
        key = rng.choice(sorted(pending)) if rng else next(iter(pending))
        d, coeff = pending.pop(key)
        if rng:
            pats = all_reducible(d)
            pat = rng.choice(pats) if pats else None
            if pat is None:
                find_reducible(d)  # raises if a closed web is stuck
        else:
            pat = find_reducible(d)
        if pat is None:
            done.append((d, coeff))
            continue
        for d2, c2 in reduce_step(d, pat).items():
            if _measure(d2) >= _measure(d):
                raise NonterminatingReduction(f"{pat.kind} reduction did not shrink {d!r}")
            k2 = web_canonical_key(d2)
            if k2 in pending:
                total = pending[k2][1] + coeff * c2
                if total.is_zero():
                    del pending[k2]
                else:
                    pending[k2] = (pending[k2][0], total)
            else:
                pending[k2] = (d2, coeff * c2)
    return WebCombo(c.source_sig, c.target_sig, done)


def kuperberg_bracket(d: WebDiagram, rng: random.Random | None = None) -> LaurentPoly:
    if not is_closed(d):
        raise NotClosed(f"bracket needs a closed web, got {d!r}")
    return normalize_combo(singleton(d), rng).coefficient(empty_web())


lweb_ops = TargetOps(compose=combo_compose, tensor=combo_tensor, identity=identity_combo)

normalizing_ops = TargetOps(
    compose=lambda a, b: normalize_combo(combo_compose(a, b)),
    tensor=lambda a, b: normalize_combo(combo_tensor(a, b)),
    identity=identity_combo,
)
