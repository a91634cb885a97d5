"""Words of a free strict tensor category and their layered normal form.

A word is a formal expression built from generators and identities by
composition and tensor product.  Every word is equivalent to a staircase of
layers ``id_left (x) g (x) id_right``; `normalize` computes one and
`canonical_layered` picks a unique representative modulo sliding distant
layers past each other.
"""

from __future__ import annotations

from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any, NamedTuple, Union

__all__ = [
    "SignString",
    "Generator",
    "Gen",
    "Id",
    "Compose",
    "Tensor",
    "Word",
    "Layer",
    "LayeredWord",
    "TypeMismatch",
    "MissingImage",
    "WEB_ALPHABET",
    "TANGLE_ALPHABET",
    "GENERATOR_ORDER",
    "signs",
    "word_type",
    "word_rank",
    "normalize",
    "exchange",
    "canonical_layered",
    "words_equivalent",
    "layered_to_word",
    "layered_code",
    "TargetOps",
    "extend_functor",
    "RelationResult",
    "check_relation_set",
]

SignString = tuple[str, ...]


def signs(text: str) -> SignString:
    """``signs("+-")`` -> ``('+', '-')``."""
    out = tuple(text)
    if any(s not in "+-" for s in out):
        raise ValueError(f"not a sign string: {text!r}")
    return out


def _fmt(s: SignString) -> str:
    return "(" + ",".join(s) + ")" if s else "()"


class TypeMismatch(Exception):
    """Raised when a composition joins unequal boundary strings."""

    def __init__(self, message: str, subword: Any = None):
        super().__init__(message)
        self.subword = subword


class MissingImage(KeyError):
    pass


@dataclass(frozen=True)
class Generator:
    name: str
    source: SignString
    target: SignString

    def __str__(self) -> str:
        return self.name


def _gens(*specs: tuple[str, str, str]) -> dict[str, Generator]:
    return {n: Generator(n, signs(s), signs(t)) for n, s, t in specs}


# Cup/cap typings are forced by the zig-zag relations, trivalent ones by the
# lambda relation: Y+ is a source, Y- a sink.
WEB_ALPHABET: dict[str, Generator] = _gens(
    ("U+", "", "-+"),
    ("U-", "", "+-"),
    ("N+", "-+", ""),
    ("N-", "+-", ""),
    ("Y+", "-", "++"),
    ("Y-", "+", "--"),
)

TANGLE_ALPHABET: dict[str, Generator] = {
    **{k: WEB_ALPHABET[k] for k in ("U+", "U-", "N+", "N-")},
    **_gens(("X+", "++", "++"), ("X-", "++", "++")),
}

GENERATOR_ORDER = {n: i for i, n in enumerate(["U+", "U-", "N+", "N-", "Y+", "Y-", "X+", "X-"])}


def _ordinal(g: Generator) -> tuple[int, str]:
    return (GENERATOR_ORDER.get(g.name, len(GENERATOR_ORDER)), g.name)


# -- word trees ---------------------------------------------------------------


@dataclass(frozen=True)
class Gen:
    gen: Generator

    def __str__(self) -> str:
        return self.gen.name


@dataclass(frozen=True)
class Id:
    obj: SignString

    def __str__(self) -> str:
        if not self.obj:
            return "I0"
        return " * ".join(f"I{s}" for s in self.obj)


@dataclass(frozen=True)
class Compose:
    """``upper . lower``: *lower* is applied first."""

    upper: "Word"
    lower: "Word"

    def __str__(self) -> str:
        return f"({self.upper} . {self.lower})"


@dataclass(frozen=True)
class Tensor:
    left: "Word"
    right: "Word"

    def __str__(self) -> str:
        return f"({self.left} * {self.right})"


Word = Union[Gen, Id, Compose, Tensor]


def word_type(w: Word) -> tuple[SignString, SignString]:
    """Return ``(source, target)`` of a word, checking every composition."""
    if isinstance(w, Gen):
        return w.gen.source, w.gen.target
    if isinstance(w, Id):
        return w.obj, w.obj
    if isinstance(w, Tensor):
        s1, t1 = word_type(w.left)
        s2, t2 = word_type(w.right)
        return s1 + s2, t1 + t2
    if isinstance(w, Compose):
        s_up, t_up = word_type(w.upper)
        s_lo, t_lo = word_type(w.lower)
        if s_up != t_lo:
            raise TypeMismatch(
                f"cannot compose {w.upper} with {w.lower}: source {_fmt(s_up)} != target {_fmt(t_lo)}",
                w,
            )
        return s_lo, t_up
    raise TypeError(f"not a word: {w!r}")


def word_rank(w: Word) -> int:
    if isinstance(w, (Gen, Id)):
        return 1
    if isinstance(w, Compose):
        return 1 + max(word_rank(w.upper), word_rank(w.lower))
    return 1 + max(word_rank(w.left), word_rank(w.right))


# -- layered words ------------------------------------------------------------


class Layer(NamedTuple):
    left: SignString
    gen: Generator
    right: SignString

    @property
    def source(self) -> SignString:
        return self.left + self.gen.source + self.right

    @property
    def target(self) -> SignString:
        return self.left + self.gen.target + self.right

    def __str__(self) -> str:
        return f"[{_fmt(self.left)} | {self.gen.name} | {_fmt(self.right)}]"


@dataclass(frozen=True)
class LayeredWord:
    """Layers listed bottom to top; an empty list denotes ``id_source``."""

    source: SignString
    target: SignString
    layers: tuple[Layer, ...] = field(default=())

    def __post_init__(self):
        cur = self.source
        for k, layer in enumerate(self.layers):
            if layer.source != cur:
                raise TypeMismatch(
                    f"layer {k} {layer} expects {_fmt(layer.source)} but receives {_fmt(cur)}"
                )
            cur = layer.target
        if cur != self.target:
            raise TypeMismatch(f"layered word ends at {_fmt(cur)}, declared {_fmt(self.target)}")

    def __str__(self) -> str:
        if not self.layers:
            return f"id{_fmt(self.source)}"
        return " . ".join(str(layer) for layer in reversed(self.layers))

    def then(self, upper: LayeredWord) -> LayeredWord:
        """``upper`` stacked on top of ``self``."""
        if upper.source != self.target:
            raise TypeMismatch(f"cannot stack: {_fmt(upper.source)} != {_fmt(self.target)}")
        return LayeredWord(self.source, upper.target, self.layers + upper.layers)

    def padded(self, left: SignString, right: SignString) -> LayeredWord:
        return LayeredWord(
            left + self.source + right,
            left + self.target + right,
            tuple(Layer(left + l.left, l.gen, l.right + right) for l in self.layers),
        )

    def crossing_indices(self) -> list[int]:
        """Indices of crossing layers, ordered top to bottom."""
        return [k for k in reversed(range(len(self.layers))) if self.layers[k].gen.name.startswith("X")]


def normalize(w: Word) -> LayeredWord:
    """Rewrite a word into staircase form, following the rank induction.

    ``a . b`` concatenates the staircases of *b* and *a*;
    ``a * b`` becomes ``(id_t(a) * b) . (a * id_s(b))``.
    """
    if isinstance(w, Id):
        return LayeredWord(w.obj, w.obj)
    if isinstance(w, Gen):
        return LayeredWord(w.gen.source, w.gen.target, (Layer((), w.gen, ()),))
    if isinstance(w, Compose):
        upper, lower = normalize(w.upper), normalize(w.lower)
        if upper.source != lower.target:
            raise TypeMismatch(
                f"cannot compose {w.upper} with {w.lower}: "
                f"source {_fmt(upper.source)} != target {_fmt(lower.target)}",
                w,
            )
        return lower.then(upper)
    if isinstance(w, Tensor):
        a, b = normalize(w.left), normalize(w.right)
        return a.padded((), b.source).then(b.padded(a.target, ()))
    raise TypeError(f"not a word: {w!r}")


def layered_to_word(lw: LayeredWord) -> Word:
    """Inverse direction of `normalize`: a left-nested composite of layers."""

    def ident(s: SignString) -> Word:
        return Id(s)

    if not lw.layers:
        return ident(lw.source)
    word: Word | None = None
    for layer in lw.layers:
        piece: Word = Gen(layer.gen)
        if layer.left:
            piece = Tensor(ident(layer.left), piece)
        if layer.right:
            piece = Tensor(piece, ident(layer.right))
        word = piece if word is None else Compose(piece, word)
    return word


def _place(string: SignString, pos: int, gen: Generator) -> Layer:
    n = len(gen.source)
    assert string[pos : pos + n] == gen.source, (string, pos, gen)
    return Layer(string[:pos], gen, string[pos + n :])


def exchange(lower: Layer, upper: Layer) -> list[tuple[Layer, Layer]]:
    """All ways of sliding *upper* below *lower* when their supports are disjoint.

    Returns ``[(new_lower, new_upper), ...]``; empty when the layers interact.
    A cap directly under a cup in the same gap yields two results, since the
    cup may pass on either side of the cap.
    """
    before = lower.source
    pa, a_in, a_out = len(lower.left), len(lower.gen.source), len(lower.gen.target)
    pb, b_in, b_out = len(upper.left), len(upper.gen.source), len(upper.gen.target)
    out = []
    if pb + b_in <= pa:  # upper sits left of lower
        new_lower = _place(before, pb, upper.gen)
        out.append((new_lower, _place(new_lower.target, pa - b_in + b_out, lower.gen)))
    if pa + a_out <= pb:  # upper sits right of lower
        new_lower = _place(before, pb - a_out + a_in, upper.gen)
        out.append((new_lower, _place(new_lower.target, pa, lower.gen)))
    return out


class _Diagram:
    """Planar string diagram of a layered word.

    Nodes are the layers plus one frame vertex standing for the outside of
    the rectangle.  Each wire has a lower half-edge (owned by the node below)
    and an upper one.  Rotations are counterclockwise: a node lists its
    inputs left to right, then its outputs right to left; the frame lists
    top ports left to right, then bottom ports right to left.
    """

    def __init__(self, lw: LayeredWord):
        n = len(lw.layers)
        self.gens = [layer.gen for layer in lw.layers]
        self.frame = n
        self.owner: list[int] = []
        self.twin: list[int] = []
        self.sign: list[str] = []
        self.ins: list[list[int]] = [[] for _ in range(n + 1)]
        self.outs: list[list[int]] = [[] for _ in range(n + 1)]

        def wire_from(node: int, sign: str) -> int:
            h = len(self.owner)
            self.owner += [node, -1]
            self.twin += [h + 1, h]
            self.sign += [sign, sign]
            self.outs[node].append(h)
            return h

        def land(h: int, node: int) -> None:
            self.owner[h + 1] = node
            self.ins[node].append(h + 1)

        frontier = [wire_from(self.frame, s) for s in lw.source]
        self.first_frontier = list(frontier)
        self.placement: list[tuple[int, list[int]]] = []  # (gap, frontier before) per layer
        for k, layer in enumerate(lw.layers):
            p, width = len(layer.left), len(layer.gen.source)
            self.placement.append((p, list(frontier)))
            for h in frontier[p : p + width]:
                land(h, k)
            frontier[p : p + width] = [wire_from(k, s) for s in layer.gen.target]
        for h in frontier:
            land(h, self.frame)
        self.rotation = [self.ins[v] + self.outs[v][::-1] for v in range(n)]
        self.rotation.append(self.ins[self.frame] + self.outs[self.frame][::-1])
        self.position = {h: i for rot in self.rotation for i, h in enumerate(rot)}
        self._faces()
        self._components()
        self._regions(lw)

    def rot_next(self, h: int) -> int:
        rot = self.rotation[self.owner[h]]
        return rot[(self.position[h] + 1) % len(rot)]

    def _faces(self) -> None:
        self.face = [-1] * len(self.owner)
        nf = 0
        for h0 in range(len(self.owner)):
            if self.face[h0] < 0:
                h = h0
                while self.face[h] < 0:
                    self.face[h] = nf
                    h = self.rot_next(self.twin[h])
                nf += 1

    def _components(self) -> None:
        parent = list(range(len(self.rotation)))

        def find(v: int) -> int:
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for h in range(0, len(self.owner), 2):
            parent[find(self.owner[h])] = find(self.owner[h + 1])
        self.comp = [find(v) for v in range(len(self.rotation))]

    def corner_face(self, v: int) -> int | None:
        """Face just below a node without inputs (or left of the frame)."""
        rot = self.rotation[v]
        return self.face[rot[0]] if rot else None

    def region(self, c: int, f: int | None) -> tuple[int, int | None]:
        if c != self.comp[self.frame] and f == self.outer[c]:
            return self.parent[c]
        return (c, f)

    def gap_region(self, frontier: Sequence[int], g: int) -> tuple[int, int | None]:
        """Region containing the point between frontier strands g-1 and g."""
        cands = []
        if g > 0:
            h = frontier[g - 1]
            cands.append(self.region(self.comp[self.owner[h]], self.face[h]))
        if g < len(frontier):
            h = frontier[g]
            cands.append(self.region(self.comp[self.owner[h]], self.face[self.rot_next(h)]))
        if g == 0 or g == len(frontier):
            rot = self.rotation[self.frame]
            if not rot:
                f = None
            elif g == 0:
                f = self.face[rot[0]]
            else:
                f = self.face[rot[len(self.ins[self.frame]) % len(rot)]]
            cands.append((self.comp[self.frame], f))
        return max(cands, key=lambda r: self.depth[r[0]])

    def _regions(self, lw: LayeredWord) -> None:
        main = self.comp[self.frame]
        self.outer: dict[int, int | None] = {}
        self.parent: dict[int, tuple[int, int | None]] = {}
        self.depth = {main: 0}
        for k, (g, frontier) in enumerate(self.placement):
            c = self.comp[k]
            if c in self.depth:
                continue
            # first node of a floating component: it has no inputs
            self.outer[c] = self.corner_face(k)
            self.parent[c] = self.gap_region(frontier, g)
            self.depth[c] = self.depth[self.parent[c][0]] + 1

    def _upper_is_planar(self, placed: frozenset[int], frontier: Sequence[int]) -> bool:
        """Euler check on the part still to be drawn.

        Everything already drawn, together with the frame, is shrunk to one
        vertex whose rotation is the top ports followed by the frontier read
        right to left.  A wrong gap for a cup shows up as a handle.
        """
        rot: dict[int, list[int]] = {}
        owner: dict[int, int] = {}
        outer = -1
        for v in range(len(self.gens)):
            if v not in placed:
                rot[v] = self.rotation[v]
                for h in rot[v]:
                    owner[h] = v
        rot[outer] = list(self.ins[self.frame]) + list(frontier)[::-1]
        for h in rot[outer]:
            owner[h] = outer
        pos = {h: i for r in rot.values() for i, h in enumerate(r)}
        parent = {v: v for v in rot}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for h, v in owner.items():
            parent[find(v)] = find(owner[self.twin[h]])
        euler = {}
        for v in rot:
            r = find(v)
            euler[r] = euler.get(r, 0) + 1
        for h in owner:
            euler[find(owner[h])] -= 0.5  # each edge has two halves
        seen: set[int] = set()
        for h0, v in owner.items():
            if h0 in seen:
                continue
            euler[find(v)] += 1
            h = h0
            while h not in seen:
                seen.add(h)
                t = self.twin[h]
                r = rot[owner[t]]
                h = r[(pos[t] + 1) % len(r)]
        for v, r in rot.items():
            if not r:
                euler[find(v)] += 1  # a bare vertex bounds one face
        return all(x == 2 for x in euler.values())

    def _keeps_room(self, placed, started, frontier, v: int, p: int) -> bool:
        """Placing *v* must not seal the last opening of a face that still
        has to receive a floating component."""
        width = len(self.ins[v])
        pending = {self.parent[c] for c in self.parent if c not in started}
        sealed = {self.gap_region(frontier, g) for g in range(p + 1, p + width)} & pending
        if not sealed:
            return True
        after = frontier[:p] + tuple(self.outs[v]) + frontier[p + width :]
        still = {self.gap_region(after, g) for g in range(len(after) + 1)}
        return sealed <= still

    def options(self, placed: frozenset[int], frontier: tuple[int, ...]):
        """Every node that can be drawn next, with the gap it sits in."""
        started = {self.comp[u] for u in placed} | {self.comp[self.frame]}
        for v, gen in enumerate(self.gens):
            if v in placed:
                continue
            ins = self.ins[v]
            if ins:
                lows = [self.twin[h] for h in ins]
                try:
                    p = frontier.index(lows[0])
                except ValueError:
                    continue
                if list(frontier[p : p + len(lows)]) == lows and self._keeps_room(
                    placed, started, frontier, v, p
                ):
                    yield v, p
                continue
            want = self.region(self.comp[v], self.corner_face(v))
            attached = self.comp[v] in started
            for g in range(len(frontier) + 1):
                if self.gap_region(frontier, g) != want:
                    continue
                if attached and not self._upper_is_planar(
                    placed | {v}, frontier[:g] + tuple(self.outs[v]) + frontier[g:]
                ):
                    continue
                yield v, g


def _layer_key(layer: Layer) -> tuple:
    return (len(layer.left), _ordinal(layer.gen), layer.left, layer.right)


def canonical_layered(lw: LayeredWord) -> LayeredWord:
    """Unique representative of *lw* under the exchange move.

    Layers are redrawn bottom up from the planar diagram of *lw*, always
    taking the smallest (left offset, generator ordinal) among the nodes
    that may come next.  Ties are settled by the smallest continuation.
    The result is the least word of the exchange class in that order.
    """
    if len(lw.layers) <= 1:
        return lw
    d = _Diagram(lw)
    memo: dict = {}

    def best(placed: frozenset[int], frontier: tuple[int, ...]) -> tuple[Layer, ...] | None:
        # least completion of a partial drawing, or None at a dead end
        state = (placed, frontier)
        if state in memo:
            return memo[state]
        if len(placed) == len(d.gens):
            return ()
        signs = tuple(d.sign[h] for h in frontier)
        groups: dict[tuple, list] = {}
        for v, p in d.options(placed, frontier):
            width = len(d.ins[v])
            layer = Layer(signs[:p], d.gens[v], signs[p + width :])
            groups.setdefault(_layer_key(layer), []).append((v, p, layer))
        result = None
        for key in sorted(groups):
            tails = []
            for v, p, layer in groups[key]:
                width = len(d.ins[v])
                rest = best(placed | {v}, frontier[:p] + tuple(d.outs[v]) + frontier[p + width :])
                if rest is not None:
                    tails.append((layer,) + rest)
            if tails:
                result = min(tails, key=lambda ls: [_layer_key(l) for l in ls])
                break
        memo[state] = result
        return result

    layers = best(frozenset(), tuple(d.first_frontier))
    if layers is None:
        raise AssertionError("layered word has no planar redrawing")
    return LayeredWord(lw.source, lw.target, layers)


def layered_code(lw: LayeredWord) -> str:
    """Stable text code of a canonical layered word (used as a cache key)."""
    c = canonical_layered(lw)
    body = ";".join(f"{''.join(l.left)}|{l.gen.name}|{''.join(l.right)}" for l in c.layers)
    return f"{''.join(c.source)}>{''.join(c.target)}:{body}"


def words_equivalent(w1: Word, w2: Word) -> bool:
    return canonical_layered(normalize(w1)) == canonical_layered(normalize(w2))


# -- functor extension --------------------------------------------------------


@dataclass(frozen=True)
class TargetOps:
    compose: Callable[[Any, Any], Any]  # (upper, lower) -> upper . lower
    tensor: Callable[[Any, Any], Any]
    identity: Callable[[SignString], Any]


def extend_functor(gen_images: Mapping[str, Any], ops: TargetOps, w: Word) -> Any:
    """Image of *w* under the tensor functor determined by *gen_images*.

    *gen_images* maps generator names to morphisms of the target category.
    """
    if isinstance(w, Gen):
        try:
            return gen_images[w.gen.name]
        except KeyError:
            raise MissingImage(w.gen.name) from None
    if isinstance(w, Id):
        return ops.identity(w.obj)
    if isinstance(w, Compose):
        word_type(w)
        return ops.compose(extend_functor(gen_images, ops, w.upper), extend_functor(gen_images, ops, w.lower))
    if isinstance(w, Tensor):
        return ops.tensor(extend_functor(gen_images, ops, w.left), extend_functor(gen_images, ops, w.right))
    raise TypeError(f"not a word: {w!r}")


@dataclass
class RelationResult:
    name: str
    passed: bool
    lhs_image: Any = None
    rhs_image: Any = None


def check_relation_set(
    gen_images: Mapping[str, Any],
    ops: TargetOps,
    relations: Sequence[tuple[str, Word, Word]],
    normalizer: Callable[[Any], Any] = lambda x: x,
) -> list[RelationResult]:
    """Compare normalized images of both sides of every named relation."""
    report = []
    for name, lhs, rhs in relations:
        if word_type(lhs) != word_type(rhs):
            raise TypeMismatch(f"relation {name} has sides of different type")
        a = normalizer(extend_functor(gen_images, ops, lhs))
        b = normalizer(extend_functor(gen_images, ops, rhs))
        ok = a == b
        report.append(RelationResult(name, ok, None if ok else a, None if ok else b))
    return report
