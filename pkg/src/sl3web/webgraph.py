"""Oriented trivalent webs in the strip, stored as planar half-edge maps.

Each vertex keeps the counterclockwise cyclic order of its half-edges.
Boundary vertices sit on the bottom (source) and top (target) lines and
have degree one; interior vertices are trivalent sinks or sources.
Verticeless circles are not stored as graph components, only counted.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .words import (
    Generator,
    LayeredWord,
    SignString,
    TargetOps,
    WEB_ALPHABET,
    Word,
    extend_functor,
)

__all__ = [
    "VertexKind",
    "SINK",
    "SOURCE",
    "WebDiagram",
    "ReduciblePattern",
    "BoundaryMismatch",
    "InvalidWeb",
    "identity_web",
    "empty_web",
    "loop_web",
    "generator_web",
    "web_from_layered",
    "word_to_web",
    "web_compose",
    "web_tensor",
    "web_ops",
    "faces",
    "find_reducible",
    "all_reducible",
    "is_closed",
    "web_canonical_key",
    "validate",
    "splice",
]


class BoundaryMismatch(Exception):
    pass


class InvalidWeb(AssertionError):
    pass


class VertexKind(NamedTuple):
    kind: str  # "sink", "source", "bottom" or "top"
    index: int = 0  # 1-based position on the boundary line

    @property
    def interior(self) -> bool:
        return self.kind in ("sink", "source")

    def __str__(self) -> str:
        return self.kind if self.interior else f"{self.kind}{self.index}"


SINK = VertexKind("sink")
SOURCE = VertexKind("source")


@dataclass(frozen=True, eq=False)
class WebDiagram:
    kinds: tuple[VertexKind, ...]
    owner: tuple[int, ...]
    twin: tuple[int, ...]
    out: tuple[bool, ...]  # True iff the edge points away from the owner
    rotation: tuple[tuple[int, ...], ...]
    free_loops: int
    source_sig: SignString
    target_sig: SignString

    @property
    def n_vertices(self) -> int:
        return len(self.kinds)

    @property
    def n_interior(self) -> int:
        return sum(1 for k in self.kinds if k.interior)

    def boundary_vertex(self, kind: str, index: int) -> int:
        for v, k in enumerate(self.kinds):
            if k.kind == kind and k.index == index:
                return v
        raise KeyError((kind, index))

    def rot_next(self, h: int) -> int:
        rot = self.rotation[self.owner[h]]
        return rot[(rot.index(h) + 1) % len(rot)]

    def key(self) -> bytes:
        return web_canonical_key(self)

    def dump(self) -> str:
        lines = [f"sig {''.join(self.source_sig) or '-'} -> {''.join(self.target_sig) or '-'}"]
        lines += [f"v{v} {k}" for v, k in enumerate(self.kinds)]
        for h in range(len(self.owner)):
            if self.out[h]:
                lines.append(f"e h{h}(v{self.owner[h]}) -> h{self.twin[h]}(v{self.owner[self.twin[h]]})")
        lines += [f"rot v{v}: {list(r)}" for v, r in enumerate(self.rotation)]
        lines.append(f"loops {self.free_loops}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return (
            f"WebDiagram({''.join(self.source_sig)}->{''.join(self.target_sig)}, "
            f"interior={self.n_interior}, loops={self.free_loops})"
        )


class _Builder:
    def __init__(self):
        self.kinds: list[VertexKind] = []
        self.owner: list[int] = []
        self.twin: list[int] = []
        self.out: list[bool] = []
        self.rotation: list[list[int]] = []

    def vertex(self, kind: VertexKind) -> int:
        self.kinds.append(kind)
        self.rotation.append([])
        return len(self.kinds) - 1

    def edge(self, tail: int, head: int) -> tuple[int, int]:
        """Edge tail -> head; half-edges are appended to both rotations."""
        h = len(self.owner)
        self.owner += [tail, head]
        self.twin += [h + 1, h]
        self.out += [True, False]
        self.rotation[tail].append(h)
        self.rotation[head].append(h + 1)
        return h, h + 1

    def build(self, source: SignString, target: SignString, loops: int = 0) -> WebDiagram:
        return WebDiagram(
            tuple(self.kinds),
            tuple(self.owner),
            tuple(self.twin),
            tuple(self.out),
            tuple(tuple(r) for r in self.rotation),
            loops,
            tuple(source),
            tuple(target),
        )


def _boundary_edge(b: _Builder, bottom: int, top: int, sign: str):
    if sign == "+":
        b.edge(bottom, top)
    else:
        b.edge(top, bottom)


@lru_cache(maxsize=None)
def identity_web(sig: SignString) -> WebDiagram:
    b = _Builder()
    for i, s in enumerate(sig, 1):
        lo = b.vertex(VertexKind("bottom", i))
        hi = b.vertex(VertexKind("top", i))
        _boundary_edge(b, lo, hi, s)
    return b.build(sig, sig)


def empty_web() -> WebDiagram:
    return identity_web(())


def loop_web(n: int = 1) -> WebDiagram:
    return _Builder().build((), (), n)


@lru_cache(maxsize=None)
def generator_web(g: Generator) -> WebDiagram:
    """Local picture of a cup, cap or trivalent generator."""
    b = _Builder()
    src, tgt = g.source, g.target
    bots = [b.vertex(VertexKind("bottom", i)) for i in range(1, len(src) + 1)]
    tops = [b.vertex(VertexKind("top", j)) for j in range(1, len(tgt) + 1)]
    if not src and len(tgt) == 2:  # cup: runs from the "-" end to the "+" end
        minus = tops[tgt.index("-")]
        plus = tops[tgt.index("+")]
        b.edge(minus, plus)
    elif not tgt and len(src) == 2:  # cap: runs from the "+" end to the "-" end
        plus = bots[src.index("+")]
        minus = bots[src.index("-")]
        b.edge(plus, minus)
    elif len(src) + len(tgt) == 3:
        # a source vertex has "-" below and "+" above; a sink the reverse
        is_source = all(s == "-" for s in src) and all(t == "+" for t in tgt)
        is_sink = all(s == "+" for s in src) and all(t == "-" for t in tgt)
        if not (is_source or is_sink):
            raise InvalidWeb(f"{g.name} is not a trivalent sink or source")
        v = b.vertex(SOURCE if is_source else SINK)
        # counterclockwise: bottom legs left to right, then top legs right to left
        for w in bots + tops[::-1]:
            if is_source:
                b.edge(v, w)
            else:
                b.edge(w, v)
    else:
        raise InvalidWeb(f"no web picture for generator {g.name}")
    return b.build(src, tgt)


# -- gluing -------------------------------------------------------------------


def _union(a: WebDiagram, b: WebDiagram, shift_bottom: int = 0, shift_top: int = 0):
    """Disjoint union as mutable arrays; b's boundary indices are shifted."""
    nv, nh = len(a.kinds), len(a.owner)
    kinds = list(a.kinds) + [
        k if k.interior else VertexKind(k.kind, k.index + (shift_bottom if k.kind == "bottom" else shift_top))
        for k in b.kinds
    ]
    owner = list(a.owner) + [v + nv for v in b.owner]
    twin = list(a.twin) + [h + nh for h in b.twin]
    out = list(a.out) + list(b.out)
    rotation = [list(r) for r in a.rotation] + [[h + nh for h in r] for r in b.rotation]
    return kinds, owner, twin, out, rotation, nv, nh


def splice(
    kinds: Sequence[VertexKind],
    owner: Sequence[int],
    twin: Sequence[int],
    out: Sequence[bool],
    rotation: Sequence[Sequence[int]],
    deleted: set[int],
    conn: dict[int, int],
    loops: int,
    source: SignString,
    target: SignString,
) -> WebDiagram:
    """Delete *deleted* vertices, reconnecting strands through port pairs.

    *conn* is an involution on half-edges owned by deleted vertices (the
    ports); a surviving half-edge whose twin is a port is re-twinned by
    following port -> conn -> twin until it lands on a survivor.  Port chains
    that close up without reaching a survivor become free loops.
    """
    new_twin = list(twin)
    marked: set[int] = set()
    for x in range(len(owner)):
        if owner[x] in deleted or owner[twin[x]] not in deleted:
            continue
        p = twin[x]
        while True:
            if p not in conn:
                raise InvalidWeb(f"half-edge {p} is not a port")
            q = conn[p]
            marked.update((p, q))
            t = twin[q]
            if owner[t] in deleted:
                p = t
                continue
            new_twin[x] = t
            break
    for p in conn:
        if p in marked:
            continue
        loops += 1
        while p not in marked:
            q = conn[p]
            marked.update((p, q))
            p = twin[q]
    keep_v = [v for v in range(len(kinds)) if v not in deleted]
    vmap = {v: i for i, v in enumerate(keep_v)}
    keep_h = [h for h in range(len(owner)) if owner[h] not in deleted]
    hmap = {h: i for i, h in enumerate(keep_h)}
    return WebDiagram(
        tuple(kinds[v] for v in keep_v),
        tuple(vmap[owner[h]] for h in keep_h),
        tuple(hmap[new_twin[h]] for h in keep_h),
        tuple(out[h] for h in keep_h),
        tuple(tuple(hmap[h] for h in rotation[v]) for v in keep_v),
        loops,
        tuple(source),
        tuple(target),
    )


def web_compose(upper: WebDiagram, lower: WebDiagram) -> WebDiagram:
    """Stack *upper* on top of *lower*."""
    if lower.target_sig != upper.source_sig:
        raise BoundaryMismatch(f"target {lower.target_sig} of lower != source {upper.source_sig} of upper")
    kinds, owner, twin, out, rotation, nv, nh = _union(lower, upper)
    tops = {k.index: v for v, k in enumerate(kinds[:nv]) if k.kind == "top"}
    bots = {k.index: v + nv for v, k in enumerate(kinds[nv:]) if k.kind == "bottom"}
    conn: dict[int, int] = {}
    for j, vt in tops.items():
        ht, hb = rotation[vt][0], rotation[bots[j]][0]
        conn[ht], conn[hb] = hb, ht
    deleted = set(tops.values()) | set(bots.values())
    return splice(
        kinds, owner, twin, out, rotation, deleted, conn,
        lower.free_loops + upper.free_loops, lower.source_sig, upper.target_sig,
    )


def web_tensor(left: WebDiagram, right: WebDiagram) -> WebDiagram:
    kinds, owner, twin, out, rotation, _, _ = _union(
        left, right, len(left.source_sig), len(left.target_sig)
    )
    return WebDiagram(
        tuple(kinds),
        tuple(owner),
        tuple(twin),
        tuple(out),
        tuple(tuple(r) for r in rotation),
        left.free_loops + right.free_loops,
        left.source_sig + right.source_sig,
        left.target_sig + right.target_sig,
    )


def web_from_layered(lw: LayeredWord) -> WebDiagram:
    d = identity_web(lw.source)
    for layer in lw.layers:
        piece = web_tensor(
            web_tensor(identity_web(layer.left), generator_web(layer.gen)), identity_web(layer.right)
        )
        d = web_compose(piece, d)
    return d


web_ops = TargetOps(compose=web_compose, tensor=web_tensor, identity=identity_web)

_WEB_IMAGES = {name: generator_web(g) for name, g in WEB_ALPHABET.items()}


def word_to_web(w: Word) -> WebDiagram:
    """Image of a web-alphabet word in the web category (each generator to itself)."""
    return extend_functor(_WEB_IMAGES, web_ops, w)


# -- faces and reducible patterns ---------------------------------------------


def faces(d: WebDiagram) -> list[tuple[int, ...]]:
    """Face boundary walks, each starting at its lowest half-edge."""
    seen = [False] * len(d.owner)
    result = []
    for h0 in range(len(d.owner)):
        if seen[h0]:
            continue
        walk = []
        h = h0
        while not seen[h]:
            seen[h] = True
            walk.append(h)
            h = d.rot_next(d.twin[h])
        result.append(tuple(walk))
    return result


class ReduciblePattern(NamedTuple):
    kind: str  # "loop", "digon" or "square"
    face: tuple[int, ...] = ()

    def vertices(self, d: WebDiagram) -> tuple[int, ...]:
        return tuple(d.owner[h] for h in self.face)


def _internal(d: WebDiagram, face: tuple[int, ...]) -> bool:
    return all(d.kinds[d.owner[h]].interior for h in face)


def _simple(d: WebDiagram, face: tuple[int, ...]) -> bool:
    vs = {d.owner[h] for h in face}
    edges = {min(h, d.twin[h]) for h in face}
    return len(vs) == len(face) == len(edges)


def all_reducible(d: WebDiagram) -> list[ReduciblePattern]:
    pats = [ReduciblePattern("loop")] if d.free_loops else []
    for f in faces(d):
        if len(f) in (2, 4) and _internal(d, f) and _simple(d, f):
            pats.append(ReduciblePattern("digon" if len(f) == 2 else "square", f))
    return pats


def find_reducible(d: WebDiagram) -> ReduciblePattern | None:
    """Loop first, then the first digon face, then the first square face."""
    if d.free_loops:
        return ReduciblePattern("loop")
    squares = []
    for f in faces(d):
        if not (_internal(d, f) and _simple(d, f)):
            continue
        if len(f) == 2:
            return ReduciblePattern("digon", f)
        if len(f) == 4 and not squares:
            squares.append(ReduciblePattern("square", f))
    if squares:
        return squares[0]
    if is_closed(d) and d.n_vertices:
        raise InvalidWeb("closed web with vertices but no loop, digon or square:\n" + d.dump())
    return None


def is_closed(d: WebDiagram) -> bool:
    return not d.source_sig and not d.target_sig


# -- canonical key ------------------------------------------------------------


def _traverse(d: WebDiagram, roots: Iterable[tuple[int, int]], number: dict[int, int], start: dict[int, int]):
    code = []
    for r, h in roots:
        if r in number:
            continue
        number[r] = len(number)
        start[r] = h
        queue = deque([r])
        while queue:
            v = queue.popleft()
            rot = d.rotation[v]
            i0 = rot.index(start[v])
            recs = []
            for k in range(len(rot)):
                h = rot[(i0 + k) % len(rot)]
                t = d.twin[h]
                u = d.owner[t]
                if u not in number:
                    number[u] = len(number)
                    start[u] = t
                    queue.append(u)
                urot = d.rotation[u]
                off = (urot.index(t) - urot.index(start[u])) % len(urot)
                recs.append((d.out[h], number[u], off))
            kind = d.kinds[v]
            code.append((kind.kind, kind.index, tuple(recs)))
    return tuple(code)


def web_canonical_key(d: WebDiagram) -> bytes:
    """Isotopy-class code: boundary-rooted traversal plus sorted closed components."""
    roots = []
    for kind, n in (("bottom", len(d.source_sig)), ("top", len(d.target_sig))):
        for i in range(1, n + 1):
            v = d.boundary_vertex(kind, i)
            roots.append((v, d.rotation[v][0]))
    number: dict[int, int] = {}
    start: dict[int, int] = {}
    main = _traverse(d, roots, number, start)
    closed = []
    remaining = [v for v in range(d.n_vertices) if v not in number]
    while remaining:
        v0 = remaining[0]
        comp = _component(d, v0)
        best = None
        for v in sorted(comp):
            for h in d.rotation[v]:
                c = _traverse(d, [(v, h)], {}, {})
                if best is None or c < best:
                    best = c
        closed.append(best)
        remaining = [v for v in remaining if v not in comp]
    key = (d.source_sig, d.target_sig, d.free_loops, main, tuple(sorted(closed)))
    return repr(key).encode()


def _component(d: WebDiagram, v0: int) -> set[int]:
    comp = {v0}
    stack = [v0]
    while stack:
        v = stack.pop()
        for h in d.rotation[v]:
            u = d.owner[d.twin[h]]
            if u not in comp:
                comp.add(u)
                stack.append(u)
    return comp


# -- validation ---------------------------------------------------------------


def validate(d: WebDiagram) -> None:
    """Check the web axioms and planarity (Euler characteristic per component)."""
    H = len(d.owner)
    for h in range(H):
        t = d.twin[h]
        if t == h or d.twin[t] != h:
            raise InvalidWeb(f"twin is not a fixed-point-free involution at {h}")
        if d.out[h] == d.out[t]:
            raise InvalidWeb(f"edge {h}-{t} has inconsistent direction flags")
        if h not in d.rotation[d.owner[h]]:
            raise InvalidWeb(f"half-edge {h} missing from rotation of its owner")
    if sum(len(r) for r in d.rotation) != H:
        raise InvalidWeb("rotation lists do not partition the half-edges")
    seen_b, seen_t = set(), set()
    for v, k in enumerate(d.kinds):
        rot = d.rotation[v]
        if k.interior:
            if len(rot) != 3:
                raise InvalidWeb(f"interior vertex {v} has degree {len(rot)}")
            want = k.kind == "source"
            if any(d.out[h] != want for h in rot):
                raise InvalidWeb(f"vertex {v} is not a pure {k.kind}")
            continue
        if len(rot) != 1:
            raise InvalidWeb(f"boundary vertex {v} has degree {len(rot)}")
        sig, seen = (d.source_sig, seen_b) if k.kind == "bottom" else (d.target_sig, seen_t)
        if not 1 <= k.index <= len(sig) or k.index in seen:
            raise InvalidWeb(f"bad boundary index on vertex {v}")
        seen.add(k.index)
        plus = sig[k.index - 1] == "+"
        want_out = plus if k.kind == "bottom" else not plus
        if d.out[rot[0]] != want_out:
            raise InvalidWeb(f"boundary vertex {v} ({k}) has the wrong orientation")
    if len(seen_b) != len(d.source_sig) or len(seen_t) != len(d.target_sig):
        raise InvalidWeb("missing boundary vertices")
    if d.free_loops < 0:
        raise InvalidWeb("negative loop count")
    face_of = {}
    for i, f in enumerate(faces(d)):
        for h in f:
            face_of[h] = i
    done: set[int] = set()
    for v in range(d.n_vertices):
        if v in done:
            continue
        comp = _component(d, v)
        done |= comp
        hs = [h for u in comp for h in d.rotation[u]]
        V, E, F = len(comp), len(hs) // 2, len({face_of[h] for h in hs})
        if V - E + F != 2:
            raise InvalidWeb(f"component at vertex {v} is not planar (V-E+F = {V - E + F})")
