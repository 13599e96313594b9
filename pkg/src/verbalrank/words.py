"""Multilinear commutator words as labelled binary trees.

A word is either an indeterminate ``x<k>`` or a commutator ``[a, b]`` of two
words in disjoint indeterminates.  Trees are immutable; child order is kept
exactly as written.  Two words compare equal when their unlabelled tree
shapes agree, since labels are determined by the shape up to renaming the
indeterminates.

Vertices are addressed by paths from the root, written as strings over
``L``/``R`` (the root is ``""``).  The level of a vertex is ``h - depth``, so
the root sits at level ``h`` and the deepest leaves at level 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, NamedTuple, Sequence, Union

from .errors import WordSyntaxError

VertexRef = str


@dataclass(frozen=True)
class Leaf:
    index: int


@dataclass(frozen=True)
class Node:
    left: "Vertex"
    right: "Vertex"


Vertex = Union[Leaf, Node]
Shape = tuple  # () for a leaf, (left, right) otherwise


def shape_of(v: Vertex) -> Shape:
    if isinstance(v, Leaf):
        return ()
    return (shape_of(v.left), shape_of(v.right))


def _height(v: Vertex) -> int:
    if isinstance(v, Leaf):
        return 0
    return 1 + max(_height(v.left), _height(v.right))


def _count(v: Vertex) -> int:
    if isinstance(v, Leaf):
        return 1
    return 1 + _count(v.left) + _count(v.right)


def _leaves(v: Vertex) -> list[int]:
    if isinstance(v, Leaf):
        return [v.index]
    return _leaves(v.left) + _leaves(v.right)


def _render(v: Vertex) -> str:
    if isinstance(v, Leaf):
        return f"x{v.index}"
    return f"[{_render(v.left)},{_render(v.right)}]"


def _from_shape(s: Shape, counter: Iterator[int]) -> Vertex:
    if s == ():
        return Leaf(next(counter))
    return Node(_from_shape(s[0], counter), _from_shape(s[1], counter))


def _renumber(v: Vertex) -> Vertex:
    return _from_shape(shape_of(v), itertools.count(1))


class Metrics(NamedTuple):
    height: int
    vertex_count: int
    defect: int


class WordTree:
    """Tree of a multilinear commutator word."""

    def __init__(self, root: Vertex):
        labels = _leaves(root)
        if sorted(labels) != list(range(1, len(labels) + 1)):
            raise ValueError(f"leaf labels {labels} are not exactly 1..{len(labels)}")
        self.root = root

    @classmethod
    def from_shape(cls, s: Shape) -> "WordTree":
        return cls(_from_shape(s, itertools.count(1)))

    @cached_property
    def shape(self) -> Shape:
        return shape_of(self.root)

    @cached_property
    def n(self) -> int:
        return len(_leaves(self.root))

    @cached_property
    def height(self) -> int:
        return _height(self.root)

    @cached_property
    def vertex_count(self) -> int:
        return _count(self.root)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WordTree):
            return NotImplemented
        return self.shape == other.shape

    def __hash__(self) -> int:
        return hash(self.shape)

    def __str__(self) -> str:
        return _render(self.root)

    def __repr__(self) -> str:
        return f"WordTree({self})"

    def vertex(self, ref: VertexRef) -> Vertex:
        v = self.root
        for step in ref:
            if isinstance(v, Leaf) or step not in "LR":
                raise ValueError(f"invalid vertex reference {ref!r} for {self}")
            v = v.left if step == "L" else v.right
        return v

    def vertices(self) -> list[tuple[VertexRef, Vertex]]:
        """All vertices in preorder (root, left subtree, right subtree)."""
        out = []

        def walk(v, ref):
            out.append((ref, v))
            if isinstance(v, Node):
                walk(v.left, ref + "L")
                walk(v.right, ref + "R")

        walk(self.root, "")
        return out

    def subword(self, ref: VertexRef) -> "WordTree":
        """The label w_v at a vertex, with indeterminates renumbered from 1."""
        return WordTree(_renumber(self.vertex(ref)))

    def label(self, ref: VertexRef) -> str:
        """The label at a vertex with its original indeterminate names."""
        return _render(self.vertex(ref))

    def leaf_ref(self, index: int) -> VertexRef:
        for ref, v in self.vertices():
            if isinstance(v, Leaf) and v.index == index:
                return ref
        raise ValueError(f"no indeterminate x{index} in {self}")


# -- parsing and rendering ----------------------------------------------------

def _tokenize(text: str):
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "[],":
            yield c, c, i
            i += 1
        elif c == "x":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise WordSyntaxError("indeterminate without index", i)
            yield "var", int(text[i + 1:j]), i
            i = j
        else:
            raise WordSyntaxError(f"unexpected character {c!r}", i)
    yield "end", None, len(text)


def parse_word(text: str) -> WordTree:
    """Parse a bracket expression; ``[a,b,c]`` is left-normed sugar for ``[[a,b],c]``."""
    tokens = list(_tokenize(text))
    pos = 0
    seen: dict[int, int] = {}

    def peek():
        return tokens[pos]

    def expr() -> Vertex:
        nonlocal pos
        kind, val, at = peek()
        if kind == "var":
            pos += 1
            if val < 1:
                raise WordSyntaxError(f"indeterminate x{val} must have index >= 1", at)
            if val in seen:
                raise WordSyntaxError(f"duplicate indeterminate x{val}", at)
            seen[val] = at
            return Leaf(val)
        if kind == "[":
            pos += 1
            items = [expr()]
            while peek()[0] == ",":
                pos += 1
                items.append(expr())
            kind, _, at = peek()
            if kind != "]":
                raise WordSyntaxError("expected ',' or ']'", at)
            if len(items) < 2:
                raise WordSyntaxError("commutator needs at least two entries", at)
            pos += 1
            v = items[0]
            for item in items[1:]:
                v = Node(v, item)
            return v
        raise WordSyntaxError(f"expected indeterminate or '[', got {kind!r}", at)

    root = expr()
    kind, _, at = peek()
    if kind != "end":
        raise WordSyntaxError("trailing input", at)
    n = len(seen)
    missing = sorted(set(range(1, n + 1)) - set(seen))
    if missing:
        raise WordSyntaxError(
            f"indeterminates must be exactly x1..x{n}; missing x{missing[0]}", len(text))
    return WordTree(root)


def render_word(tree: WordTree) -> str:
    return str(tree)


def word_from_spec(spec: str) -> WordTree:
    """Bracket expression, or one of the shortcuts ``gamma<n>`` / ``delta<n>``."""
    s = spec.strip()
    for kind in ("gamma", "delta"):
        if s.startswith(kind) and s[len(kind):].isdigit():
            return standard_word(kind, int(s[len(kind):]))
    return parse_word(s)


# -- standard words and metrics ----------------------------------------------

@lru_cache(maxsize=None)
def _delta_shape(n: int) -> Shape:
    if n == 0:
        return ()
    s = _delta_shape(n - 1)
    return (s, s)


def standard_word(kind: str, n: int) -> WordTree:
    """gamma_n = [x1,...,xn] (left-normed) or delta_n on 2^n indeterminates."""
    if kind == "gamma":
        if n < 1:
            raise ValueError("gamma_n needs n >= 1")
        s: Shape = ()
        for _ in range(n - 1):
            s = (s, ())
        return WordTree.from_shape(s)
    if kind == "delta":
        if n < 0:
            raise ValueError("delta_n needs n >= 0")
        return WordTree.from_shape(_delta_shape(n))
    raise ValueError(f"unknown standard word kind {kind!r}")


def gamma(n: int) -> WordTree:
    return standard_word("gamma", n)


def delta(n: int) -> WordTree:
    return standard_word("delta", n)


def commutator(a: WordTree, b: WordTree) -> WordTree:
    """[a, b] with b's indeterminates shifted past a's."""
    return WordTree.from_shape((a.shape, b.shape))


def metrics(tree: WordTree) -> Metrics:
    h = tree.height
    V = tree.vertex_count
    return Metrics(h, V, 2 ** (h + 1) - 1 - V)


def defect(tree: WordTree) -> int:
    return metrics(tree).defect


def level_of(tree: WordTree, v: VertexRef) -> int:
    tree.vertex(v)
    return tree.height - len(v)


def companion(tree: WordTree, p: VertexRef) -> VertexRef:
    if p == "":
        raise ValueError("the root has no companion")
    tree.vertex(p)
    return p[:-1] + ("R" if p[-1] == "L" else "L")


# -- sections ------------------------------------------------------------------

def _sections_at(v: Vertex, ref: VertexRef) -> list[frozenset[VertexRef]]:
    out = [frozenset([ref])]
    if isinstance(v, Node):
        for a in _sections_at(v.left, ref + "L"):
            for b in _sections_at(v.right, ref + "R"):
                out.append(a | b)
    return out


def sections(tree: WordTree) -> list[frozenset[VertexRef]]:
    """All sections (maximal antichains) of the tree."""
    return sorted(_sections_at(tree.root, ""), key=lambda s: (len(s), sorted(s)))


def is_section(tree: WordTree, S) -> bool:
    """Each indeterminate has exactly one ancestor-or-self in S."""
    S = set(S)
    for ref in S:
        tree.vertex(ref)
    for ref, v in tree.vertices():
        if isinstance(v, Leaf):
            hits = sum(1 for k in range(len(ref) + 1) if ref[:k] in S)
            if hits != 1:
                return False
    return True


def section_below_level(tree: WordTree, i: int) -> frozenset[VertexRef]:
    """Vertices at level i+1 together with the leaves strictly below level i+1."""
    h = tree.height
    if not 0 <= i < h:
        raise ValueError(f"level {i} out of range 0..{h - 1}")
    out = set()
    for ref, v in tree.vertices():
        lev = h - len(ref)
        if lev == i + 1 or (lev > i + 1 and isinstance(v, Leaf)):
            out.add(ref)
    return frozenset(out)


# -- extensions and constituents ----------------------------------------------

def _extends(phi: Shape, w: Shape) -> bool:
    if w == ():
        return True
    if phi == ():
        return False
    return _extends(phi[0], w[0]) and _extends(phi[1], w[1])


def is_extension(phi: WordTree, w: WordTree) -> bool:
    """phi's tree is w's tree with (possibly trivial) trees grown on w's leaves."""
    return _extends(phi.shape, w.shape)


def is_constituent(alpha: WordTree, w: WordTree) -> bool:
    return any(shape_of(v) == alpha.shape for _, v in w.vertices())


# -- constructions from the goodgen argument ----------------------------------

def max_delta_level(w: WordTree) -> int:
    """Largest i such that a vertex at level i carries a copy of delta_i."""
    if defect(w) == 0:
        raise ValueError(f"{w} is a derived word")
    h = w.height
    best = 0
    for ref, v in w.vertices():
        lev = h - len(ref)
        if shape_of(v) == _delta_shape(lev):
            best = max(best, lev)
    return best


def _replace(v: Vertex, ref: VertexRef, new: Vertex) -> Vertex:
    if ref == "":
        return new
    if ref[0] == "L":
        return Node(_replace(v.left, ref[1:], new), v.right)
    return Node(v.left, _replace(v.right, ref[1:], new))


def _with_subtree(w: WordTree, ref: VertexRef, s: Shape) -> WordTree:
    root = _replace(w.root, ref, _from_shape(s, itertools.count(10 ** 9)))
    return WordTree(_renumber(root))


def w_v_target(w: WordTree, v: VertexRef, i: int) -> VertexRef:
    """Vertex whose subtree becomes delta_i when building w^(v).

    For a leaf this is v itself.  Otherwise it is a child of v not shaped like
    delta_i, the right child when both qualify.
    """
    if i != max_delta_level(w):
        raise ValueError(f"level {i} is not the maximal delta level {max_delta_level(w)}")
    if v not in section_below_level(w, i):
        raise ValueError(f"vertex {v!r} is not in the section cut below level {i}")
    node = w.vertex(v)
    if isinstance(node, Leaf):
        return v
    d = _delta_shape(i)
    if shape_of(node.right) != d:
        return v + "R"
    if shape_of(node.left) != d:
        return v + "L"
    raise RuntimeError(f"internal inconsistency: both children of {v!r} are delta_{i}")


def build_w_v(w: WordTree, v: VertexRef, i: int) -> WordTree:
    """Proper extension of w of the same height, with delta_i planted at or above v."""
    return _with_subtree(w, w_v_target(w, v, i), _delta_shape(i))


def build_pi_v(w: WordTree, v: VertexRef, eta: WordTree) -> WordTree:
    """Replace the subtree of w at v by [w_v, eta]."""
    node = w.vertex(v)
    return _with_subtree(w, v, (shape_of(node), eta.shape))


@lru_cache(maxsize=None)
def shapes_up_to_height(k: int) -> tuple[Shape, ...]:
    if k == 0:
        return ((),)
    prev = shapes_up_to_height(k - 1)
    return ((),) + tuple((a, b) for a in prev for b in prev)


def _extensions(s: Shape, room: int) -> Iterator[Shape]:
    if s == ():
        yield from shapes_up_to_height(room)
        return
    for a in _extensions(s[0], room - 1):
        for b in _extensions(s[1], room - 1):
            yield (a, b)


def proper_extensions_of_height(w: WordTree, h: int, budget: int = 10_000):
    """All proper extensions of w of height h, in a fixed order.

    Returns ``(words, complete)``; ``complete`` is False when the budget cut
    the enumeration short.
    """
    if h != w.height:
        raise ValueError(f"height {h} differs from height {w.height} of {w}")
    out = []
    for s in _extensions(w.shape, h):
        if s == w.shape:
            continue
        if len(out) >= budget:
            return out, False
        out.append(WordTree.from_shape(s))
    return out, True


def substitute_derived(w: WordTree, i: Sequence[int]) -> WordTree:
    """w_i: each indeterminate x_j replaced by delta_{i_j}."""
    if len(i) != w.n:
        raise ValueError(f"tuple of length {len(i)} for a word in {w.n} indeterminates")
    if any(k < 0 for k in i):
        raise ValueError("tuple entries must be non-negative")

    def sub(v: Vertex) -> Shape:
        if isinstance(v, Leaf):
            return _delta_shape(i[v.index - 1])
        return (sub(v.left), sub(v.right))

    return WordTree.from_shape(sub(w.root))


# -- DOT -----------------------------------------------------------------------

def to_dot(tree: WordTree, name: str = "word") -> str:
    """Graphviz text, one node per vertex labelled by its subword; root at the bottom."""
    lines = [f'digraph "{name}" {{', "  rankdir=BT;", "  node [shape=plaintext];"]
    for ref, _ in tree.vertices():
        lines.append(f'  "v{ref}" [label="{tree.label(ref)}"];')
    for ref, v in tree.vertices():
        if isinstance(v, Node):
            lines.append(f'  "v{ref}" -> "v{ref}L";')
            lines.append(f'  "v{ref}" -> "v{ref}R";')
    lines.append("}")
    return "\n".join(lines) + "\n"
