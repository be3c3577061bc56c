"""Planar rooted trees, vertex positions, grafting and subtree selections.

Trees are immutable and compared structurally.  The canonical key of a
nonempty tree is its preorder arity sequence, which determines the tree
uniquely; all enumeration orders in this package sort on it.

Vertices are addressed by *positions*: tuples of 1-based child indices
read from the root, so ``()`` is the root and ``(2, 1)`` is the first
child of the second child.  Lexicographic order on positions is preorder.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import (
    DomainError,
    EnumerationLimitError,
    InvalidPositionError,
    InvalidSelectionError,
    ParseError,
)

Position = tuple  # tuple[int, ...]
ROOT: Position = ()

DEFAULT_SIZE_CAP = 10
SIZE_CAP_ENV = "PLANAR_LAGRANGE_MAX_SIZE"


class PlanarTree:
    """A finite planar rooted tree, or the empty tree.

    Build trees with :data:`X`, :data:`EMPTY`, :func:`graft` or
    :func:`parse_tree` rather than calling the constructor directly.
    """

    __slots__ = ("children", "is_empty", "arities", "degree", "size", "_hash")

    def __init__(self, children: Iterable[PlanarTree] = (), *, _empty: bool = False):
        children = tuple(children)
        if _empty:
            self.children = ()
            self.is_empty = True
            self.arities = ()
            self.degree = 0
            self.size = 0
        else:
            for c in children:
                if not isinstance(c, PlanarTree) or c.is_empty:
                    raise DomainError("children of a vertex must be nonempty trees")
            self.children = children
            self.is_empty = False
            arities = [len(children)]
            for c in children:
                arities.extend(c.arities)
            self.arities = tuple(arities)
            self.degree = sum(c.degree for c in children) if children else 1
            self.size = len(arities)
        self._hash = hash((self.is_empty, self.arities))

    @property
    def arity(self) -> int:
        return len(self.children)

    @property
    def is_leaf(self) -> bool:
        return not self.is_empty and not self.children

    @property
    def key(self) -> str:
        return "1" if self.is_empty else " ".join(map(str, self.arities))

    def sort_key(self):
        return (not self.is_empty, self.arities)

    def __eq__(self, other):
        if not isinstance(other, PlanarTree):
            return NotImplemented
        return self.is_empty == other.is_empty and self.arities == other.arities

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __hash__(self):
        return self._hash

    def __str__(self):
        return render_tree(self)

    def __repr__(self):
        return f"PlanarTree({render_tree(self)!r})"


EMPTY = PlanarTree(_empty=True)
X = PlanarTree(())


def graft(children: Sequence[PlanarTree]) -> PlanarTree:
    """New root whose ordered children are ``children`` (m-ary grafting)."""
    children = tuple(children)
    if not children:
        raise DomainError("graft needs at least one child")
    if any(c.is_empty for c in children):
        raise DomainError("cannot graft the empty tree; it is the unit of the series product")
    return PlanarTree(children)


def tree_product(s: PlanarTree, t: PlanarTree) -> PlanarTree:
    """Binary tree product, with the empty tree as two-sided unit."""
    if s.is_empty:
        return t
    if t.is_empty:
        return s
    return PlanarTree((s, t))


# ---------------------------------------------------------------- text formats


def parse_tree(text: str) -> PlanarTree:
    """Parse ``1``, ``x`` or a parenthesised list of subtrees."""
    data = text.encode()
    n = len(data)
    i = 0
    stack: list[list[PlanarTree]] = []
    result = None

    def skip_ws(i):
        while i < n and data[i] in b" \t\r\n":
            i += 1
        return i

    i = skip_ws(0)
    if i == n:
        raise ParseError("empty tree literal", i)
    while i < n:
        ch = data[i : i + 1]
        if result is not None:
            raise ParseError("trailing characters after tree", i)
        if ch == b"(":
            stack.append([])
            i += 1
        elif ch == b")":
            if not stack:
                raise ParseError("unbalanced ')'", i)
            kids = stack.pop()
            if not kids:
                raise ParseError("a vertex needs at least one child", i)
            node = PlanarTree(kids)
            i += 1
            if stack:
                stack[-1].append(node)
            else:
                result = node
        elif ch in (b"x", b"1"):
            if i + 1 < n and data[i + 1 : i + 2] not in (b" ", b"\t", b"\r", b"\n", b")"):
                raise ParseError("expected whitespace or ')' after atom", i + 1)
            if ch == b"1":
                if stack:
                    raise ParseError("the empty tree '1' may only appear at top level", i)
                result = EMPTY
            elif stack:
                stack[-1].append(X)
            else:
                result = X
            i += 1
        else:
            raise ParseError(f"unexpected character {ch.decode(errors='replace')!r}", i)
        i = skip_ws(i)
    if stack:
        raise ParseError("unbalanced '('", n)
    return result


def render_tree(t: PlanarTree, format: str = "literal") -> str:
    if format == "literal":
        if t.is_empty:
            return "1"
        return _literal(t)
    if format == "arity_word":
        return " ".join(map(str, t.arities))
    if format == "dot":
        return _dot(t)
    raise ValueError(f"unknown tree format {format!r}")


def _literal(t):
    if t.is_leaf:
        return "x"
    return "(" + " ".join(_literal(c) for c in t.children) + ")"


def _dot(t, name="tree"):
    lines = [f"digraph {name} {{", "  node [shape=circle, label=\"\", width=0.15];"]
    if not t.is_empty:
        ids = {}
        for p in positions(t):
            ids[p] = f"v{len(ids)}"
            lines.append(f"  {ids[p]};")
        for p in positions(t):
            if p:
                lines.append(f"  {ids[p[:-1]]} -> {ids[p]} [order={p[-1]}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_position(text: str) -> Position:
    """``""`` is the root, ``"2.1"`` the first child of the second child."""
    text = text.strip()
    if not text:
        return ROOT
    try:
        pos = tuple(int(part) for part in text.split("."))
    except ValueError:
        raise ParseError(f"bad position {text!r}") from None
    if any(k < 1 for k in pos):
        raise ParseError(f"position indices are 1-based: {text!r}")
    return pos


def format_position(p: Position) -> str:
    return ".".join(map(str, p))


# ---------------------------------------------------------------- structure


def degree(t: PlanarTree) -> int:
    return t.degree


def vertex_at(t: PlanarTree, p: Position) -> PlanarTree:
    node = t
    if t.is_empty:
        raise InvalidPositionError("the empty tree has no vertices")
    for k in p:
        if not 1 <= k <= node.arity:
            raise InvalidPositionError(f"invalid position {format_position(p)!r}")
        node = node.children[k - 1]
    return node


def closed_subtree_at(t: PlanarTree, p: Position) -> PlanarTree:
    """The vertex at ``p`` with all its descendants, rooted at ``p``."""
    return vertex_at(t, p)


def arity(t: PlanarTree, p: Position = ROOT) -> int:
    return vertex_at(t, p).arity


def is_valid_position(t: PlanarTree, p: Position) -> bool:
    try:
        vertex_at(t, p)
    except InvalidPositionError:
        return False
    return True


def positions(t: PlanarTree) -> list[Position]:
    """All vertex positions in preorder."""
    if t.is_empty:
        return []
    out = []

    def walk(node, p):
        out.append(p)
        for i, c in enumerate(node.children, 1):
            walk(c, p + (i,))

    walk(t, ROOT)
    return out


def leaf_positions(t: PlanarTree) -> list[Position]:
    out = []

    def walk(node, p):
        if node.is_leaf:
            out.append(p)
        for i, c in enumerate(node.children, 1):
            walk(c, p + (i,))

    if not t.is_empty:
        walk(t, ROOT)
    return out


def first_leaf(t: PlanarTree) -> Position:
    if t.is_empty:
        raise DomainError("the empty tree has no leaves")
    p = ROOT
    node = t
    while node.children:
        node = node.children[0]
        p += (1,)
    return p


def is_reduced(t: PlanarTree) -> bool:
    """No vertex has exactly one child."""
    return t.is_empty or (t.arity != 1 and all(is_reduced(c) for c in t.children))


def is_right_sided(t: PlanarTree) -> bool:
    """``x`` itself, or ``x . T'``: root of arity 2 whose first child is a leaf."""
    if t.is_empty:
        return False
    return t.is_leaf or (t.arity == 2 and t.children[0].is_leaf)


def right_factor(t: PlanarTree) -> PlanarTree:
    """The ``T'`` with ``t = x . T'``; the empty tree for ``t = x``."""
    if not is_right_sided(t):
        raise DomainError(f"{render_tree(t)} is not right-sided")
    return EMPTY if t.is_leaf else t.children[1]


def max_leaf_depth(t: PlanarTree) -> int:
    """Largest root-to-leaf distance."""
    if t.is_empty:
        raise DomainError("the empty tree has no leaves")
    if t.is_leaf:
        return 0
    return 1 + max(max_leaf_depth(c) for c in t.children)


def replace_leaves(t: PlanarTree, trees: Sequence[PlanarTree]) -> PlanarTree:
    """Replace the leaves of ``t``, in planar order, by ``trees``."""
    if len(trees) != t.degree:
        raise DomainError(f"need {t.degree} trees, got {len(trees)}")
    it = iter(trees)

    def build(node):
        if node.is_leaf:
            return next(it)
        return PlanarTree(build(c) for c in node.children)

    return build(t)


# ---------------------------------------------------------------- selections


def is_relatively_open(host: PlanarTree, root_pos: Position, vertices) -> bool:
    """Connected below ``root_pos``, and every vertex keeps all or none of its children."""
    vertices = set(vertices)
    if root_pos not in vertices:
        return False
    n = len(root_pos)
    for v in vertices:
        if not is_valid_position(host, v) or v[:n] != root_pos:
            return False
        if v != root_pos and v[:-1] not in vertices:
            return False
        k = arity(host, v)
        kept = sum((v + (i,)) in vertices for i in range(1, k + 1))
        if kept not in (0, k):
            return False
    return True


@dataclass(frozen=True)
class SubtreeSelection:
    """A relatively open subtree of ``host`` given by its vertex positions."""

    host: PlanarTree
    root_pos: Position
    vertices: frozenset = field(hash=True)

    def __post_init__(self):
        object.__setattr__(self, "root_pos", tuple(self.root_pos))
        object.__setattr__(self, "vertices", frozenset(tuple(v) for v in self.vertices))
        if not is_relatively_open(self.host, self.root_pos, self.vertices):
            raise InvalidSelectionError(
                f"not a relatively open subtree of {render_tree(self.host)}: "
                f"{sorted(map(format_position, self.vertices))}"
            )

    @cached_property
    def leaves(self) -> list[Position]:
        """Leaves of the selection in planar order."""
        return sorted(v for v in self.vertices if (v + (1,)) not in self.vertices)

    @cached_property
    def interior(self) -> frozenset:
        return self.vertices.difference(self.leaves)

    @cached_property
    def shape(self) -> PlanarTree:
        def build(p):
            if (p + (1,)) not in self.vertices:
                return X
            return PlanarTree(build(p + (i,)) for i in range(1, arity(self.host, p) + 1))

        return build(self.root_pos)

    @property
    def degree(self) -> int:
        return len(self.leaves)

    @property
    def is_singleton(self) -> bool:
        return len(self.vertices) == 1

    def sort_key(self):
        return (self.root_pos, tuple(sorted(self.vertices)))

    def to_strings(self) -> list[str]:
        return [format_position(v) for v in sorted(self.vertices)]

    def __repr__(self):
        return (
            f"SubtreeSelection({render_tree(self.host)!r}, root={format_position(self.root_pos)!r}, "
            f"vertices={self.to_strings()})"
        )


def full_selection(t: PlanarTree, at: Position = ROOT) -> SubtreeSelection:
    """The whole closed subtree at ``at``."""
    sub = vertex_at(t, at)
    return SubtreeSelection(t, at, [at + p for p in positions(sub)])


def single_vertex(t: PlanarTree, at: Position = ROOT) -> SubtreeSelection:
    return SubtreeSelection(t, at, [at])


class Component(NamedTuple):
    root_pos: Position
    tree: PlanarTree


def remove_interior(t: PlanarTree, s: SubtreeSelection) -> list[Component]:
    """The forest left after deleting the interior vertices of ``s``.

    Components are the closed subtrees at the leaves of ``s``, in planar order.
    """
    if s.host != t:
        raise InvalidSelectionError("selection belongs to a different host")
    return [Component(b, vertex_at(t, b)) for b in s.leaves]


def is_open(t: PlanarTree, s: SubtreeSelection) -> bool:
    return s.host == t and s.root_pos == ROOT


def is_completely_right_sided(t: PlanarTree, s: SubtreeSelection) -> bool:
    return (
        is_open(t, s)
        and s.degree > 1
        and all(is_right_sided(vertex_at(t, b)) for b in s.leaves)
    )


# ---------------------------------------------------------------- enumeration


def size_cap() -> int:
    value = os.environ.get(SIZE_CAP_ENV)
    if value is None:
        return DEFAULT_SIZE_CAP
    try:
        return int(value)
    except ValueError:
        raise DomainError(f"{SIZE_CAP_ENV} must be an integer, got {value!r}") from None


def _check_cap(n, cap):
    limit = size_cap() if cap is None else cap
    if n > limit:
        raise EnumerationLimitError(f"size {n} exceeds the enumeration cap {limit}")


def enumerate_pt(n: int, cap: int | None = None) -> list[PlanarTree]:
    """All planar rooted trees with ``n`` vertices (unary vertices allowed)."""
    if n < 1:
        raise DomainError("trees have at least one vertex")
    _check_cap(n, cap)
    return sorted(_pt(n), key=PlanarTree.sort_key)


def enumerate_prt(d: int, cap: int | None = None) -> list[PlanarTree]:
    """All reduced planar trees with ``d`` leaves."""
    if d < 1:
        raise DomainError("reduced trees have at least one leaf")
    _check_cap(d, cap)
    return sorted(_prt(d), key=PlanarTree.sort_key)


def enumerate_right_sided(d: int, cap: int | None = None) -> list[PlanarTree]:
    """Reduced right-sided trees with ``d`` leaves."""
    if d == 1:
        return [X]
    trees = [PlanarTree((X, t)) for t in enumerate_prt(d - 1, cap)]
    return sorted(trees, key=PlanarTree.sort_key)


@lru_cache(maxsize=None)
def _pt(n):
    if n == 1:
        return (X,)
    return tuple(PlanarTree(forest) for forest in _pt_forests(n - 1))


@lru_cache(maxsize=None)
def _pt_forests(n):
    # ordered forests with n vertices in total
    if n == 0:
        return ((),)
    out = []
    for first in range(1, n + 1):
        for t in _pt(first):
            for rest in _pt_forests(n - first):
                out.append((t,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _prt(d):
    if d == 1:
        return (X,)
    out = []
    for k in range(2, d + 1):
        for parts in _compositions(d, k):
            for kids in product(*(_prt(p) for p in parts)):
                out.append(PlanarTree(kids))
    return tuple(out)


def _compositions(n, k) -> Iterator[tuple]:
    if k == 1:
        yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def _open_vertex_sets(t: PlanarTree, p: Position) -> list[frozenset]:
    node = vertex_at(t, p)
    out = [frozenset([p])]
    if node.children:
        child_options = [_open_vertex_sets(t, p + (i,)) for i in range(1, node.arity + 1)]
        for combo in product(*child_options):
            out.append(frozenset([p]).union(*combo))
    return out


def enumerate_open_subtrees(t: PlanarTree) -> list[SubtreeSelection]:
    """Open subtrees rooted at the root, from the single root vertex up to ``t``."""
    sels = [SubtreeSelection(t, ROOT, vs) for vs in _open_vertex_sets(t, ROOT)]
    return sorted(sels, key=SubtreeSelection.sort_key)


def enumerate_relatively_open(t: PlanarTree) -> list[SubtreeSelection]:
    sels = [
        SubtreeSelection(t, p, vs) for p in positions(t) for vs in _open_vertex_sets(t, p)
    ]
    return sorted(sels, key=SubtreeSelection.sort_key)
