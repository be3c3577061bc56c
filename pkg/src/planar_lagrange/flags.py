"""Right-sided open flags and right-sided decompositions of a tree.

A flag on a right-sided tree ``T`` is a strictly increasing chain
``S_1 < ... < S_r = T`` of open subtrees, each ``S_i`` (``i < r``)
completely right-sided, such that a leaf of ``S_i`` surviving as a leaf of
``S_{i+1}`` is already a leaf of ``T``.  On ``T = x`` there is exactly one
flag, the trivial one, of length 0.

A decomposition covers ``T`` by relatively open right-sided pieces glued
root-to-leaf, plus single-vertex pieces at those leaves of ``T`` that are
not the first leaf of the piece covering them.

Flags are encoded as Łukasiewicz words over reduced trees (the empty tree
included), and flags correspond one-to-one with decompositions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .errors import DomainError, InvalidFlagError, NotLukError
from .luk import Word, head_decompose, is_luk, render_word, tree_letter
from .trees import (
    EMPTY,
    ROOT,
    X,
    PlanarTree,
    SubtreeSelection,
    enumerate_open_subtrees,
    full_selection,
    is_completely_right_sided,
    is_reduced,
    is_right_sided,
    leaf_positions,
    positions,
    render_tree,
    replace_leaves,
    right_factor,
    single_vertex,
    vertex_at,
)


def _require_right_sided(t):
    if not is_right_sided(t):
        raise DomainError(f"{render_tree(t)} is not right-sided")


def _host_leaf(t, p):
    return vertex_at(t, p).is_leaf


def is_strictly_contained(host: PlanarTree, s: SubtreeSelection, s2: SubtreeSelection) -> bool:
    """Every leaf of ``s`` that is still a leaf of ``s2`` is a leaf of ``host``."""
    if not s.vertices <= s2.vertices:
        raise DomainError("first selection is not contained in the second")
    shared = set(s.leaves) & set(s2.leaves)
    return all(_host_leaf(host, b) for b in shared)


# ---------------------------------------------------------------- flags


@dataclass(frozen=True)
class Flag:
    host: PlanarTree
    stages: tuple  # tuple[SubtreeSelection, ...]

    def __post_init__(self):
        object.__setattr__(self, "stages", tuple(self.stages))
        problem = _flag_problem(self.host, self.stages)
        if problem:
            raise InvalidFlagError(problem)

    @property
    def length(self) -> int:
        """Number of stages; 0 for the trivial flag on ``x``."""
        return 0 if self.host.is_leaf else len(self.stages)

    def sort_key(self):
        return tuple(tuple(sorted(s.vertices)) for s in self.stages)

    def to_json(self):
        return {"host": render_tree(self.host), "stages": [s.to_strings() for s in self.stages]}

    def __repr__(self):
        return f"Flag({render_tree(self.host)!r}, {[s.to_strings() for s in self.stages]})"


def _flag_problem(host, stages):
    if not is_right_sided(host):
        return f"host {render_tree(host)} is not right-sided"
    if not stages:
        return "a flag has at least one stage"
    for s in stages:
        if s.host != host or s.root_pos != ROOT:
            return "stages must be open subtrees of the host"
    if stages[-1].vertices != frozenset(positions(host)):
        return "the last stage must be the whole host"
    for s in stages[:-1]:
        if not is_completely_right_sided(host, s):
            return f"stage {s.to_strings()} is not completely right-sided"
    for a, b in zip(stages, stages[1:]):
        if not a.vertices < b.vertices:
            return "stages must increase strictly"
        if not is_strictly_contained(host, a, b):
            return f"stage {a.to_strings()} is not strictly contained in {b.to_strings()}"
    return None


def trivial_flag() -> Flag:
    return Flag(X, (full_selection(X),))


def enumerate_flags(t: PlanarTree) -> list[Flag]:
    """All flags on ``t`` by brute-force search over its open subtrees."""
    _require_right_sided(t)
    if t.is_leaf:
        return [trivial_flag()]
    full = full_selection(t)
    candidates = [s for s in enumerate_open_subtrees(t) if is_completely_right_sided(t, s)]
    flags = []

    def extend(chain):
        last = chain[-1]
        if last.vertices == full.vertices:
            flags.append(Flag(t, chain))
            return
        for s in candidates:
            if last.vertices < s.vertices and is_strictly_contained(t, last, s):
                extend(chain + [s])

    for s in candidates:
        extend([s])
    return sorted(flags, key=Flag.sort_key)


def _relative(vertices, at):
    n = len(at)
    return {v[n:] for v in vertices if v[:n] == at}


def restrict_flag(flag: Flag, at) -> Flag:
    """Restriction of the stages after the first to the closed subtree at ``at``.

    Consecutive repeated stages are collapsed.
    """
    sub = vertex_at(flag.host, at)
    stages = []
    for s in flag.stages[1:] or flag.stages[-1:]:
        vs = _relative(s.vertices, at)
        if stages and stages[-1] == vs:
            continue
        stages.append(vs)
    return Flag(sub, [SubtreeSelection(sub, ROOT, vs) for vs in stages])


def encode_flag(flag: Flag) -> Word:
    """Łukasiewicz word of a flag.

    The trivial flag on ``x`` gives the letter of the empty tree.  Otherwise
    the word starts with the right factor of the first stage, followed by
    the words of the flag restricted to the subtrees hanging below the
    non-first leaves of that stage.
    """
    host = flag.host
    if host.is_leaf:
        return (tree_letter(EMPTY),)
    first = flag.stages[0]
    letters = [tree_letter(right_factor(first.shape))]
    for b in first.leaves[1:]:
        letters.extend(encode_flag(restrict_flag(flag, b)))
    return tuple(letters)


def decode_flag(w) -> Flag:
    """Inverse of :func:`encode_flag`; rebuilds the host tree as well."""
    w = tuple(w)
    if not is_luk(w):
        raise NotLukError(f"{render_word(w)!r} is not a Łukasiewicz word")
    for a in w:
        if not isinstance(a.symbol, PlanarTree) or a.degree != a.symbol.degree or not is_reduced(a.symbol):
            raise DomainError(f"letter {a!r} does not belong to the tree alphabet")
    return _decode(w)


def _decode(w) -> Flag:
    head, parts = head_decompose(w)
    top = head.symbol
    if top.is_empty:
        return trivial_flag()
    subs = [_decode(p) for p in parts]
    host = PlanarTree((X, replace_leaves(top, [f.host for f in subs])))
    # leaf i of the head tree sits at (2,) + leaf_positions(top)[i] in the host
    anchors = [(2,) + p for p in leaf_positions(top)]
    first = {ROOT, (1,)} | {(2,) + p for p in positions(top)}
    r = 1 + max(f.length for f in subs)
    stages = [first]
    for j in range(1, r):
        vs = set(first)
        for anchor, f in zip(anchors, subs):
            if f.length == 0:
                continue
            stage = f.stages[min(j, f.length) - 1]
            vs |= {anchor + v for v in stage.vertices}
        stages.append(vs)
    return Flag(host, [SubtreeSelection(host, ROOT, vs) for vs in stages])


# ---------------------------------------------------------------- decompositions


@dataclass(frozen=True)
class Decomposition:
    host: PlanarTree
    pieces: frozenset  # frozenset[SubtreeSelection]

    def __post_init__(self):
        object.__setattr__(self, "pieces", frozenset(self.pieces))

    @cached_property
    def ordered_pieces(self) -> list[SubtreeSelection]:
        return sorted(self.pieces, key=SubtreeSelection.sort_key)

    def sort_key(self):
        return tuple(p.sort_key() for p in self.ordered_pieces)

    def weight_factors(self) -> list[PlanarTree]:
        """Right factors of the piece shapes; singletons give the empty tree."""
        return [right_factor(p.shape) for p in self.ordered_pieces]

    def to_json(self):
        return {"host": render_tree(self.host), "pieces": [p.to_strings() for p in self.ordered_pieces]}

    def __repr__(self):
        return f"Decomposition({render_tree(self.host)!r}, {[p.to_strings() for p in self.ordered_pieces]})"


def is_decomposition(host: PlanarTree, pieces) -> bool:
    pieces = list(pieces)
    if not is_right_sided(host) or not pieces:
        return False
    if any(p.host != host for p in pieces):
        return False
    if host.is_leaf:
        return len(pieces) == 1 and pieces[0].vertices == {ROOT}
    big = [p for p in pieces if not p.is_singleton]
    small = [p for p in pieces if p.is_singleton]
    # (a) non-singleton pieces are right-sided
    if not all(is_right_sided(p.shape) for p in big):
        return False
    # (b) covering
    covered = set().union(*(p.vertices for p in pieces))
    if covered != set(positions(host)):
        return False
    # (c) gluing
    roots = [p.root_pos for p in pieces]
    if len(set(roots)) != len(roots) or roots.count(ROOT) != 1:
        return False
    for i, p in enumerate(pieces):
        for q in pieces[i + 1 :]:
            common = p.vertices & q.vertices
            if len(common) > 1:
                return False
            if common:
                (a,) = common
                if not ((a == p.root_pos and a in q.leaves) or (a == q.root_pos and a in p.leaves)):
                    return False
    # (d) first leaf of each piece is a host leaf
    if not all(_host_leaf(host, p.leaves[0]) for p in big):
        return False
    # (e) inner junctions continue with another piece
    big_roots = {p.root_pos for p in big}
    for p in big:
        for b in p.leaves:
            if not _host_leaf(host, b) and b not in big_roots:
                return False
    # (f) singletons exactly at non-first host-leaf leaves of big pieces
    wanted = {b for p in big for b in p.leaves[1:] if _host_leaf(host, b)}
    return {p.root_pos for p in small} == wanted


def _root_pieces(t, at):
    """Candidate pieces rooted at ``at``: completely right-sided open subtrees of the closure."""
    sub = vertex_at(t, at)
    out = []
    for s in enumerate_open_subtrees(sub):
        if is_completely_right_sided(sub, s):
            out.append(SubtreeSelection(t, at, {at + v for v in s.vertices}))
    return out


def _decompose_at(t, at) -> list[list[SubtreeSelection]]:
    out = []
    for piece in _root_pieces(t, at):
        leaves = piece.leaves
        singles = [single_vertex(t, b) for b in leaves[1:] if _host_leaf(t, b)]
        below = [_decompose_at(t, b) for b in leaves if not _host_leaf(t, b)]
        for combo in product(*below):
            pieces = [piece] + singles
            for c in combo:
                pieces.extend(c)
            out.append(pieces)
    return out


def enumerate_decompositions(t: PlanarTree) -> list[Decomposition]:
    _require_right_sided(t)
    if t.is_leaf:
        return [Decomposition(t, [single_vertex(t)])]
    ds = [Decomposition(t, pieces) for pieces in _decompose_at(t, ROOT)]
    return sorted(ds, key=Decomposition.sort_key)


def flag_to_decomposition(flag: Flag) -> Decomposition:
    t = flag.host
    if t.is_leaf:
        return Decomposition(t, [single_vertex(t)])
    pieces = [flag.stages[0]]
    for prev, cur in zip(flag.stages, flag.stages[1:]):
        for b in prev.leaves:
            if _host_leaf(t, b):
                continue
            vs = {v for v in cur.vertices if v[: len(b)] == b}
            if len(vs) > 1:
                pieces.append(SubtreeSelection(t, b, vs))
    for p in list(pieces):
        pieces.extend(single_vertex(t, b) for b in p.leaves[1:] if _host_leaf(t, b))
    return Decomposition(t, pieces)


def decomposition_to_flag(d: Decomposition) -> Flag:
    t = d.host
    if not is_decomposition(t, d.pieces):
        raise DomainError(f"not a right-sided decomposition: {d!r}")
    if t.is_leaf:
        return trivial_flag()
    by_root = {p.root_pos: p for p in d.pieces if not p.is_singleton}
    stage = set(by_root[ROOT].vertices)
    stages = [frozenset(stage)]
    full = frozenset(positions(t))
    while stage != full:
        current = SubtreeSelection(t, ROOT, stage)
        grown = set(stage)
        for b in current.leaves:
            if not _host_leaf(t, b):
                grown |= by_root[b].vertices
        stage = grown
        stages.append(frozenset(stage))
    return Flag(t, [SubtreeSelection(t, ROOT, vs) for vs in stages])

