import pytest

from planar_lagrange.errors import DomainError, InvalidFlagError, NotLukError
from planar_lagrange.flags import (
    Decomposition,
    Flag,
    decode_flag,
    decomposition_to_flag,
    encode_flag,
    enumerate_decompositions,
    enumerate_flags,
    flag_to_decomposition,
    is_decomposition,
    is_strictly_contained,
    trivial_flag,
)
from planar_lagrange.luk import is_luk, parse_tree_word, render_word
from planar_lagrange.trees import (
    ROOT,
    X,
    PlanarTree,
    SubtreeSelection,
    enumerate_right_sided,
    full_selection,
    parse_tree,
    single_vertex,
)

T = parse_tree


def sel(tree, *verts, root=ROOT):
    return SubtreeSelection(tree, root, verts)


def hosts(max_degree):
    return [t for d in range(1, max_degree + 1) for t in enumerate_right_sided(d)]


CHERRY_COMB = T("(x (x x))")  # x . x^2
S1 = sel(CHERRY_COMB, ROOT, (1,), (2,))


def test_strict_containment_examples():
    full = full_selection(CHERRY_COMB)
    assert is_strictly_contained(CHERRY_COMB, full, full)
    assert is_strictly_contained(CHERRY_COMB, S1, full)
    t = T("(x (x (x x)))")
    s = sel(t, ROOT, (1,), (2,))
    s2 = sel(t, ROOT, (1,), (2,), (2, 1), (2, 2))
    assert is_strictly_contained(t, s, s2)
    assert not is_strictly_contained(t, s, s)
    with pytest.raises(DomainError):
        is_strictly_contained(t, s2, s)


def test_flags_examples():
    assert enumerate_flags(T("(x x)")) == [Flag(T("(x x)"), [full_selection(T("(x x)"))])]
    fl = enumerate_flags(CHERRY_COMB)
    assert set(fl) == {
        Flag(CHERRY_COMB, [full_selection(CHERRY_COMB)]),
        Flag(CHERRY_COMB, [S1, full_selection(CHERRY_COMB)]),
    }
    assert len(enumerate_flags(T("(x (x x x))"))) == 1
    assert enumerate_flags(X) == [trivial_flag()]
    with pytest.raises(DomainError):
        enumerate_flags(T("((x x) x)"))


def test_flag_validation():
    full = full_selection(CHERRY_COMB)
    with pytest.raises(InvalidFlagError):
        Flag(CHERRY_COMB, [S1])  # does not end at the host
    with pytest.raises(InvalidFlagError):
        Flag(CHERRY_COMB, [full, full])  # not strictly increasing
    with pytest.raises(InvalidFlagError):
        Flag(CHERRY_COMB, [single_vertex(CHERRY_COMB), full])  # degree 1 stage
    t = T("(x (x (x x)))")
    s = sel(t, ROOT, (1,), (2,))
    s2 = sel(t, ROOT, (1,), (2,), (2, 1), (2, 2))
    Flag(t, [s, s2, full_selection(t)])
    with pytest.raises(InvalidFlagError):
        # [2] is a leaf of both stages but not a leaf of the host
        Flag(t, [s, sel(t, ROOT, (1,), (2,)), full_selection(t)])


def test_encode_examples():
    assert render_word(encode_flag(Flag(T("(x x)"), [full_selection(T("(x x)"))]))) == "x; 1"
    assert render_word(encode_flag(Flag(CHERRY_COMB, [full_selection(CHERRY_COMB)]))) == "(x x); 1; 1"
    assert render_word(encode_flag(Flag(CHERRY_COMB, [S1, full_selection(CHERRY_COMB)]))) == "x; x; 1"
    assert render_word(encode_flag(trivial_flag())) == "1"


def test_decode_examples_and_errors():
    f = decode_flag(parse_tree_word("x; x; 1"))
    assert f.host == CHERRY_COMB and f.stages[0] == S1
    assert decode_flag(parse_tree_word("1")) == trivial_flag()
    with pytest.raises(NotLukError):
        decode_flag(parse_tree_word("x; 1; 1"))


def test_flag_codec_roundtrip_and_injective():
    seen = {}
    for t in hosts(5):
        for f in enumerate_flags(t):
            w = encode_flag(f)
            assert is_luk(w)
            assert decode_flag(w) == f
            assert w not in seen
            seen[w] = f
    assert len(seen) == 43


def test_decomposition_examples():
    t = T("(x x)")
    only = [full_selection(t), single_vertex(t, (2,))]
    assert is_decomposition(t, only)
    assert enumerate_decompositions(t) == [Decomposition(t, only)]

    first = {full_selection(CHERRY_COMB), single_vertex(CHERRY_COMB, (2, 1)), single_vertex(CHERRY_COMB, (2, 2))}
    second = {S1, full_selection(CHERRY_COMB, (2,)), single_vertex(CHERRY_COMB, (2, 2))}
    assert is_decomposition(CHERRY_COMB, first) and is_decomposition(CHERRY_COMB, second)
    assert {d.pieces for d in enumerate_decompositions(CHERRY_COMB)} == {frozenset(first), frozenset(second)}
    # literal reading with a singleton at the first leaf of the inner piece is rejected
    assert not is_decomposition(CHERRY_COMB, second | {single_vertex(CHERRY_COMB, (2, 1))})


def test_nesting_at_first_child_rejected():
    t = T("(x ((x x) x))")
    pieces = [
        sel(t, ROOT, (1,), (2,)),
        sel(t, (2,), (2, 1), (2, 2), root=(2,)),
        sel(t, (2, 1), (2, 1, 1), (2, 1, 2), root=(2, 1)),
        single_vertex(t, (2, 2)),
        single_vertex(t, (2, 1, 2)),
    ]
    assert all(p.shape == T("(x x)") for p in pieces[:3])
    assert not is_decomposition(t, pieces)


def test_decomposition_counts():
    assert len(enumerate_decompositions(CHERRY_COMB)) == 2
    assert len(enumerate_decompositions(T("(x (x x x))"))) == 1
    assert len(enumerate_decompositions(T("(x (x (x x)))"))) == 4
    assert enumerate_decompositions(X) == [Decomposition(X, [single_vertex(X)])]


def test_flag_to_decomposition_examples():
    full = full_selection(CHERRY_COMB)
    d1 = flag_to_decomposition(Flag(CHERRY_COMB, [full]))
    assert d1.pieces == {full, single_vertex(CHERRY_COMB, (2, 1)), single_vertex(CHERRY_COMB, (2, 2))}
    d2 = flag_to_decomposition(Flag(CHERRY_COMB, [S1, full]))
    assert d2.pieces == {S1, full_selection(CHERRY_COMB, (2,)), single_vertex(CHERRY_COMB, (2, 2))}


def _glue(d):
    """Rebuild the host from the piece shapes by grafting at junctions."""
    by_root = {p.root_pos: p for p in d.pieces if not p.is_singleton}

    def build(root):
        piece = by_root[root]
        leaves = iter(piece.leaves)

        def walk(node):
            if node.is_leaf:
                b = next(leaves)
                return build(b) if b in by_root else X
            return PlanarTree(walk(c) for c in node.children)

        return walk(piece.shape)

    return build(ROOT) if by_root else X


def test_bijection_and_structure():
    for t in hosts(5):
        fl = enumerate_flags(t)
        ds = enumerate_decompositions(t)
        assert len(fl) == len(ds)
        assert len(set(ds)) == len(ds)
        assert {flag_to_decomposition(f) for f in fl} == set(ds)
        for d in ds:
            assert is_decomposition(t, d.pieces)
            assert flag_to_decomposition(decomposition_to_flag(d)) == d
            assert _glue(d) == t
        for f in fl:
            assert decomposition_to_flag(flag_to_decomposition(f)) == f


def test_is_decomposition_rejects_wrong_covers():
    t = T("(x (x (x x)))")
    for d in enumerate_decompositions(t):
        pieces = list(d.pieces)
        for i in range(len(pieces)):
            assert not is_decomposition(t, pieces[:i] + pieces[i + 1 :])
    assert not is_decomposition(t, [full_selection(t)])
