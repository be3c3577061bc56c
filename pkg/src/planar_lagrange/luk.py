"""Łukasiewicz languages over graded alphabets.

A letter carries an intrinsic degree ``i``; its weight is ``i - 1``.  A word
is a Łukasiewicz word when its total weight is -1 and every proper prefix
has weight >= 0.  These words form a prefix code, so every word of total
weight ``-r`` whose proper prefixes stay above ``-r`` factors uniquely into
``r`` of them.

Two alphabets are used in the package: natural numbers (``nat(n)`` has
degree ``n``) and reduced planar trees including the empty tree
(``tree_letter(t)`` has degree ``deg t``).  Words are plain tuples of
:class:`Letter`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Sequence

from .errors import DomainError, NotLukError, ParseError
from .trees import PlanarTree, is_reduced, parse_tree, render_tree


@dataclass(frozen=True)
class Letter:
    symbol: Hashable
    degree: int

    def __post_init__(self):
        if self.degree < 0:
            raise DomainError("letter degrees are natural numbers")

    def __repr__(self):
        if isinstance(self.symbol, PlanarTree):
            return f"λ({render_tree(self.symbol)})"
        return f"λ({self.symbol})"


Word = tuple  # tuple[Letter, ...]


def nat(n: int) -> Letter:
    return Letter(n, n)


def tree_letter(t: PlanarTree) -> Letter:
    if not is_reduced(t):
        raise DomainError(f"letters of this alphabet are reduced trees, got {render_tree(t)}")
    return Letter(t, t.degree)


def nat_word(arities: Sequence[int]) -> Word:
    return tuple(nat(n) for n in arities)


# ---------------------------------------------------------------- text formats


def parse_nat_word(text: str) -> Word:
    """Space-separated natural numbers, e.g. ``"3 0 1 2 0 0 1 0"``."""
    letters = []
    offset = 0
    for token in text.split():
        offset = text.index(token, offset)
        if not token.isdigit():
            raise ParseError(f"expected a natural number, got {token!r}", offset)
        letters.append(nat(int(token)))
        offset += len(token)
    return tuple(letters)


def parse_tree_word(text: str) -> Word:
    """Semicolon-separated tree literals, e.g. ``"(x x); 1; 1"``."""
    if not text.strip():
        return ()
    letters = []
    offset = 0
    for chunk in text.split(";"):
        try:
            t = parse_tree(chunk)
        except ParseError as exc:
            where = None if exc.offset is None else offset + exc.offset
            raise ParseError(f"bad letter {chunk.strip()!r}", where) from None
        letters.append(tree_letter(t))
        offset += len(chunk.encode()) + 1
    return tuple(letters)


def render_word(w: Sequence[Letter]) -> str:
    if any(isinstance(a.symbol, PlanarTree) for a in w):
        return "; ".join(render_tree(a.symbol) for a in w)
    return " ".join(str(a.symbol) for a in w)


# ---------------------------------------------------------------- language


def delta(w: Sequence[Letter]) -> int:
    return sum(a.degree - 1 for a in w)


def is_luk(w: Sequence[Letter]) -> bool:
    if not w:
        return False
    total = 0
    for a in w[:-1]:
        total += a.degree - 1
        if total < 0:
            return False
    return total + w[-1].degree - 1 == -1


def is_product_of_luk(w: Sequence[Letter]) -> tuple[bool, int | None]:
    """Membership in the monoid generated by Łukasiewicz words.

    Returns ``(True, r)`` with ``r`` the number of factors, or ``(False, None)``.
    """
    r = -delta(w)
    if r <= 0:
        return False, None
    total = 0
    for a in w[:-1]:
        total += a.degree - 1
        if total <= -r:
            return False, None
    return True, r


def factor(w: Sequence[Letter]) -> list[Word]:
    """Unique factorization into Łukasiewicz words.

    Cut after every letter at which the running weight reaches a new minimum.
    """
    ok, _ = is_product_of_luk(w)
    if not ok:
        raise NotLukError(f"{render_word(w)!r} is not a product of Łukasiewicz words")
    parts = []
    start = 0
    total = 0
    low = 0
    for i, a in enumerate(w):
        total += a.degree - 1
        if total < low:
            low = total
            parts.append(tuple(w[start : i + 1]))
            start = i + 1
    return parts


def head_decompose(w: Sequence[Letter]) -> tuple[Letter, list[Word]]:
    """Split ``w`` as its first letter followed by ``m`` Łukasiewicz words."""
    if not is_luk(w):
        raise NotLukError(f"{render_word(w)!r} is not a Łukasiewicz word")
    head, rest = w[0], tuple(w[1:])
    parts = factor(rest) if rest else []
    assert len(parts) == head.degree
    return head, parts


def luk_compose(head: Letter, parts: Sequence[Sequence[Letter]]) -> Word:
    if len(parts) != head.degree:
        raise DomainError(f"letter of degree {head.degree} needs {head.degree} parts, got {len(parts)}")
    for p in parts:
        if not is_luk(p):
            raise NotLukError(f"{render_word(p)!r} is not a Łukasiewicz word")
    out = [head]
    for p in parts:
        out.extend(p)
    return tuple(out)


def height(w: Sequence[Letter]) -> int:
    head, parts = head_decompose(w)
    if not parts:
        return 0
    return 1 + max(height(p) for p in parts)


# ---------------------------------------------------------------- tree codec


def encode_pt(t: PlanarTree) -> Word:
    """Preorder arity word of a nonempty planar tree."""
    if t.is_empty:
        raise DomainError("the empty tree has no arity word")
    return nat_word(t.arities)


def decode_pt(w: Sequence[Letter]) -> PlanarTree:
    if not is_luk(w):
        raise NotLukError(f"{render_word(w)!r} is not a Łukasiewicz word")
    for a in w:
        if not isinstance(a.symbol, int) or a.symbol != a.degree:
            raise DomainError(f"{a!r} is not a letter of the natural-number alphabet")
    # right-to-left stack build
    stack: list[PlanarTree] = []
    for a in reversed(w):
        m = a.degree
        kids = stack[len(stack) - m :][::-1] if m else []
        del stack[len(stack) - m :]
        stack.append(PlanarTree(kids))
    (tree,) = stack
    return tree
