"""Planar-tree power series over the rationals, truncated by degree.

A series maps reduced planar trees (and the empty tree ``1``) to
:class:`~fractions.Fraction` coefficients; only trees with at most
``max_degree`` leaves are kept.  The product is linear in both arguments
and on monomials is binary grafting ``S . T``, with ``1`` as unit.  The
product is not associative.

Three independent routes compute the solution ``g`` of ``g = x . f(g)``:

* :func:`solve_inversion_recurrence` sums over open subtrees of ``T'``
  for every right-sided ``T = x . T'``;
* :func:`solve_inversion_gamma` sums weights of right-sided decompositions;
* :func:`solve_inversion_iterate` iterates ``g <- x . f(g)`` to a fixed point.
"""

from __future__ import annotations

import json
import math
import re
from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ParseError, SeriesError
from .flags import enumerate_decompositions
from .trees import (
    EMPTY,
    X,
    PlanarTree,
    enumerate_open_subtrees,
    enumerate_prt,
    enumerate_right_sided,
    is_reduced,
    parse_tree,
    remove_interior,
    render_tree,
    tree_product,
)

INFINITE_ORDER = math.inf

_FRACTION_RE = re.compile(r"^\s*-?\d+(/\d+)?\s*$")


def _as_tree(t) -> PlanarTree:
    return parse_tree(t) if isinstance(t, str) else t


def _as_fraction(v) -> Fraction:
    if isinstance(v, str):
        if not _FRACTION_RE.match(v):
            raise ParseError(f"expected an integer or p/q fraction, got {v!r}")
        v = Fraction(v)
        return v
    if isinstance(v, float):
        raise SeriesError("floating-point coefficients are not accepted")
    return Fraction(v)


class TreeSeries:
    __slots__ = ("max_degree", "_coeffs")

    def __init__(self, max_degree: int, coeffs: Mapping | Iterable = ()):
        if max_degree < 0:
            raise SeriesError("max_degree must be a natural number")
        self.max_degree = max_degree
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        data: dict[PlanarTree, Fraction] = {}
        for t, v in items:
            t = _as_tree(t)
            if not is_reduced(t):
                raise SeriesError(f"{render_tree(t)} is not a reduced tree")
            if t.degree > max_degree:
                raise SeriesError(f"{render_tree(t)} exceeds max_degree {max_degree}")
            v = _as_fraction(v)
            if v:
                data[t] = data.get(t, 0) + v
        self._coeffs = {t: v for t, v in data.items() if v}

    @classmethod
    def _raw(cls, max_degree, coeffs):
        # trusted constructor for internally computed coefficients
        self = cls.__new__(cls)
        self.max_degree = max_degree
        self._coeffs = {t: v for t, v in coeffs.items() if v and t.degree <= max_degree}
        return self

    def __getitem__(self, t) -> Fraction:
        return self._coeffs.get(_as_tree(t), Fraction(0))

    coefficient = __getitem__

    def items(self) -> list[tuple[PlanarTree, Fraction]]:
        return sorted(self._coeffs.items(), key=lambda kv: kv[0].sort_key())

    def support(self) -> list[PlanarTree]:
        return [t for t, _ in self.items()]

    def __len__(self):
        return len(self._coeffs)

    def order(self):
        """Smallest degree carrying a nonzero coefficient; ``INFINITE_ORDER`` for zero."""
        if not self._coeffs:
            return INFINITE_ORDER
        return min(t.degree for t in self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def _check(self, other):
        if not isinstance(other, TreeSeries):
            raise TypeError(f"expected a TreeSeries, got {type(other).__name__}")
        if other.max_degree != self.max_degree:
            raise SeriesError(
                f"max_degree mismatch: {self.max_degree} vs {other.max_degree}"
            )

    def __add__(self, other):
        self._check(other)
        out = dict(self._coeffs)
        for t, v in other._coeffs.items():
            out[t] = out.get(t, 0) + v
        return TreeSeries._raw(self.max_degree, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> TreeSeries:
        c = _as_fraction(c)
        return TreeSeries._raw(self.max_degree, {t: c * v for t, v in self._coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, TreeSeries):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, TreeSeries):
            return NotImplemented
        return self.max_degree == other.max_degree and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.max_degree, frozenset(self._coeffs.items())))

    def __repr__(self):
        terms = ", ".join(f"{render_tree(t)!r}: {v}" for t, v in self.items())
        return f"TreeSeries({self.max_degree}, {{{terms}}})"

    def to_json(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "coefficients": [
                {"tree": render_tree(t), "value": str(v)} for t, v in self.items()
            ],
        }

    @classmethod
    def from_json(cls, data) -> TreeSeries:
        if not isinstance(data, dict):
            raise ParseError("a series file must hold a JSON object")
        unknown = set(data) - {"max_degree", "coefficients"}
        if unknown:
            raise ParseError(f"unknown fields in series file: {sorted(unknown)}")
        n = data.get("max_degree")
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise ParseError("max_degree must be a natural number")
        entries = data.get("coefficients", [])
        if not isinstance(entries, list):
            raise ParseError("coefficients must be a list")
        seen = set()
        pairs = []
        for e in entries:
            if not isinstance(e, dict) or set(e) != {"tree", "value"}:
                raise ParseError(f"each coefficient needs exactly 'tree' and 'value': {e!r}")
            if not isinstance(e["tree"], str) or not isinstance(e["value"], str):
                raise ParseError(f"'tree' and 'value' must be strings: {e!r}")
            t = parse_tree(e["tree"])
            if t in seen:
                raise ParseError(f"duplicate tree {e['tree']!r}")
            seen.add(t)
            pairs.append((t, _as_fraction(e["value"])))
        return cls(n, pairs)


def dumps(f: TreeSeries) -> str:
    return json.dumps(f.to_json(), indent=2) + "\n"


def loads(text: str) -> TreeSeries:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from None
    return TreeSeries.from_json(data)


# ---------------------------------------------------------------- constructors


def zero(max_degree: int) -> TreeSeries:
    return TreeSeries(max_degree)


def one(max_degree: int) -> TreeSeries:
    return TreeSeries(max_degree, {EMPTY: 1})


def x_series(max_degree: int) -> TreeSeries:
    return TreeSeries(max_degree, {X: 1})


def monomial(t, max_degree: int, c=1) -> TreeSeries:
    return TreeSeries(max_degree, {_as_tree(t): c})


def all_trees(max_degree: int) -> list[PlanarTree]:
    """The empty tree followed by every reduced tree of degree <= ``max_degree``."""
    out = [EMPTY]
    for d in range(1, max_degree + 1):
        out.extend(enumerate_prt(d))
    return out


def add(f: TreeSeries, h: TreeSeries) -> TreeSeries:
    return f + h


def scale(c, f: TreeSeries) -> TreeSeries:
    return f.scale(c)


def order(f: TreeSeries):
    return f.order()


# ---------------------------------------------------------------- algebra


def mul(f: TreeSeries, h: TreeSeries) -> TreeSeries:
    f._check(h)
    n = f.max_degree
    out: dict[PlanarTree, Fraction] = defaultdict(Fraction)
    for s, cs in f._coeffs.items():
        for t, ct in h._coeffs.items():
            if s.degree + t.degree <= n:
                out[tree_product(s, t)] += cs * ct
    return TreeSeries._raw(n, out)


def graft_product(series_list: Sequence[TreeSeries]) -> TreeSeries:
    """Multilinear m-ary grafting: one monomial from each operand under a new root."""
    if len(series_list) < 2:
        raise SeriesError("graft_product needs at least two operands")
    first = series_list[0]
    for s in series_list[1:]:
        first._check(s)
    if any(s[EMPTY] for s in series_list):
        raise SeriesError("graft_product operands must have no empty-tree term")
    n = first.max_degree
    terms = [s.items() for s in series_list]
    out: dict[PlanarTree, Fraction] = defaultdict(Fraction)
    if any(not ts for ts in terms):
        return TreeSeries._raw(n, out)
    mins = [min(t.degree for t, _ in ts) for ts in terms]
    rest = [sum(mins[i:]) for i in range(len(mins) + 1)]
    m = len(terms)

    def walk(i, budget, coef, kids):
        if i == m:
            out[PlanarTree(kids)] += coef
            return
        for t, c in terms[i]:
            if t.degree + rest[i + 1] <= budget:
                walk(i + 1, budget - t.degree, coef * c, kids + (t,))

    walk(0, n, Fraction(1), ())
    return TreeSeries._raw(n, out)


def substitute(f: TreeSeries, g: TreeSeries) -> TreeSeries:
    """``f(g(x))``: the unital grafting morphism sending ``x`` to ``g``, applied to ``f``."""
    f._check(g)
    if g.order() < 1:
        raise SeriesError("substitution needs a series without constant term")
    n = f.max_degree
    cache: dict[PlanarTree, TreeSeries] = {EMPTY: one(n), X: g}

    def image(t):
        if t not in cache:
            cache[t] = graft_product([image(c) for c in t.children])
        return cache[t]

    out: dict[PlanarTree, Fraction] = defaultdict(Fraction)
    for t, c in f._coeffs.items():
        for u, v in image(t)._coeffs.items():
            out[u] += c * v
    return TreeSeries._raw(n, out)


def reciprocal(f: TreeSeries) -> TreeSeries:
    """The series ``r`` with ``f . r = 1``, solved degree by degree."""
    c1 = f[EMPTY]
    if not c1:
        raise SeriesError("reciprocal needs a nonzero constant term")
    n = f.max_degree
    gamma = {EMPTY: 1 / c1}
    for d in range(1, n + 1):
        for t in enumerate_prt(d):
            acc = f[t] * gamma[EMPTY]
            if t.arity == 2:
                left, right = t.children
                acc += f[left] * gamma.get(right, 0)
            gamma[t] = -acc / c1
    return TreeSeries._raw(n, gamma)


# ---------------------------------------------------------------- inversion


def solve_inversion_recurrence(f: TreeSeries) -> TreeSeries:
    """Solve ``g = x . f(g)`` by recursion over open subtrees.

    With ``a(T) = f[T]`` and ``b(T) = g[T]``: ``b(x) = a(1)``, ``b`` vanishes
    off right-sided trees, and for ``T = x . T'``

        b(T) = sum over open subtrees S of T' of a(shape S) * prod b(V)

    where ``V`` runs over the subtrees of ``T'`` hanging below the leaves of ``S``.
    """
    n = f.max_degree
    b: dict[PlanarTree, Fraction] = {}
    if n >= 1:
        b[X] = f[EMPTY]
    for d in range(2, n + 1):
        for tp in enumerate_prt(d - 1):
            total = Fraction(0)
            for s in enumerate_open_subtrees(tp):
                term = f[s.shape]
                if not term:
                    continue
                comps = remove_interior(tp, s)
                assert sum(c.tree.degree for c in comps) == tp.degree
                for c in comps:
                    term *= b.get(c.tree, 0)
                    if not term:
                        break
                total += term
            if total:
                b[PlanarTree((X, tp))] = total
    return TreeSeries._raw(n, b)


def decomposition_weight(f: TreeSeries, d) -> Fraction:
    """Product of ``f`` at the right factors of the pieces of ``d``."""
    w = Fraction(1)
    for t in d.weight_factors():
        w *= f[t]
        if not w:
            break
    return w


def solve_inversion_gamma(f: TreeSeries) -> TreeSeries:
    """Solve ``g = x . f(g)`` as a sum over right-sided decompositions."""
    n = f.max_degree
    b = {}
    for d in range(1, n + 1):
        for t in enumerate_right_sided(d):
            b[t] = sum((decomposition_weight(f, q) for q in enumerate_decompositions(t)), Fraction(0))
    return TreeSeries._raw(n, b)


def solve_inversion_iterate(f: TreeSeries, *, with_count: bool = False):
    """Solve ``g = x . f(g)`` by fixed-point iteration from ``g = 0``.

    Each pass fixes one more degree, so the iteration stabilises after at
    most ``max_degree`` passes.  With ``with_count`` the number of passes
    that produced the fixed point is returned too.
    """
    n = f.max_degree
    xs = x_series(n)
    g = zero(n)
    for k in range(n + 2):
        nxt = mul(xs, substitute(f, g))
        if nxt == g:
            return (g, k) if with_count else g
        g = nxt
    raise AssertionError("fixed-point iteration did not stabilise")


def compositional_inverse(h: TreeSeries) -> TreeSeries:
    """The series ``g`` of order 1 with ``h(g(x)) = x``.

    Requires ``h`` to have no constant term and a nonzero coefficient at ``x``.
    """
    if h[EMPTY]:
        raise SeriesError("compositional inverse needs a series without constant term")
    lead = h[X]
    if not lead:
        raise SeriesError("compositional inverse needs a nonzero coefficient at x")
    n = h.max_degree
    g: dict[PlanarTree, Fraction] = {}
    for d in range(1, n + 1):
        current = substitute(h, TreeSeries._raw(n, g))
        for t in enumerate_prt(d):
            target = 1 if t == X else 0
            value = (target - current[t]) / lead
            if value:
                g[t] = value
    return TreeSeries._raw(n, g)


def compositional_check(f: TreeSeries, g: TreeSeries) -> bool:
    """Whether ``(x . (1/f))(g(x)) = x`` up to ``max_degree``."""
    h = mul(x_series(f.max_degree), reciprocal(f))
    return substitute(h, g) == x_series(f.max_degree)


# ---------------------------------------------------------------- one variable


def abelianize(f: TreeSeries) -> list[Fraction]:
    """Coefficient sums by degree: the image under ``T -> t**deg(T)``."""
    out = [Fraction(0)] * (f.max_degree + 1)
    for t, v in f._coeffs.items():
        out[t.degree] += v
    return out


def poly_mul(p: Sequence, q: Sequence, n: int) -> list[Fraction]:
    """Product of coefficient lists, truncated after degree ``n``."""
    out = [Fraction(0)] * (n + 1)
    for i, a in enumerate(p[: n + 1]):
        if a:
            for j, b in enumerate(q[: n + 1 - i]):
                out[i + j] += a * b
    return out


def classical_lagrange(F: Sequence, n: int) -> list[Fraction]:
    """Coefficients of ``G = t F(G)`` up to ``t**n``, via ``[t^k]G = [u^(k-1)] F(u)^k / k``."""
    if n < 1:
        raise SeriesError("classical_lagrange needs n >= 1")
    F = [_as_fraction(c) for c in F]
    if len(F) < n:
        raise SeriesError(f"need at least {n} coefficients of F, got {len(F)}")
    G = [Fraction(0)] * (n + 1)
    power = [Fraction(1)]
    for k in range(1, n + 1):
        power = poly_mul(power, F, n - 1)
        G[k] = power[k - 1] / k
    return G
