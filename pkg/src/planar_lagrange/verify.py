"""Self-checks of the library's identities, bijections and counts.

Each suite returns a list of :class:`Check` results; the command line
exposes them as ``verify``.  The counting oracles here are closed
recurrences, independent of the enumerators they check.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from fractions import Fraction
from itertools import product

from . import flags, luk, series, trees
from .series import TreeSeries

NAT_LETTERS = 5  # letters λ(0)..λ(4)
WORD_LENGTH = 9


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self):
        return asdict(self)


# ---------------------------------------------------------------- oracles


def catalan_numbers(n: int) -> list[int]:
    """C_0..C_n from C_k = sum C_i C_(k-1-i)."""
    c = [1]
    for k in range(1, n + 1):
        c.append(sum(c[i] * c[k - 1 - i] for i in range(k)))
    return c


def super_catalan_numbers(n: int) -> list[int]:
    """s_1..s_n from (k+1) s_(k+1) = 3(2k-1) s_k - (k-2) s_(k-1), s_1 = s_2 = 1."""
    s = [0, 1, 1]
    for k in range(2, n):
        s.append((3 * (2 * k - 1) * s[k] - (k - 2) * s[k - 1]) // (k + 1))
    return s[1 : n + 1]


def random_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 9))


def random_series(rng: random.Random, max_degree: int, support_degree: int = 4, *, unit_constant=False) -> TreeSeries:
    """Random rational coefficients on every reduced tree of degree <= ``support_degree``."""
    coeffs = {t: random_fraction(rng) for t in series.all_trees(min(support_degree, max_degree))}
    if unit_constant:
        while not coeffs[trees.EMPTY]:
            coeffs[trees.EMPTY] = random_fraction(rng)
    return TreeSeries(max_degree, coeffs)


def closed_form_values(f: TreeSeries) -> dict[str, Fraction]:
    """Hand-derived coefficients of the solution of g = x f(g) on small trees."""
    a = f.coefficient
    a1, ax, ax2, ax3, axx2 = a("1"), a("x"), a("(x x)"), a("(x x x)"), a("(x (x x))")
    return {
        "x": a1,
        "(x x)": a1 * ax,
        "(x (x x))": a1 * ax**2 + a1**2 * ax2,
        "(x (x x x))": a1**3 * ax3,
        "(x (x (x x)))": a1 * ax**3 + 2 * a1**2 * ax * ax2 + a1**3 * axx2,
    }


# ---------------------------------------------------------------- suites


def _all_words(max_len):
    letters = [luk.nat(i) for i in range(NAT_LETTERS)]
    for n in range(1, max_len + 1):
        yield from product(letters, repeat=n)


def luk_suite(seed: int = 0, word_length: int = WORD_LENGTH) -> list[Check]:
    out = []
    luk_words = set()
    monoid_words = []
    for w in _all_words(word_length):
        if luk.is_luk(w):
            luk_words.add(w)
        ok, _ = luk.is_product_of_luk(w)
        if ok:
            monoid_words.append(w)

    bad = [w for w in luk_words if any(w[:i] in luk_words for i in range(1, len(w)))]
    out.append(Check("prefix_code", not bad, f"{len(luk_words)} words, {len(bad)} with a Łukasiewicz prefix"))

    bad = [w for w in luk_words if luk.is_product_of_luk(w) != (True, 1)]
    out.append(Check("luk_implies_single_factor", not bad, f"{len(bad)} failures"))

    bad = 0
    for w in monoid_words:
        parts = luk.factor(w)
        if sum(parts, ()) != w or not all(p in luk_words for p in parts):
            bad += 1
    out.append(Check("factorization_exhaustive", not bad, f"{len(monoid_words)} words, {bad} failures"))

    rng = random.Random(seed)
    pool = sorted(luk_words, key=lambda w: [a.degree for a in w])
    bad = 0
    for _ in range(1000):
        chosen = [rng.choice(pool) for _ in range(rng.randint(1, 5))]
        if luk.factor(sum(chosen, ())) != chosen:
            bad += 1
    out.append(Check("factorization_random", not bad, f"1000 concatenations, {bad} failures"))

    bad = 0
    for w in luk_words:
        head, parts = luk.head_decompose(w)
        if luk.luk_compose(head, parts) != w:
            bad += 1
    out.append(Check("head_decomposition_roundtrip", not bad, f"{bad} failures"))

    pts = [t for n in range(1, 9) for t in trees.enumerate_pt(n)]
    bad = [t for t in pts if luk.decode_pt(luk.encode_pt(t)) != t]
    out.append(Check("pt_codec_decode_encode", not bad, f"{len(pts)} trees"))
    bad = [w for w in luk_words if luk.encode_pt(luk.decode_pt(w)) != w]
    out.append(Check("pt_codec_encode_decode", not bad, f"{len(luk_words)} words"))
    bad = [t for t in pts if luk.height(luk.encode_pt(t)) != trees.max_leaf_depth(t)]
    out.append(Check("height_identity", not bad, f"{len(pts)} trees"))

    pt_counts = [len(trees.enumerate_pt(n)) for n in range(1, 7)]
    expect = catalan_numbers(5)
    out.append(Check("pt_counts", pt_counts == expect, f"{pt_counts} vs {expect}"))
    prt_counts = [len(trees.enumerate_prt(d)) for d in range(1, 7)]
    expect = super_catalan_numbers(6)
    out.append(Check("prt_counts", prt_counts == expect, f"{prt_counts} vs {expect}"))
    return out


def bijection_suite(max_degree: int = 5) -> list[Check]:
    out = []
    hosts = [t for d in range(1, max_degree + 1) for t in trees.enumerate_right_sided(d)]
    count_bad, fd_bad, df_bad, codec_bad, luk_bad = [], [], [], [], []
    words = {}
    for t in hosts:
        fl = flags.enumerate_flags(t)
        ds = flags.enumerate_decompositions(t)
        if len(fl) != len(ds):
            count_bad.append(t)
        if sorted((flags.flag_to_decomposition(f) for f in fl), key=flags.Decomposition.sort_key) != ds:
            fd_bad.append(t)
        if any(flags.flag_to_decomposition(flags.decomposition_to_flag(d)) != d for d in ds):
            df_bad.append(t)
        for f in fl:
            w = flags.encode_flag(f)
            if not luk.is_luk(w):
                luk_bad.append(f)
            if flags.decode_flag(w) != f:
                codec_bad.append(f)
            words.setdefault(w, []).append(f)
    n_flags = sum(len(v) for v in words.values()) if words else 0
    out.append(Check("flag_decomposition_counts", not count_bad, f"{len(hosts)} hosts, {len(count_bad)} mismatches"))
    out.append(Check("flag_to_decomposition_bijective", not fd_bad, f"{len(fd_bad)} hosts fail"))
    out.append(Check("decomposition_roundtrip", not df_bad, f"{len(df_bad)} hosts fail"))
    out.append(Check("flag_codec_roundtrip", not codec_bad, f"{n_flags} flags"))
    out.append(Check("flag_words_are_luk", not luk_bad, f"{len(luk_bad)} failures"))
    dupes = [w for w, fs in words.items() if len(fs) > 1]
    out.append(Check("flag_codec_injective", not dupes, f"{len(words)} distinct words"))

    # every Łukasiewicz word over trees of degree < max_degree with at most
    # max_degree letters decodes to a host of degree = word length
    letters = [luk.tree_letter(t) for t in series.all_trees(max_degree - 1)]
    all_luk = list(_luk_words_over(letters, max_degree))
    missing = [w for w in all_luk if w not in words]
    out.append(Check("flag_codec_surjective_slice", not missing, f"{len(all_luk)} words, {len(missing)} missed"))
    return out


def _luk_words_over(letters, max_len):
    """Łukasiewicz words of length <= max_len over ``letters``, by prefix search."""

    def grow(prefix, weight):
        for a in letters:
            w = weight + a.degree - 1
            word = prefix + (a,)
            if w == -1:
                yield word
            elif w >= 0 and len(word) < max_len and w + 1 <= max_len - len(word):
                yield from grow(word, w)

    yield from grow((), 0)


def inversion_suite(max_degree: int = 6, seed: int = 0, samples: int = 20) -> list[Check]:
    out = []
    rng = random.Random(seed)
    n = max_degree
    fs = [random_series(rng, n) for _ in range(samples)]
    agree, fixed, support = 0, 0, 0
    for f in fs:
        g1 = series.solve_inversion_recurrence(f)
        g2 = series.solve_inversion_gamma(f)
        g3 = series.solve_inversion_iterate(f)
        agree += g1 == g2 == g3
        fixed += g1 == series.mul(series.x_series(n), series.substitute(f, g1))
        support += all(trees.is_right_sided(t) for t in g1.support())
    out.append(Check("triple_agreement", agree == samples, f"{agree}/{samples} at max_degree {n}"))
    out.append(Check("fixed_point_identity", fixed == samples, f"{fixed}/{samples}"))
    out.append(Check("right_sided_support", support == samples, f"{support}/{samples}"))

    recip, comp = 0, 0
    for _ in range(samples):
        f = random_series(rng, n, unit_constant=True)
        recip += series.mul(f, series.reciprocal(f)) == series.one(n)
        h = series.mul(series.x_series(n), series.reciprocal(f))
        g = series.compositional_inverse(h)
        comp += series.substitute(h, g) == series.x_series(n) and series.substitute(g, h) == series.x_series(n)
    out.append(Check("reciprocal_identity", recip == samples, f"{recip}/{samples}"))
    out.append(Check("compositional_inverse", comp == samples, f"{comp}/{samples}"))

    closed = 0
    for _ in range(50):
        f = random_series(rng, 4)
        g = series.solve_inversion_recurrence(f)
        closed += all(g[t] == v for t, v in closed_form_values(f).items())
    out.append(Check("closed_form_values", closed == 50, f"{closed}/50 specializations"))

    classical = 0
    for f in fs:
        f7 = TreeSeries(n + 1, f.items())
        g = series.solve_inversion_recurrence(f7)
        classical += series.abelianize(g) == series.classical_lagrange(series.abelianize(f7), n + 1)
    out.append(Check("classical_reduction", classical == samples, f"{classical}/{samples} up to t^{n + 1}"))

    ones = TreeSeries(n, {t: 1 for t in series.all_trees(min(5, n))})
    sums = series.abelianize(series.solve_inversion_gamma(ones))[1:5]
    out.append(Check("all_ones_sums", sums == [1, 1, 2, 7], f"{[str(v) for v in sums]}"))
    return out


SUITES = {
    "luk": lambda max_degree, seed: luk_suite(seed),
    "bijections": lambda max_degree, seed: bijection_suite(max_degree),
    "inversion": lambda max_degree, seed: inversion_suite(max_degree, seed),
}


def run(suite: str = "all", max_degree: int = 6, seed: int = 0) -> dict[str, list[Check]]:
    names = list(SUITES) if suite == "all" else [suite]
    return {name: SUITES[name](max_degree, seed) for name in names}
