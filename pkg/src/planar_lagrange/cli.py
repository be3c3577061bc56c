"""Command line front end.

Exit codes: 0 on success, 1 when the input is well formed but violates a
mathematical precondition (or a verification fails), 2 on usage, parse or
file errors.  Data goes to standard output, diagnostics to standard error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import flags, luk, series, trees, verify
from .errors import DomainError, ParseError

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


def _emit(args, text_lines, payload):
    if args.json:
        sys.stdout.write(json.dumps(payload, ensure_ascii=False) + "\n")
    else:
        for line in text_lines:
            sys.stdout.write(f"{line}\n")


# ---------------------------------------------------------------- trees


def cmd_trees(args):
    cap = sys.maxsize if args.unsafe_size else None
    enum = {
        "pt": trees.enumerate_pt,
        "prt": trees.enumerate_prt,
        "right-sided": trees.enumerate_right_sided,
    }[args.kind]
    items = enum(args.size, cap)
    rendered = [trees.render_tree(t, args.format) for t in items]
    if args.format == "dot":
        lines = [str(len(items))] + [r.rstrip("\n") for r in rendered]
    else:
        lines = [str(len(items))] + rendered
    _emit(args, lines, {"kind": args.kind, "size": args.size, "count": len(items), "trees": rendered})


# ---------------------------------------------------------------- words


def _word(args):
    if args.nat is not None:
        return luk.parse_nat_word(args.nat)
    return luk.parse_tree_word(args.trees)


def cmd_luk(args):
    action = args.action
    if action == "encode-tree":
        t = trees.parse_tree(args.tree)
        w = luk.render_word(luk.encode_pt(t))
        _emit(args, [w], {"tree": trees.render_tree(t), "word": w})
        return
    w = _word(args)
    text = luk.render_word(w)
    if action == "check":
        ok, r = luk.is_product_of_luk(w)
        d = luk.delta(w)
        is_luk = luk.is_luk(w)
        lines = [f"delta={d}", f"luk={str(is_luk).lower()}", f"product={str(ok).lower()}" + (f" r={r}" if ok else "")]
        _emit(args, lines, {"word": text, "delta": d, "luk": is_luk, "product_of_luk": ok, "factors": r})
    elif action == "factor":
        parts = [luk.render_word(p) for p in luk.factor(w)]
        _emit(args, parts, {"word": text, "factors": parts})
    elif action == "height":
        h = luk.height(w)
        _emit(args, [str(h)], {"word": text, "height": h})
    elif action == "decode-word":
        t = trees.render_tree(luk.decode_pt(w))
        _emit(args, [t], {"word": text, "tree": t})


# ---------------------------------------------------------------- flags


def _right_sided_tree(text):
    t = trees.parse_tree(text)
    if not trees.is_right_sided(t):
        raise DomainError(f"{trees.render_tree(t)} is not right-sided")
    return t


def _stages_text(sel_list):
    return " | ".join("{" + ", ".join(repr(p) for p in s.to_strings()) + "}" for s in sel_list)


def cmd_flags(args):
    t = _right_sided_tree(args.tree)
    fl = flags.enumerate_flags(t)
    ds = flags.enumerate_decompositions(t)
    index = {d: i for i, d in enumerate(ds, 1)}
    lines = [str(len(fl))]
    items = []
    for i, f in enumerate(fl, 1):
        word = luk.render_word(flags.encode_flag(f))
        partner = index[flags.flag_to_decomposition(f)]
        lines.append(f"{i}: {_stages_text(f.stages)}  word={word}  decomposition={partner}")
        items.append({"index": i, "stages": [s.to_strings() for s in f.stages], "word": word, "decomposition": partner})
    _emit(args, lines, {"tree": trees.render_tree(t), "count": len(fl), "flags": items})


def cmd_decomps(args):
    t = _right_sided_tree(args.tree)
    fl = flags.enumerate_flags(t)
    ds = flags.enumerate_decompositions(t)
    index = {f: i for i, f in enumerate(fl, 1)}
    lines = [str(len(ds))]
    items = []
    for i, d in enumerate(ds, 1):
        partner = index[flags.decomposition_to_flag(d)]
        lines.append(f"{i}: {_stages_text(d.ordered_pieces)}  flag={partner}")
        items.append({"index": i, "pieces": [p.to_strings() for p in d.ordered_pieces], "flag": partner})
    _emit(args, lines, {"tree": trees.render_tree(t), "count": len(ds), "decompositions": items})


def cmd_flag_word(args):
    t = _right_sided_tree(args.tree)
    fl = flags.enumerate_flags(t)
    if not 1 <= args.index <= len(fl):
        raise DomainError(f"flag index must be in 1..{len(fl)}")
    word = luk.render_word(flags.encode_flag(fl[args.index - 1]))
    _emit(args, [word], {"tree": trees.render_tree(t), "index": args.index, "word": word})


# ---------------------------------------------------------------- series


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return series.loads(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _write_series(args, s):
    text = series.dumps(s)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


SOLVERS = {
    "recurrence": series.solve_inversion_recurrence,
    "gamma": series.solve_inversion_gamma,
    "iterate": series.solve_inversion_iterate,
}


def cmd_series(args):
    f = _load(args.f)
    action = args.action
    if action == "invert":
        g = SOLVERS[args.method](f)
        if args.check:
            for name, solver in SOLVERS.items():
                if name != args.method and solver(f) != g:
                    raise DomainError(f"method {name!r} disagrees with {args.method!r}")
            if series.mul(series.x_series(f.max_degree), series.substitute(f, g)) != g:
                raise DomainError("fixed-point identity g = x f(g) fails")
            print("check: three methods agree; g = x f(g) holds", file=sys.stderr)
        _write_series(args, g)
    elif action == "recip":
        _write_series(args, series.reciprocal(f))
    elif action == "subst":
        _write_series(args, series.substitute(f, _load(_need(args, "g"))))
    elif action == "mul":
        _write_series(args, series.mul(f, _load(_need(args, "h"))))
    elif action == "abelianize":
        coeffs = [str(c) for c in series.abelianize(f)]
        _emit(args, [" ".join(coeffs)], {"max_degree": f.max_degree, "coefficients": coeffs})


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise _UsageError(f"series {args.action} needs --{name}")
    return value


class _UsageError(Exception):
    pass


# ---------------------------------------------------------------- verify


def cmd_verify(args):
    results = verify.run(args.suite, args.max_degree, args.seed)
    ok = all(c.passed for checks in results.values() for c in checks)
    lines = []
    for name, checks in results.items():
        for c in checks:
            lines.append(f"{'PASS' if c.passed else 'FAIL'} {name}/{c.name}: {c.detail}")
    lines.append("all checks passed" if ok else "verification FAILED")
    payload = {
        "suite": args.suite,
        "max_degree": args.max_degree,
        "seed": args.seed,
        "results": {name: [c.to_json() for c in checks] for name, checks in results.items()},
        "passed": ok,
    }
    _emit(args, lines, payload)
    return EXIT_OK if ok else EXIT_DOMAIN


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = argparse.ArgumentParser(
        prog="planar-lagrange",
        description="Planar trees, Łukasiewicz words, flags and planar-tree Lagrange inversion.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trees", parents=[common], help="enumerate trees")
    p.add_argument("--kind", choices=["pt", "prt", "right-sided"], required=True)
    p.add_argument("--size", type=int, required=True, help="vertices for pt, leaves otherwise")
    p.add_argument("--format", choices=["literal", "arity_word", "dot"], default="literal")
    p.add_argument("--unsafe-size", action="store_true", help="lift the enumeration cap")
    p.set_defaults(func=cmd_trees)

    p = sub.add_parser("luk", parents=[common], help="Łukasiewicz word tools")
    p.add_argument("action", choices=["check", "factor", "height", "encode-tree", "decode-word"])
    p.add_argument("tree", nargs="?", help="tree literal for encode-tree")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--nat", help='natural-number word, e.g. "2 0 0"')
    g.add_argument("--trees", help='tree word, e.g. "(x x); 1; 1"')
    p.set_defaults(func=cmd_luk)

    p = sub.add_parser("flags", parents=[common], help="list the flags of a right-sided tree")
    p.add_argument("tree")
    p.set_defaults(func=cmd_flags)

    p = sub.add_parser("decomps", parents=[common], help="list the decompositions of a right-sided tree")
    p.add_argument("tree")
    p.set_defaults(func=cmd_decomps)

    p = sub.add_parser("flag-word", parents=[common], help="word of the flag with the given index")
    p.add_argument("tree")
    p.add_argument("index", type=int, help="1-based index as listed by 'flags'")
    p.set_defaults(func=cmd_flag_word)

    p = sub.add_parser("series", parents=[common], help="tree series arithmetic and inversion")
    p.add_argument("action", choices=["invert", "recip", "subst", "mul", "abelianize"])
    p.add_argument("--f", required=True, help="series file")
    p.add_argument("--g", help="inner series file for subst")
    p.add_argument("--h", help="right factor file for mul")
    p.add_argument("--method", choices=list(SOLVERS), default="recurrence")
    p.add_argument("--check", action="store_true", help="cross-check invert against the other methods")
    p.add_argument("--out", help="write the result here instead of standard output")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("verify", parents=[common], help="run the self-check suites")
    p.add_argument("suite", nargs="?", default="all", choices=["all", "luk", "bijections", "inversion"])
    p.add_argument("--max-degree", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "luk":
        if args.action == "encode-tree" and args.tree is None:
            parser.error("luk encode-tree needs a tree literal")
        if args.action != "encode-tree" and args.nat is None and args.trees is None:
            parser.error(f"luk {args.action} needs --nat or --trees")
        if args.action == "decode-word" and args.nat is None:
            parser.error("luk decode-word needs --nat")
    try:
        code = args.func(args)
    except _UsageError as exc:
        parser.error(str(exc))
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
