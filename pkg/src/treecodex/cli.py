"""Command-line interface: ``treecodex <subcommand> [options]``.

Subcommands
-----------
encode     tree (``--tree``/``--file``) or forest (``--forest``) -> code
decode     code (``--code``, with ``--n`` for the empty code) or forest code -> tree
random     uniformly random trees (``--n``, ``--count``, ``--seed``)
enumerate  every tree (or every code with ``--codes``) for a small ``--n``
verify     exhaustive invariant checks, one ``PASS|FAIL <check> <scope> <ms>`` line each
stats      ascent/descent degree table from the weighted Blob Code
compare    the four codes of one tree side by side
trace      step-by-step involution walk of a matrix codec

Exit status: 0 on success, 1 on a domain error (or a failed check), 2 on a
usage error.  ``TREECODEX_STEP_BUDGET`` overrides the walk step budget.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence

from . import blob
from .codecs import CODECS, MATRIX_CODECS, get_codec
from .core import (
    ENUMERATION_BOUND,
    RootedTree,
    enumerate_codes,
    enumerate_trees,
    format_code,
    format_tree,
    parse_code,
    parse_tree,
    random_tree,
)
from .errors import StepBudgetExceeded, TreeCodexError
from .forests import FOREST_CODECS, forest_decode, forest_encode, parse_forest, parse_forest_code
from .pipelines import matrix_decode_walk, matrix_encode_walk
from .suite import CHECKS, verify_suite

#: Matrix walks are exponential; refuse anything larger.
MATRIX_BOUND = 8
METHODS = ("fast", "surgery", "matrix")


class UsageError(Exception):
    pass


def _read_tree(args: argparse.Namespace) -> RootedTree:
    if args.tree is not None and args.file is not None:
        raise UsageError("give either --tree or --file, not both")
    if args.file is not None:
        with open(args.file, encoding="utf-8") as fh:
            return parse_tree(fh.read())
    if args.tree is None:
        raise UsageError("a tree is required (--tree or --file)")
    return parse_tree(args.tree)


def _check_matrix(codec: str, n: int) -> None:
    if codec not in MATRIX_CODECS:
        raise UsageError(f"--method matrix is available for {', '.join(MATRIX_CODECS)} only")
    if n > MATRIX_BOUND:
        raise UsageError(f"--method matrix refuses n > {MATRIX_BOUND} (walks grow exponentially)")


def _method(args: argparse.Namespace) -> str:
    if args.method is not None:
        return args.method
    return "fast"


# ------------------------------------------------------------------ commands


def cmd_encode(args: argparse.Namespace) -> int:
    if args.forest is not None:
        if args.tree is not None or args.file is not None:
            raise UsageError("--forest cannot be combined with --tree/--file")
        if args.codec not in FOREST_CODECS:
            raise UsageError(f"forest codes exist for {', '.join(FOREST_CODECS)} only")
        print(forest_encode(parse_forest(args.forest), args.codec))
        return 0
    t = _read_tree(args)
    method = _method(args)
    if args.weighted:
        if args.codec != "blob":
            raise UsageError("--weighted applies to the blob codec only")
        print(blob.format_weighted(blob.blob_encode_weighted(t)))
        return 0
    if method == "matrix":
        _check_matrix(args.codec, t.n)
        code, _ = matrix_encode_walk(t, args.codec)
    elif method == "surgery":
        c = get_codec(args.codec)
        code = (c.encode_surgery or c.encode)(t)
    else:
        code = get_codec(args.codec).encode(t)
    print(format_code(code))
    return 0


def cmd_decode(args: argparse.Namespace) -> int:
    if args.forest_code is not None:
        if args.code is not None:
            raise UsageError("--forest-code cannot be combined with --code")
        if args.k is None:
            raise UsageError("--forest-code needs --k (the number of roots)")
        if args.codec not in FOREST_CODECS:
            raise UsageError(f"forest codes exist for {', '.join(FOREST_CODECS)} only")
        print(forest_decode(parse_forest_code(args.forest_code, args.k), args.codec))
        return 0
    if args.code is None:
        raise UsageError("a code is required (--code)")
    if args.weighted:
        if args.codec != "blob":
            raise UsageError("--weighted applies to the blob codec only")
        print(format_tree(blob.blob_decode_weighted(blob.parse_weighted(args.code))))
        return 0
    code = parse_code(args.code)
    if not code and args.n is None:
        raise UsageError("the empty code needs --n")
    n = len(code) + 1 if args.n is None else args.n
    if args.n is not None and len(code) != n - 1:
        raise UsageError(f"--n {n} expects a code of length {n - 1}, got {len(code)}")
    method = _method(args)
    if method == "matrix":
        _check_matrix(args.codec, n)
        t, _ = matrix_decode_walk(code, args.codec)
    elif method == "surgery":
        c = get_codec(args.codec)
        t = (c.decode_surgery or c.decode)(code, n)
    else:
        t = get_codec(args.codec).decode(code, n)
    print(format_tree(t))
    return 0


def cmd_random(args: argparse.Namespace) -> int:
    import numpy as np

    rng = np.random.default_rng(args.seed)
    for _ in range(args.count):
        print(format_tree(random_tree(args.n, rng)))
    return 0


def cmd_enumerate(args: argparse.Namespace) -> int:
    if args.codes:
        for code in enumerate_codes(args.n):
            print(format_code(code))
    else:
        for t in enumerate_trees(args.n, ENUMERATION_BOUND):
            print(format_tree(t))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    checks = [c.strip() for c in args.checks.split(",")] if args.checks else None
    try:
        results = verify_suite(args.max_n, checks, jobs=args.jobs)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    failed = False
    for r in results:
        print(r.line())
        if not r.passed:
            failed = True
            print(f"  counterexample: {r.counterexample}")
    return 1 if failed else 0


def cmd_stats(args: argparse.Namespace) -> int:
    t = _read_tree(args)
    tokens = blob.blob_encode_weighted(t)
    table = blob.code_stats(tokens)
    print(f"weighted code: {blob.format_weighted(tokens)}")
    print(f"{'vertex':>6} {'I_A':>4} {'I_D':>4} {'O_A':>4} {'O_D':>4}")
    for v in range(t.n + 1):
        ia, id_, oa, od = table.row(v)
        print(f"{v:>6} {ia:>4} {id_:>4} {oa:>4} {od:>4}")
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    t = _read_tree(args)
    print(f"{'method':<10} code")
    for name in ("blob", "happy", "dandelion", "prufer"):
        print(f"{name:<10} {format_code(CODECS[name].encode(t))}")
    return 0


def cmd_trace(args: argparse.Namespace) -> int:
    if (args.tree is None and args.file is None) == (args.code is None):
        raise UsageError("trace needs exactly one of --tree/--file or --code")
    if args.code is not None:
        code = parse_code(args.code)
        n = len(code) + 1 if args.n is None else args.n
        if len(code) != n - 1:
            raise UsageError(f"--n {n} expects a code of length {n - 1}")
        _check_matrix(args.codec, n)
        result, walk = matrix_decode_walk(code, args.codec, trace=True)
        out = format_tree(result)
    else:
        t = _read_tree(args)
        _check_matrix(args.codec, t.n)
        result, walk = matrix_encode_walk(t, args.codec, trace=True)
        out = format_code(result)
    for line in walk.trace:
        print(line)
    print(f"RESULT {out}")
    return 0


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="treecodex", description="Bijective codes for labelled rooted trees.")
    sub = p.add_subparsers(dest="command", required=True)

    def tree_opts(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--tree", help='successor list "s1 s2 ... sn" (root is 0)')
        sp.add_argument("--file", help="read the successor list from a file")

    def codec_opt(sp: argparse.ArgumentParser, choices: Sequence[str] = tuple(CODECS)) -> None:
        sp.add_argument("--codec", required=True, choices=list(choices))

    sp = sub.add_parser("encode", help="tree or forest -> code")
    codec_opt(sp)
    tree_opts(sp)
    sp.add_argument("--forest", help='forest "k=K; s1 ... sm" with roots -1..-K')
    sp.add_argument("--method", choices=METHODS)
    sp.add_argument("--weighted", action="store_true", help="blob only: ascent-weighted tokens")
    sp.set_defaults(func=cmd_encode)

    sp = sub.add_parser("decode", help="code -> tree")
    codec_opt(sp)
    sp.add_argument("--code", help='code "c1,c2,..." (empty string for n=1)')
    sp.add_argument("--n", type=int, help="number of non-root vertices (needed for the empty code)")
    sp.add_argument("--forest-code", help='forest code "r | c1,c2,..."')
    sp.add_argument("--k", type=int, help="number of roots for --forest-code")
    sp.add_argument("--method", choices=METHODS)
    sp.add_argument("--weighted", action="store_true", help="blob only: parse ascent-weighted tokens")
    sp.set_defaults(func=cmd_decode)

    sp = sub.add_parser("random", help="uniformly random trees")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--seed", type=int, default=None)
    sp.set_defaults(func=cmd_random)

    sp = sub.add_parser("enumerate", help="all trees (or codes) for small n")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--codes", action="store_true")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("verify", help="exhaustive invariant checks")
    sp.add_argument("--checks", help=f"comma-separated subset of {','.join(CHECKS)}")
    sp.add_argument("--max-n", type=int, default=4)
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("stats", help="ascent/descent degrees from the weighted Blob Code")
    tree_opts(sp)
    sp.set_defaults(func=cmd_stats)

    sp = sub.add_parser("compare", help="all four codes of one tree")
    tree_opts(sp)
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("trace", help="print an involution walk step by step")
    codec_opt(sp, MATRIX_CODECS)
    tree_opts(sp)
    sp.add_argument("--code")
    sp.add_argument("--n", type=int)
    sp.set_defaults(func=cmd_trace)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2
    except (TreeCodexError, StepBudgetExceeded, OSError) as exc:
        print(f"treecodex: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
