"""Command-line interface.

Commands: eval, dual, word, unword, shuffle, wsum, psibar, poset-expand,
dim, pslq, verify.  Reports go to stdout (json by default, csv/text via
--format); diagnostics to stderr.  Exit codes: 0 ok, 2 parse/usage error,
3 precision failure, 4 verification failure, 1 internal error.

The value cache defaults to ./amtv-cache.jsonl (override with --cache or
the AMTV_CACHE environment variable; --cache "" disables persistence).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Optional

import mpmath as mp

from . import catalog, relations
from .cache import ValueCache
from .errors import CacheIOError, PrecisionError
from .evaluator import eval_T, eval_word
from .hp import HPReal
from .posets import expand_poset, poset_from_cover, psi_bar_quadrature, psi_bar_symbolic
from .pslq import pslq
from .series import weighted_sum_symbolic
from .words import (
    AdmissibilityError,
    NotationError,
    dual,
    format_tindex,
    format_word,
    from_word,
    parse_tindex,
    parse_word,
    shuffle,
    to_word,
    word_sort_key,
)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_PARSE = 2
EXIT_PRECISION = 3
EXIT_VERIFY = 4

DEFAULT_DIGITS = 40
DEFAULT_HEIGHT = 10_000
DEFAULT_CACHE = "./amtv-cache.jsonl"


def _open_cache(path: Optional[str]) -> Optional[ValueCache]:
    if path == "":
        return ValueCache(None)
    return ValueCache(path or os.environ.get("AMTV_CACHE", DEFAULT_CACHE))


def format_report(report: Dict, fmt: str) -> str:
    """Render a report dict: lossless json, flattened csv, aligned text."""
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2, default=str)
    if fmt == "csv":
        import csv
        import io

        buf = io.StringIO()
        rows = report.get("rows") or report.get("relations")
        if rows:
            keys = sorted({k for r in rows for k in r})
            writer = csv.DictWriter(buf, fieldnames=keys)
            writer.writeheader()
            for r in rows:
                writer.writerow({k: r.get(k, "") for k in keys})
        else:
            writer = csv.writer(buf)
            for k in sorted(report):
                writer.writerow([k, report[k]])
        return buf.getvalue().rstrip("\n")
    if fmt == "text":
        lines = []
        for k in sorted(report):
            v = report[k]
            if isinstance(v, list) and v and isinstance(v[0], dict):
                lines.append(f"{k}:")
                for r in v:
                    lines.append("  " + "  ".join(f"{kk}={r[kk]}" for kk in sorted(r)))
            else:
                lines.append(f"{k}: {v}")
        return "\n".join(lines)
    raise NotationError(f"unknown format {fmt!r}")


def _cmd_eval(args, cache) -> Dict:
    ix = parse_tindex(args.index)
    hit = None
    if cache is not None:
        _, w = to_word(ix)
        hit = cache.get(format_word(w), args.digits)
    val = eval_T(ix, args.digits, cache)
    with mp.workdps(args.digits + 10):
        return {
            "command": "eval",
            "index": format_tindex(ix),
            "digits": args.digits,
            "value": mp.nstr(val.value, args.digits, strip_zeros=False),
            "err": mp.nstr(val.err, 3),
            "cache_hit": hit is not None,
        }


def _cmd_dual(args, cache) -> Dict:
    ix = parse_tindex(args.index)
    return {"command": "dual", "index": format_tindex(ix), "dual": format_tindex(dual(ix))}


def _cmd_word(args, cache) -> Dict:
    sign, w = to_word(parse_tindex(args.index))
    return {"command": "word", "index": args.index, "sign": sign, "word": format_word(w)}


def _cmd_unword(args, cache) -> Dict:
    sign, ix = from_word(parse_word(args.word))
    return {"command": "unword", "word": args.word, "sign": sign, "index": format_tindex(ix)}


def _cmd_shuffle(args, cache) -> Dict:
    fs = shuffle(parse_word(args.u), parse_word(args.v))
    terms = {format_word(w): int(c) for w, c in sorted(fs, key=lambda t: word_sort_key(t[0]))}
    return {"command": "shuffle", "u": args.u, "v": args.v, "terms": terms}


def _cmd_wsum(args, cache) -> Dict:
    fs = weighted_sum_symbolic(args.k, args.r, args.l)
    out = {
        "command": "wsum",
        "k": args.k,
        "r": args.r,
        "l": args.l,
        "terms": {format_tindex(ix): str(c) for ix, c in sorted(fs, key=lambda t: format_tindex(t[0]))},
    }
    if not args.symbolic:
        from .evaluator import eval_tsum

        val = eval_tsum(fs, args.digits, cache)
        with mp.workdps(args.digits + 10):
            out["value"] = mp.nstr(val.value, args.digits, strip_zeros=False)
            out["err"] = mp.nstr(val.err, 3)
            out["digits"] = args.digits
    return out


def _cmd_psibar(args, cache) -> Dict:
    ks = tuple(int(t) for t in args.ks.split(","))
    p = args.s - 1
    if p < 0:
        raise NotationError("s must be a positive integer")
    fs = psi_bar_symbolic(ks, p)
    out = {
        "command": "psibar",
        "ks": list(ks),
        "s": args.s,
        "terms": {format_tindex(ix): str(c) for ix, c in sorted(fs, key=lambda t: format_tindex(t[0]))},
    }
    if not args.symbolic:
        from .evaluator import eval_tsum

        val = eval_tsum(fs, args.digits, cache)
        with mp.workdps(args.digits + 10):
            out["value"] = mp.nstr(val.value, args.digits, strip_zeros=False)
            out["err"] = mp.nstr(val.err, 3)
            out["digits"] = args.digits
    if args.quadrature:
        q = psi_bar_quadrature(ks, p, min(args.digits, 12))
        out["quadrature"] = {"value": q.value, "bound": q.bound}
    return out


def _cmd_poset_expand(args, cache) -> Dict:
    spec = args.poset
    if spec.startswith("@"):
        with open(spec[1:], "r", encoding="utf-8") as fh:
            spec = fh.read()
    try:
        data = json.loads(spec)
        labels = {int(k): int(v) for k, v in data["labels"].items()}
        cover = [(int(a), int(b)) for a, b in data.get("cover", [])]
    except (ValueError, KeyError, TypeError) as exc:
        raise NotationError(f"bad poset JSON: {exc}") from exc
    X = poset_from_cover(tuple(sorted(labels)), cover, labels)
    fs = expand_poset(X)
    return {
        "command": "poset-expand",
        "terms": {format_word(w): int(c) for w, c in sorted(fs, key=lambda t: word_sort_key(t[0]))},
    }


def _warm_words(keys: List[str], digits: int, jobs: int, cache) -> None:
    if jobs <= 1 or cache is None:
        return
    todo = [k for k in keys if cache.get(k, digits) is None]
    if not todo:
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for key, claimed, re_s, im_s in pool.map(
            _eval_word_worker, [(k, digits) for k in todo]
        ):
            from .hp import HPComplex

            with mp.workdps(claimed + 10):
                cache.put(key, claimed, HPComplex(mp.mpf(re_s), mp.mpf(im_s), mp.mpf(10) ** (-claimed)))


def _eval_word_worker(job):
    key, digits = job
    v = eval_word(parse_word(key), digits)
    with mp.workdps(digits + 10):
        claimed = digits if v.err == 0 else max(digits, int(mp.floor(-mp.log10(v.err))))
        return key, claimed, mp.nstr(v.re, claimed + 10, strip_zeros=False), mp.nstr(
            v.im, claimed + 10, strip_zeros=False
        )


def _cmd_dim(args, cache) -> Dict:
    keys = []
    for ix in relations.scan_candidates(args.weight):
        keys.append(format_word(to_word(ix)[1]))
    _warm_words(keys, args.digits, args.jobs, cache)
    report = relations.find_basis(args.weight, args.digits, args.height, cache)
    return {"command": "dim", **report.to_json()}


def _cmd_pslq(args, cache) -> Dict:
    with mp.workdps(args.digits + 10):
        xs = [mp.mpf(x) for x in args.values]
        rel = pslq(xs, args.digits, args.height)
        out: Dict = {
            "command": "pslq",
            "digits": args.digits,
            "height": args.height,
            "relation": rel,
        }
        if rel is not None:
            resid = abs(mp.fsum(c * x for c, x in zip(rel, xs)))
            out["residual"] = mp.nstr(resid, 3)
        else:
            out["excluded"] = f"no relation of height <= {args.height} at {args.digits} digits"
        return out


def _cmd_verify(args, cache) -> Dict:
    rows = catalog.SUITES[args.suite][0]() if args.suite in catalog.SUITES else ()
    keys = []
    for row in rows:
        exprs = [row.lhs, row.rhs] + (list(row.variants.values()) if row.variants else [])
        for e in exprs:
            for t in e:
                for ix in t.tvals:
                    keys.append(format_word(to_word(ix)[1]))
    digits = args.digits or catalog.SUITES.get(args.suite, (None, DEFAULT_DIGITS, 0))[1]
    _warm_words(sorted(set(keys)), digits + 2, args.jobs, cache)
    report = catalog.verify_catalog(args.suite, args.digits, cache)
    return {"command": "verify", **report}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="amtv", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    for target, default in ((ap, False), (common, True)):
        sup = argparse.SUPPRESS
        target.add_argument(
            "--format", choices=("json", "csv", "text"), default=sup if default else "json"
        )
        target.add_argument(
            "--cache",
            default=sup if default else None,
            help="cache path ('' disables; env AMTV_CACHE)",
        )
        target.add_argument("--jobs", type=int, default=sup if default else 1)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, parents=[common], **kwargs)
        p.set_defaults(fn=fn)
        return p

    p = add("eval", _cmd_eval, help="evaluate a T-value")
    p.add_argument("index")
    p.add_argument("--digits", type=int, default=DEFAULT_DIGITS)

    p = add("dual", _cmd_dual, help="dual index")
    p.add_argument("index")

    p = add("word", _cmd_word, help="index -> (sign, word)")
    p.add_argument("index")

    p = add("unword", _cmd_unword, help="word -> (sign, index)")
    p.add_argument("word")

    p = add("shuffle", _cmd_shuffle, help="shuffle product of two words")
    p.add_argument("u")
    p.add_argument("v")

    p = add("wsum", _cmd_wsum, help="weighted sum W_l(k, r)")
    p.add_argument("k", type=int)
    p.add_argument("r", type=int)
    p.add_argument("l", type=int)
    p.add_argument("--digits", type=int, default=DEFAULT_DIGITS)
    p.add_argument("--symbolic", action="store_true")

    p = add("psibar", _cmd_psibar, help="psi-bar value at integer argument")
    p.add_argument("ks")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--digits", type=int, default=DEFAULT_DIGITS)
    p.add_argument("--symbolic", action="store_true")
    p.add_argument("--quadrature", action="store_true")

    p = add("poset-expand", _cmd_poset_expand, help="expand a labeled poset")
    p.add_argument("poset", help='JSON {"labels": {...}, "cover": [[a,b],...]} or @file')

    p = add("dim", _cmd_dim, help="basis scan for one weight")
    p.add_argument("weight", type=int)
    p.add_argument("--digits", type=int, default=60)
    p.add_argument("--height", type=int, default=DEFAULT_HEIGHT)

    p = add("pslq", _cmd_pslq, help="integer relation among decimal inputs")
    p.add_argument("values", nargs="+")
    p.add_argument("--digits", type=int, default=DEFAULT_DIGITS)
    p.add_argument("--height", type=int, default=DEFAULT_HEIGHT)

    p = add("verify", _cmd_verify, help="run a verification suite")
    p.add_argument("suite", choices=sorted(catalog.SUITES))
    p.add_argument("--digits", type=int, default=None)

    return ap


def _escape_negative_positionals(argv: List[str]) -> List[str]:
    """Let composition notation like "-1,-3,2,-5" (and negative decimals)
    pass through argparse by prefixing a space, which the parsers strip."""
    import re

    pat = re.compile(r"-\d[\d.,\-]*")
    return [" " + a if pat.fullmatch(a) else a for a in argv]


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    argv = _escape_negative_positionals(sys.argv[1:] if argv is None else list(argv))
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else EXIT_OK
    try:
        cache = _open_cache(args.cache)
        report = args.fn(args, cache)
        print(format_report(report, args.format))
        if args.command == "verify" and not report.get("passed", True):
            print(f"verification failed: {report['failures']}", file=sys.stderr)
            return EXIT_VERIFY
        return EXIT_OK
    except (NotationError, AdmissibilityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PrecisionError as exc:
        print(f"precision failure: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except CacheIOError as exc:
        print(f"cache I/O failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
