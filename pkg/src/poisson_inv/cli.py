"""Command line interface: ``poisson-inv dims | decompose | verify | cache``.

Data goes to stdout (JSON by default), progress and diagnostics to stderr.
Exit codes: 0 success, 1 verification mismatch or model failure, 2 usage,
3 environment (cache not writable).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from typing import Sequence

from . import cache
from .combinat import serialize_partition
from .spaces import KINDS, METHODS, ModelError, decompose, max_order, space
from .suites import SUITES, Budget, passed, run_suite

log = logging.getLogger("poisson_inv.cli")

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_ENV = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def _dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False)


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _check_combo(kind: str, d: int, method: str) -> None:
    if d < 1:
        raise UsageError("--d must be at least 1")
    if method != "default" and kind != "inv":
        raise UsageError(f"--method applies to --kind inv only, not {kind}")
    if method == "harmonic" and d != 1:
        raise UsageError("--method harmonic needs --d 1")


def cmd_dims(kind: str, n: int, d: int, m_max: int | None, method: str, budget: Budget) -> dict:
    _check_combo(kind, d, method)
    # default range: sc runs one past its top order n - 1; inv and quant run
    # to the proven bound and drop trailing zeros
    if m_max is not None:
        top = m_max
    elif kind == "sc":
        top = n
    else:
        top = max_order(kind, n, d)
    dims, skipped = [], []
    for m in range(top + 1):
        if not budget.allows(kind, n, d, m):
            skipped.append(m)
            continue
        log.info("computing %s n=%d d=%d m=%d", kind, n, d, m)
        dims.append({"m": m, "dim": space(kind, n, d, m, method).dim})
    if m_max is None and kind != "sc" and not skipped:
        while len(dims) > 1 and dims[-1]["dim"] == 0:
            dims.pop()
    if skipped:
        log.warning("skipped m=%s under the %s budget (use --budget full)", skipped, budget.name)
    out = {"kind": kind, "n": n, "d": d, "dims": dims}
    if kind == "inv":
        out["method"] = method
    if skipped:
        out["skipped"] = skipped
    return out


def cmd_decompose(kind: str, n: int, d: int, m: int, group: str, method: str, budget: Budget) -> dict:
    _check_combo(kind, d, method)
    if not budget.allows(kind, n, d, m):
        raise UsageError(f"{kind} n={n} d={d} m={m} exceeds the {budget.name} budget (use --budget full)")
    b = space(kind, n, d, m, method)
    log.info("decomposing %s (dim %d) under S_%s", b.key.tag, b.dim, group)
    mults = decompose(b, group)
    entries = []
    for full, mult in sorted(mults.items(), key=lambda kv: (len(kv[0]) and sum(kv[0][1:]), kv[0][1:])):
        if not mult:
            continue
        trunc = full[1:]
        entries.append(
            {
                "lambda": serialize_partition(trunc),
                "truncated_lambda": serialize_partition(trunc),
                "full_lambda": serialize_partition(full),
                "multiplicity": mult,
            }
        )
    return {"kind": kind, "n": n, "d": d, "m": m, "group": group, "dim": b.dim, "entries": entries}


def cmd_verify(suite: str, budget: Budget) -> tuple[dict, int]:
    results = run_suite(suite, budget, progress=log.info)
    ok = passed(results)
    doc = {"suite": suite, "budget": budget.name, "status": "pass" if ok else "fail", "results": results}
    return doc, EXIT_OK if ok else EXIT_MISMATCH


def cmd_cache(action: str) -> dict:
    directory = cache.cache_dir()
    entries = sorted(directory.glob("*.json")) if directory.is_dir() else []
    if action == "clear":
        for path in entries:
            path.unlink()
        log.info("removed %d entries from %s", len(entries), directory)
    return {"directory": str(directory), "enabled": cache.enabled(), "entries": 0 if action == "clear" else len(entries)}


# ---------------------------------------------------------------- rendering


def render(verb: str, doc: dict, fmt: str) -> str:
    if fmt == "json":
        return _dumps(doc)
    if verb == "dims":
        if fmt == "csv":
            return _csv([["m", "dim"]] + [[r["m"], r["dim"]] for r in doc["dims"]])
        series = " + ".join(f"{r['dim']}t^{2 * r['m']}" for r in doc["dims"] if r["dim"])
        return f"{doc['kind']} n={doc['n']} d={doc['d']}: {series or '0'}"
    if verb == "decompose":
        if fmt == "csv":
            return _csv([["lambda", "multiplicity"]] + [[e["lambda"], e["multiplicity"]] for e in doc["entries"]])
        lines = [f"{doc['kind']} n={doc['n']} d={doc['d']} m={doc['m']} group={doc['group']} dim={doc['dim']}"]
        lines += [f"  [{e['full_lambda']}] (truncated {e['lambda']}): {e['multiplicity']}" for e in doc["entries"]]
        return "\n".join(lines)
    if verb == "verify":
        rows = [(r["suite"], c["id"], c.get("lambda"), c["status"], len(c["mismatches"])) for r in doc["results"] for c in r["checks"]]
        if fmt == "csv":
            return _csv([["suite", "id", "lambda", "status", "mismatches"]] + [list(r) for r in rows])
        lines = [f"{s:10} {i:28} {lam or '':10} {st} ({k} mismatches)" if k else f"{s:10} {i:28} {lam or '':10} {st}" for s, i, lam, st, k in rows]
        lines.append(f"overall: {doc['status']}")
        return "\n".join(lines)
    if fmt == "csv":
        return _csv([list(doc), list(doc.values())])
    return " ".join(f"{k}={v}" for k, v in doc.items())


# ---------------------------------------------------------------- parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--budget", choices=("standard", "full"), default="standard",
                        help="'full' admits the expensive points such as Inv_6(C^2)_8")
    common.add_argument("--quiet", action="store_true", help="no progress messages on stderr")

    parser = argparse.ArgumentParser(prog="poisson-inv", description="Invariant polydifferential operators on symplectic space.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("dims", parents=[common], help="graded dimensions of a space")
    p.add_argument("--kind", choices=KINDS, default="inv")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=1, help="dim V = 2d")
    p.add_argument("--m-max", type=int, default=None)
    p.add_argument("--method", choices=METHODS, default="default")

    p = sub.add_parser("decompose", parents=[common], help="isotypic decomposition of one graded piece")
    p.add_argument("--kind", choices=KINDS, default="inv")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--group", choices=("n", "n+1"), default="n+1")
    p.add_argument("--method", choices=METHODS, default="default")

    p = sub.add_parser("verify", parents=[common], help="run a regression suite")
    p.add_argument("--suite", choices=tuple(SUITES) + ("all",), default="all")

    p = sub.add_parser("cache", parents=[common], help="inspect or clear the basis cache")
    p.add_argument("action", choices=("info", "clear"), nargs="?", default="info")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO, stream=sys.stderr,
                        format="%(levelname)s %(message)s", force=True)
    budget = Budget(args.budget)
    code = EXIT_OK
    try:
        if args.verb != "cache":
            cache.check_writable()
        if args.verb == "dims":
            if args.n < 1:
                raise UsageError("--n must be at least 1")
            doc = cmd_dims(args.kind, args.n, args.d, args.m_max, args.method, budget)
        elif args.verb == "decompose":
            if args.n < 1 or args.m < 0:
                raise UsageError("--n must be at least 1 and --m nonnegative")
            doc = cmd_decompose(args.kind, args.n, args.d, args.m, args.group, args.method, budget)
        elif args.verb == "verify":
            doc, code = cmd_verify(args.suite, budget)
        else:
            doc = cmd_cache(args.action)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2
    except cache.CacheError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ENV
    except ModelError as exc:
        print(f"model failure: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    print(render(args.verb, doc, args.format))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
