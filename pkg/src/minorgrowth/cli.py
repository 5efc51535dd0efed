"""Command-line front end.

Subcommands: ``classify`` (growth category of an excluded-minor list),
``count`` (exact member counts over a size range, with an optional JSON
count cache), ``constants`` (the bisection constants and the root table of
the height-bounded tree series), and ``verify`` (the acceptance suite).

Machine output (--json) renders every numeric value as a decimal string so
arbitrary-precision counts survive any JSON consumer; --csv emits one
``n,count,provenance`` row per size. Exit status: 0 on success, 1 when
verification fails, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .classify import (
    Category,
    ClassSpec,
    classify,
    exists_growth_constant,
    gamma_one_test,
    minimize_obstructions,
)
from .counting import count_members, count_prefix
from .graphs import DslError, GraphError, generate, graph_to_dsl, parse_graph_list
from .series import nu_constant, rho_sequence, xi_constant
from .verify import run_criteria

USAGE_ERROR = 2


def _parse_excludes(values: list[str]) -> ClassSpec:
    graphs = []
    for value in values:
        graphs.extend(generate(e) for e in parse_graph_list(value))
    return ClassSpec(tuple(graphs))


def _parse_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    n = int(text)
    return n, n


def _interval_payload(interval) -> dict:
    return {"lo": repr(interval.lo), "hi": repr(interval.hi)}


def _report(command: str, spec: str | None, results: dict, elapsed: float) -> dict:
    payload = {
        "command": command,
        "spec": spec,
        "results": results,
        "version": __version__,
        "elapsed_seconds": f"{elapsed:.6f}",
    }
    return payload


def _emit(payload: dict, as_json: bool, human_lines: list[str]) -> None:
    if as_json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in human_lines:
            print(line)


# ---------------------------------------------------------------------------
# count cache
# ---------------------------------------------------------------------------

def _cache_checksum(entries: dict) -> str:
    blob = json.dumps(entries, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def load_cache(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
        entries = data["entries"]
        if data.get("checksum") != _cache_checksum(entries):
            raise ValueError("checksum mismatch")
        return entries
    except FileNotFoundError:
        return {}
    except (ValueError, KeyError, TypeError) as exc:
        print(f"warning: rebuilding corrupt cache {path}: {exc}", file=sys.stderr)
        return {}


def save_cache(path: str, entries: dict) -> None:
    data = {"version": 1, "checksum": _cache_checksum(entries), "entries": entries}
    with open(path, "w") as fh:
        json.dump(data, fh, indent=1, sort_keys=True)
        fh.write("\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_classify(args) -> int:
    start = time.perf_counter()
    spec = _parse_excludes(args.exclude)
    minimized = minimize_obstructions(spec)
    category = classify(minimized)
    results: dict = {
        "category": category.tag.value,
        "exists_growth_constant": exists_growth_constant(minimized),
        "gamma_one": gamma_one_test(minimized),
        "minimized_obstructions": [graph_to_dsl(h) for h in minimized.excluded],
    }
    lines = [f"category: {category.tag.value}"]
    if category.semifactorial is not None:
        results["k"] = str(category.semifactorial.k)
        results["k_is_lower_bound"] = category.semifactorial.lower_bound_only
        lines.append(f"exponent k = {category.semifactorial.k}"
                     + (" (lower bound)" if category.semifactorial.lower_bound_only else ""))
    if category.polynomial is not None:
        poly = category.polynomial
        results["polynomial_coefficients"] = [str(c) for c in poly.coefficients]
        results["threshold"] = str(poly.threshold)
        results["empirical_threshold"] = (
            None if poly.empirical_threshold is None else str(poly.empirical_threshold))
        terms = " + ".join(f"{c}*C(n,{j})" for j, c in enumerate(poly.coefficients) if c)
        lines.append(f"eventual count: {terms} for n >= {poly.threshold}")
    if category.constant_value is not None:
        results["constant_value"] = str(category.constant_value)
        results["threshold"] = str(category.constant_threshold)
        lines.append(f"eventual count: {category.constant_value}"
                     f" for n >= {category.constant_threshold}")
    lines.append(f"growth constant guaranteed: {results['exists_growth_constant']}")
    lines.append(f"growth constant equals 1: {results['gamma_one']}")
    lines.append("minimized obstructions: " + ", ".join(results["minimized_obstructions"]))
    _emit(_report("classify", spec.identity, results, time.perf_counter() - start),
          args.json, lines)
    return 0


def _count_parallel(spec: ClassSpec, n: int, workers: int) -> int:
    splits = max(1, (workers - 1).bit_length())
    tasks = [(spec, n, splits, bits) for bits in range(1 << splits)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(_count_task, tasks))


def _count_task(task) -> int:
    spec, n, splits, bits = task
    return count_prefix(spec, n, splits, bits)


def cmd_count(args) -> int:
    start = time.perf_counter()
    spec = _parse_excludes(args.exclude)
    lo, hi = _parse_range(args.n)
    key = spec.identity
    cache = load_cache(args.cache) if args.cache else {}
    cached = cache.get(key, {})
    rows = []
    for n in range(lo, hi + 1):
        if str(n) in cached:
            count = int(cached[str(n)])
        else:
            if args.workers > 1:
                count = _count_parallel(spec, n, args.workers)
            else:
                count = count_members(spec, n)
            cached[str(n)] = str(count)
        rows.append((n, count))
    if args.cache:
        cache[key] = cached
        save_cache(args.cache, cache)
    results = {"counts": [{"n": str(n), "count": str(c), "provenance": "brute"}
                          for n, c in rows]}
    if args.csv:
        lines = ["n,count,provenance"] + [f"{n},{c},brute" for n, c in rows]
    else:
        lines = [f"n={n}: {c}" for n, c in rows]
    _emit(_report("count", key, results, time.perf_counter() - start), args.json, lines)
    return 0


KNOWN_CONSTANTS = [
    ("path forests", "1"),
    ("caterpillar forests", "xi"),
    ("forests", "e"),
]


def cmd_constants(args) -> int:
    start = time.perf_counter()
    xi = xi_constant(tol=args.tol)
    nu = nu_constant(tol=args.tol)
    rhos = rho_sequence(args.kmax, tol=args.tol)
    results = {
        "xi_root": _interval_payload(xi.root),
        "xi": _interval_payload(xi.inverse),
        "nu_root": _interval_payload(nu.root),
        "nu": _interval_payload(nu.inverse),
        "rho": [{"k": str(k), "rho": _interval_payload(r.root),
                 "gamma": _interval_payload(r.inverse)}
                for k, r in enumerate(rhos)],
        "known_growth_constants": [{"class": name, "value": value}
                                   for name, value in KNOWN_CONSTANTS],
    }
    lines = [
        f"xi  = {xi.inverse.mid:.12f}  (root {xi.root.mid:.12f})",
        f"nu  = {nu.inverse.mid:.12f}  (root {nu.root.mid:.12f})",
        "k   rho_k           gamma_k = 1/rho_k",
    ]
    lines += [f"{k:<3d} {r.root.mid:.12f}  {r.inverse.mid:.12f}"
              for k, r in enumerate(rhos)]
    lines.append("reference growth constants: "
                 + ", ".join(f"{n} -> {v}" for n, v in KNOWN_CONSTANTS))
    _emit(_report("constants", None, results, time.perf_counter() - start),
          args.json, lines)
    return 0


def cmd_verify(args) -> int:
    start = time.perf_counter()
    results = run_criteria(args.level)
    ok = all(r.passed for r in results)
    payload_rows = []
    lines = []
    for r in results:
        flag = "PASS" if r.passed else "FAIL"
        lines.append(f"{flag} criterion {r.number}: {r.name} ({r.elapsed:.2f}s)")
        lines.extend(f"     {d}" for d in r.details)
        payload_rows.append({
            "number": str(r.number),
            "name": r.name,
            "passed": r.passed,
            "details": r.details,
            "elapsed_seconds": f"{r.elapsed:.6f}",
        })
    lines.append("verification " + ("passed" if ok else "FAILED"))
    _emit(_report("verify", None, {"level": args.level, "criteria": payload_rows,
                                   "passed": ok},
                  time.perf_counter() - start), args.json, lines)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minorgrowth",
        description="Classify, count and estimate growth of minor-closed graph classes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="growth category from excluded minors")
    p.add_argument("--exclude", action="append", required=True,
                   help="excluded minor(s), e.g. 'complete:3' or 'matching:2,star:3'")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("count", help="exact member counts")
    p.add_argument("--exclude", action="append", required=True)
    p.add_argument("--n", required=True, help="size or range, e.g. 5 or 1..6")
    p.add_argument("--cache", help="path of the JSON count cache")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("constants", help="bisection constants and the root table")
    p.add_argument("--kmax", type=int, default=10)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("verify", help="run the acceptance checks")
    p.add_argument("--level", choices=("fast", "full"), default="fast")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DslError, GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
