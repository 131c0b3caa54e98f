"""Command-line front end: arrangement ingestion, reports, verification.

Input document (JSON)::

    {
      "field": "q" | "fp:<p>" | "formal:<name>,<name>,...",
      "dimension": 2,
      "hyperplanes": [{"constant": "0", "coeffs": ["1", "0"]}, ...],
      "order": [2, 1, 3]            # optional 1-based reordering
    }

Scalars are always strings (exactness); unit words for reduce / multiply /
tame-symbol are JSON lists ``[{"scalar": "1", "exponents": [1, 0]}, ...]``
with one exponent per hyperplane.  Reports are emitted as key-sorted JSON
(byte-deterministic for a fixed input, flags and seed) or as plain text.
Exit codes: 0 success, 2 parse/precondition failure, 3 cross-check mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from math import comb

from .arrangement import (
    Arrangement,
    IndexOutOfRange,
    UnitElement,
    ZeroForm,
    circuits,
    flat_of,
    is_normal_crossing,
)
from .decomposition import module_basis, poincare_polynomial, rank, tate_twists
from .exterior import graded_rank, graded_rank_rational
from .fields import ZeroUnit, backend_from_descriptor
from .ring import (
    MixedArrangement,
    NotNormalCrossing,
    PreconditionViolated,
    multiply,
    reduce_word,
    tame_symbol,
    unit_class,
)
from .verify import relation_suite


class ParseError(ValueError):
    """Malformed input document; the message names the offending field."""


class CrossCheckMismatch(RuntimeError):
    """Two independent algorithms disagreed; this is a bug, surfaced loudly."""


def parse_document(data, backend_override=None, order_override=None):
    """Build an Arrangement from a document dict; returns (arr, echo_dict)."""
    if not isinstance(data, dict):
        raise ParseError("document: expected a JSON object")
    desc = backend_override or data.get("field", "q")
    try:
        backend = backend_from_descriptor(str(desc))
    except ValueError as e:
        raise ParseError(f"field: {e}") from None
    if "dimension" not in data:
        raise ParseError("dimension: missing")
    try:
        dim = int(data["dimension"])
    except (TypeError, ValueError):
        raise ParseError("dimension: expected an integer") from None
    hyps = data.get("hyperplanes", [])
    if not isinstance(hyps, list):
        raise ParseError("hyperplanes: expected a list")
    forms = []
    for i, h in enumerate(hyps):
        if not isinstance(h, dict) or "coeffs" not in h:
            raise ParseError(f"hyperplanes[{i}]: expected an object with coeffs")
        try:
            const = backend.parse(str(h.get("constant", "0")))
        except Exception as e:
            raise ParseError(f"hyperplanes[{i}].constant: {e}") from None
        coeffs = []
        for j, c in enumerate(h["coeffs"]):
            try:
                coeffs.append(backend.parse(str(c)))
            except Exception as e:
                raise ParseError(f"hyperplanes[{i}].coeffs[{j}]: {e}") from None
        forms.append((const, tuple(coeffs)))
    order = order_override if order_override is not None else data.get("order")
    try:
        arr = Arrangement(backend, dim, forms)
    except (ZeroForm, ValueError) as e:
        raise ParseError(f"hyperplanes: {e}") from None
    if order is not None:
        perm = [int(k) - 1 for k in order]
        if sorted(perm) != list(range(arr.r)):
            raise ParseError("order: not a permutation of 1..r")
        arr = arr.permuted(perm)
    return arr, serialize_arrangement(arr)


def serialize_arrangement(arr: Arrangement) -> dict:
    b = arr.backend
    return {
        "field": b.descriptor(),
        "dimension": arr.dimension,
        "hyperplanes": [
            {"constant": b.to_str(c), "coeffs": [b.to_str(x) for x in cs]}
            for c, cs in arr.forms
        ],
    }


def parse_word(text, arr: Arrangement):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"word: invalid JSON ({e})") from None
    if not isinstance(data, list):
        raise ParseError("word: expected a JSON list of units")
    units = []
    for i, item in enumerate(data):
        if not isinstance(item, dict):
            raise ParseError(f"word[{i}]: expected an object")
        try:
            lam = arr.backend.parse(str(item.get("scalar", "1")))
        except Exception as e:
            raise ParseError(f"word[{i}].scalar: {e}") from None
        exps = item.get("exponents", [0] * arr.r)
        if len(exps) != arr.r:
            raise ParseError(f"word[{i}].exponents: need {arr.r} entries")
        units.append(UnitElement(lam, tuple(int(e) for e in exps)))
    return units


def _subset_str(S) -> str:
    return "{" + ",".join(str(i + 1) for i in S) + "}"


def _coords_dict(x) -> dict:
    return {_subset_str(S): c.render() for S, c in sorted(x.coords.items(), key=lambda t: (len(t[0]), t[0]))}


def _rank_cross_check(arr: Arrangement):
    """Twist multiplicities against graded quotient ranks; raises on mismatch."""
    tw = tate_twists(arr)
    gr = graded_rank(arr)
    top = max(len(gr.ranks) - 1, max(tw) if tw else 0)
    twists_vec = [tw.get(d, 0) for d in range(top + 1)]
    ranks_vec = [gr.ranks[d] if d < len(gr.ranks) else 0 for d in range(top + 1)]
    if twists_vec != ranks_vec:
        raise CrossCheckMismatch(
            f"twist multiplicities {twists_vec} != quotient ranks {ranks_vec}"
        )
    return gr, "twist multiplicities agree with quotient ranks in every degree"


# ---------------------------------------------------------------------------
# command handlers
# ---------------------------------------------------------------------------

def cmd_info(arr, args):
    deps = circuits(arr)
    counts = {}
    from itertools import combinations

    for size in range(0, arr.r + 1):
        for S in combinations(range(arr.r), size):
            f = flat_of(arr, S)
            key = "empty" if f.is_empty else str(f.codim)
            counts[key] = counts.get(key, 0) + 1
    return {
        "normal_crossing": is_normal_crossing(arr),
        "circuits": [
            {
                "indices": [i + 1 for i in d.indices],
                "scalars": [arr.backend.to_str(s) for s in d.scalars],
                "constant": d.constant,
            }
            for d in deps
        ],
        "flat_counts_by_codim": dict(sorted(counts.items())),
    }, ["exact row reduction", "minimal dependent set enumeration"], []


def cmd_twists(arr, args):
    gr, note = _rank_cross_check(arr)
    tw = tate_twists(arr)
    return {
        "twists": {str(n): m for n, m in sorted(tw.items())},
        "poincare": poincare_polynomial(arr),
        "cross_check": "os-ranks agree",
    }, ["deletion-restriction recursion", "integer Smith normal form"], [note]


def cmd_rank(arr, args):
    gr, note = _rank_cross_check(arr)
    rk = rank(arr)
    if rk != sum(gr.ranks):
        raise CrossCheckMismatch(f"module rank {rk} != sum of quotient ranks {sum(gr.ranks)}")
    return {
        "rank": rk,
        "poincare": poincare_polynomial(arr),
        "cross_check": "os-ranks agree",
    }, ["deletion-restriction recursion", "integer Smith normal form"], [note]


def cmd_basis(arr, args):
    gr, note = _rank_cross_check(arr)
    basis = module_basis(arr)
    by_deg = {}
    for S in basis:
        by_deg[len(S)] = by_deg.get(len(S), 0) + 1
    return {
        "basis": [_subset_str(S) for S in basis],
        "counts_by_degree": [by_deg.get(d, 0) for d in range(max(by_deg) + 1)],
        "cross_check": "os-ranks agree",
    }, ["deletion-restriction recursion with smallest-index lifts"], [note]


def cmd_os(arr, args):
    gr = graded_rank(arr)
    qranks = graded_rank_rational(arr)
    if tuple(gr.ranks) != tuple(qranks):
        raise CrossCheckMismatch(f"SNF ranks {gr.ranks} != rational ranks {qranks}")
    return {
        "ranks": list(gr.ranks),
        "elementary_divisors": [list(d) for d in gr.elementary_divisors],
        "cross_check": "snf agrees with rational row reduction",
    }, ["integer Smith normal form", "rational row reduction"], [
        "per-degree SNF rank equals rational rank"
    ]


def cmd_reduce(arr, args):
    units = parse_word(args.word, arr)
    x = reduce_word(arr, units)
    return {"normal_form": _coords_dict(x)}, [
        "broken-circuit rewriting with module-basis coordinates"
    ], []


def cmd_multiply(arr, args):
    x = reduce_word(arr, parse_word(args.word, arr))
    y = reduce_word(arr, parse_word(args.word2, arr))
    return {"normal_form": _coords_dict(multiply(x, y))}, [
        "broken-circuit rewriting with module-basis coordinates"
    ], []


def cmd_tame(arr, args):
    units = parse_word(args.word, arr)
    syms = tame_symbol(arr, units)
    return {
        "symbols": [
            {"unit": arr.backend.to_str(a), "flat": _subset_str(S)} for a, S in syms
        ]
    }, ["top-degree coefficient extraction"], []


def cmd_verify(arr, args):
    report = relation_suite(arr, args.seed, args.trials)
    if report["failure_count"]:
        raise CrossCheckMismatch(
            f"relation suite found {report['failure_count']} failures: "
            + json.dumps(report["failures"], sort_keys=True)
        )
    return {
        "trials": report["trials"],
        "counts": report["counts"],
        "failures": report["failure_count"],
    }, ["seeded randomized relation suite"], ["all relation instances reduced to 0"]


HANDLERS = {
    "info": cmd_info,
    "twists": cmd_twists,
    "rank": cmd_rank,
    "basis": cmd_basis,
    "os": cmd_os,
    "reduce": cmd_reduce,
    "multiply": cmd_multiply,
    "tame-symbol": cmd_tame,
    "verify": cmd_verify,
}


def build_parser():
    p = argparse.ArgumentParser(prog="arrcoh", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in HANDLERS:
        sp = sub.add_parser(name)
        sp.add_argument("--input", required=True, help="arrangement document (JSON file)")
        sp.add_argument("--format", choices=["json", "text"], default="json")
        sp.add_argument("--order", default=None, help="1-based permutation, e.g. 2,3,1")
        sp.add_argument("--backend", default=None, help="override: q | fp:<p> | formal:<names>")
        if name in ("reduce", "multiply", "tame-symbol"):
            sp.add_argument("--word", required=True, help="JSON list of units")
        if name == "multiply":
            sp.add_argument("--word2", required=True, help="JSON list of units")
        if name == "verify":
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--trials", type=int, default=100)
    return p


def run(args) -> tuple:
    """Execute one parsed command; returns (report_dict, exit_code)."""
    try:
        with open(args.input) as fh:
            data = json.load(fh)
    except OSError as e:
        raise ParseError(f"input: {e}") from None
    except json.JSONDecodeError as e:
        raise ParseError(f"input: invalid JSON at line {e.lineno} col {e.colno}") from None
    order = [int(k) for k in args.order.split(",")] if args.order else None
    arr, echo = parse_document(data, backend_override=args.backend, order_override=order)
    results, algorithms, checks = HANDLERS[args.command](arr, args)
    report = {
        "command": args.command,
        "input": echo,
        "results": results,
        "provenance": {
            "algorithms": algorithms,
            "cross_checks": checks,
        },
    }
    if args.command == "verify":
        report["seed"] = args.seed
    return report, 0


def render(report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    lines = []

    def walk(prefix, obj):
        if isinstance(obj, dict):
            for k in sorted(obj):
                walk(f"{prefix}{k}.", obj[k])
        elif isinstance(obj, list):
            lines.append(f"{prefix[:-1]}: {json.dumps(obj, sort_keys=True)}")
        else:
            lines.append(f"{prefix[:-1]}: {obj}")

    walk("", report)
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, code = run(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    except (PreconditionViolated, NotNormalCrossing, MixedArrangement,
            ZeroUnit, ZeroForm, IndexOutOfRange) as e:
        print(f"precondition violated: {e}", file=sys.stderr)
        return 2
    except CrossCheckMismatch as e:
        print(f"cross-check mismatch: {e}", file=sys.stderr)
        return 3
    sys.stdout.write(render(report, args.format))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
