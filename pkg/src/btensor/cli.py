"""Command-line front-end.

Grammar::

    btensor <verb> [--method M] [--restarts R] [--seed S] [--tol T] [--out PATH] INPUT.json

Verbs: classify, decompose, intervals, oracle, laplacian, definiteness.
Inputs use the tensor JSON format (laplacian takes the hypergraph format
instead).  Reports go to standard output as JSON; failures print an error
JSON object on standard error and exit with 2 (input or parse errors) or
3 (precondition or class-violation errors).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import classes, decompose, eigenloc, oracle
from .core import Tensor
from .errors import (
    ClassViolationError,
    DegenerateMarginError,
    InputError,
    PreconditionError,
)

_INTERVAL_METHODS = {
    "z": eigenloc.intervals_z,
    "even-sym": eigenloc.intervals_even_symmetric,
    "odd-n2": eigenloc.intervals_odd_or_n2,
    "gerschgorin": eigenloc.intervals_gerschgorin,
}


class _Parser(argparse.ArgumentParser):
    """argparse variant that raises instead of exiting, so every failure
    path can produce the machine-parseable error JSON."""

    def error(self, message):
        raise InputError(message)


def _build_parser():
    parser = _Parser(prog="btensor", description="Structured tensor classes, "
                     "decompositions, and eigenvalue localization.")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="verb")

    def add(verb, help_text):
        p = sub.add_parser(verb, help=help_text)
        p.add_argument("input", metavar="INPUT.json")
        p.add_argument("--out", default=None, help="write the report to PATH")
        return p

    add("classify", "evaluate every class predicate and report witnesses")

    p = add("decompose", "split into a Z-part plus a nonnegative part")
    p.add_argument("--method", required=True, choices=("b", "doubly-b"))

    p = add("intervals", "eigenvalue localization interval union")
    p.add_argument("--method", required=True, choices=tuple(_INTERVAL_METHODS))

    p = add("oracle", "H-eigenpairs: exhaustive for dim 2, heuristic search otherwise")
    p.add_argument("--restarts", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-8)

    add("laplacian", "hypergraph Laplacian tensor and its spectral bounds")
    add("definiteness", "sufficient positive (semi-)definiteness verdict")
    return parser


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from exc


def _run(args):
    payload = _load_json(args.input)
    if args.verb == "laplacian":
        graph = eigenloc.Hypergraph.from_json_dict(payload)
        return {
            "tensor": eigenloc.laplacian_tensor(graph).to_json_dict(),
            "bounds": eigenloc.laplacian_bounds(graph).to_json_dict(),
        }
    tensor = Tensor.from_json_dict(payload)
    if args.verb == "classify":
        return classes.classify(tensor).to_json_dict()
    if args.verb == "decompose":
        if args.method == "b":
            return decompose.decompose_b(tensor).to_json_dict()
        return decompose.decompose_doubly_b(tensor).to_json_dict()
    if args.verb == "intervals":
        return _INTERVAL_METHODS[args.method](tensor).to_json_dict()
    if args.verb == "oracle":
        if tensor.dim == 2:
            pairs = oracle.eigenpairs_n2(tensor, tol=args.tol)
        else:
            pairs = oracle.eigen_search(
                tensor, restarts=args.restarts, seed=args.seed, tol=args.tol)
        return [p.to_json_dict() for p in pairs]
    if args.verb == "definiteness":
        return eigenloc.definiteness(tensor).to_json_dict()
    raise InputError(f"unknown verb {args.verb!r}")


def _emit_error(code, exc):
    payload = {"error": code, "detail": str(exc)}
    witness = getattr(exc, "witness", None)
    if witness is not None:
        payload["witness"] = witness
    print(json.dumps(payload), file=sys.stderr)


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        report = _run(args)
    except InputError as exc:
        _emit_error("input", exc)
        return 2
    except ClassViolationError as exc:
        _emit_error("class-violation", exc)
        return 3
    except DegenerateMarginError as exc:
        _emit_error("degenerate-margin", exc)
        return 3
    except PreconditionError as exc:
        _emit_error("precondition", exc)
        return 3
    text = json.dumps(report, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
