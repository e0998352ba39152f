"""Command-line surface: compute, verify, emit and batch subcommands.

Every run that produces structures emits one JSON record with sorted
keys and a schema_version field, so identical inputs give byte-identical
output apart from the timing block.  With TENSQ_CACHE_DIR set, records
are cached by a content hash of (params, flags, tool version) and a
rerun returns the stored bytes verbatim, timings included.

Exit codes: 0 success, 1 failed verification or batch rows, 2 invalid
parameters, 3 resource bound hit (including an enumeration that did not
close), 4 internal formula inconsistency, 64 usage errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time

from . import __version__, fpgrp, metagrp, oracle, presentations
from .errors import (
    FormulaInconsistencyError,
    ResourceLimitError,
    TensqError,
    ValidationError,
)
from .metagrp import GroupParams

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_VALIDATION = 2
EXIT_RESOURCE = 3
EXIT_FORMULA = 4
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _structure_block(structure) -> dict:
    return {
        "invariant_factors": list(structure.invariant_factors),
        "order": structure.order,
        "exponent": structure.torsion_exponent,
    }


def build_run_record(params: GroupParams, with_oracle: bool) -> dict:
    """Closed-form record for one tuple, plus the oracle block on request."""
    timings = {}
    start = time.perf_counter()
    inv = metagrp.derived_invariants(params)
    report = presentations.exterior_and_schur(params, inv)
    timings["closed_form_s"] = time.perf_counter() - start
    oracle_block = None
    if with_oracle:
        start = time.perf_counter()
        model = oracle.build_tensor_oracle(params)
        ext = oracle.exterior_oracle(model)
        schur_order = oracle.oracle_schur_order(model)
        timings["oracle_s"] = time.perf_counter() - start
        tensor_match = model.structure == report.tensor
        exterior_match = ext == report.exterior
        schur_match = schur_order == report.schur.order
        oracle_block = {
            "tensor_invariant_factors": list(model.structure.invariant_factors),
            "exterior_invariant_factors": list(ext.invariant_factors),
            "schur_order": schur_order,
            "raw_rows": model.raw_rows,
            "distinct_rows": model.distinct_rows,
            "tensor_match": tensor_match,
            "exterior_match": exterior_match,
            "schur_match": schur_match,
            "match": tensor_match and exterior_match and schur_match,
        }
    return {
        "schema_version": 1,
        "tool": {"name": "tensq", "version": __version__},
        "params": {"m": params.m, "n": params.n, "r": params.r, "s": params.s},
        "derived": {
            "group_order": inv.order_g,
            "o_a": inv.o_a,
            "o_b": inv.o_b,
            "o_prime_a": inv.oprime_a,
            "o_prime_b": inv.oprime_b,
            "t": inv.t_derived,
            "l": inv.l,
            "k": inv.k,
        },
        "tensor": _structure_block(report.tensor),
        "exterior": _structure_block(report.exterior),
        "schur": _structure_block(report.schur),
        "delta_order": report.delta_order,
        "nu_order_predicted": report.nu_order_predicted,
        "oracle": oracle_block,
        "nu_certification": None,
        "timings": timings,
    }


def _record_text(params: GroupParams, with_oracle: bool) -> str:
    """Record JSON, going through the cache when TENSQ_CACHE_DIR is set."""
    cache_dir = os.environ.get("TENSQ_CACHE_DIR")
    path = None
    if cache_dir:
        payload = json.dumps(
            {
                "m": params.m,
                "n": params.n,
                "r": params.r,
                "s": params.s,
                "oracle": bool(with_oracle),
                "version": __version__,
            },
            sort_keys=True,
        )
        key = hashlib.sha256(payload.encode("utf-8")).hexdigest()
        path = os.path.join(cache_dir, key + ".json")
        if os.path.exists(path):
            with open(path, "r", encoding="utf-8") as fh:
                return fh.read()
    text = json.dumps(build_run_record(params, with_oracle), sort_keys=True, indent=2) + "\n"
    if path:
        os.makedirs(cache_dir, exist_ok=True)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def _params(args) -> GroupParams:
    return metagrp.validate(args.m, args.n, args.r, args.s)


def cmd_compute(args) -> int:
    params = _params(args)
    text = _record_text(params, args.oracle)
    sys.stdout.write(text)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK


def _print_suite(report) -> tuple[int, int]:
    failed = 0
    for check in report.checks:
        tag = "PASS" if check.passed else "FAIL"
        line = f"[{tag}] {check.name} ({check.instances} instances)"
        if not check.passed:
            failed += 1
            line += f" failed {check.failed}: " + "; ".join(check.examples)
        print(line)
    return len(report.checks), failed


def cmd_verify(args) -> int:
    params = _params(args)
    failures = 0
    inconclusive = False
    model = None
    if args.suite in ("identities", "bounds", "all"):
        model = oracle.build_tensor_oracle(params)
    if args.suite in ("identities", "all"):
        _, bad = _print_suite(oracle.verify_identities(model))
        failures += bad
    if args.suite in ("bounds", "all"):
        _, bad = _print_suite(oracle.verify_bounds(model))
        failures += bad
    if args.suite in ("nu", "all"):
        cert = fpgrp.certify_nu_order(params, max_cosets=args.max_cosets)
        if cert.status == "PASS":
            print(
                f"[PASS] nu order: enumerated {cert.enumerated} == predicted "
                f"{cert.predicted} (cosets used {cert.cosets_used})"
            )
        elif cert.status == "FAIL":
            failures += 1
            print(
                f"[FAIL] nu order: enumerated {cert.enumerated} != predicted "
                f"{cert.predicted} (cosets used {cert.cosets_used})"
            )
        else:
            inconclusive = True
            print(
                f"[INCONCLUSIVE] nu order: table overflowed at {cert.cosets_used} "
                f"cosets (predicted {cert.predicted}); raise --max-cosets"
            )
    if failures:
        return EXIT_CHECK_FAILED
    if inconclusive:
        return EXIT_RESOURCE
    return EXIT_OK


def cmd_emit(args) -> int:
    params = _params(args)
    if args.what == "nu":
        pres = presentations.nu_presentation(params)
    else:
        pres = presentations.tensor_presentation(params)
    if args.format == "native":
        sys.stdout.write(presentations.presentation_to_text(pres))
    else:
        sys.stdout.write(presentations.presentation_to_gap(pres))
    return EXIT_OK


def _load_manifest(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            manifest = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError([f"cannot read manifest {path}: {exc}"])
    if not isinstance(manifest, dict):
        raise ValidationError([f"manifest {path} must be a JSON object"])
    return manifest


def cmd_batch(args) -> int:
    manifest = _load_manifest(args.manifest) if args.manifest else {}
    max_order = args.max_order if args.max_order is not None else manifest.get("max_order")
    include_s_zero = args.include_s_zero or bool(manifest.get("include_s_zero"))
    with_oracle = args.oracle or bool(manifest.get("oracle"))
    tuples = manifest.get("tuples")
    if tuples is None:
        if max_order is None:
            raise ValidationError(["batch needs --max-order, or a manifest with bounds or tuples"])
        jobs = [
            (p.m, p.n, p.r, p.s)
            for p in metagrp.enumerate_valid_tuples(max_order, include_s_zero=include_s_zero)
        ]
    else:
        jobs = [tuple(int(x) for x in row) for row in tuples]

    rows = []
    counts = {"ok": 0, "mismatch": 0, "error": 0}
    for m, n, r, s in jobs:
        params_block = {"m": m, "n": n, "r": r, "s": s}
        try:
            params = metagrp.validate(m, n, r, s)
            record = json.loads(_record_text(params, with_oracle))
            status = "ok"
            if record["oracle"] is not None and not record["oracle"]["match"]:
                status = "mismatch"
            row = {"status": status, "params": params_block, "record": record}
        except TensqError as exc:
            row = {
                "status": "error",
                "params": params_block,
                "error": {"type": type(exc).__name__, "message": str(exc)},
            }
        counts[row["status"]] += 1
        rows.append(json.dumps(row, sort_keys=True))

    body = "".join(line + "\n" for line in rows)
    summary = (
        f"tuples: {len(rows)}  ok: {counts['ok']}  "
        f"mismatches: {counts['mismatch']}  errors: {counts['error']}\n"
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(body)
        sys.stdout.write(summary)
    else:
        sys.stdout.write(body)
        sys.stderr.write(summary)
    if counts["mismatch"] or counts["error"]:
        return EXIT_CHECK_FAILED
    return EXIT_OK


def _add_params(sub) -> None:
    sub.add_argument("--m", type=int, required=True)
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--r", type=int, required=True)
    sub.add_argument("--s", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tensq", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"tensq {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    compute = subs.add_parser("compute", parents=[], help="closed forms for one tuple")
    _add_params(compute)
    compute.add_argument("--oracle", action="store_true", help="cross-check with the oracle")
    compute.add_argument("--json", metavar="PATH", help="also write the record to PATH")
    compute.set_defaults(func=cmd_compute)

    verify = subs.add_parser("verify", help="run verification suites for one tuple")
    _add_params(verify)
    verify.add_argument(
        "--suite",
        choices=["identities", "bounds", "nu", "all"],
        default="all",
    )
    verify.add_argument("--max-cosets", type=int, default=fpgrp.DEFAULT_MAX_COSETS)
    verify.set_defaults(func=cmd_verify)

    emit = subs.add_parser("emit", help="print a presentation")
    _add_params(emit)
    emit.add_argument("--what", choices=["nu", "tensor"], required=True)
    emit.add_argument("--format", choices=["native", "gap"], default="native")
    emit.set_defaults(func=cmd_emit)

    batch = subs.add_parser("batch", help="sweep many tuples")
    batch.add_argument("--manifest", metavar="PATH", help="JSON manifest with bounds or tuples")
    batch.add_argument("--max-order", type=int, help="enumerate all valid tuples with mn <= this")
    batch.add_argument("--include-s-zero", action="store_true")
    batch.add_argument("--oracle", action="store_true")
    batch.add_argument("--out", metavar="PATH", help="write JSON lines here instead of stdout")
    batch.set_defaults(func=cmd_batch)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except FormulaInconsistencyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMULA


if __name__ == "__main__":
    sys.exit(main())
