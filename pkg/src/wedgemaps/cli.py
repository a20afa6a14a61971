"""Command line interface.

Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 resource abort.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

from .classify import classify, classify_by_dims, cokernel_witness, dual, kernel_witness
from .errors import DomainError
from .oracle import rank, solve
from .space import Coframe, TensorElement, basis_keys, dim
from .systems import SystemParams, coeffs, inj_system, left_inverse, right_inverse, surj_system
from .verify import DEFAULT_SAFETY_BOUND, ResourceBoundExceeded, sweep
from .wedge import MapSpec, apply, build_matrix

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

ASCII_ARROWS = {
    "hook": ">->",
    "two-heads": "->>",
    "hook+two-heads": ">->>",
    "plain": "-->",
    None: ".",
}


class UsageError(Exception):
    pass


def table_cells(N: int, s: int, l: int) -> list[dict]:
    """One record per space ``Omega_l^{n,k}``; ``arrow`` is None where no map starts."""
    if not (1 <= s < N and 0 <= l < N):
        raise UsageError(f"need 1 <= s < N and 0 <= l < N (got N={N}, s={s}, l={l})")
    cells = []
    for n in range(N - l + 1):
        for k in range(N + 1):
            if n <= N - s - l and k <= N - s:
                c = classify(MapSpec(N, l, s, n, k))
                cells.append({"n": n, "k": k, "arrow": c.arrow, "injective": c.injective, "surjective": c.surjective})
            else:
                cells.append({"n": n, "k": k, "arrow": None, "injective": None, "surjective": None})
    return cells


def render_table(N: int, s: int, l: int, fmt: str = "ascii") -> str:
    cells = table_cells(N, s, l)
    if fmt == "json":
        return json.dumps({"N": N, "s": s, "l": l, "cells": cells})
    width = 6
    lines = [f"N={N} s={s} l={l}   >-> injective   ->> surjective   >->> both   --> neither   . no map"]
    lines.append(("     " + "".join(f"k={k}".ljust(width) for k in range(N + 1))).rstrip())
    for n in range(N - l + 1):
        row = [c for c in cells if c["n"] == n]
        lines.append(f"n={n}  " + "".join(ASCII_ARROWS[c["arrow"]].ljust(width) for c in row).rstrip())
    return "\n".join(lines)


def _spec(args) -> MapSpec:
    missing = [f"--{name}" for name in ("N", "l", "s", "n", "k") if getattr(args, name) is None]
    if missing:
        raise UsageError(f"missing {', '.join(missing)}")
    return MapSpec(args.N, args.l, args.s, args.n, args.k)


def _emit(args, text: str):
    if getattr(args, "out", None):
        Path(args.out).write_text(text + "\n")
    else:
        print(text)


def cmd_table(args) -> int:
    if args.N is None or args.s is None:
        raise UsageError("table needs --N and --s")
    levels = [args.l] if args.l is not None else list(range(args.N))
    if args.format == "json":
        blocks = [json.loads(render_table(args.N, args.s, l, "json")) for l in levels]
        _emit(args, json.dumps(blocks[0] if len(blocks) == 1 else blocks))
    else:
        _emit(args, "\n\n".join(render_table(args.N, args.s, l) for l in levels))
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        report = sweep(
            args.max_N,
            args.max_s,
            args.max_l,
            seed=args.seed,
            invariance_trials=args.invariance_trials,
            invariance_max_N=args.invariance_max_N,
            workers=args.workers,
            time_limit=args.time_limit,
            safety_bound=args.safety_bound,
        )
    except ResourceBoundExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        _emit(args, json.dumps({"aborted": True, "records": [], "reason": str(exc)}) if args.format == "json" else f"ABORTED: {exc}")
        return EXIT_RESOURCE
    _emit(args, json.dumps(report.to_json()) if args.format == "json" else report.summary())
    return report.exit_code


def cmd_classify(args) -> int:
    spec = _spec(args)
    c = classify(spec)
    out = {"spec": asdict(spec), "predicate": asdict(c), "kind": c.kind}
    if spec.l == 0:
        out["by_dims"] = asdict(classify_by_dims(spec))
    try:
        out["dual"] = asdict(dual(spec))
    except DomainError:
        out["dual"] = None
    if args.oracle:
        r = rank(build_matrix(spec)).rank
        d, cd = spec.dims
        out["rank"] = r
        out["oracle"] = {"injective": r == d, "surjective": r == cd}
    if args.format == "json":
        _emit(args, json.dumps(out))
    else:
        lines = [f"{spec}: {c.kind}"]
        if "rank" in out:
            lines.append(f"rank {out['rank']} (dims {spec.dims[0]} -> {spec.dims[1]})")
        _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_dims(args) -> int:
    spec = _spec(args)
    d, c = dim(spec.domain), dim(spec.codomain)
    if args.format == "json":
        _emit(args, json.dumps({"spec": asdict(spec), "domain": d, "codomain": c}))
    else:
        _emit(args, f"{d} {c}")
    return EXIT_OK


def cmd_coeffs(args) -> int:
    if args.q is None or args.s is None:
        raise UsageError("coeffs needs --q and --s")
    table = coeffs(args.q, args.s, args.variant)
    if args.format == "json":
        _emit(args, json.dumps({"q": args.q, "s": args.s, "values": [str(v) for v in table.values]}))
    else:
        _emit(args, str(table))
    return EXIT_OK


def cmd_inverse_check(args) -> int:
    if None in (args.m, args.p, args.s):
        raise UsageError("inverse-check needs --m, --p and --s")
    params = SystemParams(args.m, args.p, args.s)
    if params.m + params.q > args.bound:
        raise UsageError(f"m+q = {params.m + params.q} exceeds --bound {args.bound}")
    table = coeffs(params.q, params.s, args.variant)
    A, B = inj_system(params), left_inverse(params, table)
    A2, B2 = surj_system(params), right_inverse(params, table)
    checks = {"left": (B @ A).first_identity_violation(), "right": (A2 @ B2).first_identity_violation()}
    ok = all(v is None for v in checks.values())
    if args.format == "json":
        out = {
            "params": asdict(params),
            "q": params.q,
            "pass": ok,
            "violations": {k: None if v is None else [v[0], v[1], str(v[2])] for k, v in checks.items()},
        }
        if args.show:
            out["matrices"] = {"A": A.to_json(), "B": B.to_json(), "A_surj": A2.to_json(), "B_surj": B2.to_json()}
        _emit(args, json.dumps(out))
    else:
        lines = [f"m={params.m} p={params.p} s={params.s} q={params.q}: {'pass' if ok else 'FAIL'}"]
        for side, v in checks.items():
            if v is not None:
                lines.append(f"{side} identity violated at ({v[0]}, {v[1]}): {v[2]}")
        if args.show:
            for name, M in (("A", A), ("B", B), ("A_surj", A2), ("B_surj", B2)):
                lines += [f"# {name}", M.to_csv().rstrip()]
        _emit(args, "\n".join(lines))
    return EXIT_OK if ok else EXIT_MISMATCH


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path}: invalid JSON: {exc}") from None


def cmd_apply(args) -> int:
    if args.s is None:
        raise UsageError("apply needs --s")
    x = TensorElement.from_json(_read_json(args.element_file))
    cf = Coframe.from_json(_read_json(args.coframe)) if args.coframe else None
    _emit(args, apply(x, args.s, cf).dumps())
    return EXIT_OK


def cmd_witness(args) -> int:
    spec = _spec(args)
    c = classify(spec)
    out: dict = {"spec": asdict(spec)}
    ok = True
    if not c.injective:
        X = kernel_witness(spec)
        image_zero = apply(X, spec.s).is_zero()
        ok &= image_zero
        out["kernel"] = {"element": X.to_json(), "image_is_zero": image_zero}
    if not c.surjective:
        J, I = cokernel_witness(spec)
        keys = basis_keys(spec.codomain)
        b = [int(key == (J, I)) for key in keys]
        feasible = solve(build_matrix(spec), b).feasible
        ok &= not feasible
        out["cokernel"] = {"mu": list(J), "c": list(I), "in_image": feasible}
    if args.format == "json":
        _emit(args, json.dumps(out))
    else:
        lines = [f"{spec}: {c.kind}"]
        if "kernel" in out:
            lines.append(f"kernel witness {out['kernel']['element']['terms']} -> image zero: {out['kernel']['image_is_zero']}")
        if "cokernel" in out:
            co = out["cokernel"]
            lines.append(f"cokernel witness mu={co['mu']} c={co['c']} -> in image: {co['in_image']}")
        if c.injective and c.surjective:
            lines.append("bijective: no witnesses")
        _emit(args, "\n".join(lines))
    return EXIT_OK if ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wedgemaps", description="Wedge-by-coframe maps: classification and exact checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, spec=False):
        p.add_argument("--format", choices=("ascii", "json"), default="ascii")
        p.add_argument("--out", help="write output to this file instead of stdout")
        if spec:
            for name in ("N", "l", "s", "n", "k"):
                p.add_argument(f"--{name}", type=int, dest=name)

    p = sub.add_parser("table", help="arrow table of all maps for given N, s (and l)")
    common(p)
    for name in ("N", "s", "l"):
        p.add_argument(f"--{name}", type=int, dest=name)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="compare the criterion with exact ranks over a range")
    common(p)
    p.add_argument("--max-N", type=int, default=4, dest="max_N")
    p.add_argument("--max-s", type=int, default=None, dest="max_s")
    p.add_argument("--max-l", type=int, default=None, dest="max_l")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--invariance-trials", type=int, default=1)
    p.add_argument("--invariance-max-N", type=int, default=4, dest="invariance_max_N")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--time-limit", type=float, default=None, help="seconds before aborting with a partial report")
    p.add_argument("--safety-bound", type=int, default=DEFAULT_SAFETY_BOUND)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="classify one map")
    common(p, spec=True)
    p.add_argument("--oracle", action="store_true", help="also compute the exact rank")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("dims", help="dimensions of domain and codomain")
    common(p, spec=True)
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("coeffs", help="coefficient table C_0..C_q")
    common(p)
    p.add_argument("--q", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--variant", choices=("exact", "alternating"), default="exact")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("inverse-check", help="certify the closed-form one-sided inverses")
    common(p)
    p.add_argument("--m", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--bound", type=int, default=10, help="largest allowed m+q")
    p.add_argument("--variant", choices=("exact", "alternating"), default="exact")
    p.add_argument("--show", action="store_true", help="print the matrices")
    p.set_defaults(func=cmd_inverse_check)

    p = sub.add_parser("apply", help="apply W_s to an element read from a JSON file")
    common(p)
    p.add_argument("element_file")
    p.add_argument("--s", type=int)
    p.add_argument("--coframe", help="JSON coframe matrix file (default: standard)")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("witness", help="kernel / cokernel witnesses for one map")
    common(p, spec=True)
    p.set_defaults(func=cmd_witness)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
