"""Command-line front end.

Every subcommand reads a JSON input file and writes a JSON report to
``--output`` (or standard output).  Exit codes: 0 success, 1 verification
failure, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings

import numpy as np

from . import definiteness as dfn
from . import oracle, spectral
from .errors import BudgetExceeded, CauchyTensorError, NoConvergence, ZeroMultisetSum
from .hadamard import hadamard_chain
from .tensor import (
    GeneratingVector,
    SymmetricTensor,
    build_cauchy,
    build_hilbert,
    hilbert_vector,
    is_hankel_compatible,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def load_input(path: str):
    """Parse an input file into ``(GeneratingVector, tensor, is_hilbert)``."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(obj, dict):
        raise InputError(f"{path}: top level must be a JSON object")
    if "m" not in obj:
        raise InputError(f"{path}: missing field 'm'")
    m = obj["m"]
    if not isinstance(m, int) or isinstance(m, bool) or m < 2:
        raise InputError(f"{path}: field 'm' must be an integer >= 2, got {m!r}")
    if "c" in obj:
        c = obj["c"]
        if not isinstance(c, list) or not c:
            raise InputError(f"{path}: field 'c' must be a nonempty list of numbers")
        for k, v in enumerate(c):
            if not isinstance(v, (int, float)) or isinstance(v, bool):
                raise InputError(f"{path}: field 'c'[{k}] must be a number, got {v!r}")
        gv = GeneratingVector(tuple(float(v) for v in c), m)
        return gv, build_cauchy(gv), False
    if "n" in obj:
        n = obj["n"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise InputError(f"{path}: field 'n' must be a positive integer, got {n!r}")
        return hilbert_vector(n, m), build_hilbert(n, m), True
    raise InputError(f"{path}: need field 'c' (generating vector) or 'n' (Hilbert tensor)")


def _emit(args, payload: dict, summary: str) -> None:
    text = json.dumps(payload, indent=2)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
        print(summary)
    else:
        print(text)
        print(summary, file=sys.stderr)


# -- subcommands ----------------------------------------------------------------


def cmd_build(args) -> int:
    gv, T, hilbert = load_input(args.input)
    summary = (
        f"{'Hilbert' if hilbert else 'Cauchy'} tensor: order {T.order}, dim {T.dim}, "
        f"{len(T)} canonical entries, Hankel-compatible: {is_hankel_compatible(gv)}"
    )
    _emit(args, T.to_json(), summary)
    return EXIT_OK


def cmd_classify(args) -> int:
    gv, _, _ = load_input(args.input)
    rep = dfn.classify(gv, rtol=args.dist_rtol)
    payload = {**rep.to_json(), "seed": args.seed}
    try:
        prof = dfn.row_sum_profile(gv, budget=args.budget)
        payload.update(
            row_sums=[float(v) for v in prof.row_sums],
            R=prof.R,
            r=prof.r_min,
            argmax_row=prof.argmax_row,
            argmin_row=prof.argmin_row,
        )
    except BudgetExceeded as exc:
        payload["row_sums_error"] = str(exc)
    _emit(args, payload, f"{rep.classification.value}: {rep.witness}")
    return EXIT_OK


def cmd_rowsums(args) -> int:
    gv, _, _ = load_input(args.input)
    prof = dfn.row_sum_profile(gv, budget=args.budget)
    payload = {**prof.to_json(), "seed": args.seed}
    if gv.all_positive and gv.order % 2 == 0:
        payload["pd_via_row_sums"] = dfn.pd_via_row_sums(gv, rtol=args.dist_rtol, budget=args.budget)
    _emit(args, payload, f"R = {prof.R:.10g} at row {prof.argmax_row}, r = {prof.r_min:.10g} at row {prof.argmin_row}")
    return EXIT_OK


def cmd_eig(args) -> int:
    gv, _, _ = load_input(args.input)
    if args.kind == "z":
        res = spectral.z_eigen_search(
            gv, shift=args.shift, restarts=args.restarts, seed=args.seed,
            tol_eig=args.tol, max_iter=args.max_iter, threads=args.threads,
        )
        payload = {"kind": "Z", **res.to_json()}
        _emit(args, payload, f"{len(res)} distinct Z-eigenpair(s), {res.dropped} unconverged run(s)")
        return EXIT_OK
    pairs, notes = [], []
    if gv.all_positive:
        try:
            top = spectral.h_eigen_max(gv, tol_eig=args.tol, max_iter=args.max_iter)
        except NoConvergence as exc:
            top = exc.best
            notes.append(str(exc))
        pairs.append({"role": "lambda_max", **top.to_json()})
    else:
        notes.append("c is not positive: extreme H-eigenvalues are reported as variational candidates")
    if gv.order % 2 == 0:
        lo = spectral.h_lambda_min_variational(gv, args.restarts, args.seed, args.threads)
        pairs.append({"role": "lambda_min_candidate", **lo.to_json()})
        if not gv.all_positive:
            hi = spectral.h_lambda_max_variational(gv, args.restarts, args.seed, args.threads)
            pairs.append({"role": "lambda_max_candidate", **hi.to_json()})
            notes.append("bounds: " + json.dumps(spectral.bounds(gv).to_json()))
    payload = {"kind": "H", "pairs": pairs, "notes": notes, "seed": args.seed}
    _emit(args, payload, "; ".join(f"{p['role']} = {p['lambda']:.10g}" for p in pairs) or "no pairs")
    return EXIT_OK


def cmd_bounds(args) -> int:
    gv, _, _ = load_input(args.input)
    rep = spectral.bounds(gv)
    parts = [f"{k}: {'applies' if ok else 'n/a'} ({why})" for k, (ok, why) in rep.applicable.items()]
    _emit(args, {**rep.to_json(), "seed": args.seed}, "; ".join(parts))
    return EXIT_OK


def _oracle_verdict(T: SymmetricTensor, restarts: int, seed: int) -> dict:
    if T.order % 2:
        return {"verdict": "ODD_ORDER_NA"}
    v, x = oracle.sphere_min(T, restarts=restarts, seed=seed)
    verdict = "PD" if v > 1e-8 else "PSD" if v >= -1e-8 else "NOT_PSD"
    return {"sphere_min": v, "argmin": x.tolist(), "verdict": verdict}


def cmd_hadamard(args) -> int:
    tensors = [load_input(p)[1] for p in args.inputs]
    prod = hadamard_chain(tensors)
    verdict = _oracle_verdict(prod, args.restarts, args.seed)
    payload = {"tensor": prod.to_json(), "oracle": verdict, "seed": args.seed}
    _emit(args, payload, f"product of {len(tensors)} tensors; oracle verdict {verdict['verdict']}")
    return EXIT_OK


# -- verify -----------------------------------------------------------------------


def _check(name: str, ok: bool | None, **evidence) -> dict:
    status = "skipped" if ok is None else "pass" if ok else "fail"
    return {"check": name, "status": status, **evidence}


def _psd_checks(gv, T, args) -> list:
    out = []
    rep = dfn.classify(gv, rtol=args.dist_rtol)
    if gv.order % 2:
        return [_check("psd_iff_positive", None, reason="odd order", classification=rep.classification.value)]
    vmin, xmin = oracle.sphere_min(T, restarts=args.restarts, seed=args.seed)
    out.append(_check(
        "psd_iff_positive", rep.is_psd == (vmin >= -1e-8),
        classification=rep.classification.value, sphere_min=vmin,
    ))
    evidence = {"classification": rep.classification.value, "sphere_min": vmin}
    ok = rep.is_pd == (vmin > 1e-8)
    if rep.duplicate_pairs and gv.all_positive:
        i, j = rep.duplicate_pairs[0]
        x = np.zeros(gv.dim)
        x[i], x[j] = 1.0, -1.0
        fx = float(T.apply_xm(x))
        evidence.update(witness=x.tolist(), f_witness=fx)
        ok = ok and abs(fx) <= 1e-12 * float(np.max(np.abs(T.values)))
    out.append(_check("pd_iff_positive_distinct", ok, **evidence))
    mono = dfn.monotonicity_probe(gv, trials=1000, seed=args.seed)
    mono_ok = mono.monotone if rep.is_psd else bool(mono.axis_violations)
    out.append(_check("psd_iff_monotone", mono_ok, **mono.to_json()))
    if gv.all_positive:
        try:
            prof = dfn.row_sum_profile(gv, budget=args.budget)
        except BudgetExceeded as exc:
            out.append(_check("rowsum_extremes", None, reason=str(exc)))
            return out
        c = np.array(gv.entries)
        ok = c[prof.argmax_row] == c.min() and c[prof.argmin_row] == c.max()
        out.append(_check("rowsum_extremes", bool(ok), argmax_row=prof.argmax_row, argmin_row=prof.argmin_row))
        via = dfn.pd_via_row_sums(gv, rtol=args.dist_rtol, budget=args.budget)
        out.append(_check("pd_iff_distinct_rowsums", via == rep.is_pd, pd_via_row_sums=via))
    return out


def _spectral_checks(gv, T, args) -> list:
    out = []
    even = gv.order % 2 == 0
    c = np.array(gv.entries)
    if even and gv.all_positive:
        try:
            top = spectral.h_eigen_max(gv, tol_eig=args.tol, max_iter=args.max_iter)
        except NoConvergence as exc:
            out.append(_check("rowsum_bracket", False, reason=str(exc)))
            top = None
        if top is not None:
            b = spectral.bounds(gv)
            if b.rowsum_lower is None:
                out.append(_check("rowsum_bracket", None, reason=b.applicable["rowsum_bracket"][1],
                                  lambda_max=top.lam))
            else:
                out.append(_check("rowsum_bracket", b.rowsum_lower < top.lam < b.rowsum_upper,
                                  lower=b.rowsum_lower, lambda_max=top.lam, upper=b.rowsum_upper))
        zs = spectral.z_eigen_search(gv, restarts=args.restarts, seed=args.seed, tol_eig=args.tol,
                                     max_iter=args.max_iter, threads=args.threads)
        lams = [p.lam for p in zs] + ([top.lam] if top is not None else [])
        out.append(_check("nonnegative_eigenvalues", all(v >= -1e-8 for v in lams), eigenvalues=lams))
    elif even and np.any(c < 0) and np.any(c > 0):
        b = spectral.bounds(gv)
        lo = spectral.h_lambda_min_variational(gv, args.restarts, args.seed, args.threads)
        hi = spectral.h_lambda_max_variational(gv, args.restarts, args.seed, args.threads)
        ok = lo.lam <= b.mixed_sign_lower_cap + 1e-10 and hi.lam >= b.mixed_sign_upper_floor - 1e-10
        out.append(_check("mixed_sign_bounds", ok, lambda_min_candidate=lo.lam, lower_cap=b.mixed_sign_lower_cap,
                          upper_floor=b.mixed_sign_upper_floor, lambda_max_candidate=hi.lam))
    elif not even and gv.all_positive:
        zs = spectral.z_eigen_search(gv, restarts=args.restarts, seed=args.seed, tol_eig=args.tol,
                                     max_iter=args.max_iter, threads=args.threads)
        audit = spectral.odd_sign_audit(zs, gv)
        out.append(_check("odd_z_sign", audit.passed, pairs=len(zs), **audit.to_json()))
        if len(set(gv.entries)) == gv.dim:
            probe = spectral.zero_z_exclusion_probe(gv, restarts=args.restarts, seed=args.seed, threads=args.threads)
            out.append(_check("no_zero_z_eigenvalue", probe.passed, floor=probe.floor, tol_zero=probe.tol_zero))
        else:
            out.append(_check("no_zero_z_eigenvalue", None, reason="c has duplicate entries"))
    else:
        out.append(_check("spectral", None, reason="no spectral statement covers this sign pattern and order"))
    return out


def _hadamard_checks(gv, T, args) -> list:
    if gv.order % 2 or not gv.all_positive:
        return [_check("hadamard_closure", None, reason="needs even order and c > 0")]
    rep = dfn.classify(gv, rtol=args.dist_rtol)
    out = []
    for k in (2, 3):
        v, _ = oracle.sphere_min(hadamard_chain([T] * k), restarts=args.restarts, seed=args.seed)
        ok = v > 1e-10 if rep.is_pd else v >= -1e-8
        out.append(_check(f"hadamard_closure_{k}_factors", ok, sphere_min=v,
                          expected="PD" if rep.is_pd else "PSD"))
    return out


def _integral_checks(gv, T, args) -> list:
    if not gv.all_positive:
        return [_check("integral_identity", None, reason="needs c > 0")]
    rng = np.random.default_rng(args.seed)
    improper = min(gv.entries) <= 1.0 / gv.order
    worst = 0.0
    for _ in range(10):
        x = rng.uniform(-1.0, 1.0, gv.dim)
        r = oracle.integral_identity_check(gv, x, improper=improper)
        worst = max(worst, r.discrepancy / (1.0 + abs(r.direct)))
    return [_check("integral_identity", worst <= 1e-8, worst_relative_discrepancy=worst, improper=improper)]


SUITES = {
    "psd": _psd_checks,
    "spectral": _spectral_checks,
    "hadamard": _hadamard_checks,
    "integral": _integral_checks,
}


def cmd_verify(args) -> int:
    gv, T, _ = load_input(args.input)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    checks = []
    for name in names:
        try:
            checks.extend(SUITES[name](gv, T, args))
        except BudgetExceeded as exc:
            checks.append(_check(name, None, reason=f"budget exceeded: {exc}"))
    failed = [c["check"] for c in checks if c["status"] == "fail"]
    payload = {"input": gv.to_json(), "seed": args.seed, "suite": args.suite, "checks": checks,
               "passed": not failed}
    summary = "\n".join(f"{c['status'].upper():8s} {c['check']}" for c in checks)
    _emit(args, payload, summary)
    return EXIT_FAIL if failed else EXIT_OK


# -- argument parsing ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--tol", type=float, default=spectral.TOL_EIG)
    common.add_argument("--restarts", type=int, default=32)
    common.add_argument("--max-iter", type=int, default=5000)
    common.add_argument("--budget", type=int, default=dfn.ROW_SUM_BUDGET)
    common.add_argument("--dist-rtol", type=float, default=0.0,
                        help="relative tolerance for treating entries of c as equal")
    common.add_argument("--output", "-o", default=None)

    p = argparse.ArgumentParser(prog="cauchytensor", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name, fn in [("build", cmd_build), ("classify", cmd_classify), ("rowsums", cmd_rowsums),
                     ("bounds", cmd_bounds)]:
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("input")
        sp.set_defaults(func=fn)
    sp = sub.add_parser("eig", parents=[common])
    sp.add_argument("input")
    sp.add_argument("--kind", choices=["h", "z"], default="h")
    sp.add_argument("--shift", type=float, default=None)
    sp.set_defaults(func=cmd_eig)
    sp = sub.add_parser("hadamard", parents=[common])
    sp.add_argument("inputs", nargs="+")
    sp.set_defaults(func=cmd_hadamard)
    sp = sub.add_parser("verify", parents=[common])
    sp.add_argument("input")
    sp.add_argument("--suite", choices=["all", *SUITES], default="all")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            return args.func(args)
    except (InputError, ZeroMultisetSum) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CauchyTensorError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
