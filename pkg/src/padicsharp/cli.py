"""Command-line client over the service handlers.

Subcommands: constant, verify, sweep, random-test, serve.  Every flag can
also come from an environment variable with the PADIC_ prefix
(PADIC_P, PADIC_N, PADIC_TOL, ...); explicit flags win.  Exit code is 0
iff every emitted report passes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from .harness import (CLAIMS, DEFAULT_WINDOW, SweepSpec, VerificationReport,
                      random_upper_bound_test, reports_to_csv,
                      serialize_reports, sweep, verify_claim)
from .errors import PadicSharpError
from .schemas import ConstantRequest, ParamsModel
from .service import compute_constant

ENV_PREFIX = "PADIC_"


def _env(name: str) -> Optional[str]:
    return os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"))


def _add_param_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--p", type=int, default=None, help="prime")
    sub.add_argument("--n", type=int, default=None, help="dimension")
    sub.add_argument("--p1", default=None, help="source exponent p1")
    sub.add_argument("--q", default=None, help="target weak exponent q")
    sub.add_argument("--beta", default=None, help="source weight exponent")
    sub.add_argument("--gamma", default=None, help="target weight exponent")
    sub.add_argument("--alpha", default=None, help="operator exponent alpha")
    sub.add_argument("--alphas", default=None,
                     help="comma-separated alpha_1,...,alpha_m")
    sub.add_argument("--m", type=int, default=None, help="multilinearity")


def _flag(args: argparse.Namespace, name: str, cast=str):
    value = getattr(args, name.replace("-", "_"), None)
    if value is None:
        raw = _env(name)
        if raw is not None:
            value = raw
    if value is None:
        return None
    return cast(value)


def _params_from_args(args: argparse.Namespace) -> ParamsModel:
    fields = {}
    for name, cast in (("p", int), ("n", int), ("m", int)):
        v = _flag(args, name, cast)
        if v is not None:
            fields[name] = v
    for name in ("p1", "q", "beta", "gamma", "alpha"):
        v = _flag(args, name)
        if v is not None:
            fields[name] = v
    alphas = _flag(args, "alphas")
    if alphas is not None:
        fields["alphas"] = [a.strip() for a in str(alphas).split(",") if a.strip()]
    return ParamsModel(**fields)


def _emit(reports: List[VerificationReport], fmt: str, out: Optional[str]) -> None:
    if fmt == "csv":
        text = reports_to_csv(reports)
    else:
        text = serialize_reports(reports) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padicsharp",
        description="Sharp constants of Hardy-type operators on Q_p^n: "
                    "closed forms, extremal verification, sweeps.")
    subs = parser.add_subparsers(dest="command", required=True)

    p_const = subs.add_parser("constant", help="print a closed-form constant")
    p_const.add_argument("claim", choices=CLAIMS)
    _add_param_flags(p_const)
    p_const.add_argument("--window", type=int, default=None)

    p_verify = subs.add_parser("verify", help="verify sharpness of a claim")
    p_verify.add_argument("claim", choices=CLAIMS + ("all",))
    _add_param_flags(p_verify)
    p_verify.add_argument("--tol", default=None, help="relative tolerance")
    p_verify.add_argument("--window", type=int, default=None)
    p_verify.add_argument("--format", choices=("json", "csv"), default=None)
    p_verify.add_argument("--out", default=None)

    p_sweep = subs.add_parser("sweep", help="run a sweep from a JSON spec file")
    p_sweep.add_argument("--spec", default=None, help="path to the spec JSON")
    p_sweep.add_argument("--format", choices=("json", "csv"), default=None)
    p_sweep.add_argument("--out", default=None)

    p_rand = subs.add_parser("random-test",
                             help="randomized upper-bound property test")
    p_rand.add_argument("claim", choices=CLAIMS)
    p_rand.add_argument("--seed", type=int, default=None)
    p_rand.add_argument("--count", type=int, default=None)
    _add_param_flags(p_rand)
    p_rand.add_argument("--window", type=int, default=None)
    p_rand.add_argument("--format", choices=("json", "csv"), default=None)
    p_rand.add_argument("--out", default=None)

    p_serve = subs.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default=None)
    p_serve.add_argument("--port", type=int, default=None)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "constant":
            params = _params_from_args(args)
            window = _flag(args, "window", int) or DEFAULT_WINDOW
            resp = compute_constant(ConstantRequest(claim=args.claim,
                                                    params=params, window=window))
            payload = {k: v for k, v in resp.model_dump().items() if v is not None}
            print(json.dumps(payload, sort_keys=True))
            return 0
        if args.command == "verify":
            params = _params_from_args(args)
            tol_raw = _flag(args, "tol")
            tol = float(tol_raw) if tol_raw is not None else None
            window = _flag(args, "window", int) or DEFAULT_WINDOW
            claims = list(CLAIMS) if args.claim == "all" else [args.claim]
            reports = []
            for claim in claims:
                cp = params.to_claim_params(claim) if args.claim != "all" else None
                reports.append(verify_claim(claim, cp, tol=tol, window=window))
            _emit(reports, _flag(args, "format") or "json", _flag(args, "out"))
            return 0 if all(r.passed for r in reports) else 1
        if args.command == "sweep":
            spec_path = _flag(args, "spec")
            if not spec_path:
                print("error: --spec (or PADIC_SPEC) is required", file=sys.stderr)
                return 2
            with open(spec_path) as fh:
                raw = json.load(fh)
            spec = SweepSpec(claim=raw["claim"], grids=raw["grids"],
                             tolerance=raw.get("tolerance", 1e-9),
                             window=raw.get("window", DEFAULT_WINDOW),
                             seed=raw.get("seed", 0))
            reports = sweep(spec)
            _emit(reports, _flag(args, "format") or "json", _flag(args, "out"))
            return 0 if all(r.passed for r in reports) else 1
        if args.command == "random-test":
            params = _params_from_args(args)
            seed = _flag(args, "seed", int) or 0
            count = _flag(args, "count", int) or 100
            window = _flag(args, "window", int) or DEFAULT_WINDOW
            report = random_upper_bound_test(
                args.claim, params.to_claim_params(args.claim),
                seed=seed, count=count, window=window)
            _emit([report], _flag(args, "format") or "json", _flag(args, "out"))
            return 0 if report.passed else 1
        if args.command == "serve":
            import uvicorn
            from .service import app
            uvicorn.run(app, host=_flag(args, "host") or "127.0.0.1",
                        port=_flag(args, "port", int) or 8000)
            return 0
    except PadicSharpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
