"""FastAPI service exposing the constant calculator and verification suite.

Endpoints mirror the CLI subcommands; the CLI is a thin client over the
same handler functions, so both surfaces stay in lockstep.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .constants import (hilbert_sup_bound, hilbert_sup_series)
from .errors import PadicSharpError, ParameterError
from .harness import (SweepSpec, VerificationReport, random_upper_bound_test,
                      report_to_dict, sweep, verify_claim)
from .operators import AlphaVector, TruncationPolicy
from .schemas import (ConstantRequest, ConstantResponse, RandomTestRequest,
                      ReportModel, SweepRequest, SweepResponse, VerifyRequest)


def _report_model(report: VerificationReport) -> ReportModel:
    d = report_to_dict(report)
    return ReportModel(
        claim=d["claim"], params=d["params"], ratio=d.get("ratio"),
        constant=d.get("constant"), rel_error=d.get("rel_error"),
        tail_bound=d.get("tail_bound", 0.0), passed=d["pass"],
        runtime_ms=d.get("runtime_ms", 0), tolerance=d["tolerance"],
        reason=d.get("reason"), skipped=d.get("skipped", False),
        extra=d.get("extra", {}))


def compute_constant(req: ConstantRequest) -> ConstantResponse:
    """Closed-form constant of a claim (cor32 reports series and bound)."""
    params = req.params.to_claim_params(req.claim)
    ctx = params.ctx()
    if req.claim == "cor32":
        alphas = AlphaVector(tuple(params.alphas))
        trunc = TruncationPolicy(window=req.window, tol=1e-6)
        series = hilbert_sup_series(alphas, ctx, truncation=trunc)
        bound = hilbert_sup_bound(alphas, ctx)
        return ConstantResponse(claim=req.claim, value=series.value,
                                series=series.value,
                                series_tail_bound=series.error_bound,
                                bound=bound,
                                detail="series is the sharp value; bound is closed form")
    from .harness import _claim_constant_and_arity
    value, _ = _claim_constant_and_arity(req.claim, params, ctx)
    return ConstantResponse(claim=req.claim, value=value)


def run_verify(req: VerifyRequest) -> ReportModel:
    params = req.params.to_claim_params(req.claim)
    return _report_model(verify_claim(req.claim, params, tol=req.tol,
                                      window=req.window))


def run_sweep(req: SweepRequest) -> SweepResponse:
    spec = SweepSpec(claim=req.spec.claim, grids=req.spec.grids,
                     tolerance=req.spec.tolerance, window=req.spec.window,
                     seed=req.spec.seed)
    reports = sweep(spec)
    return SweepResponse(reports=[_report_model(r) for r in reports],
                         all_passed=all(r.passed for r in reports))


def run_random_test(req: RandomTestRequest) -> ReportModel:
    params = req.params.to_claim_params(req.claim)
    return _report_model(random_upper_bound_test(
        req.claim, params, seed=req.seed, count=req.count, window=req.window))


def create_app() -> FastAPI:
    app = FastAPI(
        title="padicsharp",
        description="Sharp-constant calculator and verifier for Hardy-type "
                    "operators on Q_p^n",
        version="0.1.0")

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/constant", response_model=ConstantResponse)
    def constant(req: ConstantRequest):
        try:
            return compute_constant(req)
        except PadicSharpError as exc:
            raise HTTPException(status_code=422, detail=str(exc))

    @app.post("/verify", response_model=ReportModel)
    def verify(req: VerifyRequest):
        try:
            return run_verify(req)
        except PadicSharpError as exc:
            raise HTTPException(status_code=422, detail=str(exc))

    @app.post("/sweep", response_model=SweepResponse)
    def sweep_endpoint(req: SweepRequest):
        try:
            return run_sweep(req)
        except PadicSharpError as exc:
            raise HTTPException(status_code=422, detail=str(exc))

    @app.post("/random-test", response_model=ReportModel)
    def random_test(req: RandomTestRequest):
        try:
            return run_random_test(req)
        except PadicSharpError as exc:
            raise HTTPException(status_code=422, detail=str(exc))

    return app


app = create_app()
