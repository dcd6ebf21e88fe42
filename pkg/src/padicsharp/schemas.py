"""Pydantic request/response models for the HTTP service and the CLI.

Exponent fields accept numbers or fraction strings ("1/3", "3n/4"); the
n-relative forms are resolved against the request's dimension so sweep
grids can scale with n.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field, field_validator

from .harness import CLAIMS, DEFAULT_TOL, DEFAULT_WINDOW, ClaimParams, resolve_grid_value

ClaimName = Literal["thm21", "thm22", "cor31", "cor32", "cor41"]
Numberish = Union[int, float, str]


class ParamsModel(BaseModel):
    p: int = 2
    n: int = 1
    p1: Optional[Numberish] = None
    q: Optional[Numberish] = None
    beta: Optional[Numberish] = None
    gamma: Optional[Numberish] = None
    alpha: Optional[Numberish] = None
    alphas: Optional[List[Numberish]] = None
    m: Optional[int] = None

    def to_claim_params(self, claim: str) -> ClaimParams:
        from .harness import DEFAULT_PARAMS
        base = DEFAULT_PARAMS[claim]
        given = self.model_dump(exclude_none=True)

        def num(name):
            if name in given:
                return resolve_grid_value(given[name], self.n)
            return getattr(base, name)

        alphas = base.alphas
        if self.alphas is not None:
            alphas = tuple(resolve_grid_value(a, self.n) for a in self.alphas)
        return ClaimParams(
            p=self.p, n=self.n, p1=num("p1"),
            q=resolve_grid_value(given["q"], self.n) if "q" in given else None,
            beta=num("beta"), gamma=num("gamma"), alpha=num("alpha"),
            alphas=alphas, m=self.m if self.m is not None else base.m)


class ConstantRequest(BaseModel):
    claim: ClaimName
    params: ParamsModel = Field(default_factory=ParamsModel)
    window: int = DEFAULT_WINDOW


class ConstantResponse(BaseModel):
    claim: ClaimName
    value: float
    series: Optional[float] = None
    series_tail_bound: Optional[float] = None
    bound: Optional[float] = None
    detail: Optional[str] = None


class VerifyRequest(BaseModel):
    claim: ClaimName
    params: ParamsModel = Field(default_factory=ParamsModel)
    tol: Optional[float] = None
    window: int = DEFAULT_WINDOW


class ReportModel(BaseModel):
    claim: str
    params: Dict[str, object]
    ratio: Optional[float] = None
    constant: Optional[float] = None
    rel_error: Optional[float] = None
    tail_bound: float = 0.0
    passed: bool
    runtime_ms: int
    tolerance: float
    reason: Optional[str] = None
    skipped: bool = False
    extra: Dict[str, object] = Field(default_factory=dict)


class SweepGrids(BaseModel):
    claim: ClaimName
    grids: Dict[str, List[Numberish]]
    tolerance: float = DEFAULT_TOL
    window: int = DEFAULT_WINDOW
    seed: int = 0

    @field_validator("grids")
    @classmethod
    def _nonempty(cls, v: Dict[str, List[Numberish]]):
        if not v or any(not vals for vals in v.values()):
            raise ValueError("sweep grids must be nonempty")
        return v


class SweepRequest(BaseModel):
    spec: SweepGrids


class SweepResponse(BaseModel):
    reports: List[ReportModel]
    all_passed: bool


class RandomTestRequest(BaseModel):
    claim: ClaimName
    seed: int = 0
    count: int = 100
    params: ParamsModel = Field(default_factory=ParamsModel)
    window: int = DEFAULT_WINDOW
