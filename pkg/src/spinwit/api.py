"""HTTP facade over the toolkit.

Stateless JSON endpoints mirroring the CLI subcommands. Density matrices
travel in the v1 text format (one string field), which keeps a single
canonical serialization and reuses its line-level diagnostics; channel
vectors are small enough to inline as JSON arrays.
"""

from __future__ import annotations

from typing import Literal, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

import numpy as np

from . import __version__
from .io_formats import FormatError, coeff_table, parse_density
from .numerics import ValidationError
from .spin_ops import SpinLabel
from .su2_states import (
    AlphaVector,
    alpha_from_density,
    density_from_alpha,
    negativity_brute,
    negativity_formula,
    twirl,
)
from .verify import run_verification
from .wigner import six_j, theta_matrix
from .witnesses import (
    Permutation,
    hamiltonian_witness,
    permutation_witness,
    singlet_witness,
    swap_witness,
)


class HealthResponse(BaseModel):
    status: str
    version: str


class CoeffRow(BaseModel):
    power: int
    coefficient: str


class CoeffsRequest(BaseModel):
    spin: str
    operator: Literal["swap", "singlet", "projector"]
    channel: Optional[int] = None


class CoeffsResponse(BaseModel):
    twice_spin: int
    operator: str
    channel: Optional[int]
    rows: list[CoeffRow]


class SixJRequest(BaseModel):
    twice_j: list[int] = Field(min_length=6, max_length=6)


class SixJResponse(BaseModel):
    value: float


class ThetaRequest(BaseModel):
    spin: str


class ThetaResponse(BaseModel):
    twice_spin: int
    entries: list[list[float]]


class NegativityRequest(BaseModel):
    spin: str
    alpha: Optional[list[float]] = None
    density_text: Optional[str] = None
    method: Literal["formula", "brute", "both"] = "both"


class NegativityRecord(BaseModel):
    method: str
    value: float
    per_channel: list[float]


class NegativityResponse(BaseModel):
    results: list[NegativityRecord]


class WitnessRequest(BaseModel):
    kind: Literal["swap", "singlet", "permutation"]
    spin: str
    density_text: str
    sites: Optional[list[int]] = None
    permutation: Optional[list[int]] = None


class WitnessResponse(BaseModel):
    witness_kind: str
    expectation: float
    threshold: float
    verdict: str
    sites: list[int]


class ChainRequest(BaseModel):
    spin: str
    length: int
    model: Literal["swap", "singlet"] = "swap"
    coupling: float = 1.0
    boundary: Literal["open", "periodic"] = "open"


class VerifyRequest(BaseModel):
    items: Optional[list[int]] = None
    seed: int = 0


class VerifyCheck(BaseModel):
    index: int
    name: str
    passed: bool
    detail: str


class VerifyResponse(BaseModel):
    checks: list[VerifyCheck]
    all_passed: bool


def _domain(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (ValidationError, FormatError) as exc:
        raise HTTPException(status_code=422, detail=str(exc))


def _report_response(report) -> WitnessResponse:
    return WitnessResponse(
        witness_kind=report.witness_kind,
        expectation=report.expectation,
        threshold=report.threshold,
        verdict=report.verdict,
        sites=list(report.sites),
    )


def create_app() -> FastAPI:
    app = FastAPI(title="spinwit", version=__version__)

    @app.get("/health", response_model=HealthResponse)
    def health():
        return HealthResponse(status="ok", version=__version__)

    @app.post("/coeffs", response_model=CoeffsResponse)
    def coeffs(req: CoeffsRequest):
        s = _domain(SpinLabel.parse, req.spin)
        table = _domain(coeff_table, s, req.operator, req.channel)
        return CoeffsResponse(
            twice_spin=table.twice_spin,
            operator=table.operator,
            channel=table.channel,
            rows=[CoeffRow(power=p, coefficient=c) for p, c in table.rows],
        )

    @app.post("/sixj", response_model=SixJResponse)
    def sixj(req: SixJRequest):
        if any(t < 0 for t in req.twice_j):
            raise HTTPException(status_code=422, detail="twice_j entries must be nonnegative")
        return SixJResponse(value=six_j(*req.twice_j))

    @app.post("/theta", response_model=ThetaResponse)
    def theta(req: ThetaRequest):
        s = _domain(SpinLabel.parse, req.spin)
        entries = theta_matrix(s)
        return ThetaResponse(twice_spin=s.twice_spin, entries=entries.tolist())

    @app.post("/negativity", response_model=NegativityResponse)
    def negativity(req: NegativityRequest):
        s = _domain(SpinLabel.parse, req.spin)

        def compute():
            if req.alpha is None and req.density_text is None:
                raise ValidationError("provide alpha or density_text")
            alpha = None
            rho = None
            if req.density_text is not None:
                rho = parse_density(req.density_text)
            if req.alpha is not None:
                alpha = AlphaVector(s.twice_spin, np.array(req.alpha, dtype=float)).validate(
                    atol=1e-6
                )
            methods = ("formula", "brute") if req.method == "both" else (req.method,)
            records = []
            for method in methods:
                if method == "formula":
                    if alpha is None:
                        drift = float(np.max(np.abs(twirl(rho, s).matrix - rho.matrix)))
                        if drift > 1e-8:
                            raise ValidationError(
                                f"density is not rotation invariant (twirl moves it by {drift:.3e})"
                            )
                        alpha = alpha_from_density(rho, s)
                    result = negativity_formula(alpha)
                else:
                    result = negativity_brute(
                        rho if rho is not None else density_from_alpha(alpha), s.dim, s.dim
                    )
                records.append(
                    NegativityRecord(
                        method=result.method,
                        value=result.value,
                        per_channel=list(result.per_channel),
                    )
                )
            return NegativityResponse(results=records)

        return _domain(compute)

    @app.post("/witness", response_model=WitnessResponse)
    def witness(req: WitnessRequest):
        s = _domain(SpinLabel.parse, req.spin)

        def compute():
            rho = parse_density(req.density_text)
            if req.kind == "permutation":
                if not req.permutation:
                    raise ValidationError("permutation witness needs a permutation image list")
                return permutation_witness(rho, Permutation(tuple(req.permutation)), s)
            if not req.sites or len(req.sites) != 2:
                raise ValidationError(f"{req.kind} witness needs exactly two sites")
            fn = swap_witness if req.kind == "swap" else singlet_witness
            return fn(rho, s, tuple(req.sites))

        return _report_response(_domain(compute))

    @app.post("/chain", response_model=WitnessResponse)
    def chain(req: ChainRequest):
        s = _domain(SpinLabel.parse, req.spin)
        report = _domain(
            hamiltonian_witness, s, req.length, req.model, req.coupling, req.boundary
        )
        return _report_response(report)

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest):
        results = _domain(run_verification, items=req.items, seed=req.seed)
        checks = [
            VerifyCheck(index=r.index, name=r.name, passed=r.passed, detail=r.detail)
            for r in results
        ]
        return VerifyResponse(checks=checks, all_passed=all(c.passed for c in checks))

    return app


app = create_app()
