"""HTTP service exposing the prediction/verification pipeline.

Every endpoint wraps a pure pipeline function; responses carry the same JSON
documents the CLI prints (schema "opprank/1").  Matrix artifacts are cached
in a server-side output directory (env OPPRANK_OUT, default ./opprank_out).
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Literal, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import pipeline
from .characters import char_to_json, weyl_dim
from .finitegeom import UnsupportedGeometryError
from .jantzen import jantzen_sum, lambda_opp
from .rootdata import ConfigurationError, RootSystemSpec, build_root_system

Family = Literal["A", "B", "C", "D", "E", "F", "G"]


class SystemParams(BaseModel):
    family: Family
    rank: int = Field(ge=1, le=8)


class JobRequest(SystemParams):
    cotype: list[int] = Field(default_factory=list)
    p: int = Field(ge=2)
    t: int = Field(default=1, ge=1)
    twist_orbits: Optional[list[list[int]]] = None


class WeightRequest(SystemParams):
    weight: list[int]


class JantzenRequest(WeightRequest):
    p: int = Field(ge=2)


class CharTerm(BaseModel):
    weight: list[int]
    coeff: int


class ChainLink(BaseModel):
    weight: list[int]
    jantzen_sum: list[CharTerm]


class ResolutionModel(BaseModel):
    status: Literal["Simple", "ChainResolved", "Unresolved"]
    chain_depth: int
    chain: list[ChainLink]
    dim: Optional[str]


class GeometryModel(BaseModel):
    supported: bool
    reason: Optional[str] = None
    num_rows: Optional[int] = None
    num_cols: Optional[int] = None
    row_sum: Optional[str] = None
    l_wstar: Optional[int] = None
    matrix_file: Optional[str] = None


class SpectrumModel(BaseModel):
    ok: bool
    exponents: list[int]
    has_zero_eigenvalue: bool
    q: str
    max_exp: int


class PredictResponse(BaseModel):
    schema_version: str = Field(alias="schema")
    config: dict
    lambda_opp: list[int]
    lambda_opp_at_prime: list[int]
    resolution: ResolutionModel
    steinberg_exponent: int
    predicted_rank: Optional[str]
    truncated_poly_cross_check: Optional[str]
    verdict: Optional[str]

    model_config = {"populate_by_name": True}


class VerifyResponse(PredictResponse):
    geometry: GeometryModel
    measured_rank: Optional[int]


class BuildResponse(BaseModel):
    schema_version: str = Field(alias="schema")
    geometry: GeometryModel
    model_config = {"populate_by_name": True}


class RankResponse(BuildResponse):
    measured_rank: int


class SpectrumResponse(BuildResponse):
    spectrum: SpectrumModel


class LambdaOppResponse(BaseModel):
    weight: list[int]


class JantzenSumResponse(BaseModel):
    weight: list[int]
    p: int
    terms: list[CharTerm]


class WeylDimResponse(BaseModel):
    weight: list[int]
    dim: str


def _job_config(req: JobRequest, out_dir: Path) -> pipeline.JobConfig:
    try:
        return pipeline.JobConfig(
            family=req.family, rank=req.rank, cotype=tuple(req.cotype),
            p=req.p, t=req.t, out=out_dir,
            twist_orbits=tuple(tuple(o) for o in req.twist_orbits)
            if req.twist_orbits else None)
    except ConfigurationError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


def _system(req: SystemParams):
    try:
        return build_root_system(RootSystemSpec(req.family, req.rank))
    except ConfigurationError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


def _checked_weight(rs, weight: list[int]) -> tuple[int, ...]:
    if len(weight) != rs.rank:
        raise HTTPException(status_code=422,
                            detail=f"weight needs {rs.rank} coordinates")
    return tuple(int(x) for x in weight)


def create_app(out_dir: str | Path | None = None) -> FastAPI:
    out = Path(out_dir or os.environ.get("OPPRANK_OUT", "opprank_out"))
    app = FastAPI(
        title="opprank",
        description="Oppositeness p-ranks in buildings of finite groups of "
                    "Lie type: highest-weight predictions cross-checked by "
                    "exact incidence-matrix ranks.",
        version="0.1.0",
    )

    @app.get("/health")
    def health():
        return {"status": "ok", "schema": pipeline.SCHEMA}

    @app.post("/predict", response_model=PredictResponse)
    def predict(req: JobRequest):
        cfg = _job_config(req, out)
        try:
            return pipeline.predict_report(cfg)
        except ConfigurationError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: JobRequest):
        cfg = _job_config(req, out)
        try:
            return pipeline.verify_report(cfg)
        except ConfigurationError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    @app.post("/build", response_model=BuildResponse)
    def build(req: JobRequest):
        cfg = _job_config(req, out)
        try:
            return pipeline.build_report(cfg)
        except UnsupportedGeometryError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    @app.post("/rank", response_model=RankResponse)
    def rank(req: JobRequest):
        cfg = _job_config(req, out)
        try:
            return pipeline.rank_report(cfg)
        except UnsupportedGeometryError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    @app.post("/spectrum", response_model=SpectrumResponse)
    def spectrum(req: JobRequest):
        cfg = _job_config(req, out)
        try:
            return pipeline.spectrum_report(cfg)
        except (UnsupportedGeometryError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    @app.post("/lambda-opp", response_model=LambdaOppResponse)
    def lambda_opp_endpoint(req: JobRequest):
        rs = _system(req)
        try:
            w = lambda_opp(rs, tuple(req.cotype), req.p, req.t,
                           tuple(tuple(o) for o in req.twist_orbits)
                           if req.twist_orbits else None)
        except (ConfigurationError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return {"weight": list(w)}

    @app.post("/jantzen-sum", response_model=JantzenSumResponse)
    def jantzen_sum_endpoint(req: JantzenRequest):
        rs = _system(req)
        lam = _checked_weight(rs, req.weight)
        try:
            terms = char_to_json(jantzen_sum(rs, lam, req.p))
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return {"weight": list(lam), "p": req.p, "terms": terms}

    @app.post("/weyl-dim", response_model=WeylDimResponse)
    def weyl_dim_endpoint(req: WeightRequest):
        rs = _system(req)
        lam = _checked_weight(rs, req.weight)
        try:
            d = weyl_dim(rs, lam)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return {"weight": list(lam), "dim": str(d)}

    return app


app = create_app()
