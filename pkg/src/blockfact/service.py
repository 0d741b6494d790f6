"""HTTP service wrapping the core computations.

Run with ``uvicorn blockfact.service:app``.  Every endpoint is a pure
function of its request body, so the service is safe for concurrent clients.
Semantic validation happens in the core parsers; their field-path diagnostics
surface as 422 responses.
"""

from __future__ import annotations

from typing import Any, Optional, Union

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__, schemas
from .abelian import davenport_constant
from .errors import InstanceError, ResourceCapError, UnsupportedInstanceError
from .factorization import (
    catenary_of_element,
    delta_of_element,
    elasticity_of_element,
    length_set,
    monotone_catenary_of_element,
)
from .predict import frac_str, predict
from .verify import SuiteConfig, brute_invariants, run_suite

ElementLiteral = Union[int, str, list[int]]


class ComponentPayload(BaseModel):
    units: list[int] = Field(default_factory=list)
    k: int = 1
    levels: Optional[list[list[ElementLiteral]]] = None
    iota_p: ElementLiteral
    iota_units: Optional[list[ElementLiteral]] = None


class InstancePayload(BaseModel):
    group: list[int]
    components: list[ComponentPayload] = Field(default_factory=list)


class BlockElementPayload(BaseModel):
    free: Union[list[ElementLiteral], dict[str, int]] = Field(default_factory=list)
    parts: list[list[Any]] = Field(default_factory=list)


class DavenportRequest(BaseModel):
    group: list[int]


class DavenportResponse(BaseModel):
    group: list[int]
    davenport: int


class AtomsRequest(BaseModel):
    instance: InstancePayload


class FactorizeRequest(BaseModel):
    instance: InstancePayload
    element: BlockElementPayload


class InvariantsRequest(BaseModel):
    instance: InstancePayload
    cap: int = 8
    include_zero: bool = False


class PredictRequest(BaseModel):
    instance: InstancePayload


class VerifyRequest(BaseModel):
    suite: str = "default"
    cap: int = 8
    scenarios: Optional[list[str]] = None


app = FastAPI(
    title="blockfact",
    version=__version__,
    description="Factorization invariants of block monoids over finite abelian groups",
)


def _parse_instance(payload: InstancePayload):
    try:
        return schemas.parse_instance(payload.model_dump(exclude_none=True))
    except InstanceError as exc:
        raise HTTPException(status_code=422, detail={"path": exc.path, "message": exc.message})


def _guard(fn):
    try:
        return fn()
    except ResourceCapError as exc:
        raise HTTPException(status_code=400, detail={"error": "resource-cap", "message": str(exc)})
    except UnsupportedInstanceError as exc:
        raise HTTPException(status_code=422, detail={"error": "unsupported", "message": str(exc)})


@app.get("/")
def info() -> dict:
    return {
        "service": "blockfact",
        "version": __version__,
        "endpoints": ["/davenport", "/atoms", "/factorize", "/invariants", "/predict", "/verify"],
    }


@app.post("/davenport", response_model=DavenportResponse)
def davenport(req: DavenportRequest):
    try:
        group = schemas.parse_group(req.group)
    except InstanceError as exc:
        raise HTTPException(status_code=422, detail={"path": exc.path, "message": exc.message})
    value = _guard(lambda: davenport_constant(group))
    return DavenportResponse(group=req.group, davenport=value)


@app.post("/atoms")
def atoms(req: AtomsRequest) -> dict:
    inst = _parse_instance(req.instance)

    def work():
        generic = inst.atoms_generic()
        try:
            agreement = set(generic) == set(inst.atoms_closed_form())
        except UnsupportedInstanceError:
            agreement = None
        return {
            "digest": inst.digest(),
            "count": len(generic),
            "closed_form_agrees": agreement,
            "atoms": [schemas.block_element_config(a) for a in generic],
        }

    return _guard(work)


@app.post("/factorize")
def factorize(req: FactorizeRequest) -> dict:
    inst = _parse_instance(req.instance)
    try:
        element = schemas.parse_block_element(req.element.model_dump(), inst)
    except InstanceError as exc:
        raise HTTPException(status_code=422, detail={"path": exc.path, "message": exc.message})

    def work():
        engine = inst.engine()
        zs = engine.factorizations(element)
        return {
            "digest": inst.digest(),
            "element": schemas.block_element_config(element),
            "factorizations": [list(z) for z in zs],
            "atom_table": [schemas.block_element_config(a) for a in engine.atoms],
            "L": list(length_set(zs)),
            "delta": sorted(delta_of_element(zs)),
            "rho": frac_str(elasticity_of_element(zs)),
            "c": catenary_of_element(zs),
            "cmon": monotone_catenary_of_element(zs),
        }

    return _guard(work)


@app.post("/invariants")
def invariants(req: InvariantsRequest) -> dict:
    inst = _parse_instance(req.instance)

    def work():
        try:
            brute = brute_invariants(inst, cap=req.cap, include_zero=req.include_zero)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail={"error": "bad-cap", "message": str(exc)})
        return {"digest": inst.digest(), **brute.as_dict()}

    return _guard(work)


@app.post("/predict")
def predict_endpoint(req: PredictRequest) -> dict:
    inst = _parse_instance(req.instance)
    pred = predict(inst)
    return {
        "digest": inst.digest(),
        "half_factorial": pred.half_factorial,
        "c": str(pred.c) if pred.c else None,
        "cmon": str(pred.cmon) if pred.cmon else None,
        "rho": str(pred.rho) if pred.rho else None,
        "delta": str(pred.delta) if pred.delta else None,
        "t": str(pred.tame) if pred.tame else None,
        "t_is_2_iff_hf": pred.t_is_2_iff_hf,
        "provenance": pred.provenance_map(),
    }


@app.post("/verify")
def verify(req: VerifyRequest) -> dict:
    config = SuiteConfig(name=req.suite, cap=req.cap)
    if req.scenarios:
        config = SuiteConfig(name=req.suite, cap=req.cap, scenarios=tuple(req.scenarios))
    try:
        reports = run_suite(config)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail={"error": "bad-suite", "message": str(exc)})
    violations = sum(len(r.violations) for r in reports)
    return {"violations": violations, "reports": [r.as_dict() for r in reports]}
