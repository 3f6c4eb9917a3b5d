import logging
from contextlib import asynccontextmanager
from typing import List, Optional

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from configs import PointConfig
from constants import crossing_service, verification_service
from crossing import sets_cross
from exceptions import HypercrossError, ParameterError
from gale import gale_transform
from moment import bound_table, closed_form_cdm, count_moment_crossings_enum, noncrossing_distribution_count
from separations import enumerate_separations
from verification_service import COMBINATORIAL_D_MAX, ENUMERATION_D_MAX

logger = logging.getLogger("hypercross")

MAX_COUNT_POINTS = 12


class CrossRequest(BaseModel):
    config: PointConfig
    left: List[int]
    right: List[int]


class CountRequest(BaseModel):
    config: PointConfig
    witnesses: bool = False
    hyperedge_size: Optional[int] = None


class VerifyRequest(BaseModel):
    d_min: int = 2
    d_max: int = 4
    trials: int = 25
    seed: int = 42
    config: Optional[PointConfig] = None


@asynccontextmanager
async def lifespan(app: FastAPI):
    logger.info(f"🚀 Serving with {crossing_service.workers} crossing worker(s)")
    yield
    logger.info("🛑 Shutting down")


app = FastAPI(
    title="Hypercross API",
    description="Exact crossing pairs of hyperedges, Gale diagrams and moment-curve bounds",
    version="1.0.0",
    lifespan=lifespan,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


def _bad_request(e: HypercrossError) -> HTTPException:
    logger.warning(f"⚠️ Rejected request: {e}")
    return HTTPException(status_code=400, detail=str(e))


def _to_internal(indices: List[int], n: int) -> List[int]:
    if any(not 1 <= i <= n for i in indices):
        raise ParameterError(f"vertex indices must lie in 1..{n}")
    return [i - 1 for i in indices]


@app.post("/gale")
def gale(config: PointConfig):
    try:
        diagram = gale_transform(config.untrusted())
    except HypercrossError as e:
        raise _bad_request(e)
    return {"m": diagram.m, "k": diagram.k, "vectors": [[str(x) for x in v] for v in diagram.vectors]}


@app.post("/separations")
def separations(config: PointConfig):
    try:
        found = enumerate_separations(gale_transform(config.untrusted()))
    except HypercrossError as e:
        raise _bad_request(e)
    return {
        "count": len(found),
        "proper": sum(1 for s in found if s.is_proper),
        "separations": [s.to_external() for s in found],
    }


@app.post("/cross")
def cross(request: CrossRequest):
    config = request.config.untrusted()
    try:
        u, v = _to_internal(request.left, config.n), _to_internal(request.right, config.n)
        result = sets_cross(config, u, v)
    except HypercrossError as e:
        raise _bad_request(e)
    return {"left": request.left, "right": request.right, "cross": result}


@app.post("/count")
def count(request: CountRequest):
    if request.config.n > MAX_COUNT_POINTS:
        raise HTTPException(status_code=400, detail=f"counting is limited to {MAX_COUNT_POINTS} points over HTTP, got {request.config.n}")
    try:
        report = crossing_service.count(
            request.config.untrusted(),
            hyperedge_size=request.hyperedge_size,
            keep_witnesses=request.witnesses,
        )
    except HypercrossError as e:
        raise _bad_request(e)
    return report.to_external()


@app.get("/bounds")
async def bounds(d_max: int = Query(...), d_min: int = Query(2)):
    try:
        rows = bound_table(d_max, d_min=d_min)
    except HypercrossError as e:
        raise _bad_request(e)
    return [row.model_dump() for row in rows]


@app.get("/moment/{d}")
def moment(d: int):
    if d > COMBINATORIAL_D_MAX:
        raise HTTPException(status_code=400, detail=f"moment counts stop at d = {COMBINATORIAL_D_MAX}")
    try:
        return {
            "d": d,
            "formula": closed_form_cdm(d),
            "enumeration": count_moment_crossings_enum(d) if d <= ENUMERATION_D_MAX else None,
            "noncrossing": noncrossing_distribution_count(d),
        }
    except HypercrossError as e:
        raise _bad_request(e)


# plain def: runs in the threadpool, where the checks can start their own event loop
@app.post("/verify")
def verify(request: VerifyRequest):
    config = request.config.untrusted() if request.config is not None else None
    try:
        report = verification_service.verify(
            d_min=request.d_min,
            d_max=request.d_max,
            trials=request.trials,
            seed=request.seed,
            input_config=config,
        )
    except HypercrossError as e:
        raise _bad_request(e)
    return report.model_dump()
