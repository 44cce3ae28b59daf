"""
FastAPI REST API for qrtrap
Provides programmatic access to the reflection bounds, the piecewise map and
majorant scans
"""
import logging
import math
from contextlib import asynccontextmanager
from typing import Dict, List, Tuple

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from src.estimates.bounds import SCAN_COLUMNS, bounds_report, compare_scan, parallelogram_report
from src.geometry.shapes import PlanePoint, make_parallelogram, make_trapezoid
from src.mapping.qcmap import MapEvaluation, forward, inverse
from src.special_functions.elliptic import find_lambda0
from src.utils.config import DEFAULT_SCAN_CONFIG
from src.utils.exceptions import QRError

logger = logging.getLogger(__name__)


# Lifespan context manager for startup/shutdown
@asynccontextmanager
async def lifespan(app: FastAPI):
    """Manage application lifespan - warm the lambda_0 cache on startup"""
    logger.info("Starting up qrtrap API server...")
    try:
        lambda0 = find_lambda0()
        logger.info(f"lambda_0 cached: {lambda0:.10f}")
    except QRError as e:
        logger.error(f"Failed to compute lambda_0: {e}")
        raise

    yield

    logger.info("Shutting down qrtrap API server...")


# Initialize FastAPI app
app = FastAPI(
    title="qrtrap API",
    description="Quasiconformal reflection bounds for isosceles trapezoids and parallelograms",
    version="1.0.0",
    lifespan=lifespan
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


# Pydantic models for request/response
class TrapezoidRequest(BaseModel):
    """Request model for a trapezoid T(alpha, d)"""
    alpha: float = Field(..., description="Acute angle in units of pi, 0 < alpha <= 1/2")
    d: float = Field(..., description="Half-length of the bigger base, d > cot(pi*alpha)")

    class Config:
        json_schema_extra = {
            "example": {
                "alpha": 0.25,
                "d": 2.0
            }
        }


class ParallelogramRequest(BaseModel):
    """Request model for a parallelogram Pi(alpha, a)"""
    alpha: float = Field(..., description="Acute angle in units of pi, 0 < alpha < 1/2")
    a: float = Field(..., description="Length of the horizontal sides, a > cot(pi*alpha)")


class MapRequest(TrapezoidRequest):
    """Request model for map evaluation"""
    points: List[Tuple[float, float]] = Field(..., min_length=1, description="Points (x, y) to evaluate")

    class Config:
        json_schema_extra = {
            "example": {
                "alpha": 0.25,
                "d": 2.0,
                "points": [[1.2, 0.4], [1.0, 1.0]]
            }
        }


class ScanRequest(BaseModel):
    """Request model for a majorant comparison scan"""
    alpha: float = Field(..., description="Acute angle in units of pi")
    c_min: float = Field(DEFAULT_SCAN_CONFIG.C_MIN, description="Smallest half-base c")
    c_max: float = Field(DEFAULT_SCAN_CONFIG.C_MAX, description="Largest half-base c")
    n: int = Field(DEFAULT_SCAN_CONFIG.N, ge=2, le=100000, description="Number of rows")
    log_spacing: bool = Field(DEFAULT_SCAN_CONFIG.LOG_SPACING, description="Space c geometrically")


class BoundsResponse(BaseModel):
    """Response model for trapezoid bounds"""
    alpha: float
    d: float
    c: float
    ell: float
    lower: float
    upper_tau: float
    upper_new: float
    K_tilde: float
    tau: float
    branch: str


class ParallelogramResponse(BaseModel):
    """Response model for the parallelogram bound"""
    alpha: float
    a: float
    half_c: float
    half_d: float
    upper: float
    upper_via_trapezoid: float


class MapPoint(BaseModel):
    x: float
    y: float
    u: float
    v: float
    region: str


class MapResponse(BaseModel):
    """Response model for map evaluations"""
    count: int
    results: List[MapPoint]


class ScanResponse(BaseModel):
    """Response model for scans; rows are in c order"""
    alpha: float
    columns: List[str]
    rows: List[Dict[str, float]]


def _map_point(evaluation: MapEvaluation) -> MapPoint:
    return MapPoint(
        x=evaluation.input.x,
        y=evaluation.input.y,
        u=evaluation.output.x,
        v=evaluation.output.y,
        region=str(evaluation.region),
    )


# Health check endpoint
@app.get("/health", tags=["Health"])
async def health_check():
    """Health check endpoint"""
    return {
        "status": "healthy",
        "message": "qrtrap API is running"
    }


# Bound endpoints
@app.post("/bounds", response_model=BoundsResponse, tags=["Bounds"])
async def trapezoid_bounds(request: TrapezoidRequest):
    """
    Lower and upper bounds for the reflection coefficient of a trapezoid

    - **alpha**: Acute angle in units of pi
    - **d**: Half-length of the bigger base
    """
    try:
        report = bounds_report(make_trapezoid(request.alpha, request.d))
    except (QRError, ValueError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    if not math.isfinite(report.upper_tau):
        raise HTTPException(status_code=400, detail=f"upper_tau overflows for d={request.d}")
    t = report.trapezoid
    return BoundsResponse(
        alpha=t.alpha, d=t.d, c=t.c, ell=t.ell,
        lower=report.lower,
        upper_tau=report.upper_tau,
        upper_new=report.upper_new,
        K_tilde=report.K_tilde,
        tau=report.tau,
        branch=report.branch.value,
    )


@app.post("/bounds/parallelogram", response_model=ParallelogramResponse, tags=["Bounds"])
async def parallelogram_bounds(request: ParallelogramRequest):
    """Upper bound for the reflection coefficient of a parallelogram"""
    try:
        report = parallelogram_report(make_parallelogram(request.alpha, request.a))
    except (QRError, ValueError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    pg = report.parallelogram
    return ParallelogramResponse(
        alpha=pg.alpha, a=pg.a, half_c=pg.half_c, half_d=pg.half_d,
        upper=report.upper,
        upper_via_trapezoid=report.upper_via_trapezoid,
    )


# Map endpoints
@app.post("/map/forward", response_model=MapResponse, tags=["Map"])
async def map_forward(request: MapRequest):
    """Evaluate the piecewise map at each point"""
    try:
        t = make_trapezoid(request.alpha, request.d)
        results = [_map_point(forward(t, PlanePoint(x, y))) for x, y in request.points]
    except (QRError, ValueError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    return MapResponse(count=len(results), results=results)


@app.post("/map/inverse", response_model=MapResponse, tags=["Map"])
async def map_inverse(request: MapRequest):
    """Evaluate the inverse map at each point of the image plane"""
    try:
        t = make_trapezoid(request.alpha, request.d)
        results = [_map_point(inverse(t, PlanePoint(x, y))) for x, y in request.points]
    except (QRError, ValueError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    return MapResponse(count=len(results), results=results)


# Scan endpoint
@app.post("/scan", response_model=ScanResponse, tags=["Bounds"])
async def scan(request: ScanRequest):
    """
    Tabulate lower, upper_tau and upper_new along trapezoids with a fixed angle

    - **alpha**: Acute angle in units of pi
    - **c_min**, **c_max**: Range of the smaller half-base
    - **n**: Number of rows
    """
    try:
        table = compare_scan(request.alpha, request.c_min, request.c_max, request.n, request.log_spacing)
    except (QRError, ValueError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    logger.info(f"Served scan of {len(table)} rows at alpha={request.alpha}")
    return ScanResponse(alpha=request.alpha, columns=SCAN_COLUMNS, rows=table.to_dict(orient='records'))
