from fastapi import FastAPI, HTTPException, status, Query
from fastapi.middleware.cors import CORSMiddleware
from contextlib import asynccontextmanager
from typing import List

from catalog_ops import CatalogOperations
from catalog_store import CatalogStore, get_catalog
from classifier import classify
from errors import ParseError, WalkError
from models import ClassificationRecord, Nature
from schemas import (
    CatalogStatsSchema,
    CountResponseSchema,
    HealthCheckSchema,
    MessageResponseSchema,
)
from series_lab import count_walks
from walk_model import StepSet


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Manage application lifespan"""
    # Startup
    CatalogStore.get_catalog()

    yield

    # Shutdown
    CatalogStore.close()


# Initialize FastAPI app
app = FastAPI(
    title="Quarter-Plane Walks API",
    description="Group, norm and orbit-sum classification of small-step quadrant walks",
    version="1.0.0",
    lifespan=lifespan
)

# Add CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


def _parse_steps(steps: str) -> StepSet:
    try:
        return StepSet.parse(steps)
    except ParseError as e:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(e))


@app.get("/", response_model=MessageResponseSchema, tags=["Root"])
async def root():
    """Root endpoint"""
    return {"message": "Welcome to the Quarter-Plane Walks API"}


@app.get("/health", response_model=HealthCheckSchema, tags=["Health"])
async def health_check():
    """Check API and catalog health"""
    try:
        catalog = get_catalog()
        return {
            "status": "healthy",
            "catalog": "loaded",
            "message": f"{len(catalog.models)} models available"
        }
    except Exception as e:
        raise HTTPException(
            status_code=status.HTTP_503_SERVICE_UNAVAILABLE,
            detail=f"Catalog unavailable: {str(e)}"
        )


@app.get("/models/", response_model=List[ClassificationRecord], tags=["Models"])
async def get_all_models(
    skip: int = Query(0, ge=0, description="Number of models to skip"),
    limit: int = Query(100, ge=1, le=1000, description="Number of models to return")
):
    """Get all canonical models with pagination"""
    ops = CatalogOperations(get_catalog())

    models, total = ops.get_all(skip=skip, limit=limit)
    return models


@app.get("/models/finite/", response_model=List[ClassificationRecord], tags=["Models"])
async def get_finite_models(
    skip: int = Query(0, ge=0),
    limit: int = Query(100, ge=1, le=1000)
):
    """Get models whose group is finite"""
    ops = CatalogOperations(get_catalog())

    models, total = ops.get_finite(skip=skip, limit=limit)
    return models


@app.get("/models/nature/{nature}", response_model=List[ClassificationRecord], tags=["Models"])
async def get_models_by_nature(
    nature: Nature,
    skip: int = Query(0, ge=0),
    limit: int = Query(100, ge=1, le=1000)
):
    """Get models by verdict"""
    ops = CatalogOperations(get_catalog())

    models, total = ops.get_by_nature(nature, skip=skip, limit=limit)
    return models


@app.get("/models/{mask}", response_model=ClassificationRecord, tags=["Models"])
async def get_model(mask: int):
    """Get a single model by canonical mask"""
    ops = CatalogOperations(get_catalog())

    record = ops.get_by_mask(mask)

    if not record:
        raise HTTPException(
            status_code=status.HTTP_404_NOT_FOUND,
            detail=f"Model with mask {mask} not found"
        )

    return record


@app.get("/classify", response_model=ClassificationRecord, tags=["Classification"])
async def classify_steps(
    steps: str = Query(..., min_length=1, description="Step set, e.g. NE,W,S or 0b10011000")
):
    """Classify any step set, canonical or not"""
    S = _parse_steps(steps)
    try:
        return classify(S)
    except WalkError as e:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(e))


@app.get("/count", response_model=CountResponseSchema, tags=["Counting"])
async def count(
    steps: str = Query(..., min_length=1),
    kmax: int = Query(10, ge=0, le=200, description="Largest walk length")
):
    """Number of quadrant walks and excursions by length"""
    S = _parse_steps(steps)
    box = count_walks(S, kmax)

    return {
        "steps": str(S),
        "kmax": kmax,
        "total": [int(box.counts[:, :, k].sum()) for k in range(kmax + 1)],
        "excursions": [int(box.counts[0, 0, k]) for k in range(kmax + 1)]
    }


@app.get("/stats/summary", response_model=CatalogStatsSchema, tags=["Statistics"])
async def get_summary():
    """Census summary counts"""
    ops = CatalogOperations(get_catalog())

    return ops.summary()
