"""
CKS Analysis Service - Main Application
Stateless JSON API over the CKS library: rank nodes, simulate Independent
Cascade and measure seed spread for an edge list posted in the request.

Run:
    python main.py
"""

import logging
import time
from contextlib import asynccontextmanager
from typing import List, Literal, Optional

import psutil
from fastapi import FastAPI, HTTPException, Request
from pydantic import BaseModel, Field

import config
from cks.diffusion import DiffusionConfig, monte_carlo
from cks.errors import GraphParseError, InvalidParameterError
from cks.graph import Graph, parse_edge_list
from cks.methods import COMMUNITY_METHODS, METHODS, score_method
from cks.metrics import aspl_among_seeds

logging.basicConfig(level=config.LOG_LEVEL, format=config.LOG_FORMAT)
logger = logging.getLogger("cks.service")


# =====================================================
# PYDANTIC MODELS
# =====================================================
class GraphPayload(BaseModel):
    edges: str  # edge list text, same format as the CLI input
    directed: bool = False


class RankRequest(GraphPayload):
    method: str = "cks"
    seed: int = Field(0, ge=0)
    top: Optional[int] = Field(None, ge=1)
    resolution: float = Field(config.DEFAULT_RESOLUTION, gt=0.0)
    exclude_own_community: bool = False
    enc_mode: Literal["extended", "basic"] = "extended"


class SimulateRequest(GraphPayload):
    seeds: List[str]  # node labels
    p: float = Field(config.DEFAULT_P, ge=0.0, le=1.0)
    runs: int = Field(config.DEFAULT_RUNS, ge=1, le=100000)
    seed: int = Field(0, ge=0)


class AsplRequest(GraphPayload):
    seeds: List[str]


# =====================================================
# LIFECYCLE
# =====================================================
@asynccontextmanager
async def lifespan(app: FastAPI):
    logger.info(f"🚀 Starting CKS analysis service v{config.VERSION}")
    yield
    logger.info("🔄 Shutting down...")


app = FastAPI(
    title="CKS Analysis Service",
    description="Community K-Shell centrality and Independent Cascade simulation",
    version=config.VERSION,
    lifespan=lifespan,
)


# =====================================================
# MIDDLEWARE - TIMING
# =====================================================
@app.middleware("http")
async def log_request_time(request: Request, call_next):
    start_time = time.time()
    response = await call_next(request)
    response_time = (time.time() - start_time) * 1000
    logger.info(f"{request.method} {request.url.path} -> {response.status_code} ({response_time:.1f} ms)")
    return response


# =====================================================
# HELPERS
# =====================================================
def load_graph(payload: GraphPayload) -> Graph:
    try:
        g = parse_edge_list(payload.edges, directed=payload.directed)
    except GraphParseError as e:
        raise HTTPException(status_code=400, detail=f"Edge list error: {e}")
    if g.edge_count > config.MAX_UPLOAD_EDGES:
        raise HTTPException(
            status_code=413,
            detail=f"Graph has {g.edge_count} edges, limit is {config.MAX_UPLOAD_EDGES}",
        )
    return g


def seed_ids(g: Graph, labels: List[str]) -> List[int]:
    try:
        return [g.id_of(label) for label in labels]
    except InvalidParameterError as e:
        raise HTTPException(status_code=422, detail=str(e))


# =====================================================
# API - SERVICE
# =====================================================
@app.get("/health")
async def health():
    """Health check"""
    memory = psutil.virtual_memory()
    return {
        "status": "ok",
        "service": "cks-analysis",
        "version": config.VERSION,
        "cpu_percent": round(psutil.cpu_percent(interval=None), 1),
        "ram_percent": round(memory.percent, 1),
    }


@app.get("/api/config")
async def get_public_config():
    """Protocol defaults and available ranking methods"""
    return {
        "methods": sorted(METHODS),
        "default_p": config.DEFAULT_P,
        "default_runs": config.DEFAULT_RUNS,
        "default_sweep_fraction": config.DEFAULT_SWEEP_FRACTION,
        "default_resolution": config.DEFAULT_RESOLUTION,
        "max_upload_edges": config.MAX_UPLOAD_EDGES,
    }


# =====================================================
# API - ANALYSIS
# =====================================================
@app.post("/api/rank")
def rank_nodes(body: RankRequest):
    """Rank nodes by a centrality; ties broken by ascending node id"""
    g = load_graph(body)
    if body.method not in METHODS:
        raise HTTPException(status_code=422, detail=f"Unknown method {body.method!r}")

    started = time.perf_counter()
    try:
        table = score_method(
            g,
            body.method,
            seed=body.seed,
            resolution=body.resolution,
            exclude_own_community=body.exclude_own_community,
            enc_mode=body.enc_mode,
        )
    except InvalidParameterError as e:
        raise HTTPException(status_code=422, detail=str(e))
    seconds = time.perf_counter() - started

    count = min(body.top or g.node_count, g.node_count)
    return {
        "status": "success",
        "method": table.method,
        "node_count": g.node_count,
        "edge_count": g.edge_count,
        "seconds": round(seconds, 3),
        "timing_includes_community_detection": body.method in COMMUNITY_METHODS,
        "ranking": [
            {"rank": position, "node_label": g.labels[v], "score": float(table.scores[v])}
            for position, v in enumerate(table.top(count), start=1)
        ],
    }


@app.post("/api/simulate")
def simulate(body: SimulateRequest):
    """Monte-Carlo Independent Cascade from the given seed labels"""
    g = load_graph(body)
    seeds = seed_ids(g, body.seeds)
    try:
        cfg = DiffusionConfig(activation_probability=body.p, runs=body.runs, master_seed=body.seed)
        outcome = monte_carlo(g, seeds, cfg)
    except InvalidParameterError as e:
        raise HTTPException(status_code=422, detail=str(e))

    return {
        "status": "success",
        "node_count": g.node_count,
        "seed_count": outcome.seed_count,
        "infected": outcome.counts.tolist(),
        "mean_fis": outcome.mean_fis,
        "std_fis": outcome.std_fis,
        "std_error": outcome.std_error,
    }


@app.post("/api/aspl")
def seed_aspl(body: AsplRequest):
    """Average shortest-path length among the given seeds"""
    g = load_graph(body)
    seeds = seed_ids(g, body.seeds)
    try:
        result = aspl_among_seeds(g, seeds)
    except InvalidParameterError as e:
        raise HTTPException(status_code=422, detail=str(e))

    return {
        "status": "success",
        "seed_count": result.seed_count,
        "reachable_pairs": result.reachable_pairs,
        "unreachable_pairs": result.unreachable_pairs,
        "aspl": result.mean,
    }


# =====================================================
# END OF MAIN.PY
# =====================================================
if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host=config.APP_HOST, port=config.APP_PORT)
