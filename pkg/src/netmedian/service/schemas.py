"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from pydantic import BaseModel, Field

from ..centrality import MethodId


class GraphSummary(BaseModel):
    dataset_id: str
    name: str
    path: str
    vertex_count: int
    edge_count: int
    avg_degree: float
    max_degree: int
    degree_ratio: float


class LoadRequest(BaseModel):
    path: str
    name: str | None = None


class RankRequest(BaseModel):
    method: MethodId
    k: int = Field(ge=1)
    seed: int = 0
    suppression: float | None = None  # VoteRank f override


class RankResponse(BaseModel):
    method: MethodId
    k: int
    vertices: list[int]  # original file ids
    compact_vertices: list[int]
    scores: list[float] | None = None


class EvaluateRequest(BaseModel):
    vertices: list[int]
    compact_ids: bool = False  # original file ids by default


class EvaluateResponse(BaseModel):
    k: int
    farness: int
    avg_distance: float


class ExpectedValueModel(BaseModel):
    k: int
    exact: float | None
    sampled: float
    sample_count: int
    sample_stddev: float
    stderr: float


class ExactRequest(BaseModel):
    k: int = Field(ge=1)
    budget: int | None = None
    max_sets: int = Field(default=1000, ge=1)
    include_expected: bool = True


class ExactResponse(BaseModel):
    k: int
    optimal_value: float
    optimal_farness: int
    optimal_sets: list[list[int]]  # original ids
    optimal_set_count: int
    subsets_examined: int
    expected: ExpectedValueModel | None = None


class SampleRequest(BaseModel):
    k: int = Field(ge=1)
    n: int = Field(default=100, ge=1)
    seed: int = 0


class HistogramRequest(BaseModel):
    k: int = Field(ge=1)
    bin_width: float | None = None
    budget: int | None = None


class HistogramBin(BaseModel):
    value: float
    count: int


class HistogramResponse(BaseModel):
    k: int
    bin_width: float | None
    total: int
    bins: list[HistogramBin]


class BenchRequest(BaseModel):
    """Either a spec file body in ``spec_text`` or explicit fields."""

    spec_text: str | None = None
    datasets: list[str] = []
    methods: list[MethodId] = []
    k_max: int = 100
    n: int = 100
    seed: int = 0
    outdir: str = "results"
    data_root: str | None = None


class BenchResponse(BaseModel):
    outdir: str
    files: list[str]
    record_count: int
    networks: list[str]
    failures: list[tuple[str, str]]


class RegistryEntryModel(BaseModel):
    name: str
    path: str
    vertex_count: int | None
    edge_count: int | None
    url: str | None
