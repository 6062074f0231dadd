from __future__ import annotations

import hashlib
import json
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field, field_validator

from .sim.noise import parse_grid


class BitMatrixJson(BaseModel):
    """Dense GF(2) matrix, one '0'/'1' string per row"""
    rows: int = Field(..., ge=0)
    cols: int = Field(..., ge=0)
    row_strings: List[str]


class StabilizerCodeJson(BaseModel):
    """Stabilizer code export; Pauli strings with qubit 1 leftmost"""
    n: int = Field(..., ge=1)
    k: int = Field(..., ge=0)
    generators: List[str]
    logical_x: str
    logical_z: str


class SmCodeJson(BaseModel):
    """Syndrome-measurement code export"""
    l: int = Field(..., ge=1)
    n_sm: int = Field(..., ge=1)
    rows: List[str]
    distance: Optional[int] = None


class MeasuredElementJson(BaseModel):
    """One measured stabilizer-group element, for audit"""
    index: int
    pauli: str
    weight: int
    generators: List[int]


class MeasuredSetReport(BaseModel):
    code: str
    stabilizer_code: StabilizerCodeJson
    sm_code: str
    sm_params: List[int]
    max_weight: int
    weight_histogram: Dict[int, int]
    effective_distance: int
    elements: List[MeasuredElementJson]
    manifest_hash: str = ""


class VerifyReport(BaseModel):
    """Parameters of one loaded or built SM code against what it declares"""
    name: str
    n: int
    k: int
    d: int
    declared: Optional[List[int]] = None
    column_weights: List[int]
    row_weights: List[int]
    d_max_bound: int
    tanner_girth: Optional[int] = None
    improvement_factor: str
    repetition_equivalent: int
    passed: bool
    manifest_hash: str = ""


class ConstructReport(BaseModel):
    """Outcome of a PEG + QC-PEG construction run"""
    name: str
    n_c: int
    n_v: int
    lifting_factor: int
    symbol_degrees: List[int]
    check_degrees: List[int]
    protograph: List[List[int]]
    seed: int
    restarts_tried: int
    n: int
    k: int
    d: int
    d_max_bound: int
    four_cycle_free: bool
    tanner_girth: Optional[int] = None
    parity_check: BitMatrixJson
    manifest_hash: str = ""


class RunConfig(BaseModel):
    """Merged YAML config plus command-line overrides"""
    seed: Optional[int] = None
    trials: int = Field(10_000, ge=1)
    wq_max: int = Field(4, ge=0)
    wm_max: Union[int, Literal["auto"]] = "auto"
    tail_tolerance: float = Field(1e-6, gt=0)
    exhaustive_cap: int = Field(1_000_000, ge=0)
    sm_decoder_t: Optional[int] = Field(None, ge=0)
    quantum_decoder_t: int = Field(2, ge=0)
    sm_table_cap: int = Field(2_000_000, ge=1)
    quantum_table_cap: int = Field(2_000_000, ge=1)
    qubit_ratio: float = Field(5.0, gt=0)
    grid: str = "0.001:0.1:9,log"
    model: Literal["meas", "combined"] = "meas"
    code: str = "rsc:5"
    fixtures: Optional[List[str]] = None
    include_repetition: bool = True
    repetition_factor: int = Field(5, ge=1)
    workers: int = Field(1, ge=1)
    restarts: int = Field(20, ge=1)
    validation_points: List[float] = Field(default_factory=lambda: [0.03, 0.05, 0.1])
    direct_trials: int = Field(100_000, ge=1)

    @field_validator("grid")
    @classmethod
    def _grid_parses(cls, v: str) -> str:
        parse_grid(v)
        return v

    @field_validator("wm_max")
    @classmethod
    def _wm_max_nonnegative(cls, v: Union[int, str]) -> Union[int, str]:
        if isinstance(v, int) and v < 0:
            raise ValueError("wm_max must be >= 0 or 'auto'")
        return v


def manifest_digest(payload: Dict[str, Any]) -> str:
    """SHA-256 over the canonical JSON form of a manifest payload."""
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode("utf-8")).hexdigest()


class CommandManifest(BaseModel):
    """Inputs of a verify, construct or encode run"""
    command: str
    arguments: Dict[str, Any]
    versions: Dict[str, str]
    config: Optional[RunConfig] = None
    manifest_hash: str = ""

    def with_hash(self) -> "CommandManifest":
        payload = self.model_dump(exclude={"manifest_hash"}, mode="json")
        return self.model_copy(update={"manifest_hash": manifest_digest(payload)})


class RunManifest(BaseModel):
    """Everything needed to rerun a simulate or validate command"""
    command: str
    fixtures: List[str]
    seed: int
    grid: List[float]
    model: str
    versions: Dict[str, str]
    config: RunConfig
    truncations: Dict[str, int] = Field(default_factory=dict)
    manifest_hash: str = ""

    def with_hash(self) -> "RunManifest":
        payload = self.model_dump(exclude={"manifest_hash"}, mode="json")
        return self.model_copy(update={"manifest_hash": manifest_digest(payload)})
