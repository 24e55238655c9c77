"""Request and response models for the HTTP service.

Exact rationals travel as strings in the text formats of
:mod:`tritrop.formats`; floats appear only in the real-search payloads.
"""

from __future__ import annotations

from typing import List, Literal, Optional

from pydantic import BaseModel, Field


class GraphRequest(BaseModel):
    graph: str = Field(description="metric graph, `u v length` lines")


class GenusResponse(BaseModel):
    genus: int


class ThetaClassModel(BaseModel):
    effective: bool
    divisor: str


class ThetaResponse(BaseModel):
    genus: int
    count: int
    classes: List[ThetaClassModel]


class PolynomialRequest(BaseModel):
    polynomial: str = Field(description="tropical polynomial, `i j h` lines")


class EdgeModel(BaseModel):
    kind: Literal["segment", "ray"]
    p: List[str]
    d: List[int]
    length: Optional[str] = None
    weight: int


class CurveResponse(BaseModel):
    profile: str
    genus: int
    vertices: List[List[str]]
    edges: List[EdgeModel]


class IntersectRequest(BaseModel):
    poly1: str
    poly2: str


class IntersectionPointModel(BaseModel):
    x: str
    y: str
    multiplicity: int


class TangencyModel(BaseModel):
    kind: Literal["point", "segment"]
    locus: List[List[str]]


class IntersectResponse(BaseModel):
    points: List[IntersectionPointModel]
    total: int
    tangencies: List[TangencyModel]


class TritangentClassModel(BaseModel):
    partition: List[int]
    family: bool
    representatives: int
    heights: List[str] = Field(description="(1,1)-curve heights h10, h01, h11")
    theta: str
    contacts: List[List[str]]


class TritangentsResponse(BaseModel):
    count: int
    classes: List[TritangentClassModel]


class RealCountsRequest(BaseModel):
    genus: int = Field(ge=0)
    ovals: Optional[int] = None
    separating: bool = False


class RealCountsResponse(BaseModel):
    odd: int
    even: int
    lifting_multiplicity: Optional[int] = None
    real_even: Optional[int] = None
    real_odd: Optional[int] = None


class CensusRowModel(BaseModel):
    contact: str
    count: int
    derivation: str


class EmchCensusResponse(BaseModel):
    rows: List[CensusRowModel]
    total: int
    notes: List[str]


class RealSearchRequest(BaseModel):
    fixture: Literal["clebsch", "emch"]
    seeds: int = Field(10_000, ge=1, le=200_000)
    rng_seed: int = 0
    symmetrize: bool = True


class PlaneModel(BaseModel):
    normal: List[float]
    offset: float
    contacts: List[List[float]]
    residual: float
    condition: float
    label: str


class RealSearchResponse(BaseModel):
    count: int
    planes: List[PlaneModel]
