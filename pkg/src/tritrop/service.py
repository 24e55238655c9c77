"""HTTP service exposing the toolkit.

Thin FastAPI wrapper over the core modules; domain errors surface as
422 responses with the error message.  Run with e.g.
`uvicorn tritrop.service:app`.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import schemas
from .exceptions import TritropError
from .formats import parse_graph, parse_polynomial
from .intersection import stable_intersection, tangencies
from .metric_graph import Divisor
from .plane_curve import curve_from_polynomial, degree_profile
from .real_counts import (
    RealTopologyType,
    emch_census,
    lifting_multiplicity,
    odd_even_counts,
    real_theta_counts,
)
from .theta import all_theta_characteristics

app = FastAPI(
    title="tritrop",
    description="Exact tropical curves, theta characteristics and tritangents.",
)


def _divisor_str(D: Divisor) -> str:
    return " ".join(f"{p!r}:{c}" for p, c in D.items()) or "0"


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/genus", response_model=schemas.GenusResponse)
def genus(req: schemas.GraphRequest) -> schemas.GenusResponse:
    try:
        G = parse_graph(req.graph)
    except TritropError as e:
        raise HTTPException(422, str(e))
    return schemas.GenusResponse(genus=G.genus)


@app.post("/theta", response_model=schemas.ThetaResponse)
def theta(req: schemas.GraphRequest) -> schemas.ThetaResponse:
    try:
        G = parse_graph(req.graph)
        thetas = all_theta_characteristics(G)
    except TritropError as e:
        raise HTTPException(422, str(e))
    return schemas.ThetaResponse(
        genus=G.genus,
        count=len(thetas),
        classes=[
            schemas.ThetaClassModel(
                effective=t.effective, divisor=_divisor_str(t.divisor)
            )
            for t in thetas
        ],
    )


def _curve_response(C) -> schemas.CurveResponse:
    prof = degree_profile(C)
    label = (
        f"degree {prof.d}"
        if prof.kind == "degree"
        else f"bidegree {prof.d1} {prof.d2}"
    )
    edges = []
    for e in sorted(C.edges, key=lambda e: (e.kind, e.p, e.d)):
        edges.append(
            schemas.EdgeModel(
                kind=e.kind,
                p=[str(v) for v in e.p],
                d=[int(v) for v in e.d],
                length=None if e.length is None else str(e.length),
                weight=e.weight,
            )
        )
    return schemas.CurveResponse(
        profile=label,
        genus=C.genus,
        vertices=[[str(v[0]), str(v[1])] for v in C.vertices],
        edges=edges,
    )


@app.post("/curve", response_model=schemas.CurveResponse)
def curve(req: schemas.PolynomialRequest) -> schemas.CurveResponse:
    try:
        C = curve_from_polynomial(parse_polynomial(req.polynomial))
        return _curve_response(C)
    except TritropError as e:
        raise HTTPException(422, str(e))


@app.post("/intersect", response_model=schemas.IntersectResponse)
def intersect(req: schemas.IntersectRequest) -> schemas.IntersectResponse:
    try:
        C1 = curve_from_polynomial(parse_polynomial(req.poly1))
        C2 = curve_from_polynomial(parse_polynomial(req.poly2))
        D = stable_intersection(C1, C2)
        evs = tangencies(C1, C2)
    except TritropError as e:
        raise HTTPException(422, str(e))
    return schemas.IntersectResponse(
        points=[
            schemas.IntersectionPointModel(x=str(p[0]), y=str(p[1]), multiplicity=m)
            for p, m in D
        ],
        total=D.total(),
        tangencies=[
            schemas.TangencyModel(
                kind=ev.kind,
                locus=[[str(q[0]), str(q[1])] for q in ev.locus],
            )
            for ev in evs
        ],
    )


@app.post("/tritangents", response_model=schemas.TritangentsResponse)
def tritangents(req: schemas.PolynomialRequest) -> schemas.TritangentsResponse:
    from .tritangent import enumerate_tritangents

    try:
        C = curve_from_polynomial(parse_polynomial(req.polynomial))
        classes = enumerate_tritangents(C)
    except TritropError as e:
        raise HTTPException(422, str(e))
    return schemas.TritangentsResponse(
        count=len(classes),
        classes=[
            schemas.TritangentClassModel(
                partition=list(cls.partition),
                family=cls.family,
                representatives=len(cls.representatives),
                heights=[
                    str(cls.representatives[0].h10),
                    str(cls.representatives[0].h01),
                    str(cls.representatives[0].h11),
                ],
                theta=_divisor_str(cls.theta.divisor),
                contacts=[[str(p[0]), str(p[1]), str(w)] for p, w in cls.contacts],
            )
            for cls in classes
        ],
    )


@app.post("/real-counts", response_model=schemas.RealCountsResponse)
def real_counts(req: schemas.RealCountsRequest) -> schemas.RealCountsResponse:
    try:
        odd, even = odd_even_counts(req.genus)
        out = schemas.RealCountsResponse(
            odd=odd,
            even=even,
            lifting_multiplicity=(
                lifting_multiplicity(req.genus) if req.genus >= 1 else None
            ),
        )
        if req.ovals is not None:
            t = RealTopologyType(req.genus, req.ovals, req.separating)
            out.real_even, out.real_odd = real_theta_counts(t)
    except TritropError as e:
        raise HTTPException(422, str(e))
    return out


@app.get("/emch-census", response_model=schemas.EmchCensusResponse)
def census() -> schemas.EmchCensusResponse:
    c = emch_census()
    return schemas.EmchCensusResponse(
        rows=[
            schemas.CensusRowModel(
                contact=r.contact, count=r.count, derivation=r.derivation
            )
            for r in c.rows
        ],
        total=c.total,
        notes=list(c.notes),
    )


@app.post("/real-search", response_model=schemas.RealSearchResponse)
def real_search(req: schemas.RealSearchRequest) -> schemas.RealSearchResponse:
    from .real_search import clebsch_sextic, emch_sextic, search

    S = clebsch_sextic() if req.fixture == "clebsch" else emch_sextic()
    planes = search(
        S, seeds=req.seeds, rng_seed=req.rng_seed, symmetrize=req.symmetrize
    )
    return schemas.RealSearchResponse(
        count=len(planes),
        planes=[
            schemas.PlaneModel(
                normal=list(p.normal),
                offset=p.offset,
                contacts=[list(q) for q in p.contacts],
                residual=p.residual,
                condition=p.condition,
                label=p.label,
            )
            for p in planes
        ],
    )
