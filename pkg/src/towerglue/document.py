"""JSON configuration documents.

Complex numbers are ``[re, im]`` pairs and angles are radians.  Offsets,
phases and weights are given on one half-edge of each edge; the opposite
half-edge follows by antisymmetry (symmetry for weights).  Unknown keys are
rejected.
"""

from __future__ import annotations

import json
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .configuration import Configuration, assemble
from .errors import InvalidInput, ParseError
from .rotation_graph import RotationGraph
from .torus_rep import TorusRep

Pair = tuple[float, float]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class TorusDoc(_Strict):
    T1: Pair
    T2: Pair


class VertexDoc(_Strict):
    id: str
    rotation: list[str]
    position: Pair


class GraphDoc(_Strict):
    halfedges: list[str]
    involution: list[tuple[str, str]]
    vertices: list[VertexDoc]


class EmbeddingDoc(_Strict):
    offsets: dict[str, tuple[int, int]]


class OptionsDoc(_Strict):
    tolerances: dict[str, float] = Field(default_factory=dict)
    K_override: Optional[dict[str, float]] = None


class ConfigDocument(_Strict):
    torus: TorusDoc
    graph: GraphDoc
    embedding: EmbeddingDoc
    phases: Optional[dict[str, float]] = None
    shifts: Optional[Pair] = None
    lambda_: Optional[tuple[Pair, Pair]] = Field(default=None, alias="lambda")
    options: OptionsDoc = Field(default_factory=OptionsDoc)
    name: str = ""


DEFAULT_TOLERANCES = {"balance": 1e-10}


def parse(text: str) -> ConfigDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        return ConfigDocument.model_validate(raw)
    except ValidationError as exc:
        err = exc.errors()[0]
        where = ".".join(str(p) for p in err["loc"]) or "<root>"
        raise ParseError(f"field {where}: {err['msg']}") from None


def load(path) -> ConfigDocument:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse(text)


def _cx(p) -> complex:
    return complex(p[0], p[1])


def _pair(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _per_edge(graph: RotationGraph, values: dict, what: str, sign: bool):
    """Edge array from values on (at least) one half-edge per edge."""
    unknown = set(values) - set(graph.names)
    if unknown:
        raise InvalidInput(f"{what} given for unknown half-edge {sorted(unknown)[0]!r}")
    out = []
    for h, o in graph.edges:
        a, b = graph.names[h], graph.names[o]
        got = []
        if a in values:
            got.append(np.asarray(values[a], dtype=float))
        if b in values:
            v = np.asarray(values[b], dtype=float)
            got.append(-v if sign else v)
        if not got:
            raise InvalidInput(f"{what} missing on edge {a}/{b}")
        if len(got) == 2 and not np.allclose(got[0], got[1], rtol=0, atol=1e-12):
            raise InvalidInput(f"{what} on {a} and {b} violate "
                               f"{'antisymmetry' if sign else 'symmetry'}")
        out.append(got[0])
    return np.array(out)


def build_graph(doc: ConfigDocument) -> RotationGraph:
    g = doc.graph
    listed = [h for v in g.vertices for h in v.rotation]
    if sorted(listed) != sorted(g.halfedges):
        raise InvalidInput("vertex rotations must use every declared half-edge exactly once")
    return RotationGraph.from_cycles(g.involution, [v.rotation for v in g.vertices],
                                     [v.id for v in g.vertices])


def to_representation(doc: ConfigDocument) -> TorusRep:
    """Graph and straight-line representation only; no towers are built, so
    unbalanced documents load too."""
    graph = build_graph(doc)
    offsets = _per_edge(graph, doc.embedding.offsets, "offset", sign=True).astype(int)
    positions = [_cx(v.position) for v in doc.graph.vertices]
    return TorusRep(graph, _cx(doc.torus.T1), _cx(doc.torus.T2), np.array(positions), offsets)


def to_configuration(doc: ConfigDocument, check_geometry=True) -> Configuration:
    rep = to_representation(doc)
    graph = rep.graph
    phases = None if doc.phases is None else _per_edge(graph, doc.phases, "phase", sign=True)
    lam = (0j, 0j) if doc.lambda_ is None else (_cx(doc.lambda_[0]), _cx(doc.lambda_[1]))
    K = None
    if doc.options.K_override is not None:
        K = _per_edge(graph, doc.options.K_override, "K_override", sign=False)
    return assemble(graph, rep, phases, doc.shifts, lam, K, check_geometry=check_geometry,
                    name=doc.name)


def tolerances(doc: ConfigDocument) -> dict:
    unknown = set(doc.options.tolerances) - set(DEFAULT_TOLERANCES)
    if unknown:
        raise InvalidInput(f"unknown tolerance {sorted(unknown)[0]!r}")
    return {**DEFAULT_TOLERANCES, **doc.options.tolerances}


def from_configuration(cfg: Configuration, tolerances=None) -> ConfigDocument:
    """Document describing ``cfg``, values on edge representatives."""
    g, rep = cfg.graph, cfg.rep
    reps = [g.names[h] for h, _ in g.edges]
    vertices = [VertexDoc(id=str(g.vertex_ids[v]), rotation=[g.names[h] for h in cyc],
                          position=_pair(rep.positions[v]))
                for v, cyc in enumerate(g.vertices)]
    options = OptionsDoc(tolerances=dict(tolerances or {}))
    if cfg.K_override is not None:
        options.K_override = {n: float(k) for n, k in zip(reps, cfg.K_override)}
    return ConfigDocument(
        torus=TorusDoc(T1=_pair(rep.T1), T2=_pair(rep.T2)),
        graph=GraphDoc(halfedges=list(g.names),
                       involution=[(g.names[h], g.names[o]) for h, o in g.edges],
                       vertices=vertices),
        embedding=EmbeddingDoc(offsets={n: tuple(int(x) for x in off)
                                        for n, off in zip(reps, rep.offsets)}),
        phases=None if cfg.phases is None else {n: float(p) for n, p in zip(reps, cfg.phases)},
        shifts=None if cfg.shifts is None else tuple(cfg.shifts),
        lambda_=None if not any(cfg.lam) else (_pair(cfg.lam[0]), _pair(cfg.lam[1])),
        options=options,
        name=cfg.name,
    )


def dumps(doc: ConfigDocument) -> str:
    data = doc.model_dump(by_alias=True, exclude_none=True)
    return json.dumps(data, indent=2, sort_keys=True) + "\n"
