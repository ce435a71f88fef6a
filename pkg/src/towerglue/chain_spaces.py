"""Fields on half-edges, cuts, cycles and the minimal divergence.

Conventions
-----------
A field on half-edges is *antisymmetric* if ``f[inv h] = -f[h]`` and
*symmetric* if ``f[inv h] = f[h]``.  Both kinds are stored as arrays indexed
by edge, holding the value on the edge representative (see
:class:`~towerglue.rotation_graph.RotationGraph`).

Cuts and cycles are stored as integer coefficient vectors over edges: the
coefficient of edge ``e`` counts how often its representative occurs minus
how often the opposite half-edge occurs.  With that, the divergence through
a cut and the circulation along a cycle of an antisymmetric field are both
plain dot products.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import DegenerateLattice, RankDeficient, TooManyVertices
from .rotation_graph import RotationGraph

MAX_CUT_VERTICES = 16
TIE_RTOL = 1e-9


# -- fields ---------------------------------------------------------------

def halfedge_values(graph: RotationGraph, edge_values, antisymmetric=True) -> np.ndarray:
    """Expand an edge-indexed field to one value per half-edge."""
    vals = np.asarray(edge_values)[graph.edge_of]
    if antisymmetric:
        vals = vals * graph.edge_sign
    return vals


def antisymmetric_part(graph: RotationGraph, f_half) -> np.ndarray:
    """``f[h] - f[inv h]`` on each edge representative."""
    f_half = np.asarray(f_half)
    reps = np.array([h for h, _ in graph.edges])
    opps = np.array([o for _, o in graph.edges])
    return f_half[reps] - f_half[opps]


def symmetric_part(graph: RotationGraph, f_half) -> np.ndarray:
    f_half = np.asarray(f_half)
    reps = np.array([h for h, _ in graph.edges])
    opps = np.array([o for _, o in graph.edges])
    return f_half[reps] + f_half[opps]


def decompose(graph: RotationGraph, f_half):
    """Half-edge arrays ``(f - f o inv, f + f o inv)``; their mean is ``f``."""
    f_half = np.asarray(f_half)
    return f_half - f_half[graph.inv], f_half + f_half[graph.inv]


def grad(graph: RotationGraph, f_vertex) -> np.ndarray:
    """Antisymmetric field ``f(end) - f(start)`` from a vertex function."""
    f_vertex = np.asarray(f_vertex)
    out = np.empty(graph.n_edges, dtype=f_vertex.dtype)
    for e in range(graph.n_edges):
        a, b = graph.endpoints(e)
        out[e] = f_vertex[b] - f_vertex[a]
    return out


# -- cuts -----------------------------------------------------------------

@dataclass(frozen=True)
class Cut:
    """Half-edges leaving the vertex set ``side``."""
    side: frozenset
    halfedges: tuple
    coeffs: np.ndarray = field(compare=False, repr=False)

    @property
    def is_vertex_cut(self) -> bool:
        return len(self.side) == 1


def cut(graph: RotationGraph, side) -> Cut:
    side = frozenset(int(v) for v in side)
    hs = []
    coeffs = np.zeros(graph.n_edges, dtype=int)
    for h in range(graph.n_halfedges):
        if graph.vertex_of[h] in side and graph.vertex_of[graph.inv[h]] not in side:
            hs.append(h)
            coeffs[graph.edge_of[h]] += graph.edge_sign[h]
    return Cut(side, tuple(hs), coeffs)


def vertex_cut(graph: RotationGraph, v: int) -> Cut:
    return cut(graph, [v])


def cut_basis(graph: RotationGraph) -> list[Cut]:
    """Vertex cuts of every vertex but the last."""
    return [vertex_cut(graph, v) for v in range(graph.n_vertices - 1)]


def all_cuts(graph: RotationGraph) -> list[Cut]:
    """Every nonempty cut, each once, oriented away from the side holding vertex 0.

    There are ``2**(V-1) - 1`` of them; graphs with more than
    ``MAX_CUT_VERTICES`` vertices are refused.
    """
    nv = graph.n_vertices
    if nv > MAX_CUT_VERTICES:
        raise TooManyVertices(f"{nv} vertices; cut enumeration is limited to {MAX_CUT_VERTICES}")
    others = range(1, nv)
    out = []
    for size in range(0, nv - 1):
        for extra in combinations(others, size):
            out.append(cut(graph, (0,) + extra))
    return out


def div(c: Cut, f_edge) -> complex:
    return np.dot(c.coeffs, f_edge)


# -- cycles ---------------------------------------------------------------

@dataclass(frozen=True)
class Cycle:
    """Closed walk (or integer combination of walks) as edge coefficients.

    ``homology`` is the class in Z^2 with respect to the torus periods.
    """
    coeffs: np.ndarray = field(repr=False)
    homology: tuple
    label: str = ""


def walk_coeffs(graph: RotationGraph, halfedges) -> np.ndarray:
    coeffs = np.zeros(graph.n_edges, dtype=int)
    for h in halfedges:
        coeffs[graph.edge_of[h]] += graph.edge_sign[h]
    return coeffs


def curl(c: Cycle, f_edge) -> complex:
    return np.dot(c.coeffs, f_edge)


def homology_class(coeffs, offsets) -> tuple:
    v = np.asarray(coeffs) @ np.asarray(offsets, dtype=int).reshape(-1, 2)
    return int(v[0]), int(v[1])


def face_cycles(graph: RotationGraph, offsets) -> list[Cycle]:
    out = []
    for i, f in enumerate(graph.faces):
        co = walk_coeffs(graph, f)
        out.append(Cycle(co, homology_class(co, offsets), f"face{i}"))
    return out


def _spanning_tree(graph: RotationGraph):
    """BFS tree from vertex 0: parent edge (signed half-edge) per vertex."""
    parent_h = [-1] * graph.n_vertices
    seen = [False] * graph.n_vertices
    seen[0] = True
    tree_edges = set()
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for h in graph.vertices[v]:
            w = int(graph.vertex_of[graph.inv[h]])
            if not seen[w]:
                seen[w] = True
                parent_h[w] = h
                tree_edges.add(int(graph.edge_of[h]))
                queue.append(w)
    return parent_h, tree_edges


def tree_path_coeffs(graph: RotationGraph, parent_h, v: int) -> np.ndarray:
    """Coefficients of the tree path from vertex 0 to ``v``."""
    coeffs = np.zeros(graph.n_edges, dtype=int)
    while v != 0:
        h = parent_h[v]
        coeffs[graph.edge_of[h]] += graph.edge_sign[h]
        v = int(graph.vertex_of[h])
    return coeffs


def spanning_tree(graph: RotationGraph):
    return _spanning_tree(graph)


def fundamental_cycles(graph: RotationGraph, offsets) -> list[Cycle]:
    parent_h, tree = _spanning_tree(graph)
    out = []
    for e in range(graph.n_edges):
        if e in tree:
            continue
        a, b = graph.endpoints(e)
        co = tree_path_coeffs(graph, parent_h, a) - tree_path_coeffs(graph, parent_h, b)
        co[e] += 1
        out.append(Cycle(co, homology_class(co, offsets), f"fund{e}"))
    return out


def _lattice_generators(vectors):
    """Integer combinations of ``vectors`` (list of 2-vectors) giving e1, e2.

    Column reduction on the 2 x m matrix.  Raises DegenerateLattice when
    the vectors do not generate Z^2.
    """
    m = len(vectors)
    cols = [[np.array(v, dtype=object), np.eye(m, dtype=int)[i].astype(object)]
            for i, v in enumerate(vectors)]

    def reduce_row(row, pool):
        while True:
            live = [c for c in pool if c[0][row] != 0]
            if len(live) <= 1:
                return live[0] if live else None
            piv = min(live, key=lambda c: abs(c[0][row]))
            for c in live:
                if c is piv:
                    continue
                q = c[0][row] // piv[0][row]
                c[0] = c[0] - q * piv[0]
                c[1] = c[1] - q * piv[1]

    a = reduce_row(0, cols)
    if a is None:
        raise DegenerateLattice("no cycle winds along the first period")
    rest = [c for c in cols if c is not a]
    b = reduce_row(1, rest)
    if b is None or abs(a[0][0] * b[0][1]) != 1:
        raise DegenerateLattice("cycle classes do not generate the period lattice")
    a11, a21, b22 = a[0][0], a[0][1], b[0][1]
    e1 = a11 * (a[1] - a21 * b22 * b[1])
    e2 = b22 * b[1]
    return np.array(e1, dtype=int), np.array(e2, dtype=int)


def cycle_basis(graph: RotationGraph, offsets) -> list[Cycle]:
    """All faces but the last, then cycles in the classes (1,0) and (0,1)."""
    faces = face_cycles(graph, offsets)
    for f in faces:
        if f.homology != (0, 0):
            raise DegenerateLattice(f"{f.label} is not null-homologous")
    fund = fundamental_cycles(graph, offsets)
    k1, k2 = _lattice_generators([c.homology for c in fund])
    mat = np.array([c.coeffs for c in fund], dtype=int).reshape(len(fund), graph.n_edges)
    c1 = k1 @ mat
    c2 = k2 @ mat
    return faces[:-1] + [Cycle(c1, homology_class(c1, offsets), "c1"),
                         Cycle(c2, homology_class(c2, offsets), "c2")]


# -- minimal divergence ---------------------------------------------------

def shortest_coeffs(c: Cut, lengths, rtol=TIE_RTOL) -> np.ndarray:
    """Cut coefficients restricted to the edges of minimal length in the cut."""
    lengths = np.asarray(lengths, dtype=float)
    members = np.nonzero(c.coeffs)[0]
    if len(members) == 0:
        return np.zeros_like(c.coeffs)
    lmin = lengths[members].min()
    keep = np.abs(lengths - lmin) <= rtol * lmin
    return np.where(keep, c.coeffs, 0)


def minimal_length(c: Cut, lengths) -> float:
    members = np.nonzero(c.coeffs)[0]
    return float(np.asarray(lengths)[members].min())


def mdiv(c: Cut, f_edge, lengths, rtol=TIE_RTOL):
    return np.dot(shortest_coeffs(c, lengths, rtol), f_edge)


def mdiv_eps(c: Cut, f_edge, lengths, eps: float):
    """Exponentially weighted divergence; tends to :func:`mdiv` as eps -> 0."""
    lengths = np.asarray(lengths, dtype=float)
    lb = minimal_length(c, lengths)
    w = np.exp((lb - lengths) / eps**2)
    return np.dot(c.coeffs * w, f_edge)


def mdiv_matrix(cuts, lengths, rtol=TIE_RTOL) -> np.ndarray:
    rows = [shortest_coeffs(c, lengths, rtol) for c in cuts]
    return np.array(rows, dtype=float).reshape(len(rows), len(lengths))


def _rank(rows, rtol=1e-8) -> int:
    if len(rows) == 0:
        return 0
    s = np.linalg.svd(np.asarray(rows, dtype=float), compute_uv=False)
    return int(np.sum(s > rtol * s[0])) if s[0] > 0 else 0


def mdiv_cut_basis(graph: RotationGraph, lengths, rtol=TIE_RTOL) -> list[Cut]:
    """Cuts whose minimal-divergence rows are linearly independent.

    Greedy over vertex cuts first, then the remaining cuts.  The result has
    ``V - 1`` members and is also a basis of the cut space.
    """
    target = graph.n_vertices - 1
    if target == 0:
        return []
    candidates = [vertex_cut(graph, v) for v in range(graph.n_vertices)]
    seen = {c.side for c in candidates}
    for c in all_cuts(graph):
        complement = frozenset(range(graph.n_vertices)) - c.side
        if c.side not in seen and complement not in seen:
            candidates.append(c)
    chosen, rows = [], []
    for c in candidates:
        row = shortest_coeffs(c, lengths, rtol)
        if _rank(rows + [row]) > len(rows):
            chosen.append(c)
            rows.append(row)
            if len(chosen) == target:
                break
    if len(chosen) < target:
        raise RankDeficient(f"minimal divergence has rank {len(chosen)} < {target}")
    if _rank([c.coeffs for c in chosen]) < target:
        raise RankDeficient("selected cuts do not span the cut space")
    return chosen


def mdiv_rank(graph: RotationGraph, lengths, rtol=TIE_RTOL) -> int:
    """Rank of the minimal divergence over all cuts."""
    return _rank(mdiv_matrix(all_cuts(graph), lengths, rtol))


def grad_matrix(graph: RotationGraph) -> np.ndarray:
    """(E, V) matrix of :func:`grad`."""
    out = np.zeros((graph.n_edges, graph.n_vertices), dtype=int)
    for e in range(graph.n_edges):
        a, b = graph.endpoints(e)
        out[e, b] += 1
        out[e, a] -= 1
    return out


def operators(graph: RotationGraph, rep=None) -> dict:
    """Matrices of grad, div (vertex cut basis), curl (cycle basis) and,
    when a representation is given, mdiv on the minimal-divergence basis."""
    ops = {"grad": grad_matrix(graph),
           "div": np.array([c.coeffs for c in cut_basis(graph)], dtype=int)
           .reshape(-1, graph.n_edges)}
    if rep is not None:
        ops["curl"] = np.array([c.coeffs for c in rep.cycle_basis()], dtype=int)
        lengths = rep.lengths()
        ops["mdiv"] = mdiv_matrix(mdiv_cut_basis(graph, lengths), lengths)
    return ops
