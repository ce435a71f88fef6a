"""Straight-line representations of rotation graphs on flat tori.

A representation fixes the two periods ``T1, T2`` (complex, with
``Im(T2/T1) > 0``), a position per vertex and an integer lattice offset per
edge.  The edge vector of a representative half-edge ``h`` is::

    x[h] = pos(end) + n1*T1 + n2*T2 - pos(start)

The opposite half-edge gets ``-x[h]``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np

from . import chain_spaces as cs
from .errors import EmbeddingInvalid, InvalidInput
from .rotation_graph import RotationGraph, parallel_classes

TWO_PI = 2.0 * math.pi


@dataclass
class TorusRep:
    graph: RotationGraph
    T1: complex
    T2: complex
    positions: np.ndarray  # complex, one per vertex
    offsets: np.ndarray  # int (E, 2), on edge representatives

    def __post_init__(self):
        self.T1 = complex(self.T1)
        self.T2 = complex(self.T2)
        self.positions = np.asarray(self.positions, dtype=complex).copy()
        self.offsets = np.asarray(self.offsets, dtype=int).reshape(-1, 2).copy()
        if self.positions.shape != (self.graph.n_vertices,):
            raise InvalidInput("one position per vertex required")
        if self.offsets.shape[0] != self.graph.n_edges:
            raise InvalidInput("one offset per edge required")
        if (self.T2 / self.T1).imag <= 0:
            raise InvalidInput("periods must satisfy Im(T2/T1) > 0")

    def edge_vectors(self) -> np.ndarray:
        g = self.graph
        x = np.empty(g.n_edges, dtype=complex)
        for e in range(g.n_edges):
            a, b = g.endpoints(e)
            n1, n2 = self.offsets[e]
            x[e] = self.positions[b] + n1 * self.T1 + n2 * self.T2 - self.positions[a]
        return x

    def lengths(self) -> np.ndarray:
        return np.abs(self.edge_vectors())

    def units(self) -> np.ndarray:
        x = self.edge_vectors()
        return x / np.abs(x)

    def halfedge_vectors(self) -> np.ndarray:
        return cs.halfedge_values(self.graph, self.edge_vectors())

    def with_positions(self, positions) -> "TorusRep":
        return replace(self, positions=np.asarray(positions, dtype=complex))

    def cycle_basis(self):
        return cs.cycle_basis(self.graph, self.offsets)

    def periods(self, cycles=None) -> np.ndarray:
        """Circulation of the edge vectors along each cycle."""
        if cycles is None:
            cycles = self.cycle_basis()
        x = self.edge_vectors()
        return np.array([cs.curl(c, x) for c in cycles])

    def lattice_point(self, homology) -> complex:
        return homology[0] * self.T1 + homology[1] * self.T2


def embedded_graph(T1, T2, positions, edges, vertex_ids=None):
    """Build a rotation graph and representation from straight segments.

    ``positions`` lists one complex position per vertex.  ``edges`` lists
    ``(h, h_opp, start, end, (n1, n2))``.  The rotation at each vertex is
    the counterclockwise order of the outgoing edge vectors, starting from
    the first half-edge of that vertex in the edge list.  Two half-edges at
    a vertex pointing the same way cannot be ordered and raise.
    """
    T1, T2 = complex(T1), complex(T2)
    positions = [complex(p) for p in positions]
    nv = len(positions)
    outgoing = [[] for _ in range(nv)]
    pairs = []
    for h, o, a, b, (n1, n2) in edges:
        x = positions[b] + n1 * T1 + n2 * T2 - positions[a]
        outgoing[a].append((h, x))
        outgoing[b].append((o, -x))
        pairs.append((h, o))
    rotations = []
    for v, out in enumerate(outgoing):
        if not out:
            raise InvalidInput(f"vertex {v} has no edges")
        base = cmath.phase(out[0][1])
        keyed = sorted(out, key=lambda hx: (cmath.phase(hx[1]) - base) % TWO_PI)
        angs = [(cmath.phase(x) - base) % TWO_PI for _, x in keyed]
        for a1, a2 in zip(angs, angs[1:]):
            if abs(a2 - a1) < 1e-12:
                raise InvalidInput(f"parallel half-edges at vertex {v}; give the rotation explicitly")
        rotations.append([h for h, _ in keyed])
    graph = RotationGraph.from_cycles(pairs, rotations, vertex_ids)
    offsets = np.zeros((graph.n_edges, 2), dtype=int)
    ends = {}
    for h, o, a, b, n in edges:
        ends[h] = (a, b, n)
        ends[o] = (b, a, (-n[0], -n[1]))
    for e, (h, _) in enumerate(graph.edges):
        offsets[e] = ends[graph.names[h]][2]
    return graph, TorusRep(graph, T1, T2, np.array(positions), offsets)


# -- validity ------------------------------------------------------------

def _segment_overlap(p, d1, q, d2, tol):
    """True if segments p+s*d1 and q+t*d2 share a point other than a common endpoint."""
    cross = (d1.conjugate() * d2).imag
    w = q - p
    scale = max(abs(d1), abs(d2))
    if abs(cross) > tol * scale * scale:
        s = (w.conjugate() * d2).imag / cross
        t = (w.conjugate() * d1).imag / cross
        e1 = tol * scale / abs(d1)
        e2 = tol * scale / abs(d2)
        if -e1 <= s <= 1 + e1 and -e2 <= t <= 1 + e2:
            s_end = s < e1 or s > 1 - e1
            t_end = t < e2 or t > 1 - e2
            return not (s_end and t_end)
        return False
    # parallel: overlapping only if collinear
    if abs((w.conjugate() * d1).imag) > tol * scale * abs(d1):
        return False
    dd = abs(d1) ** 2
    t0 = (w.conjugate() * d1).real / dd
    t1 = ((w + d2).conjugate() * d1).real / dd
    lo, hi = max(0.0, min(t0, t1)), min(1.0, max(t0, t1))
    return hi - lo > tol * scale / abs(d1)


def geometric_validity(rep: TorusRep, tol=1e-9) -> list[str]:
    """List the problems with the straight-line embedding (empty if valid).

    Checks distinct edge vectors are nonzero, vertices are distinct modulo
    the lattice, parallel edges coincide, and distinct segments meet only
    at endpoints, testing each pair against the nine neighbouring lattice
    translates.
    """
    g = rep.graph
    x = rep.edge_vectors()
    problems = []
    scale = max(abs(rep.T1), abs(rep.T2))
    for e in range(g.n_edges):
        if abs(x[e]) < tol * scale:
            problems.append(f"edge {g.names[g.edges[e][0]]} has zero length")
    if problems:
        return problems

    translates = [m * rep.T1 + n * rep.T2 for m in (-1, 0, 1) for n in (-1, 0, 1)]
    # vertices distinct modulo the lattice
    for a in range(g.n_vertices):
        for b in range(a + 1, g.n_vertices):
            d = rep.positions[b] - rep.positions[a]
            c = _reduce_mod_lattice(d, rep.T1, rep.T2)
            if abs(c) < tol * scale:
                problems.append(f"vertices {g.vertex_ids[a]} and {g.vertex_ids[b]} coincide")

    classes = parallel_classes(g)
    cls_of = {e: k for k, cl in enumerate(classes) for e in cl}
    for cl in classes:
        e0 = cl[0]
        for e in cl[1:]:
            if not _same_segment(rep, e0, e, tol):
                problems.append(f"parallel edges {e0} and {e} are not the same segment")

    starts = np.array([rep.positions[g.endpoints(e)[0]] for e in range(g.n_edges)])
    for e in range(g.n_edges):
        for f in range(e, g.n_edges):
            if cls_of[e] == cls_of[f] and e != f:
                continue
            for tr in translates:
                if e == f and tr == 0:
                    continue
                if _segment_overlap(starts[e], x[e], starts[f] + tr, x[f], tol):
                    problems.append(f"edges {e} and {f} cross")
                    break
    return problems


def _reduce_mod_lattice(d, T1, T2):
    """Representative of ``d`` modulo the lattice closest to 0."""
    m = np.array([[T1.real, T2.real], [T1.imag, T2.imag]])
    a, b = np.linalg.solve(m, [d.real, d.imag])
    best = None
    for i in (math.floor(a), math.ceil(a)):
        for j in (math.floor(b), math.ceil(b)):
            c = d - i * T1 - j * T2
            if best is None or abs(c) < abs(best):
                best = c
    return best


def _same_segment(rep, e, f, tol):
    g = rep.graph
    x = rep.edge_vectors()
    se = rep.positions[g.endpoints(e)[0]]
    sf = rep.positions[g.endpoints(f)[0]]
    for xf, start in ((x[f], sf), (-x[f], sf + x[f])):
        if abs(xf - x[e]) < tol * abs(x[e]):
            c = _reduce_mod_lattice(start - se, rep.T1, rep.T2)
            if abs(c) < tol * abs(x[e]):
                return True
    return False


def rotation_turns(rep: TorusRep) -> list[float]:
    """Total counterclockwise turning (in units of 2*pi) of the wing
    directions around each vertex, following the rotation."""
    g = rep.graph
    xh = rep.halfedge_vectors()
    turns = []
    for cyc in g.vertices:
        total = 0.0
        for j, h in enumerate(cyc):
            k = cyc[(j + 1) % len(cyc)]
            step = (cmath.phase(xh[k]) - cmath.phase(xh[h])) % TWO_PI
            if step > TWO_PI - 1e-12:
                step = 0.0
            total += step
        turns.append(total / TWO_PI)
    return turns


def check_rotation_monotone(rep: TorusRep, tol=1e-9):
    for v, t in enumerate(rotation_turns(rep)):
        if abs(t - 1.0) > tol:
            raise EmbeddingInvalid(
                f"wing directions at {rep.graph.vertex_ids[v]} wind {t:.6g} times, not once")


def validate(rep: TorusRep, tol=1e-9):
    """Raise EmbeddingInvalid unless the representation is a valid embedding."""
    problems = geometric_validity(rep, tol)
    if problems:
        raise EmbeddingInvalid("; ".join(problems))
    check_rotation_monotone(rep, tol)
    periods = rep.periods()
    cycles = rep.cycle_basis()
    for c, p in zip(cycles, periods):
        expected = rep.lattice_point(c.homology)
        if abs(p - expected) > 1e-12 * max(1.0, abs(rep.T1), abs(rep.T2)):
            raise EmbeddingInvalid(f"{c.label} has period {p}, expected {expected}")
