"""Ready-made torus graphs and configurations.

Families with one or two vertices and two faces (the genus three towers),
triangular lattices, the doubled honeycomb, the three-line graph and a
rectangular grid used to show why non-vertex cuts matter.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import chain_spaces as cs
from . import horizontal as hz
from . import vertical as vt
from .configuration import Configuration, assemble, full_report
from .errors import InvalidFamily, InvalidInput, NotOrientable
from .rotation_graph import RotationGraph, canonical_form, orient
from .torus_rep import TorusRep, embedded_graph

OMEGA = cmath.exp(1j * math.pi / 3)


# -- graphs ---------------------------------------------------------------

def meeks_graph(T1=1.0, T2=1j):
    """Two vertices, four edges: the centre ``v`` joined to the corners.

    The half-edges ``1..4`` at ``v`` run counterclockwise starting with the
    one pointing to the corner at 0.  Places ``v`` at ``(T1+T2)/2``.
    """
    c = (T1 + T2) / 2
    edges = [("1", "~1", 0, 1, (0, 0)), ("2", "~2", 0, 1, (1, 0)),
             ("3", "~3", 0, 1, (1, 1)), ("4", "~4", 0, 1, (0, 1))]
    return embedded_graph(T1, T2, [c, 0], edges, ["v", "w"])


def one_vertex_graph(T1=1.0, T2=OMEGA**2):
    """One vertex with three loops along T1, T2 and -(T1+T2)."""
    edges = [("a", "~a", 0, 0, (1, 0)), ("b", "~b", 0, 0, (0, 1)), ("c", "~c", 0, 0, (-1, -1))]
    return embedded_graph(T1, T2, [0], edges, ["v"])


def triangular_lattice(k: int, centre_last=True):
    """``k x k`` block of the unit triangular lattice as a torus graph."""
    T1, T2 = k, k * OMEGA
    cells = [(i, j) for i in range(k) for j in range(k)]
    if centre_last:
        cells = cells[1:] + cells[:1]
    index = {c: n for n, c in enumerate(cells)}
    positions = [i + j * OMEGA for i, j in cells]
    edges = []
    for i, j in cells:
        for a, b, tag in ((1, 0, "x"), (0, 1, "y"), (-1, 1, "z")):
            ii, jj = i + a, j + b
            name = f"{tag}{i}{j}"
            edges.append((name, "~" + name, index[(i, j)], index[(ii % k, jj % k)],
                          (ii // k, jj // k)))
    ids = [f"{i}{j}" for i, j in cells]
    return embedded_graph(T1, T2, positions, edges, ids)


def three_lines_graph():
    """Three families of parallel lines through the 2-division points of
    the equilateral torus.  Balanced but not rigid."""
    edges = [("a", "~a", 0, 1, (0, 0)), ("b", "~b", 1, 0, (1, 0)),
             ("c", "~c", 0, 2, (0, 0)), ("d", "~d", 2, 0, (0, 1)),
             ("e", "~e", 1, 2, (0, 0)), ("f", "~f", 2, 1, (-1, 1))]
    return embedded_graph(1.0, OMEGA, [0, 0.5, OMEGA / 2], edges)


def grid_graph(height=1.2):
    """2 x 2 rectangular grid on the torus with periods 2 and ``i*height``.

    Vertices ``A, B`` sit on one vertical line and ``C, D`` on the other;
    with ``height < 2`` the vertical edges are the shortest, so vertex cuts
    only see them and the cut separating ``{A, B}`` from ``{C, D}`` sees the
    horizontal ones.
    """
    h = 1j * height
    pos = [0, h / 2, 1, 1 + h / 2]
    edges = [("ab", "~ab", 0, 1, (0, 0)), ("ba", "~ba", 1, 0, (0, 1)),
             ("cd", "~cd", 2, 3, (0, 0)), ("dc", "~dc", 3, 2, (0, 1)),
             ("ac", "~ac", 0, 2, (0, 0)), ("ca", "~ca", 2, 0, (1, 0)),
             ("bd", "~bd", 1, 3, (0, 0)), ("db", "~db", 3, 1, (1, 0))]
    return embedded_graph(2.0, h, pos, edges, ["A", "B", "C", "D"])


def honeycomb_graph(T1=1.0, T2=OMEGA):
    """Two trivalent vertices joined by three edges (not a valid tower graph
    by itself; see :func:`doubled_honeycomb`)."""
    p = -(T1 + T2) / 3
    pairs = [("p", "~p"), ("q", "~q"), ("r", "~r")]
    x = [0 - p, -T1 - p, -T2 - p]
    order = sorted(range(3), key=lambda i: cmath.phase(x[i]))
    rot0 = [pairs[i][0] for i in order]
    order_q = sorted(range(3), key=lambda i: cmath.phase(-x[i]))
    rot1 = [pairs[i][1] for i in order_q]
    offsets = {"p": (0, 0), "q": (-1, 0), "r": (0, -1)}
    return pairs, [rot0, rot1], p, offsets


def doubled_honeycomb(T1=1.0, T2=OMEGA, balance=True):
    """Honeycomb with every edge doubled; balancing puts the vertices at
    Fermat-Torricelli points."""
    pairs, rots, p, offsets = honeycomb_graph(T1, T2)
    # the three-valent base graph fails the degree check, so assemble the
    # doubled rotation system directly
    pair2, rot2 = [], []
    for a, b in pairs:
        pair2 += [(a + "+", b + "-"), (a + "-", b + "+")]
    for cyc in rots:
        rot2.append([x for h in cyc for x in (h + "+", h + "-")])
    g2 = RotationGraph.from_cycles(pair2, rot2, ["p", "q"])
    all_off = {}
    for name, n in offsets.items():
        all_off[name] = n
        all_off["~" + name] = (-n[0], -n[1])
    off = np.zeros((g2.n_edges, 2), dtype=int)
    for e, (h, _) in enumerate(g2.edges):
        off[e] = all_off[g2.names[h][:-1]]
    rep = TorusRep(g2, T1, T2, np.array([p, 0]), off)
    if balance:
        rep, _ = hz.solve_balance(rep)
    return g2, rep


def fermat_point(a, b, c, iters=200):
    """Fermat-Torricelli point by Weiszfeld iteration (independent check)."""
    pts = np.array([a, b, c], dtype=complex)
    z = pts.mean()
    for _ in range(iters):
        d = np.abs(pts - z)
        z = np.sum(pts / d) / np.sum(1 / d)
    return z


# -- genus three families ---------------------------------------------------

def edge_array(g: RotationGraph, values: dict) -> np.ndarray:
    """Antisymmetric edge array from values keyed by half-edge name."""
    out = np.zeros(g.n_edges)
    for name, val in values.items():
        h = g.index[name]
        out[g.edge_of[h]] = g.edge_sign[h] * val
    return out


def general_phases(c, psi1, psi2):
    """Phases on the four edges of the two-vertex graph with shifts
    ``psi1, psi2``; ``c`` is the free common constant."""
    return np.array([c - psi2 / 2, c + psi1 - psi2 / 2, c + psi1 + psi2 / 2, c + psi2 / 2])


def torus_angle(T1, T2) -> float:
    return cmath.phase(T2 / T1)


def meeks(T1=1.0, T2=1j, psi1=0.4, psi2=1.1, lam=(0j, 0j)) -> Configuration:
    g, rep = meeks_graph(T1, T2)
    return assemble(g, rep, general_phases(-psi1 / 2, psi1, psi2), (psi1, psi2), lam, name="Meeks")


def one_vertex(T1=1.0, T2=OMEGA**2, a=0.4, b=1.1, lam=(0j, 0j)) -> Configuration:
    g, rep = one_vertex_graph(T1, T2)
    phases = edge_array(g, {"a": a, "b": b, "c": -a - b})
    return assemble(g, rep, phases, (a, b), lam, name="aH")


def orthogonal_family(T1=1.0, T2=1j, c=0.3, psi1=0.4, psi2=math.pi) -> Configuration:
    """Two-vertex graph on a rectangular torus with a shift equal to pi."""
    if abs(torus_angle(T1, T2) - math.pi / 2) > 1e-12:
        raise InvalidFamily("this family needs a rectangular torus")
    if abs(math.remainder(psi1 - math.pi, 2 * math.pi)) > 1e-12 and \
            abs(math.remainder(psi2 - math.pi, 2 * math.pi)) > 1e-12:
        raise InvalidFamily("one of the shifts must equal pi")
    g, rep = meeks_graph(T1, T2)
    return assemble(g, rep, general_phases(c, psi1, psi2), (psi1, psi2), name="aG")


def oblique_family(T1=1.0, T2=cmath.exp(1.2j), c=0.3, psi1=0.4) -> Configuration:
    """Two-vertex graph on a non-rectangular torus; the shifts are tied so
    that the short edges cancel for every ``c``."""
    ang = torus_angle(T1, T2)
    if abs(ang - math.pi / 2) < 1e-12:
        raise InvalidFamily("this family needs a non-rectangular torus")
    psi2 = psi1 + math.pi if ang < math.pi / 2 else math.pi - psi1
    g, rep = meeks_graph(T1, T2)
    return assemble(g, rep, general_phases(c, psi1, psi2), (psi1, psi2), name="aI")


@dataclass
class FamilyEntry:
    name: str
    admissible: bool
    constraint: str
    report: object = None


def genus3_catalog(T1=1.0, T2=1j) -> list[FamilyEntry]:
    """Which two-face families exist on the torus ``T1, T2``, with a sample
    configuration's report for each admissible one."""
    ang = torus_angle(T1, T2)
    rect = abs(ang - math.pi / 2) < 1e-12
    short = "edges 2, 4" if ang < math.pi / 2 else ("all edges" if rect else "edges 1, 3")
    out = [
        FamilyEntry("Meeks", True, f"second vertex at a 2-division point; c = -shift1/2 "
                                   f"(shortest: {short})", full_report(meeks(T1, T2))),
        FamilyEntry("aH", True, "no constraint on the shifts", full_report(one_vertex(T1, T2))),
    ]
    if rect:
        out.append(FamilyEntry("aG", True, "rectangular torus, a shift equals pi",
                               full_report(orthogonal_family(T1, T2))))
        out.append(FamilyEntry("aI", False, "needs a non-rectangular torus"))
    else:
        tie = "shift2 - shift1 = pi" if ang < math.pi / 2 else "shift1 + shift2 = pi"
        out.append(FamilyEntry("aG", False, "needs a rectangular torus"))
        out.append(FamilyEntry("aI", True, tie, full_report(oblique_family(T1, T2))))
    return out


# -- enumeration of two-face rotation systems ---------------------------------

def _matchings(items):
    if not items:
        yield []
        return
    a = items[0]
    for i in range(1, len(items)):
        rest = items[1:i] + items[i + 1:]
        for m in _matchings(rest):
            yield [(a, items[i])] + m


def _two_face_candidates():
    """Every two-face rotation system on the degree patterns (6) and (4, 4),
    with the reason it was dropped (None if orientable)."""
    for cycles in ([[0, 1, 2, 3, 4, 5]], [[0, 1, 2, 3], [4, 5, 6, 7]]):
        for m in _matchings([h for cyc in cycles for h in cyc]):
            try:
                g = RotationGraph.from_cycles([(str(a), str(b)) for a, b in m],
                                              [[str(h) for h in cyc] for cyc in cycles])
            except InvalidInput:
                continue
            if g.n_faces != 2:
                continue
            try:
                orient(g)
                reason = None
            except NotOrientable:
                reason = "not orientable"
            yield g, reason


def two_face_types():
    """Rotation systems with two faces on the torus, up to isomorphism.

    Covers one vertex of degree six and two vertices of degree four (the
    only options with all degrees even and at least 4).  Returns
    ``{"orientable": [...], "non_orientable": [...]}``, lists of
    representative graphs.
    """
    found = {True: {}, False: {}}
    for g, reason in _two_face_candidates():
        found[reason is None].setdefault(canonical_form(g), g)
    return {"orientable": list(found[True].values()),
            "non_orientable": list(found[False].values())}


def classify_two_face_graphs() -> dict:
    """Enumeration report: candidate and type counts per vertex count, and
    a description of each orientable type."""
    per_v = {}
    for g, reason in _two_face_candidates():
        row = per_v.setdefault(g.n_vertices, {"candidates": 0, "non_orientable": 0,
                                              "with_loops": 0, "types": {}})
        row["candidates"] += 1
        loops = sum(g.is_loop(e) for e in range(g.n_edges))
        if loops and g.n_vertices > 1:
            row["with_loops"] += 1
        if reason is not None:
            row["non_orientable"] += 1
            continue
        row["types"].setdefault(canonical_form(g), {"vertices": g.n_vertices, "edges": g.n_edges,
                                                   "loops": loops})
    types = [t for v in sorted(per_v) for t in per_v[v]["types"].values()]
    return {
        "by_vertices": {v: {k: (len(r[k]) if k == "types" else r[k]) for k in r}
                        for v, r in sorted(per_v.items())},
        "orientable_types": types,
        "count": len(types),
    }


# -- triangular lattice phase functions ------------------------------------

TRIANGULAR_PHASES = {
    "first": [2 * math.pi / 3, math.pi / 3, math.pi, -math.pi / 3],
    "second": [2 * math.atan(math.sqrt(5 / 7)), -2 * math.atan(math.sqrt(5 / 7)), math.pi,
               2 * math.atan(math.sqrt(5 / 7))],
}
TRIANGULAR_DETERMINANTS = {"first": -3 / 4, "second": -315 / 4}


def triangular_phase_search(values, config=None):
    """Try every placement of four antipodal value pairs on the 3 x 3 lattice.

    The eight non-central vertices form four pairs ``{v, -v}`` under the
    central inversion; each pair gets phases ``(x, -x)`` for one of the
    ``values``, the centre gets 0 and all weights are 1.  Returns a list
    of ``(vertex_phases, determinant)`` for the balanced placements.
    """
    if config is None:
        g, rep = triangular_lattice(3)
        config = assemble(g, rep, K_override=np.ones(g.n_edges))
    g = config.graph
    cells = [(int(vid[0]), int(vid[1])) for vid in g.vertex_ids]
    index = {c: n for n, c in enumerate(cells)}
    pairs = []
    for c in cells[:-1]:
        d = ((-c[0]) % 3, (-c[1]) % 3)
        if (d, c) not in pairs:
            pairs.append((c, d))
    K = np.ones(g.n_edges)
    out = []
    for perm in itertools.permutations(range(4)):
        for flips in itertools.product((1, -1), repeat=4):
            vp = np.zeros(g.n_vertices)
            for k, (a, b) in enumerate(pairs):
                x = flips[k] * values[perm[k]]
                vp[index[a]] = x
                vp[index[b]] = -x
            phases = cs.grad(g, vp)
            f = vt.forces(config, phases, K=K)
            if np.max(np.abs(f)) < 1e-10:
                det = float(np.linalg.det(vt.rigidity_matrix(config, phases, K)))
                out.append((vp, det))
    return out


def triangular33_determinants() -> dict:
    """Distinct nonzero determinants over the balanced placements of each
    phase set."""
    g, rep = triangular_lattice(3)
    config = assemble(g, rep, K_override=np.ones(g.n_edges))
    out = {}
    for key, vals in TRIANGULAR_PHASES.items():
        found = triangular_phase_search(vals, config)
        dets = sorted({round(d, 9) for _, d in found if abs(d) > 1e-9})
        out[key] = {"balanced": len(found), "determinants": dets}
    return out
