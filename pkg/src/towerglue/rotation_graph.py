"""Rotation systems: graphs embedded in an oriented surface.

A rotation system is a finite set of half-edges with two permutations: a
fixed-point-free involution ``inv`` pairing the two ends of each edge, and a
rotation ``rot`` sending a half-edge to the next one counterclockwise around
its vertex.  Vertices, edges and faces are the orbits of ``rot``, ``inv`` and
``rot . inv`` respectively.

Internally half-edges are integers ``0..H-1``; the user-facing names are kept
in :attr:`RotationGraph.names`.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    Disconnected,
    FixedPointInvolution,
    InvalidInput,
    LowDegree,
    NotOrientable,
    ShortFace,
)


def _orbits(perm: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        orbit = []
        h = start
        while not seen[h]:
            seen[h] = True
            orbit.append(h)
            h = perm[h]
        out.append(tuple(orbit))
    return out


class RotationGraph:
    """A validated rotation system.

    Use :meth:`build` or :meth:`from_cycles` rather than the constructor.

    Attributes
    ----------
    names : tuple of str
        Half-edge names, indexed by half-edge number.
    inv, rot : ndarray of int
        The involution and the rotation as index arrays.
    vertices : list of tuple
        Rotation cycles, one per vertex, each starting at a fixed half-edge.
    faces : list of tuple
        Orbits of ``rot . inv``; a face is the closed walk
        ``h, rot(inv(h)), ...``.
    edges : list of (int, int)
        ``(rep, opposite)`` for each edge.  ``rep`` is the half-edge that
        carries the value of an antisymmetric field on that edge.
    """

    def __init__(self, names, inv, rot, vertices, vertex_ids):
        self.names = tuple(names)
        self.index = {name: i for i, name in enumerate(self.names)}
        self.inv = np.asarray(inv, dtype=int)
        self.rot = np.asarray(rot, dtype=int)
        self.vertices = [tuple(c) for c in vertices]
        self.vertex_ids = list(vertex_ids)
        n = len(self.names)

        self.vertex_of = np.empty(n, dtype=int)
        self.position_at_vertex = np.empty(n, dtype=int)
        for v, cyc in enumerate(self.vertices):
            for j, h in enumerate(cyc):
                self.vertex_of[h] = v
                self.position_at_vertex[h] = j

        self.edges = []
        self.edge_of = np.empty(n, dtype=int)
        self.edge_sign = np.empty(n, dtype=int)
        for h in range(n):
            o = int(self.inv[h])
            if o > h:
                e = len(self.edges)
                self.edges.append((h, o))
                self.edge_of[h] = self.edge_of[o] = e
                self.edge_sign[h] = 1
                self.edge_sign[o] = -1

        self.faces = _orbits([int(self.rot[self.inv[h]]) for h in range(n)])

        self._check()

    # -- construction ---------------------------------------------------

    @classmethod
    def build(cls, half_edges: Iterable[str], involution: dict, rotation: dict,
              vertex_ids: Sequence[str] | None = None) -> "RotationGraph":
        """Build from explicit permutations given as name -> name maps.

        Vertices are numbered in the order their first half-edge appears in
        ``half_edges``.
        """
        names = list(half_edges)
        index = {name: i for i, name in enumerate(names)}
        if len(index) != len(names):
            raise InvalidInput("duplicate half-edge names")
        try:
            inv = [index[involution[name]] for name in names]
            rot = [index[rotation[name]] for name in names]
        except KeyError as exc:
            raise InvalidInput(f"permutation references unknown half-edge {exc}") from None
        if sorted(rot) != list(range(len(names))):
            raise InvalidInput("rotation is not a permutation")
        cycles = _orbits(rot)
        if vertex_ids is None:
            vertex_ids = [f"v{i}" for i in range(len(cycles))]
        elif len(vertex_ids) != len(cycles):
            raise InvalidInput("vertex_ids does not match the number of rotation cycles")
        return cls(names, inv, rot, cycles, vertex_ids)

    @classmethod
    def from_cycles(cls, pairs: Iterable[tuple[str, str]],
                    vertex_rotations: Sequence[Sequence[str]],
                    vertex_ids: Sequence[str] | None = None) -> "RotationGraph":
        """Build from edge pairs and one counterclockwise cycle per vertex.

        Half-edges are numbered in the order they appear in the vertex
        cycles, so the first listed edge end becomes the edge representative
        whenever it comes first.
        """
        names = [h for cyc in vertex_rotations for h in cyc]
        involution = {}
        for a, b in pairs:
            if a in involution or b in involution:
                raise FixedPointInvolution(f"half-edge paired twice in ({a}, {b})")
            involution[a] = b
            involution[b] = a
        for name in names:
            if name not in involution:
                raise FixedPointInvolution(f"half-edge {name!r} has no partner")
        rotation = {}
        for cyc in vertex_rotations:
            for j, h in enumerate(cyc):
                rotation[h] = cyc[(j + 1) % len(cyc)]
        index = {name: i for i, name in enumerate(names)}
        if len(index) != len(names):
            raise InvalidInput("a half-edge appears in two rotation cycles")
        if set(involution) - set(index):
            raise InvalidInput("edge pair references a half-edge missing from every rotation")
        inv = [index[involution[h]] for h in names]
        rot = [index[rotation[h]] for h in names]
        cycles = [tuple(index[h] for h in cyc) for cyc in vertex_rotations]
        if vertex_ids is None:
            vertex_ids = [f"v{i}" for i in range(len(cycles))]
        return cls(names, inv, rot, cycles, vertex_ids)

    def _check(self):
        n = len(self.names)
        if n == 0:
            raise InvalidInput("empty graph")
        for h in range(n):
            o = self.inv[h]
            if o == h:
                raise FixedPointInvolution(f"half-edge {self.names[h]!r} is its own partner")
            if self.inv[o] != h:
                raise FixedPointInvolution("involution does not square to the identity")
        # connectivity of the vertex graph
        seen = {0}
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for h in self.vertices[v]:
                w = int(self.vertex_of[self.inv[h]])
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        if len(seen) != len(self.vertices):
            raise Disconnected(f"{len(self.vertices) - len(seen)} vertices unreachable from the first")
        for f in self.faces:
            if len(f) < 2:
                raise ShortFace(f"face ({self.names[f[0]]}) bounded by a single half-edge")
        for v, cyc in enumerate(self.vertices):
            if len(cyc) < 4 or len(cyc) % 2:
                raise LowDegree(f"vertex {self.vertex_ids[v]} has degree {len(cyc)}")

    # -- basic counts ---------------------------------------------------

    @property
    def n_halfedges(self) -> int:
        return len(self.names)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    @property
    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_faces

    @property
    def genus(self) -> int:
        return 1 - self.euler_characteristic // 2

    def endpoints(self, e: int) -> tuple[int, int]:
        """(start vertex, end vertex) of edge ``e`` along its representative."""
        h, o = self.edges[e]
        return int(self.vertex_of[h]), int(self.vertex_of[o])

    def is_loop(self, e: int) -> bool:
        a, b = self.endpoints(e)
        return a == b

    def __repr__(self):
        return (f"RotationGraph(V={self.n_vertices}, E={self.n_edges}, "
                f"F={self.n_faces}, genus={self.genus})")


def orient(graph: RotationGraph) -> np.ndarray:
    """Return the orientation as an array of +-1 per half-edge.

    Opposite half-edges and rotation neighbours get opposite signs.  The
    orientation is unique up to a global sign; the first half-edge is +1.
    """
    n = graph.n_halfedges
    sign = np.zeros(n, dtype=int)
    sign[0] = 1
    stack = [0]
    while stack:
        h = stack.pop()
        for k in (int(graph.rot[h]), int(graph.inv[h])):
            if sign[k] == 0:
                sign[k] = -sign[h]
                stack.append(k)
            elif sign[k] == sign[h]:
                raise NotOrientable(
                    f"half-edges {graph.names[h]!r} and {graph.names[k]!r} need opposite signs")
    return sign


def parallel_classes(graph: RotationGraph) -> list[list[int]]:
    """Group edges that bound a common face with two sides.

    Returns a list of edge-index classes (singletons included), each sorted,
    in order of their smallest member.
    """
    parent = list(range(graph.n_edges))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for f in graph.faces:
        if len(f) == 2:
            a, b = find(graph.edge_of[f[0]]), find(graph.edge_of[f[1]])
            if a != b:
                parent[max(a, b)] = min(a, b)
    classes: dict[int, list[int]] = {}
    for e in range(graph.n_edges):
        classes.setdefault(find(e), []).append(e)
    return sorted(classes.values(), key=lambda c: c[0])


def doubling(graph: RotationGraph) -> RotationGraph:
    """Replace every half-edge ``h`` by a parallel pair ``h+`` and ``h-``.

    The new involution sends ``h+`` to ``inv(h)-`` and ``h-`` to
    ``inv(h)+``; the new rotation at each vertex interleaves the copies as
    ``h1+, h1-, h2+, h2-, ...``.  The result is always orientable, with
    ``h+`` positive and ``h-`` negative.
    """
    plus = [f"{name}+" for name in graph.names]
    minus = [f"{name}-" for name in graph.names]
    pairs = []
    for h, o in graph.edges:
        pairs.append((plus[h], minus[o]))
        pairs.append((minus[h], plus[o]))
    rotations = [[x for h in cyc for x in (plus[h], minus[h])] for cyc in graph.vertices]
    return RotationGraph.from_cycles(pairs, rotations, graph.vertex_ids)


def canonical_form(graph: RotationGraph) -> tuple:
    """Relabelling-invariant encoding of the rotation system.

    Two rotation systems are isomorphic (by a bijection commuting with both
    permutations, i.e. orientation preserved) iff their canonical forms are
    equal.  The encoding is the lexicographically smallest breadth-first
    relabelling over all starting half-edges.
    """
    n = graph.n_halfedges
    best = None
    for start in range(n):
        label = {start: 0}
        order = [start]
        i = 0
        while i < len(order):
            h = order[i]
            i += 1
            for k in (int(graph.rot[h]), int(graph.inv[h])):
                if k not in label:
                    label[k] = len(order)
                    order.append(k)
        code = tuple(label[int(graph.rot[h])] for h in order) + \
            tuple(label[int(graph.inv[h])] for h in order)
        if best is None or code < best:
            best = code
    return best
