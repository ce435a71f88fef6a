import itertools

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as hs

from towerglue import catalog as ct
from towerglue.errors import Disconnected, FixedPointInvolution, LowDegree, NotOrientable, ShortFace
from towerglue.rotation_graph import RotationGraph, canonical_form, doubling, orient, parallel_classes

from helpers import random_rotation_graph

seeds = hs.integers(0, 2**32 - 1)


def _relabel(g, rng):
    """Same rotation system under fresh names, vertex order and cycle starts."""
    perm = rng.permutation(g.n_halfedges)
    new = {g.names[h]: f"x{perm[h]}" for h in range(g.n_halfedges)}
    pairs = [(new[g.names[h]], new[g.names[o]]) for h, o in g.edges]
    cycles = []
    for cyc in g.vertices:
        k = int(rng.integers(len(cyc)))
        cycles.append([new[g.names[h]] for h in cyc[k:] + cyc[:k]])
    order = rng.permutation(len(cycles))
    return RotationGraph.from_cycles(pairs, [cycles[i] for i in order])


def _valid_signs_exhaustive(g):
    """Every assignment of signs obeying the alternation rules."""
    n = g.n_halfedges
    bits = np.array(list(itertools.product([1, -1], repeat=n)))
    ok = np.all(bits * bits[:, g.inv] == -1, axis=1) & np.all(bits * bits[:, g.rot] == -1, axis=1)
    return bits[ok]


def test_counts_of_catalog_graphs():
    for build, counts in [(ct.one_vertex_graph, (1, 3, 2)), (ct.meeks_graph, (2, 4, 2))]:
        g, _ = build()
        assert (g.n_vertices, g.n_edges, g.n_faces) == counts
        assert g.genus == 1
    g, _ = ct.triangular_lattice(3)
    assert (g.n_vertices, g.n_edges, g.n_faces, g.genus) == (9, 27, 18, 1)


def test_fixed_point_rejected():
    with pytest.raises(FixedPointInvolution):
        RotationGraph.build(["a", "b", "c", "d"], {"a": "a", "b": "c", "c": "b", "d": "d"},
                            {"a": "b", "b": "c", "c": "d", "d": "a"})
    with pytest.raises(FixedPointInvolution):
        RotationGraph.from_cycles([("a", "b")], [["a", "b", "c", "d"]])


def test_disconnected_rejected():
    cyc = lambda p: [f"{p}1", f"{p}2", f"{p}3", f"{p}4"]
    pairs = [("p1", "p3"), ("p2", "p4"), ("q1", "q3"), ("q2", "q4")]
    with pytest.raises(Disconnected):
        RotationGraph.from_cycles(pairs, [cyc("p"), cyc("q")])


def test_short_face_rejected():
    with pytest.raises(ShortFace):
        RotationGraph.from_cycles([("a", "~a"), ("b", "~b")], [["a", "~a", "b", "~b"]])


def test_low_degree_rejected():
    with pytest.raises(LowDegree):
        RotationGraph.from_cycles([("a", "x"), ("b", "y"), ("c", "z")], [["a", "b", "c"], ["x", "z", "y"]])


def test_not_orientable():
    bad = ct.two_face_types()["non_orientable"]
    assert bad
    for g in bad:
        with pytest.raises(NotOrientable):
            orient(g)
        assert len(_valid_signs_exhaustive(g)) == 0


@pytest.mark.parametrize("build", [ct.one_vertex_graph, ct.meeks_graph, ct.three_lines_graph, ct.grid_graph])
def test_orientation_unique_up_to_sign(build):
    g, _ = build()
    assert g.n_halfedges <= 16
    found = _valid_signs_exhaustive(g)
    s = orient(g)
    assert len(found) == 2
    assert {tuple(r) for r in found} == {tuple(s), tuple(-s)}


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_orientation_unique_random(seed):
    g = random_rotation_graph(np.random.default_rng(seed), max_vertices=3, degrees=(4,))
    assume(g is not None and g.n_halfedges <= 16)
    found = _valid_signs_exhaustive(g)
    assert len(found) in (0, 2)
    if found.size:
        s = orient(g)
        assert {tuple(r) for r in found} == {tuple(s), tuple(-s)}
    else:
        with pytest.raises(NotOrientable):
            orient(g)


def test_parallel_classes():
    g, _ = ct.one_vertex_graph()
    assert parallel_classes(g) == [[0], [1], [2]]
    d = doubling(g)
    classes = parallel_classes(d)
    assert len(classes) == g.n_edges and all(len(c) == 2 for c in classes)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_doubling_is_orientable(seed):
    g = random_rotation_graph(np.random.default_rng(seed), max_vertices=3)
    assume(g is not None)
    d = doubling(g)
    s = orient(d)
    signs = {name: s[h] for h, name in enumerate(d.names)}
    plus = {signs[n] for n in d.names if n.endswith("+")}
    minus = {signs[n] for n in d.names if n.endswith("-")}
    assert len(plus) == 1 and len(minus) == 1 and plus != minus
    assert d.n_vertices == g.n_vertices and d.n_edges == 2 * g.n_edges
    # bigons of the original merge into the doubled pairs
    assert sorted(len(c) for c in parallel_classes(d)) == sorted(2 * len(c) for c in parallel_classes(g))


@settings(max_examples=50, deadline=None)
@given(seeds, seeds)
def test_canonical_form_invariant(seed, seed2):
    g = random_rotation_graph(np.random.default_rng(seed), max_vertices=4)
    assume(g is not None)
    h = _relabel(g, np.random.default_rng(seed2))
    assert canonical_form(h) == canonical_form(g)


def test_canonical_form_separates_types():
    a, b = ct.two_face_types()["orientable"]
    assert canonical_form(a) != canonical_form(b)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_euler_relation(seed):
    g = random_rotation_graph(np.random.default_rng(seed))
    assume(g is not None)
    chi = g.n_vertices - g.n_edges + g.n_faces
    assert chi == g.euler_characteristic
    assert chi % 2 == 0 and chi <= 2
    assert g.genus == 1 - chi // 2
    assert sum(len(f) for f in g.faces) == g.n_halfedges
