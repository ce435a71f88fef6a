import cmath
import math

import numpy as np
import pytest

from towerglue import catalog as ct
from towerglue import torus_rep as tr
from towerglue.errors import EmbeddingInvalid, InvalidInput


def test_meeks_lengths():
    _, rep = ct.meeks_graph()
    assert np.allclose(rep.lengths(), math.sqrt(2) / 2)
    assert tr.geometric_validity(rep) == []
    tr.validate(rep)


def test_one_vertex_lengths():
    _, rep = ct.one_vertex_graph()
    assert np.allclose(rep.lengths(), 1.0)
    tr.validate(rep)
    assert tr.rotation_turns(rep) == pytest.approx([1.0])


def test_periods_match_lattice():
    for build in (ct.meeks_graph, ct.one_vertex_graph, ct.grid_graph, lambda: ct.triangular_lattice(3)):
        g, rep = build()
        per = rep.periods()
        cycles = rep.cycle_basis()
        for c, p in zip(cycles, per):
            assert abs(p - rep.lattice_point(c.homology)) < 1e-12


def test_translation_invariance():
    g, rep = ct.triangular_lattice(2)
    moved = rep.with_positions(rep.positions + (0.37 - 0.21j))
    assert np.allclose(moved.edge_vectors(), rep.edge_vectors())
    assert np.allclose(moved.periods(), rep.periods())
    tr.validate(moved)


def test_crossing_diagonals_invalid():
    # both diagonals of the unit square cross at the centre
    T1, T2 = 1.0, 1j
    edges = [("a", "~a", 0, 0, (1, 0)), ("b", "~b", 0, 0, (0, 1)),
             ("c", "~c", 0, 0, (1, 1)), ("d", "~d", 0, 0, (-1, 1))]
    g, rep = tr.embedded_graph(T1, T2, [0], edges)
    assert tr.geometric_validity(rep)
    with pytest.raises(EmbeddingInvalid):
        tr.validate(rep)


def test_coincident_vertices_invalid():
    edges = [("1", "~1", 0, 1, (0, 0)), ("2", "~2", 0, 1, (1, 0)),
             ("3", "~3", 0, 1, (1, 1)), ("4", "~4", 0, 1, (0, 1))]
    g, rep = tr.embedded_graph(1.0, 1j, [0.5 + 0.5j, 0], edges)
    bad = rep.with_positions([1.0 + 1j, 0])
    assert tr.geometric_validity(bad)


def test_orientation_of_periods():
    g, rep = ct.meeks_graph()
    with pytest.raises(InvalidInput):
        tr.TorusRep(g, 1.0, -1j, rep.positions, rep.offsets)
    with pytest.raises(InvalidInput):
        tr.TorusRep(g, 1.0, 2.0, rep.positions, rep.offsets)


def test_shape_checks():
    g, rep = ct.meeks_graph()
    with pytest.raises(InvalidInput):
        tr.TorusRep(g, 1.0, 1j, rep.positions[:1], rep.offsets)
    with pytest.raises(InvalidInput):
        tr.TorusRep(g, 1.0, 1j, rep.positions, rep.offsets[:2])


def test_parallel_halfedges_need_explicit_rotation():
    edges = [("a", "~a", 0, 0, (1, 0)), ("b", "~b", 0, 0, (2, 0))]
    with pytest.raises(InvalidInput):
        tr.embedded_graph(1.0, 1j, [0], edges)


def test_oblique_torus_rotation():
    g, rep = ct.meeks_graph(1.0, 1.3 * cmath.exp(1.1j))
    tr.validate(rep)
    assert tr.rotation_turns(rep) == pytest.approx([1.0, 1.0])
