import cmath
import math

import numpy as np
import pytest

from towerglue import catalog as ct
from towerglue import vertical as vt
from towerglue.configuration import assemble, full_report, rescaled
from towerglue.errors import EmbeddingInvalid, GenusMismatch, InvalidFamily, InvalidInput, ShiftMismatch
from towerglue.rotation_graph import canonical_form
from towerglue import torus_rep as tr


def test_face_circulation_rejected():
    g, rep = ct.meeks_graph()
    with pytest.raises(ShiftMismatch):
        assemble(g, rep, np.array([0.1, 0.2, 0.3, 0.4]))


def test_shift_disagreement_rejected():
    m = ct.meeks(1.0, 1j, 0.4, 1.1)
    with pytest.raises(ShiftMismatch):
        assemble(m.graph, m.rep, m.phases, shifts=(0.4, 1.2))
    ok = assemble(m.graph, m.rep, m.phases, shifts=(0.4 + 2 * math.pi, 1.1))
    assert ok.shifts[0] == pytest.approx(0.4 + 2 * math.pi)


def test_shape_errors():
    g, rep = ct.meeks_graph()
    with pytest.raises(InvalidInput):
        assemble(g, rep, np.zeros(3))
    with pytest.raises(InvalidInput):
        assemble(g, rep, K_override=np.ones(5))


def test_invalid_embedding_rejected():
    edges = [("a", "~a", 0, 0, (1, 0)), ("b", "~b", 0, 0, (0, 1)),
             ("c", "~c", 0, 0, (1, 1)), ("d", "~d", 0, 0, (-1, 1))]
    g, rep = tr.embedded_graph(1.0, 1j, [0], edges)
    with pytest.raises((EmbeddingInvalid, GenusMismatch)):
        assemble(g, rep)


def test_predicted_genus():
    assert ct.meeks().predicted_genus == 3
    assert ct.one_vertex().predicted_genus == 3


def test_rgl_point():
    a = 2 * math.pi / 3
    r = full_report(ct.one_vertex(1.0, cmath.exp(2j * math.pi / 3), a, a))
    assert r.ok
    assert r.verdicts == ["horizontally balanced", "horizontally rigid",
                          "vertically balanced", "vertically rigid"]


def test_report_without_phases():
    g, rep = ct.triangular_lattice(2)
    r = full_report(assemble(g, rep))
    assert r.vertical is None and not r.ok
    assert "vertical analysis unavailable" in r.verdicts


def test_catalog():
    cat = {e.name: e for e in ct.genus3_catalog(1.0, 1j)}
    assert cat["aG"].admissible and not cat["aI"].admissible
    oblique = {e.name: e for e in ct.genus3_catalog(1.0, 1.1 * cmath.exp(1.1j))}
    assert oblique["aI"].admissible and not oblique["aG"].admissible
    for e in cat.values():
        assert e.constraint


def test_family_errors():
    with pytest.raises(InvalidFamily):
        ct.orthogonal_family(1.0, cmath.exp(1.1j))
    with pytest.raises(InvalidFamily):
        ct.oblique_family(1.0, 2j)


def test_rescaling_keeps_weights():
    m = ct.meeks(1.0, 1.2 * cmath.exp(1.1j), 0.4, 1.1)
    kappa = np.random.default_rng(3).uniform(0.5, 2.0, m.graph.n_halfedges)
    r = rescaled(m, kappa)
    assert not np.allclose(r.upsilon_half, m.upsilon_half)
    assert np.allclose(vt.weights(r), vt.weights(m), rtol=1e-10)


def test_two_face_types_are_stable():
    first = ct.two_face_types()
    second = ct.two_face_types()
    for key in ("orientable", "non_orientable"):
        assert sorted(map(canonical_form, first[key])) == sorted(map(canonical_form, second[key]))
    forms = {canonical_form(g) for g in first["orientable"]}
    g1, _ = ct.one_vertex_graph()
    g2, _ = ct.meeks_graph()
    assert forms == {canonical_form(g1), canonical_form(g2)}


def test_two_face_report():
    rep = ct.classify_two_face_graphs()
    assert rep["count"] == 2
    assert sorted((t["vertices"], t["edges"], t["loops"]) for t in rep["orientable_types"]) == [(1, 3, 3), (2, 4, 0)]
    two = rep["by_vertices"][2]
    # every two-vertex candidate with a loop is dropped
    assert two["with_loops"] > 0 and two["with_loops"] <= two["non_orientable"]
    assert rep["by_vertices"][1]["non_orientable"] > 0
