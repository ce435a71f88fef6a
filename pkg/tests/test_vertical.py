import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as hs

from towerglue import catalog as ct
from towerglue import chain_spaces as cs
from towerglue import vertical as vt
from towerglue.configuration import assemble
from towerglue.errors import SingularSystem


def test_square_scherk_correction_vanishes():
    m = ct.meeks()
    assert np.max(np.abs(vt.solve_xi(m))) < 1e-12
    assert np.allclose(vt.weights(m), 4.0, atol=1e-10)


@settings(max_examples=10, deadline=None)
@given(hs.complex_numbers(max_magnitude=0.5, allow_nan=False, allow_infinity=False))
def test_correction_is_linear_in_lambda(lam):
    m = ct.meeks(1.0, 1.2 * cmath.exp(1.1j), 0.4, 1.1)
    errs = vt.lambda_shift_errors(m, m.phases, lam)
    assert errs["xi"] < 1e-10 and errs["K"] < 1e-10 and errs["force"] < 1e-10


def test_weights_translation_invariant():
    g, rep = ct.meeks_graph(1.0, 1.2 * cmath.exp(1.1j))
    a = assemble(g, rep)
    b = assemble(g, rep.with_positions(rep.positions + (0.13 + 0.29j)))
    assert np.allclose(vt.mu_antisymmetric(a), vt.mu_antisymmetric(b), atol=1e-12)
    assert np.allclose(vt.weights(a), vt.weights(b), atol=1e-12)


def test_trivial_phases_balance():
    g, rep = ct.triangular_lattice(3)
    cfg = assemble(g, rep, K_override=np.ones(g.n_edges))
    rng = np.random.default_rng(5)
    for _ in range(5):
        phases = rng.choice([0.0, math.pi], g.n_edges)
        assert np.max(np.abs(vt.forces(cfg, phases))) < 1e-12


def test_grid_cut_ignores_vertical_edges():
    g, rep = ct.grid_graph()
    cfg = assemble(g, rep, K_override=np.linspace(1.0, 2.0, g.n_edges))
    x = rep.edge_vectors()
    vertical = np.abs(x.real) < 1e-12
    rng = np.random.default_rng(3)
    base = rng.uniform(-3, 3, g.n_edges)
    changed = base + np.where(vertical, rng.uniform(-3, 3, g.n_edges), 0.0)
    c = [cs.cut(g, [0, 1])]
    assert vt.forces(cfg, base, cuts=c) == pytest.approx(vt.forces(cfg, changed, cuts=c))
    # a vertex cut sees only the vertical edges
    v = [cs.vertex_cut(g, 0)]
    horiz_changed = base + np.where(vertical, 0.0, 1.0)
    assert vt.forces(cfg, base, cuts=v) == pytest.approx(vt.forces(cfg, horiz_changed, cuts=v))


def test_rigidity_matrix_by_differences():
    g, rep = ct.triangular_lattice(2)
    rng = np.random.default_rng(9)
    cfg = assemble(g, rep, K_override=rng.uniform(0.5, 2.0, g.n_edges))
    phases = rng.uniform(-math.pi, math.pi, g.n_edges)
    jac = vt.rigidity_matrix(cfg, phases)
    grads = vt.vertex_gradients(cfg)
    rows = vt.force_rows(cfg, cfg.mdiv_cuts)
    K = vt.weights(cfg)
    h = 1e-6
    for v in range(g.n_vertices - 1):
        fd = (rows @ (K * np.sin(phases + h * grads[:, v])) - rows @ (K * np.sin(phases - h * grads[:, v]))) / (2 * h)
        assert np.allclose(fd, jac[:, v], atol=1e-8)


def test_solve_phases_recovers_meeks():
    p1, p2 = 0.5, 1.3
    m = ct.meeks(1.0, 1j, p1, p2)
    a, b = (-p1 - p2) / 2, (p2 - p1) / 2
    phi = vt.solve_phases(m, (p1, p2), m.phases + np.array([0.05, -0.03, 0.02, 0.04]))
    assert np.allclose(phi, [a, -b, -a, b], atol=1e-10)
    assert np.max(np.abs(vt.forces(m, phi))) < 1e-12
    per = vt.phase_periods(m, phi)
    assert per[-2] == pytest.approx(p1) and per[-1] == pytest.approx(p2)


def test_solve_phases_on_triangular_lattice():
    g, rep = ct.triangular_lattice(2)
    cfg = assemble(g, rep, K_override=np.ones(g.n_edges))
    phi = vt.solve_phases(cfg, (0.3, -0.2), np.zeros(g.n_edges))
    assert np.max(np.abs(vt.forces(cfg, phi))) < 1e-12
    assert vt.report(cfg, phi).rigid


def test_positive_cosines_are_rigid():
    g, rep = ct.triangular_lattice(3)
    rng = np.random.default_rng(12)
    cfg = assemble(g, rep, K_override=rng.uniform(0.5, 2.0, g.n_edges))
    for _ in range(5):
        phases = rng.uniform(-1.4, 1.4, g.n_edges)
        r = vt.report(cfg, phases)
        assert r.rigid and r.sigma_min > 0


def test_triangular_determinants():
    res = ct.triangular33_determinants()
    assert res["first"]["determinants"] == [pytest.approx(-0.75, abs=1e-9)]
    assert res["second"]["determinants"] == [pytest.approx(-78.75, abs=1e-9)]


@pytest.mark.parametrize("k", [2, 3])
def test_zero_phase_minor_counts_spanning_trees(k):
    g, rep = ct.triangular_lattice(k)
    cfg = assemble(g, rep, K_override=np.ones(g.n_edges))
    det = np.linalg.det(vt.rigidity_matrix(cfg, np.zeros(g.n_edges)))
    G = cs.grad_matrix(g).astype(float)
    ev = np.linalg.eigvalsh(G.T @ G)
    trees = np.prod(ev[1:]) / g.n_vertices
    assert abs(det) == pytest.approx(trees, rel=1e-9)


def test_non_rigid_representation_has_no_correction():
    g, rep = ct.three_lines_graph()
    cfg = assemble(g, rep)
    with pytest.raises(SingularSystem):
        vt.solve_xi(cfg)
