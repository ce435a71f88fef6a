import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as hs
from hypothesis.extra import numpy as hnp

from towerglue import catalog as ct
from towerglue import chain_spaces as cs
from towerglue.errors import TooManyVertices

from helpers import random_rotation_graph

seeds = hs.integers(0, 2**32 - 1)
GRAPHS = [ct.one_vertex_graph, ct.meeks_graph, ct.grid_graph, ct.three_lines_graph,
          lambda: ct.triangular_lattice(2), lambda: ct.doubled_honeycomb(balance=False)]


@settings(max_examples=50, deadline=None)
@given(hnp.arrays(float, 8, elements=hs.floats(-10, 10)))
def test_decompose(f):
    g, _ = ct.meeks_graph()
    anti, sym = cs.decompose(g, f)
    assert np.allclose((anti + sym) / 2, f)
    assert np.allclose(anti[g.inv], -anti)
    assert np.allclose(sym[g.inv], sym)
    assert np.allclose(anti[[h for h, _ in g.edges]], cs.antisymmetric_part(g, f))
    assert np.allclose(sym[[h for h, _ in g.edges]], cs.symmetric_part(g, f))


def test_halfedge_values_antisymmetric():
    g, rep = ct.triangular_lattice(2)
    xh = cs.halfedge_values(g, rep.edge_vectors())
    assert np.allclose(xh[g.inv], -xh)
    kh = cs.halfedge_values(g, np.arange(g.n_edges, dtype=float), antisymmetric=False)
    assert np.allclose(kh[g.inv], kh)


@pytest.mark.parametrize("build", GRAPHS)
def test_dimensions_and_orthogonality(build):
    g, rep = build()
    cuts = cs.cut_basis(g)
    cycles = rep.cycle_basis()
    assert len(cuts) == g.n_vertices - 1
    assert len(cycles) == g.n_edges - g.n_vertices + 1
    C = np.array([c.coeffs for c in cuts]).reshape(-1, g.n_edges)
    Z = np.array([c.coeffs for c in cycles])
    assert np.linalg.matrix_rank(np.vstack([C, Z])) == g.n_edges
    for c in cs.all_cuts(g) if g.n_vertices > 1 else []:
        assert not np.any(Z @ c.coeffs)
    assert [c.homology for c in cycles[-2:]] == [(1, 0), (0, 1)]
    assert all(c.homology == (0, 0) for c in cycles[:-2])


@pytest.mark.parametrize("build", GRAPHS)
def test_grad_is_curl_free(build):
    g, rep = build()
    f = np.random.default_rng(0).normal(size=g.n_vertices)
    df = cs.grad(g, f)
    assert np.allclose(cs.grad_matrix(g) @ f, df)
    for c in rep.cycle_basis():
        assert abs(cs.curl(c, df)) < 1e-12
    # total divergence over the vertex cuts vanishes
    assert abs(sum(cs.div(cs.vertex_cut(g, v), df) for v in range(g.n_vertices))) < 1e-12


def test_all_cuts_count():
    for build, expected in [(ct.meeks_graph, 1), (ct.grid_graph, None), (lambda: ct.triangular_lattice(3), 255)]:
        g, _ = build()
        cuts = cs.all_cuts(g)
        assert len(cuts) == 2 ** (g.n_vertices - 1) - 1
        if expected is not None:
            assert len(cuts) == expected
        assert all(0 in c.side for c in cuts)
        assert len({c.side for c in cuts}) == len(cuts)


def test_too_many_vertices():
    g, _ = ct.triangular_lattice(5)
    with pytest.raises(TooManyVertices):
        cs.all_cuts(g)


def test_grid_cut_holds_horizontal_edges():
    g, rep = ct.grid_graph()
    c = cs.cut(g, [0, 1])
    x = rep.edge_vectors()
    members = np.nonzero(c.coeffs)[0]
    assert len(members) == 4
    assert np.all(np.abs(x[members].imag) < 1e-12)
    assert not c.is_vertex_cut


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_mdiv_rank_property(seed):
    rng = np.random.default_rng(seed)
    g = random_rotation_graph(rng)
    assume(g is not None)
    lengths = rng.integers(1, 4, g.n_edges).astype(float)
    assert cs.mdiv_rank(g, lengths) == g.n_vertices - 1
    basis = cs.mdiv_cut_basis(g, lengths)
    assert len(basis) == g.n_vertices - 1
    rows = cs.mdiv_matrix(basis, lengths)
    assert rows.shape == (g.n_vertices - 1, g.n_edges)
    if basis:
        assert np.linalg.matrix_rank(rows) == g.n_vertices - 1


def test_mdiv_keeps_shortest_edges():
    g, rep = ct.meeks_graph(1.0, 1.2 * np.exp(1.1j))
    c = cs.vertex_cut(g, 0)
    ell = rep.lengths()
    f = np.arange(1.0, 5.0)
    short = ell <= ell.min() * (1 + 1e-9)
    assert cs.mdiv(c, f, ell) == pytest.approx(np.dot(c.coeffs * short, f))
    assert cs.minimal_length(c, ell) == pytest.approx(ell.min())


def test_mdiv_eps_limit():
    g, rep = ct.meeks_graph(1.0, 1.2 * np.exp(1.1j))
    c = cs.vertex_cut(g, 0)
    ell = rep.lengths()
    f = np.array([0.3, -1.2, 0.7, 2.0])
    target = cs.mdiv(c, f, ell)
    errs = [abs(cs.mdiv_eps(c, f, ell, eps) - target) for eps in (0.5, 0.3, 0.2, 0.1)]
    assert all(b < a for a, b in zip(errs, errs[1:]))
    assert errs[-1] < 1e-10


def test_operators():
    g, rep = ct.triangular_lattice(2)
    ops = cs.operators(g, rep)
    assert ops["grad"].shape == (g.n_edges, g.n_vertices)
    assert ops["div"].shape == (g.n_vertices - 1, g.n_edges)
    assert not np.any(ops["curl"] @ ops["grad"])
    assert np.linalg.matrix_rank(ops["mdiv"]) == g.n_vertices - 1
    assert set(cs.operators(g)) == {"grad", "div"}
