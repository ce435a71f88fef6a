import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as hs

from towerglue import saddle_tower as st
from towerglue.errors import InvalidFamily, InvalidWingAngles, NonOrdinaryVertex

SIGNS6 = np.array([1, -1, 1, -1, 1, -1])


def _towers():
    return [st.symmetric_family(4, 0.6), st.symmetric_family(6, 0.4), st.symmetric_family(8, math.pi / 8),
            st.isosceles6(0.5), st.SaddleTower.solve(st.close_polygon([0.1, 0.9, 1.8, 3.2, 3.9, 5.0]), SIGNS6)]


def _ids(t):
    return f"{t.family}-{t.n}"


@pytest.mark.parametrize("tower", _towers(), ids=_ids)
def test_conformal_punctures(tower):
    assert np.allclose(np.abs(tower.punctures), 1.0)
    assert np.max(np.abs(st.residues(tower.angles, tower.signs, tower.punctures))) < 1e-11
    assert st.conformality_residual(tower) < 1e-8


def test_residue_jacobian_by_differences():
    t = st.isosceles6(0.5)
    p = t.punctures * np.exp(0.01j * np.arange(6))
    jac = st.residue_jacobian(t.angles, t.signs, p)
    h = 1e-6
    for k in range(6):
        dp = np.zeros(6, complex)
        dp[k] = h
        fd = (st.residues(t.angles, t.signs, p + dp) - st.residues(t.angles, t.signs, p - dp)) / (2 * h)
        assert np.allclose(fd, jac[:, k], atol=1e-7)


@pytest.mark.parametrize("n", [4, 6, 8, 10, 12])
def test_symmetric_closed_form_solves(n):
    ref = st.symmetric_family(n, 0.9 * math.pi / n)
    sol = st.SaddleTower.solve(ref.angles, ref.signs, anchors=dict(enumerate(ref.punctures[:3])))
    assert np.allclose(sol.punctures, ref.punctures, atol=1e-10)


def test_mu_table_and_scherk():
    for n, value in st.SYMMETRIC_MU_TABLE.items():
        t = st.symmetric_family(n, math.pi / n)
        assert np.allclose(np.abs(st.mu_closed_form(t)), value, atol=1e-9)
    t = st.symmetric_family(8, math.pi / 8)
    assert np.max(np.abs((st.mu_closed_form(t) * np.conj(t.units)).imag)) < 1e-9
    assert st.SYMMETRIC_MU_TABLE[8] == pytest.approx(math.sqrt(2) * math.log(1 + math.sqrt(2)))
    psi = 0.6
    t = st.symmetric_family(4, psi)
    assert np.allclose(st.mu_closed_form(t), np.conj(t.units) * math.log(math.tan(psi)), atol=1e-12)


def test_six_wing_regular_values():
    d = st.analyze(st.symmetric_family(6, math.pi / 6))
    assert np.allclose(d.upsilon, 4.0, atol=1e-12)
    assert np.allclose(np.abs(d.mu), math.log(math.sqrt(3)), atol=1e-12)


@pytest.mark.parametrize("psi", [0.3, math.pi / 6, 0.8, math.pi / 3])
def test_isosceles_reference(psi):
    t = st.isosceles6(psi)
    ref = st.isosceles6_reference(psi)
    d = st.analyze(t)
    assert np.allclose(d.upsilon, ref["upsilon"], atol=1e-9)
    assert d.mu[0] == pytest.approx(ref["mu0"], abs=1e-9)
    assert d.mu[1] == pytest.approx(ref["mu1"], abs=1e-9)
    phi = st.isosceles6_parameter(psi)
    assert math.sin(psi) + math.sin(phi) == pytest.approx(1.0)


@pytest.mark.parametrize("tower", _towers(), ids=_ids)
def test_dual_routes_agree(tower):
    assert np.allclose(st.upsilon(tower), st.upsilon_from_residues(tower), atol=1e-9)
    assert np.allclose(st.mu_closed_form(tower), st.mu_quadrature(tower), atol=1e-9)
    kappa = np.linspace(0.5, 2.0, tower.n)
    assert np.allclose(st.upsilon(tower, kappa), st.upsilon_from_residues(tower, kappa), atol=1e-9)
    assert np.allclose(st.mu_closed_form(tower, kappa), st.mu_quadrature(tower, kappa), atol=1e-9)


@settings(max_examples=15, deadline=None)
@given(hs.lists(hs.floats(0.2, 5.0), min_size=6, max_size=6))
def test_coordinate_laws(kappa):
    t = st.isosceles6(0.5)
    errs = st.coordinate_change_errors(t, np.array(kappa))
    assert errs["upsilon"] < 1e-9 and errs["mu"] < 1e-9


@pytest.mark.parametrize("tower", _towers(), ids=_ids)
def test_a_periods(tower):
    per = st.a_periods(tower)
    expected = np.zeros((tower.n, 3))
    expected[:, 2] = 2 * math.pi * tower.signs
    assert np.allclose(per, expected, atol=1e-8)


@pytest.mark.parametrize("tower", _towers(), ids=_ids)
def test_gauss_map_on_circle(tower):
    z = np.exp(1j * np.linspace(0.01, 6.27, 200))
    z = z[np.min(np.abs(z[:, None] - tower.punctures), axis=1) > 1e-3]
    assert np.allclose(np.abs(tower.gauss_map(z)), 1.0, atol=1e-12)
    n = tower.normal(z)
    assert np.allclose(n[2], 0.0, atol=1e-12)


@pytest.mark.parametrize("tower", _towers(), ids=_ids)
def test_nu_follows_phase(tower):
    d = st.analyze(tower)
    expected = [st.wrap(d.phase + (s - 1) * math.pi / 2) for s in tower.signs]
    diff = np.array([st.wrap(a - b) for a, b in zip(d.nu, expected)])
    assert np.max(np.abs(diff)) < 1e-9
    assert np.all((d.nu > -math.pi) & (d.nu <= math.pi))


def test_wrap():
    assert st.wrap(-math.pi) == math.pi
    assert st.wrap(3 * math.pi) == pytest.approx(math.pi)
    assert st.wrap(0.5 + 4 * math.pi) == pytest.approx(0.5)


def test_wing_validation():
    with pytest.raises(InvalidWingAngles):
        st.check_wings(np.array([0, math.pi]), np.array([1, -1]))
    with pytest.raises(InvalidWingAngles):
        st.check_wings(np.arange(4) * math.pi / 2, np.array([1, 1, -1, -1]))
    with pytest.raises(InvalidWingAngles):
        st.check_wings(np.array([0, 0.5, 1.0, 1.5]), np.array([1, -1, 1, -1]))
    with pytest.raises(NonOrdinaryVertex):
        st.check_wings(np.array([0, 0, 0, math.pi, math.pi, math.pi]), SIGNS6)
    with pytest.raises(NonOrdinaryVertex):
        st.check_wings(np.array([0, 0, math.pi / 2, math.pi, math.pi, 3 * math.pi / 2]), SIGNS6)
    st.check_wings(st.isosceles6(0.5).angles, st.isosceles6(0.5).signs)


def test_family_ranges():
    with pytest.raises(InvalidFamily):
        st.symmetric_family(5, 0.3)
    with pytest.raises(InvalidFamily):
        st.symmetric_family(6, 2.0)


def test_close_polygon():
    th = st.close_polygon([0.1, 0.9, 1.8, 3.2, 3.9, 5.0])
    assert abs(np.sum(np.exp(1j * th))) < 1e-13


def test_mesh_export(tmp_path):
    t = st.symmetric_family(6, 0.4)
    verts, faces = st.export_mesh(t, delta=0.05, rings=8)
    assert verts.shape[1] == 3 and faces.shape[1] == 3
    assert faces.min() == 0 and faces.max() == len(verts) - 1
    assert np.all(np.isfinite(verts))
    path = tmp_path / "t.obj"
    st.write_obj(path, verts, faces)
    lines = path.read_text().splitlines()
    vlines = [ln for ln in lines if ln.startswith("v ")]
    flines = [ln for ln in lines if ln.startswith("f ")]
    assert len(vlines) == len(verts) and len(flines) == len(faces)
    idx = np.array([list(map(int, ln.split()[1:])) for ln in flines])
    assert idx.min() == 1 and idx.max() == len(verts)
    # two sheets mirrored in the plane of the arcs
    h = st.phase(t)
    half = len(verts) // 2
    assert np.allclose(verts[:half, :2], verts[half:, :2])
    assert np.allclose(verts[:half, 2] + verts[half:, 2], 2 * h)
