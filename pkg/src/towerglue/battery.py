"""Reference checks run by ``towerglue verify-paper``.

Each check returns ``(passed, detail)``.  They cover the reference values
and qualitative claims: graph counts, rigidity verdicts, tower tables, the
weight transformation laws, the genus three catalog and the triangular
lattice determinants.
"""

from __future__ import annotations

import cmath
import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import catalog as ct
from . import chain_spaces as cs
from . import horizontal as hz
from . import saddle_tower as st
from . import vertical as vt
from .configuration import assemble, full_report, rescaled
from .errors import NonOrdinaryVertex, NotOrientable, ShiftMismatch
from .rotation_graph import orient


@dataclass
class Check:
    name: str
    func: Callable


CHECKS: list[Check] = []


def check(name):
    def deco(f):
        CHECKS.append(Check(name, f))
        return f
    return deco


def _close(a, b, tol):
    err = float(np.max(np.abs(np.asarray(a) - np.asarray(b))))
    return err <= tol, f"max error {err:.2e}"


# -- combinatorics ------------------------------------------------------------

@check("one-vertex three-loop graph has V=1, E=3, F=2, genus 1")
def _aH_counts():
    g, _ = ct.one_vertex_graph()
    got = (g.n_vertices, g.n_edges, g.n_faces, g.genus)
    return got == (1, 3, 2, 1), f"(V, E, F, genus) = {got}"


@check("two-vertex four-edge graph has V=2, E=4, F=2, genus 1")
def _meeks_counts():
    g, _ = ct.meeks_graph()
    got = (g.n_vertices, g.n_edges, g.n_faces, g.genus)
    return got == (2, 4, 2, 1), f"(V, E, F, genus) = {got}"


@check("two-vertex graph orientation alternates around each vertex")
def _meeks_orient():
    g, _ = ct.meeks_graph()
    s = orient(g)
    ok = all(s[c[j]] == -s[c[(j + 1) % len(c)]] for c in g.vertices for j in range(len(c)))
    return ok, f"signs {s.tolist()}"


@check("two-face systems with parallel loops are not orientable")
def _non_orientable():
    bad = ct.two_face_types()["non_orientable"]
    fails = 0
    for g in bad:
        try:
            orient(g)
        except NotOrientable:
            fails += 1
    return fails == len(bad) and fails > 0, f"{fails}/{len(bad)} rejected"


@check("two-face genus one enumeration leaves exactly two orientable types")
def _two_types():
    t = ct.two_face_types()["orientable"]
    return len(t) == 2, f"{len(t)} orientable types, vertex counts {[g.n_vertices for g in t]}"


@check("doubled honeycomb is orientable and balances at Fermat-Torricelli points")
def _honeycomb():
    g, rep = ct.doubled_honeycomb(1.0, 0.3 + 1.1j)
    orient(g)
    x = rep.halfedge_vectors()
    angles = []
    for cyc in g.vertices:
        dirs = sorted({round(cmath.phase(x[h]), 9) for h in cyc})
        angles += [(b - a) % (2 * math.pi) for a, b in zip(dirs, dirs[1:] + dirs[:1])]
    err = max(abs(a - 2 * math.pi / 3) for a in angles)
    return err < 1e-9 and hz.report(rep).balanced, f"angle error {err:.2e}"


# -- horizontal -----------------------------------------------------------------

@check("rectangular grid: the cut between the two columns holds the four horizontal edges")
def _necessary_cut():
    g, rep = ct.grid_graph()
    c = cs.cut(g, [0, 1])
    x = rep.edge_vectors()
    members = np.nonzero(c.coeffs)[0]
    ok = len(members) == 4 and all(abs(x[e].imag) < 1e-12 for e in members)
    return ok, f"{len(members)} edges, all horizontal: {ok}"


@check("period of the first handle cycle of the two-vertex graph equals T1")
def _meeks_period():
    _, rep = ct.meeks_graph(1.0, 1.3j)
    per = rep.periods()
    return _close(per[-2:], [rep.T1, rep.T2], 1e-12)


@check("two-vertex graph on the square torus is balanced and rigid")
def _meeks_rigid():
    _, rep = ct.meeks_graph()
    r = hz.report(rep)
    return r.balanced and r.rigid, f"force {r.max_force:.1e}, sigma_min {r.sigma_min:.3g}"


@check("triangular torus graphs (1x1 to 3x3) are horizontally rigid")
def _triangular_rigid():
    smin = [hz.report(ct.triangular_lattice(k)[1]).sigma_min for k in (1, 2, 3)]
    return min(smin) > 1e-6, f"smallest singular values {[f'{s:.3g}' for s in smin]}"


@check("three families of parallel lines are balanced but not rigid")
def _three_lines():
    _, rep = ct.three_lines_graph()
    r = hz.report(rep)
    return r.balanced and not r.rigid, f"sigma_min/sigma_max {r.sigma_min / r.sigma_max:.1e}"


@check("balancing a perturbed two-vertex graph returns to a 2-division point")
def _meeks_rebalance():
    g, rep = ct.meeks_graph(1.0, cmath.exp(1.2j) * 1.1)
    start = rep.with_positions(rep.positions + np.array([0.07 - 0.04j, 0]))
    out, _ = hz.solve_balance(start)
    d = out.positions[0] - out.positions[1]
    target = (rep.T1 + rep.T2) / 2
    err = min(abs(d - target + m * rep.T1 + n * rep.T2) for m in (-1, 0, 1) for n in (-1, 0, 1))
    return err < 1e-10, f"distance to the 2-division point {err:.1e}"


@check("length derivative along gradients equals minus the vertex forces")
def _length_identity():
    rng = np.random.default_rng(7)
    g, rep = ct.triangular_lattice(2)
    worst = 0.0
    for _ in range(5):
        pos = rep.positions + 0.05 * (rng.normal(size=g.n_vertices) + 1j * rng.normal(size=g.n_vertices))
        x = rep.with_positions(pos).edge_vectors()
        f = rng.normal(size=g.n_vertices) + 1j * rng.normal(size=g.n_vertices)
        lhs = hz.length_derivative(x, cs.grad(g, f))
        forces = hz.forces(x, [cs.vertex_cut(g, v) for v in range(g.n_vertices)])
        rhs = -np.sum((np.conj(forces) * f).real)
        worst = max(worst, abs(lhs - rhs))
    return worst < 1e-10, f"max error {worst:.1e}"


# -- towers ------------------------------------------------------------

@check("symmetric six-winged tower: solved punctures match the closed form")
def _sym_punctures():
    ref = st.symmetric_family(6, 0.4)
    sol = st.SaddleTower.solve(ref.angles, ref.signs, anchors={0: ref.punctures[0],
                                                               1: ref.punctures[1],
                                                               2: ref.punctures[2]})
    return _close(sol.punctures, ref.punctures, 1e-10)


@check("isosceles six-winged tower: punctures with sin(psi) + sin(phi) = 1")
def _iso_punctures():
    ref = st.isosceles6(math.pi / 6)
    sol = st.SaddleTower.solve(ref.angles, ref.signs, anchors={1: -1j, 4: 1j, 0: ref.punctures[0]})
    return _close(sol.punctures, ref.punctures, 1e-8)


@check("symmetric towers have upsilon = n - 2")
def _sym_upsilon():
    err = 0.0
    for n in (4, 6, 8, 10, 12):
        ref = st.symmetric_family(n, 0.8 * math.pi / n)
        # upsilon depends on the normalization; pin three punctures to the symmetric one
        t = st.SaddleTower.solve(ref.angles, ref.signs, anchors=dict(enumerate(ref.punctures[:3])))
        err = max(err, float(np.max(np.abs(st.upsilon(t) - (n - 2)))))
    return err < 1e-9, f"max error {err:.1e}"


@check("eight-winged symmetric tower: |mu| = sqrt(2) log(1 + sqrt(2)), parallel to the wing")
def _sym_mu8():
    t = st.symmetric_family(8, math.pi / 8)
    mu = st.mu_closed_form(t)
    par = float(np.max(np.abs((mu * np.conj(t.units)).imag)))
    ok, det = _close(np.abs(mu), st.SYMMETRIC_MU_TABLE[8], 1e-9)
    return ok and par < 1e-9, det


@check("four-winged towers have mu = e^{-i theta} log tan(psi)")
def _scherk_mu():
    psi = 0.6
    t = st.symmetric_family(4, psi)
    return _close(st.mu_closed_form(t), np.conj(t.units) * math.log(math.tan(psi)), 1e-12)


@check("six-winged tower at psi = pi/6: upsilon = 4 and |mu| = log sqrt(3)")
def _tower_table():
    t = st.symmetric_family(6, math.pi / 6)
    d = st.analyze(t)
    ok1, _ = _close(d.upsilon, 4.0, 1e-12)
    ok2, det = _close(np.abs(d.mu), math.log(math.sqrt(3)), 1e-12)
    return ok1 and ok2, det


@check("doubling an adapted coordinate halves upsilon and shifts mu by e^{i theta} log 2")
def _coordinate_laws():
    t = st.isosceles6(0.5)
    errs = st.coordinate_change_errors(t, np.full(6, 2.0))
    return max(errs.values()) < 1e-10, f"errors {errs}"


# -- vertical ---------------------------------------------------------------

@check("correction for lattice deformations lambda*T is lambda times the edge vectors")
def _xi_shift():
    m = ct.meeks(1.0, 1.2 * cmath.exp(1.1j), 0.4, 1.1)
    errs = vt.lambda_shift_errors(m, m.phases, 0.3 - 0.2j)
    return errs["xi"] < 1e-10, f"error {errs['xi']:.1e}"


@check("weights scale by exp(-length Re lambda) under lattice deformations")
def _K_shift():
    m = ct.meeks(1.0, 1.2 * cmath.exp(1.1j), 0.4, 1.1)
    errs = vt.lambda_shift_errors(m, m.phases, -0.25 + 0.4j)
    return errs["K"] < 1e-10 and errs["force"] < 1e-10, f"errors {errs}"


@check("weights do not depend on the adapted coordinates")
def _K_invariance():
    m = ct.meeks(1.0, 1.2 * cmath.exp(1.1j), 0.4, 1.1)
    kappa = np.random.default_rng(3).uniform(0.5, 2.0, m.graph.n_halfedges)
    return _close(vt.weights(rescaled(m, kappa)), vt.weights(m), 1e-10)


@check("square-torus two-vertex graph with Scherk towers has weights 4")
def _meeks_K():
    return _close(vt.weights(ct.meeks()), 4.0, 1e-10)


@check("trivial phase functions are balanced on every cut")
def _trivial():
    g, rep = ct.triangular_lattice(3)
    phases = np.random.default_rng(5).choice([0.0, math.pi], g.n_edges)
    cfg = assemble(g, rep, K_override=np.ones(g.n_edges))
    f = vt.forces(cfg, phases)
    return float(np.max(np.abs(f))) < 1e-12, f"max force {np.max(np.abs(f)):.1e}"


@check("phases (a, -b, -a, b) balance the two-vertex graph on the square torus")
def _meeks_balance():
    r = full_report(ct.meeks(1.0, 1j, 0.7, 1.9))
    return r.vertical.balanced, f"force {r.vertical.max_force:.1e}"


@check("two-vertex graph on the square torus is vertically rigid iff cos a + cos b != 0")
def _meeks_vertical_rigidity():
    ok = True
    for p1, p2 in [(0.4, 1.1), (1.0, 2.5), (2.2, 0.3), (-1.0, 2.9)]:
        a, b = (-p1 - p2) / 2, (p2 - p1) / 2
        r = full_report(ct.meeks(1.0, 1j, p1, p2)).vertical
        ok &= r.rigid == (abs(math.cos(a) + math.cos(b)) > 1e-8)
    # cos a + cos b = 0 when p1 = pi
    r = full_report(ct.meeks(1.0, 1j, math.pi, 0.8)).vertical
    ok &= not r.rigid
    return ok, f"degenerate determinant {r.determinant:.1e}"


@check("phase solver recovers a = -(shift1 + shift2)/2, b = (shift2 - shift1)/2")
def _meeks_solve():
    p1, p2 = 0.5, 1.3
    m = ct.meeks(1.0, 1j, p1, p2)
    a, b = (-p1 - p2) / 2, (p2 - p1) / 2
    exact = m.phases.copy()
    phi = vt.solve_phases(m, (p1, p2), exact + np.array([0.05, -0.03, 0.02, 0.04]))
    return _close(np.array([phi[0], phi[1], phi[2], phi[3]]), [a, -b, -a, b], 1e-10)


@check("triangular 3x3 lattice with unit weights: determinants -3/4 and -315/4")
def _triangular():
    res = ct.triangular33_determinants()
    got = (res["first"]["determinants"], res["second"]["determinants"])
    ok = (len(got[0]) == 1 and abs(got[0][0] + 0.75) < 1e-9
          and len(got[1]) == 1 and abs(got[1][0] + 78.75) < 1e-9)
    return ok, f"determinants {got}"


# -- configurations ---------------------------------------------------------

@check("one-vertex gyroid point (hexagonal torus, a = b = 2 pi/3) is balanced and rigid")
def _rgl():
    a = 2 * math.pi / 3
    r = full_report(ct.one_vertex(1.0, cmath.exp(2j * math.pi / 3), a, a))
    return r.ok, ", ".join(r.verdicts)


@check("one-vertex family is balanced and rigid at generic parameters")
def _aH_generic():
    r = full_report(ct.one_vertex(1.0, 0.3 + 1.2j, 0.9, -1.7))
    return r.ok, ", ".join(r.verdicts)


@check("collinear wings and unit parallelograms are not ordinary vertices")
def _degenerate():
    bad = 0
    for angles in ([0, 0, 0, math.pi, math.pi, math.pi],
                   [0, 0, math.pi / 2, math.pi, math.pi, 3 * math.pi / 2]):
        try:
            st.check_wings(np.array(angles, dtype=float), np.array([1, -1] * (len(angles) // 2)))
        except NonOrdinaryVertex:
            bad += 1
    return bad == 2, f"{bad}/2 rejected"


@check("phases with a nonzero face circulation are rejected")
def _face_mismatch():
    g, rep = ct.meeks_graph()
    try:
        assemble(g, rep, np.array([0.1, 0.2, 0.3, 0.4]))
    except ShiftMismatch:
        return True, "ShiftMismatch raised"
    return False, "accepted"


@check("rectangular-torus family with a shift of pi is vertically non-rigid")
def _aG():
    r = full_report(ct.orthogonal_family(1.0, 1.4j, 0.3, 0.8))
    return "vertically non-rigid" in r.verdicts, ", ".join(r.verdicts)


@check("oblique-torus family is vertically non-rigid with shift2 - shift1 = pi")
def _aI():
    cfg = ct.oblique_family(1.0, cmath.exp(1.2j), 0.3, 0.4)
    r = full_report(cfg)
    tie = abs(math.remainder(cfg.shifts[1] - cfg.shifts[0] - math.pi, 2 * math.pi)) < 1e-12
    return "vertically non-rigid" in r.verdicts and tie, ", ".join(r.verdicts)


@check("square torus admits the rectangular family but not the oblique one")
def _catalog_square():
    cat = {e.name: e.admissible for e in ct.genus3_catalog(1.0, 1j)}
    return cat["aG"] and not cat["aI"], str(cat)


@check("oblique torus (angle < pi/2): the shortest edges of the cut are 2 and 4")
def _meeks_short():
    g, rep = ct.meeks_graph(1.0, cmath.exp(1.1j))
    c = cs.vertex_cut(g, 0)
    keep = np.nonzero(cs.shortest_coeffs(c, rep.lengths()))[0]
    names = sorted(g.names[g.edges[e][0]] for e in keep)
    return names == ["2", "4"], f"shortest edges {names}"


def run(stream=None):
    """Run every check; returns ``(all_passed, results)``."""
    results = []
    for c in CHECKS:
        t0 = time.perf_counter()
        try:
            ok, detail = c.func()
        except Exception as exc:  # a crashing check is a failed check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append({"name": c.name, "passed": bool(ok), "detail": detail,
                        "seconds": round(time.perf_counter() - t0, 3)})
        if stream is not None:
            print(f"{'PASS' if ok else 'FAIL'}  {c.name}  ({detail})", file=stream, flush=True)
    return all(r["passed"] for r in results), results
