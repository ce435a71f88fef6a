"""Vertical balance and rigidity of phase functions.

Given a configuration whose towers and horizontal representation are fixed,
the horizontal correction ``xi`` solves a linear system built from the
horizontal rigidity matrix and the wing offsets.  It yields the weights::

    K_h = upsilon_h * upsilon_{-h} * exp(-Re(xi_h * conj(u_h)))

and the vertical force through a cut is ``sum K_h sin(phase_h)`` over the
shortest half-edges in it.  Phases are antisymmetric edge arrays (radians).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import chain_spaces as cs
from . import horizontal as hz
from .errors import NonConvergence, SingularSystem

TWO_PI = 2 * np.pi
RIGIDITY_RTOL = 1e-8


def mu_antisymmetric(config) -> np.ndarray:
    """``mu_h - mu_{-h}`` on each edge representative."""
    return cs.antisymmetric_part(config.graph, config.mu_half)


def solve_xi(config, lam=None) -> np.ndarray:
    """Horizontal correction field for the period parameters ``lam``."""
    if lam is None:
        lam = config.lam
    cuts = config.cuts
    cycles = config.cycles
    mu_a = mu_antisymmetric(config)
    periods = np.array([cs.curl(c, mu_a) for c in cycles])
    rhs_p = -periods
    rhs_p[-2] += lam[0]
    rhs_p[-1] += lam[1]
    rhs = np.concatenate([np.zeros(2 * len(cuts)), hz.as_real(rhs_p)])
    mat = config.rigidity_matrix
    s = np.linalg.svd(mat, compute_uv=False)
    if s[-1] <= RIGIDITY_RTOL * s[0]:
        raise SingularSystem("representation is not horizontally rigid; no unique correction")
    return hz.as_complex(np.linalg.solve(mat, rhs))


def weights(config, lam=None, xi=None) -> np.ndarray:
    """Symmetric weights K on edges; an explicit override takes precedence."""
    if config.K_override is not None and lam is None and xi is None:
        return np.asarray(config.K_override, dtype=float)
    if xi is None:
        xi = solve_xi(config, lam)
    g = config.graph
    ups = config.upsilon_half
    reps = np.array([h for h, _ in g.edges])
    opps = np.array([o for _, o in g.edges])
    u = config.rep.units()
    return ups[reps] * ups[opps] * np.exp(-(xi * np.conj(u)).real)


def force_rows(config, cuts) -> np.ndarray:
    return cs.mdiv_matrix(cuts, config.lengths)


def forces(config, phases, cuts=None, K=None) -> np.ndarray:
    """Vertical force through each cut (all cuts by default)."""
    if cuts is None:
        cuts = config.all_cuts
    if K is None:
        K = weights(config)
    rows = force_rows(config, cuts)
    return rows @ (K * np.sin(phases)) if len(cuts) else np.zeros(0)


def phase_periods(config, phases, cycles=None) -> np.ndarray:
    if cycles is None:
        cycles = config.cycles
    return np.array([cs.curl(c, phases) for c in cycles], dtype=float)


def vertex_gradients(config) -> np.ndarray:
    """Columns ``grad(e_v)`` for every vertex but the last, shape (E, V-1)."""
    g = config.graph
    cols = []
    for v in range(g.n_vertices - 1):
        ev = np.zeros(g.n_vertices)
        ev[v] = 1.0
        cols.append(cs.grad(g, ev))
    return np.array(cols).T.reshape(g.n_edges, g.n_vertices - 1)


def rigidity_matrix(config, phases, K=None) -> np.ndarray:
    """Derivative of the forces on the minimal-divergence cut basis along
    the vertex gradients."""
    if K is None:
        K = weights(config)
    rows = force_rows(config, config.mdiv_cuts)
    return rows @ ((K * np.cos(phases))[:, None] * vertex_gradients(config))


@dataclass
class VerticalReport:
    balanced: bool
    rigid: bool
    max_force: float
    determinant: float
    sigma_min: float
    sigma_max: float
    weights: np.ndarray


def report(config, phases=None, tol=1e-10, rtol=RIGIDITY_RTOL, K=None) -> VerticalReport:
    if phases is None:
        phases = config.phases
    if K is None:
        K = weights(config)
    f = forces(config, phases, K=K)
    maxf = float(np.max(np.abs(f))) if f.size else 0.0
    mat = rigidity_matrix(config, phases, K)
    if mat.size == 0:
        return VerticalReport(maxf <= tol, True, maxf, 1.0, float("inf"), float("inf"), K)
    s = np.linalg.svd(mat, compute_uv=False)
    # the relative test alone cannot see a uniformly vanishing matrix (1x1 case)
    scale = max(s[0], np.linalg.norm(force_rows(config, config.mdiv_cuts) * K, 2)
                * np.linalg.norm(vertex_gradients(config), 2))
    rigid = bool(s[-1] > rtol * scale) if scale > 0 else False
    return VerticalReport(maxf <= tol, rigid, maxf, float(np.linalg.det(mat)),
                          float(s[-1]), float(s[0]), K)


def solve_phases(config, shifts=None, phases_init=None, K=None, tol=1e-13, max_iter=60):
    """Newton solve for a vertically balanced phase function.

    The phases are required to have zero circulation around faces and
    circulation ``shifts`` around the two period cycles (modulo 2 pi, lifted
    to the values nearest the starting point).
    """
    g = config.graph
    if shifts is None:
        shifts = config.shifts
    if phases_init is None:
        phases_init = config.phases if config.phases is not None else np.zeros(g.n_edges)
    if K is None:
        K = weights(config)
    cycles = config.cycles
    cmat = np.array([c.coeffs for c in cycles], dtype=float).reshape(len(cycles), g.n_edges)
    wanted = np.zeros(len(cycles))
    wanted[-2], wanted[-1] = shifts
    p0 = cmat @ phases_init
    target = wanted + TWO_PI * np.round((p0 - wanted) / TWO_PI)
    rows = force_rows(config, config.mdiv_cuts)
    phi = np.array(phases_init, dtype=float)
    for _ in range(max_iter):
        res = np.concatenate([rows @ (K * np.sin(phi)), cmat @ phi - target])
        if np.max(np.abs(res)) < tol:
            break
        jac = np.vstack([rows * (K * np.cos(phi))[None, :], cmat])
        try:
            phi = phi - np.linalg.solve(jac, res)
        except np.linalg.LinAlgError:
            raise SingularSystem("vertical Jacobian is singular") from None
    else:
        raise NonConvergence("phase solve did not converge")
    return phi


def lambda_shift_errors(config, phases, lam_shift: complex) -> dict:
    """Deviation from the transformation laws under ``lam -> lam + c*T``."""
    rep = config.rep
    base = np.asarray(config.lam, dtype=complex)
    xi0 = solve_xi(config, base)
    xi1 = solve_xi(config, base + lam_shift * np.array([rep.T1, rep.T2]))
    x = rep.edge_vectors()
    k0 = weights(config, xi=xi0)
    k1 = weights(config, xi=xi1)
    ell = config.lengths
    f0 = forces(config, phases, K=k0)
    f1 = forces(config, phases, K=k1)
    lb = np.array([cs.minimal_length(c, ell) for c in config.all_cuts])
    return {
        "xi": float(np.max(np.abs(xi1 - xi0 - lam_shift * x))),
        "K": float(np.max(np.abs(k1 - k0 * np.exp(-ell * lam_shift.real)) / k0)),
        "force": float(np.max(np.abs(f1 - f0 * np.exp(-lb * lam_shift.real)))) if f0.size else 0.0,
    }
