"""Horizontal balance and rigidity of torus representations.

The horizontal force through a cut is the sum of the unit edge vectors
leaving it.  Its derivative, together with the period map, gives a square
real-linear map on complex antisymmetric fields; the representation is
*rigid* when that map is invertible.

Complex edge fields are flattened to real vectors as
``[Re x0, Im x0, Re x1, Im x1, ...]``; complex equations likewise
contribute a real and an imaginary row.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import chain_spaces as cs
from .errors import NonConvergence, SingularSystem
from .torus_rep import TorusRep

RIGIDITY_RTOL = 1e-8


def as_real(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    out = np.empty(2 * z.size)
    out[0::2] = z.real
    out[1::2] = z.imag
    return out


def as_complex(r) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    return r[0::2] + 1j * r[1::2]


def forces(x, cuts) -> np.ndarray:
    """Horizontal force through each cut for edge vectors ``x``."""
    u = np.asarray(x) / np.abs(x)
    return np.array([cs.div(c, u) for c in cuts], dtype=complex)


def projection_blocks(x) -> np.ndarray:
    """2x2 real blocks of ``chi -> (chi - <u, chi> u) / |x|`` per edge."""
    x = np.asarray(x, dtype=complex)
    ell = np.abs(x)
    u = x / ell
    blocks = np.empty((len(x), 2, 2))
    for e in range(len(x)):
        ux, uy = u[e].real, u[e].imag
        blocks[e] = (np.eye(2) - np.outer([ux, uy], [ux, uy])) / ell[e]
    return blocks


def force_jacobian(x, cuts) -> np.ndarray:
    """Real matrix of the force derivative, rows for each cut."""
    blocks = projection_blocks(x)
    ne = len(blocks)
    jac = np.zeros((2 * len(cuts), 2 * ne))
    for i, c in enumerate(cuts):
        for e in np.nonzero(c.coeffs)[0]:
            jac[2 * i:2 * i + 2, 2 * e:2 * e + 2] += c.coeffs[e] * blocks[e]
    return jac


def force_derivative(x, cuts, chi) -> np.ndarray:
    """Directional derivative of :func:`forces` along ``chi`` (complex)."""
    return as_complex(force_jacobian(x, cuts) @ as_real(chi))


def period_matrix(cycles, n_edges) -> np.ndarray:
    mat = np.zeros((2 * len(cycles), 2 * n_edges))
    for i, c in enumerate(cycles):
        for e in np.nonzero(c.coeffs)[0]:
            mat[2 * i, 2 * e] = c.coeffs[e]
            mat[2 * i + 1, 2 * e + 1] = c.coeffs[e]
    return mat


def rigidity_matrix(rep: TorusRep, x=None, cuts=None, cycles=None) -> np.ndarray:
    """Square matrix of (force derivative on a cut basis, periods on a cycle basis)."""
    g = rep.graph
    if x is None:
        x = rep.edge_vectors()
    if cuts is None:
        cuts = cs.cut_basis(g)
    if cycles is None:
        cycles = rep.cycle_basis()
    return np.vstack([force_jacobian(x, cuts), period_matrix(cycles, g.n_edges)])


@dataclass
class HorizontalReport:
    balanced: bool
    rigid: bool
    max_force: float
    sigma_min: float
    sigma_max: float

    @property
    def condition(self) -> float:
        return self.sigma_max / self.sigma_min if self.sigma_min > 0 else float("inf")


def singular_values(rep: TorusRep) -> np.ndarray:
    return np.linalg.svd(rigidity_matrix(rep), compute_uv=False)


def is_rigid(rep: TorusRep, rtol=RIGIDITY_RTOL) -> bool:
    s = singular_values(rep)
    return bool(s[-1] > rtol * s[0])


def report(rep: TorusRep, tol=1e-10, rtol=RIGIDITY_RTOL) -> HorizontalReport:
    g = rep.graph
    f = forces(rep.edge_vectors(), cs.all_cuts(g)) if g.n_vertices > 1 else np.zeros(0)
    s = singular_values(rep)
    maxf = float(np.max(np.abs(f))) if f.size else 0.0
    return HorizontalReport(maxf <= tol, bool(s[-1] > rtol * s[0]), maxf,
                            float(s[-1]), float(s[0]))


def solve_balance(rep: TorusRep, tol=1e-12, max_iter=100):
    """Newton solve for a balanced representation with the same periods.

    Edge vectors move only by gradients, so the torus, offsets and every
    cycle period are kept; the first vertex stays put.  Returns
    ``(new_rep, residual_history)``.
    """
    g = rep.graph
    cuts = cs.cut_basis(g)
    cycles = rep.cycle_basis()
    x0 = rep.edge_vectors()
    target = np.concatenate([np.zeros(2 * len(cuts)), as_real([cs.curl(c, x0) for c in cycles])])
    pmat = period_matrix(cycles, g.n_edges)
    x = x0.copy()
    history = []
    for _ in range(max_iter + 1):
        res = np.concatenate([as_real(forces(x, cuts)), pmat @ as_real(x)]) - target
        history.append(float(np.max(np.abs(res))) if res.size else 0.0)
        if history[-1] < tol:
            break
        jac = np.vstack([force_jacobian(x, cuts), pmat])
        try:
            step = np.linalg.solve(jac, res)
        except np.linalg.LinAlgError:
            raise SingularSystem("rigidity matrix is singular during balancing") from None
        x = x - as_complex(step)
        if np.any(np.abs(x) < 1e-12 * max(abs(rep.T1), abs(rep.T2))):
            raise NonConvergence("an edge collapsed during balancing")
    else:
        raise NonConvergence(f"balancing residual {history[-1]:.3g} after {max_iter} iterations")
    return rep.with_positions(integrate_positions(rep, x - x0)), history


def integrate_positions(rep: TorusRep, dx) -> np.ndarray:
    """Vertex positions whose differences change the edge vectors by ``dx``.

    ``dx`` must be a gradient; the first vertex is kept fixed.
    """
    g = rep.graph
    parent_h, _ = cs.spanning_tree(g)
    shift = np.zeros(g.n_vertices, dtype=complex)
    order = _bfs_order(g)
    for v in order[1:]:
        h = parent_h[v]
        e = g.edge_of[h]
        a = int(g.vertex_of[h])
        shift[v] = shift[a] + g.edge_sign[h] * dx[e]
    return rep.positions + shift


def _bfs_order(g):
    parent_h, _ = cs.spanning_tree(g)
    depth = {0: 0}

    def d(v):
        if v not in depth:
            depth[v] = d(int(g.vertex_of[parent_h[v]])) + 1
        return depth[v]

    return sorted(range(g.n_vertices), key=d)


# -- length functional -----------------------------------------------------

def length(x) -> float:
    """Total edge length (half the sum over half-edges)."""
    return float(np.sum(np.abs(x)))


def length_derivative(x, chi) -> float:
    u = np.asarray(x) / np.abs(x)
    return float(np.sum((np.conj(u) * chi).real))


def length_hessian(x, chi) -> float:
    x = np.asarray(x)
    ell = np.abs(x)
    dot = (np.conj(x) * chi).real
    return float(np.sum((ell**2 * np.abs(chi) ** 2 - dot**2) / ell**3))
