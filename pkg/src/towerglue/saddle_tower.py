"""Saddle towers given by Weierstrass data on the punctured sphere.

A tower with ``n`` wings has unit wing directions ``exp(i*theta_h)`` in
counterclockwise order and alternating signs ``sigma_h``.  Its Weierstrass
data have simple poles at punctures ``p_h`` on the unit circle, listed
clockwise::

    Phi1 = sum -cos(theta_h) dz/(z - p_h)
    Phi2 = sum -sin(theta_h) dz/(z - p_h)
    Phi3 = sum -i sigma_h   dz/(z - p_h)

Conformality (``Phi1^2 + Phi2^2 + Phi3^2 = 0``) reduces to vanishing
residues of that quadratic differential, which determines the punctures up
to a Moebius map of the disk.

Near ``p_h`` the adapted coordinate is ``w_h = kappa_h * s_h * i(z-p_h)/(z+p_h)``
with ``s_h = +-1`` chosen so that ``w_h > 0`` on the arc towards the next
puncture and ``kappa_h > 0`` an optional rescaling.  In it the tower data
are

* ``upsilon_h``: i dG/(G dw_h) at ``p_h`` (positive),
* ``mu_h``: the horizontal offset of wing ``h``,
* ``nu_h``: the vertical offset of wing ``h``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .errors import (
    IntegrationPathHitsPuncture,
    InvalidFamily,
    InvalidWingAngles,
    NonConvergence,
    NonOrdinaryVertex,
)

TWO_PI = 2.0 * math.pi
QUAD_OPTS = dict(epsabs=1e-14, epsrel=1e-13, limit=200)
MIN_PATH_DISTANCE = 1e-3


# -- wing angles -----------------------------------------------------------

def ccw_increments(angles) -> np.ndarray:
    """Counterclockwise turn from each wing to the next (cyclically)."""
    angles = np.asarray(angles, dtype=float)
    inc = np.mod(np.roll(angles, -1) - angles, TWO_PI)
    inc[inc > TWO_PI - 1e-12] = 0.0
    return inc


def polygon_runs(angles, atol=1e-9) -> list[int]:
    """Lengths of the maximal runs of equal consecutive wing directions,
    i.e. the side lengths of the polygon with unit edges along the wings."""
    inc = ccw_increments(angles)
    n = len(inc)
    breaks = [h for h in range(n) if inc[h] > atol]
    if not breaks:
        return [n]
    runs = []
    for a, b in zip(breaks, breaks[1:] + [breaks[0] + n]):
        runs.append(b - a)
    return runs


def check_wings(angles, signs):
    """Validate wing angles and signs for a tower; raise on failure."""
    angles = np.asarray(angles, dtype=float)
    signs = np.asarray(signs)
    n = len(angles)
    if n < 4 or n % 2:
        raise InvalidWingAngles(f"a tower needs an even number >= 4 of wings, got {n}")
    if len(signs) != n or not np.all(np.abs(signs) == 1):
        raise InvalidWingAngles("one sign +-1 per wing required")
    if np.any(signs * np.roll(signs, -1) != -1):
        raise InvalidWingAngles("wing signs must alternate")
    if abs(np.sum(np.exp(1j * angles))) > 1e-9 * n:
        raise InvalidWingAngles("unit wing vectors do not sum to zero")
    turn = ccw_increments(angles).sum() / TWO_PI
    if abs(turn - 1.0) > 1e-9:
        raise InvalidWingAngles(f"wing directions wind {turn:.6g} times, not once")
    runs = polygon_runs(angles)
    if len(runs) <= 2:
        raise NonOrdinaryVertex("wing polygon is degenerate (all wings collinear)")
    if len(runs) == 4 and runs[0] == runs[2] and runs[1] == runs[3] and min(runs) == 1 and n >= 6:
        raise NonOrdinaryVertex("wing polygon is a parallelogram with two unit sides")


def close_polygon(angles) -> np.ndarray:
    """Smallest correction of ``angles`` making the unit vectors sum to zero."""
    th = np.array(angles, dtype=float)
    for _ in range(60):
        s = np.exp(1j * th).sum()
        if abs(s) < 1e-15 * len(th):
            break
        jac = np.vstack([-np.sin(th), np.cos(th)])
        th -= jac.T @ np.linalg.solve(jac @ jac.T, [s.real, s.imag])
    return th


# -- conformality ----------------------------------------------------------

def _pair_coeffs(angles, signs):
    d = np.subtract.outer(angles, angles)
    c = np.cos(d) - np.outer(signs, signs)
    np.fill_diagonal(c, 0.0)
    return c


def residues(angles, signs, punctures) -> np.ndarray:
    """Residues of the conformality quadratic differential at each puncture
    (up to a factor 2)."""
    p = np.asarray(punctures, dtype=complex)
    c = _pair_coeffs(angles, signs)
    diff = np.subtract.outer(p, p)
    np.fill_diagonal(diff, 1.0)
    return np.sum(c / diff, axis=1)


def residue_jacobian(angles, signs, punctures) -> np.ndarray:
    p = np.asarray(punctures, dtype=complex)
    c = _pair_coeffs(angles, signs)
    diff = np.subtract.outer(p, p)
    np.fill_diagonal(diff, 1.0)
    off = c / diff**2
    jac = off.copy()
    np.fill_diagonal(jac, -off.sum(axis=1))
    return jac


def is_clockwise(p) -> bool:
    p = np.asarray(p, dtype=complex)
    a = np.mod(-np.angle(p / p[0]), TWO_PI)
    return bool(np.all(np.diff(a) > 0))


def _newton(p, angles, signs, free, tol, maxit=30):
    for _ in range(maxit):
        r = residues(angles, signs, p)[free]
        if np.max(np.abs(r)) < tol:
            return p, True
        jac = residue_jacobian(angles, signs, p)[np.ix_(free, free)]
        try:
            step = np.linalg.solve(jac, r)
        except np.linalg.LinAlgError:
            return p, False
        p = p.copy()
        p[free] -= step
        if not np.all(np.isfinite(p)):
            return p, False
    return p, bool(np.max(np.abs(residues(angles, signs, p)[free])) < tol)


def mobius_map(sources, targets):
    """2x2 matrix of the Moebius map sending three points to three points."""
    def to_standard(a0, a1, a2):
        return np.array([[a1 - a2, -a0 * (a1 - a2)], [a1 - a0, -a2 * (a1 - a0)]])

    m = np.linalg.inv(to_standard(*targets)) @ to_standard(*sources)
    return m / np.sqrt(np.linalg.det(m))


def apply_mobius(m, z):
    z = np.asarray(z, dtype=complex)
    return (m[0, 0] * z + m[0, 1]) / (m[1, 0] * z + m[1, 1])


def normalize(punctures, indices=(0, 1, 2), targets=None):
    """Move three punctures to ``targets`` (default: the same three points on
    the unit circle projected radially) by a Moebius map."""
    p = np.asarray(punctures, dtype=complex)
    src = [p[i] for i in indices]
    if targets is None:
        targets = [z / abs(z) for z in src]
    return apply_mobius(mobius_map(src, list(targets)), p)


def solve_punctures(angles, signs, anchors=None, tol=1e-13):
    """Punctures for the given wings, on the unit circle in clockwise order.

    Starts from the regular polygon (equally spaced punctures, which solve
    the regular case exactly) and follows the wing angles to the target,
    keeping the polygon closed, with Newton corrections on the residues at
    all but three fixed punctures.  ``anchors`` optionally maps three wing
    indices to prescribed puncture positions on the unit circle.
    """
    angles = np.asarray(angles, dtype=float)
    signs = np.asarray(signs)
    check_wings(angles, signs)
    n = len(angles)
    inc = ccw_increments(angles)
    target = np.concatenate([[0.0], np.cumsum(inc)[:-1]])
    regular = TWO_PI * np.arange(n) / n
    p = np.exp(-1j * regular)
    free = list(range(3, n))
    rtol = tol * n
    tau, step = 0.0, 0.25
    while tau < 1.0:
        t_next = min(1.0, tau + step)
        mid = close_polygon((1 - t_next) * regular + t_next * target)
        q, ok = _newton(p, mid, signs, free, rtol)
        if ok and np.all(np.abs(np.abs(q) - 1) < 1e-8) and is_clockwise(q):
            p, tau = q, t_next
            step = min(2 * step, 0.5)
        else:
            step /= 2
            if step < 1e-5:
                raise NonConvergence(f"puncture continuation stalled at {tau:.4f}")
    p, ok = _newton(p, angles, signs, free, rtol)
    if not ok:
        raise NonConvergence("puncture residues did not converge")
    p = p / np.abs(p)
    if anchors is not None:
        idx = list(anchors)
        p = normalize(p, idx, [anchors[i] for i in idx])
    return p


# -- the tower ----------------------------------------------------------

@dataclass
class SaddleTower:
    angles: np.ndarray
    signs: np.ndarray
    punctures: np.ndarray
    family: str = "custom"

    def __post_init__(self):
        self.angles = np.asarray(self.angles, dtype=float)
        self.signs = np.asarray(self.signs, dtype=int)
        self.punctures = np.asarray(self.punctures, dtype=complex)

    @classmethod
    def solve(cls, angles, signs, anchors=None, family="custom"):
        return cls(angles, signs, solve_punctures(angles, signs, anchors), family)

    @property
    def n(self) -> int:
        return len(self.angles)

    @property
    def units(self) -> np.ndarray:
        return np.exp(1j * self.angles)

    # Weierstrass data as coefficient vectors over the poles
    def _coefficients(self):
        return np.vstack([-np.cos(self.angles), -np.sin(self.angles), -1j * self.signs])

    def weierstrass(self, z) -> np.ndarray:
        """(Phi1, Phi2, Phi3)/dz at the points ``z``; shape (3,) + z.shape."""
        z = np.asarray(z, dtype=complex)
        inv = 1.0 / (z[..., None] - self.punctures)
        return np.moveaxis(inv @ self._coefficients().T, -1, 0)

    def quadratic_differential(self, z) -> np.ndarray:
        phi = self.weierstrass(z)
        return np.sum(phi**2, axis=0)

    def gauss_map(self, z):
        phi = self.weierstrass(z)
        return -(phi[0] + 1j * phi[1]) / phi[2]

    def normal(self, z) -> np.ndarray:
        g = self.gauss_map(z)
        m = np.abs(g) ** 2
        return np.stack([2 * g.real, 2 * g.imag, m - 1]) / (m + 1)

    def surface_point(self, z) -> np.ndarray:
        """Re of the integral of the Weierstrass data from 0, for ``|z| <= 1``."""
        z = np.asarray(z, dtype=complex)
        logs = np.log(1 - z[..., None] / self.punctures)
        return np.moveaxis((logs @ self._coefficients().T).real, -1, 0)

    def gap(self, h) -> float:
        others = np.delete(self.punctures, h)
        return float(np.min(np.abs(others - self.punctures[h])))

    def adapted_signs(self) -> np.ndarray:
        """Sign making ``i(z-p)/(z+p)`` positive on the arc towards the next puncture."""
        out = np.empty(self.n, dtype=int)
        for h in range(self.n):
            p, q = self.punctures[h], self.punctures[(h + 1) % self.n]
            arc = np.mod(np.angle(p) - np.angle(q), TWO_PI)
            z = p * np.exp(-0.5j * arc)
            out[h] = 1 if (1j * (z - p) / (z + p)).real > 0 else -1
        return out

    def coordinate_derivative(self, kappa=None) -> np.ndarray:
        """dw_h/dz at p_h for the adapted coordinates."""
        kappa = np.ones(self.n) if kappa is None else np.asarray(kappa, dtype=float)
        return kappa * self.adapted_signs() * 1j / (2 * self.punctures)


# -- tower data -----------------------------------------------------------

@dataclass
class TowerData:
    upsilon: np.ndarray
    mu: np.ndarray
    nu: np.ndarray
    phase: float
    adapted: np.ndarray = field(repr=False)


def upsilon(tower: SaddleTower, kappa=None) -> np.ndarray:
    """``i dG/(G dw_h)`` at each puncture from the local expansion of G."""
    p = tower.punctures
    a = -np.exp(1j * tower.angles)
    b = -1j * tower.signs.astype(float)
    diff = np.subtract.outer(p, p)
    np.fill_diagonal(diff, np.inf)
    a_reg = (a[None, :] / diff).sum(axis=1)
    b_reg = (b[None, :] / diff).sum(axis=1)
    dlog_g = a_reg / a - b_reg / b
    return (1j * dlog_g / tower.coordinate_derivative(kappa)).real


def upsilon_from_residues(tower: SaddleTower, kappa=None, nodes=256) -> np.ndarray:
    """``-sin(theta) Res(Phi1/w) + cos(theta) Res(Phi2/w)`` by contour integrals."""
    kappa = np.ones(tower.n) if kappa is None else np.asarray(kappa, dtype=float)
    s = tower.adapted_signs()
    out = np.empty(tower.n, dtype=complex)
    t = TWO_PI * np.arange(nodes) / nodes
    for h in range(tower.n):
        p = tower.punctures[h]
        r = 0.3 * tower.gap(h)
        z = p + r * np.exp(1j * t)
        dz = 1j * r * np.exp(1j * t) * (TWO_PI / nodes)
        w = kappa[h] * s[h] * 1j * (z - p) / (z + p)
        phi = tower.weierstrass(z)
        res1 = np.sum(phi[0] / w * dz) / (TWO_PI * 1j)
        res2 = np.sum(phi[1] / w * dz) / (TWO_PI * 1j)
        th = tower.angles[h]
        out[h] = -math.sin(th) * res1 + math.cos(th) * res2
    return out


def mu_closed_form(tower: SaddleTower, kappa=None) -> np.ndarray:
    """Horizontal wing offsets with base point 0 and unit-circle punctures."""
    p = tower.punctures
    u = tower.units
    dist = np.abs(np.subtract.outer(p, p))
    np.fill_diagonal(dist, 1.0)
    mu = -u * math.log(2) - (np.log(dist) * u[None, :]).sum(axis=1)
    if kappa is not None:
        mu = mu + u * np.log(np.asarray(kappa, dtype=float))
    return mu


def _radial(h_point, f):
    """Integral of f(z) dz along the segment from 0 to ``h_point``."""
    with warnings.catch_warnings():
        # quadpack flags roundoff once it reaches machine precision
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err, _ = integrate.quad(lambda s: f(s * h_point) * h_point, 0.0, 1.0,
                                     complex_func=True, full_output=True, **QUAD_OPTS)
    err = abs(err)
    if err > 1e-10:
        raise NonConvergence(f"radial quadrature error estimate {err:.3g}")
    return val


def _check_path(tower, target, skip=None):
    for j, q in enumerate(tower.punctures):
        if j == skip:
            continue
        # distance from q to the segment [0, target]
        s = np.clip((np.conj(target) * q).real / abs(target) ** 2, 0.0, 1.0)
        if abs(q - s * target) < MIN_PATH_DISTANCE:
            raise IntegrationPathHitsPuncture(f"path to {target} passes within "
                                              f"{MIN_PATH_DISTANCE} of puncture {j}")


def _regularized(tower, h, coeffs, lead):
    """Pole data with the pole at p_h replaced by ``lead/(z + p_h)``."""
    p = tower.punctures
    others = np.delete(np.arange(tower.n), h)

    def f(z):
        return np.sum(coeffs[others] / (z - p[others])) + lead / (z + p[h])

    return f


def mu_quadrature(tower: SaddleTower, kappa=None) -> np.ndarray:
    """Horizontal wing offsets from their defining limit by quadrature."""
    kappa = np.ones(tower.n) if kappa is None else np.asarray(kappa, dtype=float)
    out = np.empty(tower.n, dtype=complex)
    c1, c2 = -np.cos(tower.angles), -np.sin(tower.angles)
    for h in range(tower.n):
        p = tower.punctures[h]
        _check_path(tower, p, skip=h)
        th = tower.angles[h]
        # Phi_k + cos/sin(theta) dlog w_h is regular at p_h; |w_h(0)| = kappa_h
        i1 = _radial(p, _regularized(tower, h, c1, -math.cos(th)))
        i2 = _radial(p, _regularized(tower, h, c2, -math.sin(th)))
        logk = math.log(kappa[h])
        out[h] = (math.cos(th) * logk + i1.real) + 1j * (math.sin(th) * logk + i2.real)
    return out


def nu_quadrature(tower: SaddleTower) -> np.ndarray:
    """Vertical wing offsets, reduced to (-pi, pi]."""
    s = tower.adapted_signs()
    c3 = -1j * tower.signs.astype(float)
    out = np.empty(tower.n)
    for h in range(tower.n):
        p = tower.punctures[h]
        _check_path(tower, p, skip=h)
        sg = tower.signs[h]
        val = _radial(p, _regularized(tower, h, c3, -1j * sg)).real
        # Re(i sigma log w_h(0)) with w_h(0) = -i s_h
        val += sg * s[h] * math.pi / 2
        out[h] = wrap(val)
    return out


def phase(tower: SaddleTower) -> float:
    """Height of the horizontal plane holding the arcs after positive wings."""
    p = tower.punctures
    h = int(np.nonzero(tower.signs == 1)[0][0])
    q = p[(h + 1) % tower.n]
    arc = np.mod(np.angle(p[h]) - np.angle(q), TWO_PI)
    z = p[h] * np.exp(-0.5j * arc)
    _check_path(tower, z)
    c3 = -1j * tower.signs.astype(float)
    val = _radial(z, lambda w: np.sum(c3 / (w - p))).real
    return wrap(val)


def wrap(a: float) -> float:
    """Reduce an angle to (-pi, pi]."""
    b = math.remainder(a, TWO_PI)
    return math.pi if b == -math.pi else b


def analyze(tower: SaddleTower, kappa=None) -> TowerData:
    return TowerData(upsilon(tower, kappa), mu_closed_form(tower, kappa),
                     nu_quadrature(tower), phase(tower), tower.adapted_signs())


def a_periods(tower: SaddleTower, nodes=400) -> np.ndarray:
    """Re of the integral of (Phi1, Phi2, Phi3) on a small loop around each puncture."""
    out = np.empty((tower.n, 3))
    t = TWO_PI * np.arange(nodes) / nodes
    for h in range(tower.n):
        r = 0.3 * tower.gap(h)
        z = tower.punctures[h] + r * np.exp(1j * t)
        dz = 1j * r * np.exp(1j * t) * (TWO_PI / nodes)
        out[h] = np.sum(tower.weierstrass(z) * dz, axis=1).real
    return out


def sample_points(tower: SaddleTower, count=100, seed=0) -> np.ndarray:
    """Points of the sphere kept away from the punctures."""
    rng = np.random.default_rng(seed)
    pts = []
    while len(pts) < count:
        z = complex(*rng.uniform(-2, 2, size=2))
        if np.min(np.abs(z - tower.punctures)) > 0.1 * min(tower.gap(h) for h in range(tower.n)):
            pts.append(z)
    return np.array(pts)


def conformality_residual(tower: SaddleTower, points=None) -> float:
    if points is None:
        points = sample_points(tower)
    return float(np.max(np.abs(tower.quadratic_differential(points))))


def coordinate_change_errors(tower: SaddleTower, kappa) -> dict:
    """Deviation from the transformation laws under ``w_h -> kappa_h w_h``."""
    kappa = np.asarray(kappa, dtype=float)
    u0 = upsilon_from_residues(tower).real
    u1 = upsilon_from_residues(tower, kappa).real
    m0 = mu_quadrature(tower)
    m1 = mu_quadrature(tower, kappa)
    return {
        "upsilon": float(np.max(np.abs(u0 - u1 * kappa))),
        "mu": float(np.max(np.abs((m1 - m0) - tower.units * np.log(kappa)))),
    }


# -- families -------------------------------------------------------------

def symmetric_family(n: int, psi: float) -> SaddleTower:
    """Towers with k = n/2 fold rotational symmetry, closed form."""
    if n < 4 or n % 2:
        raise InvalidFamily("symmetric towers need an even n >= 4")
    k = n // 2
    phi = math.pi / n - (psi - math.pi / n) / (k - 1)
    if not (0 < phi < math.pi / k) or not (0 <= psi <= math.pi / k):
        raise InvalidFamily(f"psi={psi} is outside the symmetric family for n={n}")
    h = np.arange(n)
    alt = (-1.0) ** h
    punctures = np.exp(-1j * (h // 2) * TWO_PI / k + 1j * alt * phi)
    angles = (h // 2) * TWO_PI / k - alt * psi
    check_wings(angles, alt)
    return SaddleTower(angles, alt.astype(int), punctures, "symmetric")


def symmetric_parameter(n: int, psi: float) -> float:
    k = n // 2
    return math.pi / n - (psi - math.pi / n) / (k - 1)


def isosceles6(psi: float) -> SaddleTower:
    """Six-winged towers with an isosceles triangular polygon, closed form."""
    if not (0 < psi < math.pi / 2):
        raise InvalidFamily("psi must lie in (0, pi/2)")
    phi = math.asin(1 - math.sin(psi))
    e = np.exp(1j * phi)
    punctures = np.array([1 / e, -1j, -e, -1 / e, 1j, e])
    angles = np.array([psi, math.pi / 2, math.pi - psi, -math.pi + psi, -math.pi / 2, -psi])
    signs = np.array([(-1) ** (h + 1) for h in range(6)])
    check_wings(angles, signs)
    return SaddleTower(angles, signs, punctures, "isosceles6")


def isosceles6_parameter(psi: float) -> float:
    return math.asin(1 - math.sin(psi))


def isosceles6_reference(psi: float) -> dict:
    """Closed-form upsilon and the first two mu for :func:`isosceles6`."""
    phi = isosceles6_parameter(psi)
    lg = math.log(math.cos(phi) / (1 - math.sin(phi)))
    mu0 = 1j * lg + np.exp(-1j * psi) * math.log(1 / math.tan(phi))
    mu1 = 2j * math.sin(psi) * lg
    ups = [4 * math.cos(psi) / math.cos(phi) if h % 3 == 1 else
           4 * math.cos(psi) / math.sin(2 * phi) for h in range(6)]
    return {"upsilon": np.array(ups), "mu0": complex(mu0), "mu1": complex(mu1)}


# |mu_h| at psi = pi/n for the symmetric family
SYMMETRIC_MU_TABLE = {
    4: 0.0,
    6: math.log(math.sqrt(3)),
    8: math.sqrt(2) * math.log(1 + math.sqrt(2)),
    10: 0.25 * math.log(5) + math.sqrt(5) / 2 * math.log(2 + math.sqrt(5)),
    12: 0.5 * math.log(3) + math.sqrt(3) * math.log(2 + math.sqrt(3)),
}


# -- mesh ----------------------------------------------------------------

def export_mesh(tower: SaddleTower, delta=0.05, rings=32, spokes=None):
    """Triangulated period of the tower with the ends ``|w_h| < delta`` removed.

    The unit disk is sampled on a polar grid and mapped by the closed-form
    integral of the Weierstrass data; the outer disk is its reflection in
    the plane of the arcs after positive wings.  Triangles are oriented
    along the Gauss map normal.  Returns ``(vertices, faces)`` with 0-based
    faces.
    """
    if spokes is None:
        spokes = 8 * rings
    p = tower.punctures
    radii = np.linspace(0.0, 1.0, rings + 1)[1:]
    ts = TWO_PI * np.arange(spokes) / spokes
    zs = [0j] + [r * np.exp(1j * t) for r in radii for t in ts]
    zs = np.array(zs)
    w = np.abs(1j * (zs[:, None] - p) / (zs[:, None] + p))
    keep = np.all(w >= delta, axis=1)

    def node(i, j):
        return 1 + i * spokes + (j % spokes)

    tris = []
    for j in range(spokes):
        tris.append((0, node(0, j), node(0, j + 1)))
    for i in range(rings - 1):
        for j in range(spokes):
            a, b = node(i, j), node(i, j + 1)
            c, d = node(i + 1, j), node(i + 1, j + 1)
            tris.append((a, c, d))
            tris.append((a, d, b))
    tris = [t for t in tris if keep[list(t)].all()]

    index = -np.ones(len(zs), dtype=int)
    used = sorted({i for t in tris for i in t})
    index[used] = np.arange(len(used))
    zu = zs[used]
    inner = tower.surface_point(zu).T
    height = phase(tower)
    outer = inner.copy()
    outer[:, 2] = 2 * height - outer[:, 2]
    verts = np.vstack([inner, outer])
    nin = len(zu)
    z_outer = 1 / np.conj(np.where(zu == 0, 1e-8, zu))

    faces = []
    for sheet, zsheet in ((0, zu), (1, z_outer)):
        normals = tower.normal(zsheet).T
        for t in tris:
            ids = [int(index[i]) + sheet * nin for i in t]
            a, b, c = verts[ids]
            cr = np.cross(b - a, c - a)
            centre = np.mean(normals[[index[i] for i in t]], axis=0)
            if np.dot(cr, centre) < 0:
                ids = [ids[0], ids[2], ids[1]]
            faces.append(ids)
    return verts, np.array(faces, dtype=int)


def write_obj(path, vertices, faces):
    with open(path, "w") as fh:
        for v in vertices:
            fh.write("v {:.9g} {:.9g} {:.9g}\n".format(*v))
        for f in faces:
            fh.write("f {} {} {}\n".format(*(int(i) + 1 for i in f)))
