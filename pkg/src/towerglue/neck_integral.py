"""Integrals of rational 1-forms through a neck.

A family of forms ``omega_t = z**zpow * t**tpow * N(z, t) / D(z, t) dz`` is
stored as two coefficient tables (``num[i, j]`` multiplies ``z**i t**j``).
Gluing the circle ``|z| = eps1`` to ``|z| = |t| / eps1`` by ``z -> t/z``,
the integral from ``eps1`` to ``t/eps1`` minus ``alpha_t log t`` extends to
``t = 0``; :func:`beta_integral` computes the left side by quadrature and
:func:`limit_value` the value at zero.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as P
from scipy import integrate

from .errors import HigherOrderPole, InvalidFamily, NonConvergence, PoleOnPath

QUAD_OPTS = dict(epsabs=1e-13, epsrel=1e-12, limit=400)
RESIDUE_NODES = 512
POLE_MARGIN = 1e-6


def _table(c) -> np.ndarray:
    c = np.atleast_2d(np.asarray(c, dtype=complex))
    return c


def _valuation(c, axis) -> int:
    """Lowest power of z (axis 0) or t (axis 1) with a nonzero coefficient."""
    nz = np.nonzero(np.any(np.abs(c) > 0, axis=1 - axis))[0]
    if nz.size == 0:
        raise InvalidFamily("zero polynomial")
    return int(nz[0])


def _degree(c, axis) -> int:
    nz = np.nonzero(np.any(np.abs(c) > 0, axis=1 - axis))[0]
    return int(nz[-1])


@dataclass(frozen=True)
class RationalForm:
    num: np.ndarray
    den: np.ndarray
    zpow: int = 0
    tpow: int = 0

    @classmethod
    def make(cls, num, den=1, zpow=0, tpow=0) -> "RationalForm":
        num, den = _table(num), _table(den)
        if not np.any(den):
            raise InvalidFamily("denominator vanishes identically")
        return cls(num, den, int(zpow), int(tpow))

    def __call__(self, z, t):
        z = np.asarray(z, dtype=complex)
        t = np.full(z.shape, t, dtype=complex)
        return z**self.zpow * t**self.tpow * P.polyval2d(z, t, self.num) / P.polyval2d(z, t, self.den)

    def pullback(self) -> "RationalForm":
        """The form ``psi^* omega`` for ``psi(z) = t/z``, again rational."""
        dn, dd = _degree(self.num, 0), _degree(self.den, 0)
        k, m = self.zpow, self.tpow
        # N(t/z, t) z^dn = sum n_ij z^(dn-i) t^(i+j), likewise for D
        return RationalForm(-_swap(self.num, dn), _swap(self.den, dd),
                            -k - 2 + dd - dn, k + m + 1)

    def at_zero(self) -> "RationalForm | None":
        """The limit form at ``t = 0``; None when it vanishes identically."""
        vn, vd = _valuation(self.num, 1), _valuation(self.den, 1)
        v = self.tpow + vn - vd
        if v < 0:
            raise InvalidFamily("form diverges as t -> 0")
        if v > 0:
            return None
        return RationalForm(self.num[:, vn:vn + 1], self.den[:, vd:vd + 1], self.zpow, 0)

    def z_valuation(self) -> int:
        """Order at ``z = 0`` (valid for a form without t dependence)."""
        return self.zpow + _valuation(self.num, 0) - _valuation(self.den, 0)

    def poles(self, t) -> np.ndarray:
        """Zeros of the denominator in z at parameter t."""
        coeffs = P.polyval(t, self.den.T)
        coeffs = np.trim_zeros(np.atleast_1d(coeffs), "b")
        if len(coeffs) <= 1:
            return np.zeros(0, dtype=complex)
        return P.polyroots(coeffs)


def _swap(c, d) -> np.ndarray:
    nz, nt = c.shape
    out = np.zeros((d + 1, nz + nt - 1), dtype=complex)
    for i in range(nz):
        for j in range(nt):
            if c[i, j] != 0:
                out[d - i, i + j] += c[i, j]
    return out


def residue(form: RationalForm, t, radius: float, nodes=RESIDUE_NODES) -> complex:
    """``(1/2 pi i)`` times the integral over ``|z| = radius`` (trapezoid rule)."""
    z = radius * np.exp(2j * np.pi * np.arange(nodes) / nodes)
    return complex(np.mean(form(z, t) * z))


@dataclass
class NeckFamily:
    omega: RationalForm
    epsilon1: float = 0.2
    epsilon: float = 0.3
    name: str = ""
    expected: complex | None = None
    tilde: RationalForm = field(init=False, repr=False)

    def __post_init__(self):
        if not 0 < self.epsilon1 < self.epsilon:
            raise InvalidFamily("need 0 < eps1 < eps")
        self.tilde = self.omega.pullback()

    def alpha(self, t) -> complex:
        return residue(self.omega, t, self.epsilon1)

    def check_poles(self, t):
        """Poles must keep off the annulus swept by the path."""
        lo, hi = abs(t) / self.epsilon1, self.epsilon1
        for p in self.omega.poles(t):
            r = abs(p)
            if lo * (1 - POLE_MARGIN) <= r <= hi * (1 + POLE_MARGIN):
                raise PoleOnPath(f"pole at {p:.6g} lies in the neck annulus")


def _log(t, branch) -> complex:
    return math.log(abs(t)) + 1j * (cmath.phase(t) + 2 * math.pi * branch)


def _quad(f, a, b, points=None):
    if b < a:
        # quad(complex_func=True) drops the sign of reversed limits
        return -_quad(f, b, a, points)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err, _ = integrate.quad(f, a, b, complex_func=True, full_output=True,
                                     points=points, **QUAD_OPTS)
    if abs(err) > 1e-9:
        raise NonConvergence(f"neck quadrature error estimate {abs(err):.3g}")
    return val


def beta_integral(fam: NeckFamily, t, branch: int = 0) -> complex:
    """Integral of ``omega_t`` from ``eps1`` to ``t/eps1`` minus ``alpha_t log t``.

    The path is ``beta(s) = exp((1-2s) log eps1 + s log t)``; ``branch``
    adds ``2 pi branch`` to ``arg t`` (and so winds the path around 0).
    """
    t = complex(t)
    e1 = fam.epsilon1
    if not 0 < abs(t) < e1**2:
        raise InvalidFamily("need 0 < |t| < eps1**2")
    fam.check_poles(t)
    lt = _log(t, branch)
    rate = lt - 2 * math.log(e1)

    def f(s):
        z = cmath.exp((1 - 2 * s) * math.log(e1) + s * lt)
        return complex(fam.omega(z, t)) * z * rate

    return _quad(f, 0.0, 1.0, points=[0.5]) - fam.alpha(t) * lt


def _regular_part(form, alpha, sign, e1) -> complex:
    """``integral_{eps1}^0 (form + sign*alpha/z) dz`` along the real segment."""
    if form is None:
        if alpha != 0:
            raise InvalidFamily("the pulled-back limit form misses the residue at 0")
        return 0j
    if form.z_valuation() < -1:
        raise HigherOrderPole("limit form has a pole of order > 1 at 0")
    for p in form.poles(0.0):
        if abs(p) <= e1 * (1 + POLE_MARGIN) and abs(p) > 0:
            raise PoleOnPath(f"limit form has a pole at {p:.6g} inside |z| <= eps1")
    return _quad(lambda x: complex(form(x, 0.0)) + sign * alpha / x, e1, 0.0)


def limit_value(fam: NeckFamily) -> complex:
    """Value at ``t = 0``: the logarithmic terms are subtracted analytically
    and the regular remainders integrated to 0."""
    e1 = fam.epsilon1
    w0 = fam.omega.at_zero()
    wt0 = fam.tilde.at_zero()
    alpha0 = residue(w0, 0.0, e1) if w0 is not None else 0j
    if abs(alpha0) < 1e-14:
        alpha0 = 0j
    first = -alpha0 * math.log(e1) + _regular_part(w0, alpha0, -1, e1)
    second = alpha0 * math.log(e1) + _regular_part(wt0, alpha0, +1, e1)
    return first - second


# -- built-in families -------------------------------------------------------

def battery(epsilon1=0.2) -> list[NeckFamily]:
    """Test families with closed-form limits."""
    e1 = epsilon1
    c, ct = 0.7, 0.4
    log_e1 = math.log(e1)
    return [
        NeckFamily(RationalForm.make([[1]], zpow=-1), e1, name="dz/z", expected=-2 * log_e1),
        NeckFamily(RationalForm.make([[1]]), e1, name="dz", expected=-e1),
        # (1/z + c - ct t/z^2) dz = (z + c z^2 - ct t) / z^2 dz
        NeckFamily(RationalForm.make([[0, -ct], [1, 0], [c, 0]], zpow=-2), e1,
                   name="dz/z + c dz - ct t dz/z^2", expected=-2 * log_e1 - e1 * (c - ct)),
        # dz/z + dz/(z - 1/2) = (2z - 1/2) / (z (z - 1/2)) dz
        NeckFamily(RationalForm.make([[-0.5], [2]], [[-0.5], [1]], zpow=-1), e1,
                   name="dz/z + dz/(z-1/2)",
                   expected=-2 * log_e1 + math.log(0.5 / (0.5 - e1))),
        # (1+t) dz/z + z dz = ((1+t) + z^2) / z dz
        NeckFamily(RationalForm.make([[1, 1], [0, 0], [1, 0]], zpow=-1), e1,
                   name="(1+t) dz/z + z dz", expected=-2 * log_e1 - e1**2 / 2),
    ]


T_SEQUENCE = (1e-2, 1e-4, 1e-6)


def convergence(fam: NeckFamily, arg=0.7, ts=T_SEQUENCE) -> list[float]:
    """Gaps ``|beta_integral - limit_value|`` along ``|t|`` in ``ts``."""
    lim = limit_value(fam)
    return [abs(beta_integral(fam, r * cmath.exp(1j * arg)) - lim) for r in ts]


def branch_shift_error(fam: NeckFamily, t) -> float:
    return abs(beta_integral(fam, t, 1) - beta_integral(fam, t, 0))
