"""Stability regions of IMEX-BDF methods on the scalar delay test equation.

For ``y' = -lam * y + gam * y(t - tau)`` discretized with step h and delay
count m, stability is governed by the roots of

    zeta^m * (rho(zeta) - z * sigma(zeta)) + z * mu * sigma_star(zeta) = 0

with ``z = -lam h`` and ``mu = gam / lam``.  For each fixed z < 0 the set of
stable mu is bounded by a closed curve; the radius of the largest
origin-centered disk inside that region, as a function of z, has closed or
semi-closed piecewise forms for the two built-in methods, and its partial
inverse converts a disk radius into the most negative admissible z (hence a
step-size bound).  ``z = -inf`` is passed as ``float("-inf")`` and handled as
a genuine degree-dropping limit, never as a large finite number.

Everything here is a pure function of its arguments and safe to call from
multiple threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.optimize import brentq, minimize_scalar

from .exceptions import (
    CurvePoleError,
    DegeneratePolynomialError,
    RadiusDomainError,
    UnsupportedOrderError,
)
from .methods import ImexCoefficients, imex_bdf_coefficients

__all__ = [
    "CharPolynomials",
    "char_polynomial_coefficients",
    "char_roots",
    "classify_roots",
    "char_equation_stable",
    "StabilityCurve",
    "boundary_point",
    "stability_boundary",
    "boundary_min_distance",
    "disk_radius",
    "z_for_radius",
    "unconditional_radius",
    "bdf2_curve_modulus_sq",
    "bdf2_critical_theta",
]

MethodLike = Union[ImexCoefficients, int]

ROOT_TOLERANCE = 1e-9

# Piecewise breakpoints of the disk-radius functions.  The order-2 values are
# exact algebraic numbers; the order-3 ones are known to six digits only, so
# anything sensitive to them carries ~1e-5 slack.
_BDF2_PLATEAU_EDGE = -1.0 / math.sqrt(2.0)
_BDF2_FAR_EDGE = 0.5 * (-10.0 - 9.0 * math.sqrt(2.0))
_BDF2_RADIUS_SPLIT = (3.0 / 31.0) * (4.0 * math.sqrt(2.0) - 1.0)
_BDF3_PLATEAU_EDGE = -0.722965
_BDF3_FAR_EDGE = -12.655874
_BDF3_RADIUS_SPLIT = 0.218109

_UNCONDITIONAL_RADIUS = {2: 1.0 / 3.0, 3: 1.0 / 7.0}


def _as_method(method: MethodLike) -> ImexCoefficients:
    if isinstance(method, ImexCoefficients):
        return method
    return imex_bdf_coefficients(int(method))


def _closed_form_order(method: MethodLike) -> int:
    """Return 2 or 3 when the method is one of the built-in IMEX-BDF pairs."""
    if isinstance(method, (int, np.integer)):
        if int(method) in (2, 3):
            return int(method)
        raise UnsupportedOrderError(f"no closed forms for order {method!r}")
    for order in (2, 3):
        ref = imex_bdf_coefficients(order)
        if (method.s == ref.s and np.allclose(method.alpha, ref.alpha)
                and np.allclose(method.beta, ref.beta)
                and np.allclose(method.beta_star, ref.beta_star)):
            return order
    raise UnsupportedOrderError(
        "closed-form radius functions exist only for the built-in order-2/3 methods")


def unconditional_radius(method: MethodLike) -> float:
    """Disk radius below which stability holds for every step size."""
    return _UNCONDITIONAL_RADIUS[_closed_form_order(method)]


# --------------------------------------------------------------------------
# characteristic polynomials and root tests
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CharPolynomials:
    """Generating polynomials of a method, coefficients in ascending order."""

    rho: np.ndarray          # degree s, from alpha
    sigma: np.ndarray        # degree s, from beta
    sigma_star: np.ndarray   # degree s - 1, from beta_star

    @classmethod
    def from_method(cls, method: MethodLike) -> "CharPolynomials":
        m = _as_method(method)
        return cls(rho=m.alpha.copy(), sigma=m.beta.copy(),
                   sigma_star=m.beta_star.copy())

    def rho_at(self, zeta):
        return npoly.polyval(zeta, self.rho)

    def sigma_at(self, zeta):
        return npoly.polyval(zeta, self.sigma)

    def sigma_star_at(self, zeta):
        return npoly.polyval(zeta, self.sigma_star)


def char_polynomial_coefficients(method: MethodLike, z: float, mu: complex,
                                 m: int) -> np.ndarray:
    """Ascending coefficients of the degree-(m+s) characteristic polynomial.

    Finite z < 0 yields ``zeta^m (rho - z sigma) + z mu sigma_star``; the
    ``-inf`` limit drops rho and rescales to ``zeta^m sigma - mu sigma_star``.
    """
    mth = _as_method(method)
    if m < 0:
        raise ValueError("delay step count m must be >= 0")
    s = mth.s
    coeffs = np.zeros(m + s + 1, dtype=complex)
    if np.isneginf(z):
        coeffs[m:m + s + 1] += mth.beta
        coeffs[:s] += -mu * mth.beta_star
    else:
        if not (z < 0.0):
            raise ValueError("z must be negative (or float('-inf'))")
        coeffs[m:m + s + 1] += mth.alpha - z * mth.beta
        coeffs[:s] += z * mu * mth.beta_star
    lead = abs(coeffs[-1])
    if lead < 1e-14 * max(1.0, np.abs(coeffs).max()):
        raise DegeneratePolynomialError(
            "leading characteristic coefficient vanished")
    return coeffs


def char_roots(method: MethodLike, z: float, mu: complex, m: int) -> np.ndarray:
    """All characteristic roots, via the companion-matrix eigenproblem."""
    coeffs = char_polynomial_coefficients(method, z, mu, m)
    return np.roots(coeffs[::-1])


def classify_roots(roots: np.ndarray, eps_root: float = ROOT_TOLERANCE) -> str:
    """"stable" / "marginal" / "unstable" by the largest root modulus.

    Moduli within ``eps_root`` of the unit circle count as marginal; the
    strict-inequality stability notion treats those as not stable.
    """
    worst = float(np.max(np.abs(roots)))
    if worst < 1.0 - eps_root:
        return "stable"
    if worst <= 1.0 + eps_root:
        return "marginal"
    return "unstable"


def char_equation_stable(method: MethodLike, z: float, mu: complex, m: int,
                         eps_root: float = ROOT_TOLERANCE) -> bool:
    """True iff every characteristic root satisfies |zeta| < 1 - eps_root."""
    return classify_roots(char_roots(method, z, mu, m), eps_root) == "stable"


# --------------------------------------------------------------------------
# boundary curves
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class StabilityCurve:
    """Sampled boundary of the stable-mu region for fixed (method, z, m)."""

    label: str
    z: float
    m: int
    thetas: np.ndarray
    mu: np.ndarray

    def __len__(self) -> int:
        return len(self.thetas)

    def min_distance(self) -> float:
        return float(np.min(np.abs(self.mu)))


def boundary_point(method: MethodLike, z: float, theta, m: int = 0):
    """Boundary value(s) mu(theta) = -zeta^m (rho - z sigma) / (z sigma_star).

    Vectorized over ``theta``.  Raises when the explicit-weight polynomial
    vanishes on the unit circle at a requested angle (neither built-in method
    has such a pole).
    """
    if not (z < 0.0):
        raise ValueError("z must be negative and finite for boundary sampling")
    mth = _as_method(method)
    pols = CharPolynomials.from_method(mth)
    theta_arr = np.atleast_1d(np.asarray(theta, dtype=float))
    zeta = np.exp(1j * theta_arr)
    denom = z * pols.sigma_star_at(zeta)
    scale = max(1.0, float(np.abs(mth.beta_star).sum())) * abs(z)
    bad = np.abs(denom) < 1e-12 * scale
    if np.any(bad):
        raise CurvePoleError(float(theta_arr[np.argmax(bad)]))
    mu = -zeta ** m * (pols.rho_at(zeta) - z * pols.sigma_at(zeta)) / denom
    return mu if np.ndim(theta) else complex(mu[0])


def stability_boundary(method: MethodLike, z: float, m: int = 0,
                       n_samples: int = 512) -> StabilityCurve:
    """Sample the boundary curve at uniform angles on [0, 2*pi]."""
    if n_samples < 16:
        raise ValueError("n_samples must be at least 16")
    mth = _as_method(method)
    thetas = np.linspace(0.0, 2.0 * np.pi, n_samples)
    mu = boundary_point(mth, z, thetas, m)
    return StabilityCurve(label=mth.label, z=z, m=m, thetas=thetas, mu=mu)


def boundary_min_distance(method: MethodLike, z: float,
                          n_grid: int = 8192) -> float:
    """Distance from the origin to the boundary curve, by dense search.

    Scans ``n_grid`` angles (at least 4096) and refines the best bracket with
    a bounded scalar minimization down to 1e-12 in theta.  The result does
    not depend on m, so the curve is sampled with m = 0.
    """
    n_grid = max(int(n_grid), 4096)
    thetas = np.linspace(0.0, 2.0 * np.pi, n_grid, endpoint=False)
    values = np.abs(boundary_point(method, z, thetas, 0))
    k = int(np.argmin(values))
    lo = thetas[k] - 2.0 * np.pi / n_grid
    hi = thetas[k] + 2.0 * np.pi / n_grid
    result = minimize_scalar(
        lambda t: abs(boundary_point(method, z, float(t), 0)),
        bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
    return min(float(values[k]), float(result.fun))


# --------------------------------------------------------------------------
# order-2 closed forms
# --------------------------------------------------------------------------

def bdf2_curve_modulus_sq(z: float, theta) -> np.ndarray:
    """Squared boundary modulus of the order-2 method, closed trigonometric form."""
    if not (z < 0.0):
        raise ValueError("z must be negative")
    th = np.asarray(theta, dtype=float)
    num = 13.0 - 6.0 * z + 2.0 * z * z + 8.0 * (z - 2.0) * np.cos(th) \
        + (3.0 - 2.0 * z) * np.cos(2.0 * th)
    return num / (2.0 * z * z * (5.0 - 4.0 * np.cos(th)))


def bdf2_critical_theta(z: float) -> float:
    """Interior stationary angle of the order-2 squared-modulus profile."""
    if not (z < 0.0):
        raise ValueError("z must be negative")
    inner = -15.0 + 4.0 * z + 52.0 * z * z - 32.0 * z ** 3
    num = 4.0 - 2.0 * z - 2.0 * z * z - math.sqrt(inner)
    den = -31.0 + 20.0 * z + 2.0 * z * z
    return 2.0 * math.atan(math.sqrt(num / den))


def _bdf2_mid_radius(z: float) -> float:
    s = -32.0 * z ** 3 + 52.0 * z * z + 4.0 * z - 15.0
    g = 1.0 + 2.0 * z + math.sqrt(s)
    return -math.sqrt(g) / (2.0 * math.sqrt(2.0) * z)


def _bdf2_mid_radius_deriv(z: float) -> float:
    s = -32.0 * z ** 3 + 52.0 * z * z + 4.0 * z - 15.0
    ds = -96.0 * z * z + 104.0 * z + 4.0
    g = 1.0 + 2.0 * z + math.sqrt(s)
    dg = 2.0 + ds / (2.0 * math.sqrt(s))
    return -(dg * z - 2.0 * g) / (4.0 * math.sqrt(2.0) * math.sqrt(g) * z * z)


# --------------------------------------------------------------------------
# order-3 semi-closed forms (interior branch has no published expression)
# --------------------------------------------------------------------------

def _bdf3_modulus_sq(z: float, theta):
    """|mu(theta)|^2 for the order-3 method via real trigonometric sums."""
    a = 6.0 * z - 11.0
    th = np.asarray(theta, dtype=float)
    num = (409.0 + a * a) + (-360.0 + 36.0 * a) * np.cos(th) \
        + (72.0 - 18.0 * a) * np.cos(2.0 * th) + 4.0 * a * np.cos(3.0 * th)
    den = 36.0 * z * z * (19.0 - 24.0 * np.cos(th) + 6.0 * np.cos(2.0 * th))
    return num / den


def _bdf3_dmodulus_sq_dtheta(z: float, theta):
    a = 6.0 * z - 11.0
    th = np.asarray(theta, dtype=float)
    num = (409.0 + a * a) + (-360.0 + 36.0 * a) * np.cos(th) \
        + (72.0 - 18.0 * a) * np.cos(2.0 * th) + 4.0 * a * np.cos(3.0 * th)
    dnum = (360.0 - 36.0 * a) * np.sin(th) + 2.0 * (18.0 * a - 72.0) * np.sin(2.0 * th) \
        - 12.0 * a * np.sin(3.0 * th)
    q = 19.0 - 24.0 * np.cos(th) + 6.0 * np.cos(2.0 * th)
    dq = 24.0 * np.sin(th) - 12.0 * np.sin(2.0 * th)
    return (dnum * q - num * dq) / (36.0 * z * z * q * q)


def _bdf3_dmodulus_sq_dz(z: float, theta):
    a = 6.0 * z - 11.0
    th = np.asarray(theta, dtype=float)
    num = (409.0 + a * a) + (-360.0 + 36.0 * a) * np.cos(th) \
        + (72.0 - 18.0 * a) * np.cos(2.0 * th) + 4.0 * a * np.cos(3.0 * th)
    dnum_dz = 6.0 * (2.0 * a + 36.0 * np.cos(th) - 18.0 * np.cos(2.0 * th)
                     + 4.0 * np.cos(3.0 * th))
    q = 19.0 - 24.0 * np.cos(th) + 6.0 * np.cos(2.0 * th)
    return (dnum_dz * z - 2.0 * num) / (36.0 * z ** 3 * q)


def _bdf3_interior_min(z: float, n_grid: int = 2048) -> tuple[float, float]:
    """Minimum of the order-3 squared-modulus profile over [0, pi].

    Locates sign changes of the theta-derivative on a grid and polishes each
    with a bracketed root solve; the endpoint values are always candidates.
    Returns (radius, argmin_theta).
    """
    thetas = np.linspace(0.0, np.pi, n_grid)
    deriv = _bdf3_dmodulus_sq_dtheta(z, thetas)
    candidates = [(float(_bdf3_modulus_sq(z, 0.0)), 0.0),
                  (float(_bdf3_modulus_sq(z, np.pi)), float(np.pi))]
    sign = np.sign(deriv)
    for idx in np.nonzero(np.diff(sign) != 0)[0]:
        lo, hi = thetas[idx], thetas[idx + 1]
        if lo == 0.0:
            continue
        try:
            tc = brentq(lambda t: float(_bdf3_dmodulus_sq_dtheta(z, t)), lo, hi,
                        xtol=1e-14)
        except ValueError:
            continue
        candidates.append((float(_bdf3_modulus_sq(z, tc)), float(tc)))
    value, theta_star = min(candidates)
    return math.sqrt(value), theta_star


# --------------------------------------------------------------------------
# disk radius and its partial inverse
# --------------------------------------------------------------------------

def disk_radius(method: MethodLike, z: float) -> float:
    """Radius of the largest origin-centered disk inside the stable region.

    Piecewise in z: a plateau at 1 near the origin, a middle branch (closed
    form for order 2, interior-minimum search for order 3) and a far branch
    with an elementary expression.  ``float("-inf")`` returns the limiting
    radius that guarantees stability for every step size.
    """
    order = _closed_form_order(method)
    if np.isneginf(z):
        return _UNCONDITIONAL_RADIUS[order]
    if not (z < 0.0):
        raise ValueError("z must be negative or float('-inf')")
    if order == 2:
        if z >= _BDF2_PLATEAU_EDGE:
            return 1.0
        if z >= _BDF2_FAR_EDGE:
            return _bdf2_mid_radius(z)
        return (z - 4.0) / (3.0 * z)
    if z >= _BDF3_PLATEAU_EDGE:
        return 1.0
    if z >= _BDF3_FAR_EDGE:
        return _bdf3_interior_min(z)[0]
    return (3.0 - 20.0 / z) / 21.0


def _inverse_newton(value, derivative, target: float, seed: float,
                    lo: float, hi: float, ftol: float = 1e-11,
                    max_iter: int = 100) -> float:
    """Safeguarded Newton on a monotone branch over the bracket [lo, hi].

    Newton steps that leave the bracket, or non-positive derivatives, fall
    back to a bisection move (the branch is increasing, so the residual sign
    tells which half to keep).
    """
    z = min(max(seed, lo + 1e-12), hi - 1e-12)
    for _ in range(max_iter):
        f = value(z) - target
        if abs(f) < ftol:
            return z
        d = derivative(z)
        z_new = z - f / d if d > 0.0 else None
        if z_new is None or not (lo < z_new < hi):
            z_new = 0.5 * (z + (hi if f < 0.0 else lo))
        z = z_new
    return z


def z_for_radius(method: MethodLike, r: float) -> float:
    """Most negative z whose guaranteed-disk radius equals r.

    Feeding the result of :func:`disk_radius` back recovers z (the two maps
    are inverse on the conditional range).  Radii at or below the
    unconditional threshold need no bound (``RadiusDomainError`` with regime
    "unconditional"); radii above 1 admit none (regime "no_guarantee").
    """
    order = _closed_form_order(method)
    floor = _UNCONDITIONAL_RADIUS[order]
    if r <= floor:
        raise RadiusDomainError(
            "unconditional",
            f"radius {r!r} is within the unconditional region (<= {floor!r})")
    if r > 1.0:
        raise RadiusDomainError(
            "no_guarantee", f"radius {r!r} exceeds 1; no step bound exists")
    if order == 2:
        if r == 1.0:
            return _BDF2_PLATEAU_EDGE
        if r <= _BDF2_RADIUS_SPLIT:
            return 4.0 / (1.0 - 3.0 * r)
        return _inverse_newton(_bdf2_mid_radius, _bdf2_mid_radius_deriv, r,
                               seed=4.0 / (1.0 - 3.0 * r),
                               lo=_BDF2_FAR_EDGE, hi=_BDF2_PLATEAU_EDGE)
    if r == 1.0:
        return _BDF3_PLATEAU_EDGE
    if r <= _BDF3_RADIUS_SPLIT:
        return -20.0 / (3.0 * (7.0 * r - 1.0))

    def value(z: float) -> float:
        return _bdf3_interior_min(z)[0]

    def derivative(z: float) -> float:
        radius, theta_star = _bdf3_interior_min(z)
        return float(_bdf3_dmodulus_sq_dz(z, theta_star)) / (2.0 * radius)

    return _inverse_newton(value, derivative, r,
                           seed=-20.0 / (3.0 * (7.0 * r - 1.0)),
                           lo=_BDF3_FAR_EDGE, hi=_BDF3_PLATEAU_EDGE)
