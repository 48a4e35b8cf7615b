"""Field-of-values computations and matrix step-size bound calculators.

The step bound for ``y' = -A y + B y(t - tau)`` with Hermitian positive
definite A comes from enclosing the relevant coupling set in an
origin-centered disk: its radius feeds the scalar inverse-radius map and the
largest eigenvalue of A converts the admissible z into an admissible h.  Two
routes are implemented: eigenpair-wise bounds when A and B commute, and a
field-of-values bound that needs no joint diagonalization.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from .exceptions import (
    DefinitenessError,
    DegeneratePairingError,
    NotSimultaneouslyDiagonalizableError,
    ShapeError,
)
from .regions import MethodLike, _as_method, unconditional_radius, z_for_radius

__all__ = [
    "FovEstimate",
    "fov",
    "fp_matrix",
    "commutes",
    "PairedSpectrum",
    "paired_generalized_eigenvalues",
    "StepSizeReport",
    "RULE_PER_EIGENVALUE",
    "RULE_MAX_EIGENVALUE",
    "RULE_FOV",
    "RULE_ALIASES",
    "normalize_rule",
    "step_bound_simdiag",
    "step_bound_fov",
    "asymptotic_stability_check",
]

RULE_PER_EIGENVALUE = "per_eigenvalue"
RULE_MAX_EIGENVALUE = "max_eigenvalue"
RULE_FOV = "fov"

# Short legacy tags accepted on the command line and in configs.
RULE_ALIASES = {
    "prop41": RULE_PER_EIGENVALUE,
    "thm43": RULE_MAX_EIGENVALUE,
    "thm51": RULE_FOV,
    RULE_PER_EIGENVALUE: RULE_PER_EIGENVALUE,
    RULE_MAX_EIGENVALUE: RULE_MAX_EIGENVALUE,
    RULE_FOV: RULE_FOV,
}


def normalize_rule(rule: str) -> str:
    try:
        return RULE_ALIASES[rule.strip().lower()]
    except KeyError:
        raise ValueError(f"unknown step-bound rule {rule!r}") from None


def _square(x) -> np.ndarray:
    a = np.asarray(x)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {a.shape}")
    return a


@dataclass(frozen=True)
class FovEstimate:
    """Angular-sweep boundary of a field of values.

    ``boundary[k]`` is the support point of the field of values in the
    direction rotated by ``-theta_k``; the numerical radius is the largest
    boundary modulus seen.
    """

    boundary: np.ndarray
    n_angles: int
    numerical_radius: float


def fov(matrix, n_angles: int = 512) -> FovEstimate:
    """Boundary points of the field of values by the Hermitian-part sweep.

    For each angle the top eigenvector of ``(e^{i theta} X + conj-transpose)/2``
    is a maximizer of the rotated real part over the unit sphere; its Rayleigh
    quotient with X lies on the boundary of the field of values.
    """
    x = _square(matrix).astype(complex)
    if n_angles < 32:
        raise ValueError("n_angles must be at least 32")
    points = np.empty(n_angles, dtype=complex)
    for k in range(n_angles):
        phase = np.exp(2j * np.pi * k / n_angles)
        rotated = phase * x
        herm = 0.5 * (rotated + rotated.conj().T)
        _, vecs = np.linalg.eigh(herm)  # ascending; top eigenvector is last
        v = vecs[:, -1]
        points[k] = v.conj() @ x @ v
    return FovEstimate(boundary=points, n_angles=n_angles,
                       numerical_radius=float(np.max(np.abs(points))))


def _hermitian_pd_eig(matrix, tol: float = 1e-10):
    a = _square(matrix).astype(complex)
    scale = np.linalg.norm(a)
    if np.linalg.norm(a - a.conj().T) > tol * max(scale, 1e-300):
        raise DefinitenessError("matrix is not Hermitian to the required tolerance")
    w, q = np.linalg.eigh(a)
    if w.min() <= 0.0:
        raise DefinitenessError("matrix is not positive definite")
    return w, q


def fp_matrix(a, b, p: float) -> np.ndarray:
    """Return ``A^(p/2-1) B A^(-p/2)`` through the eigendecomposition of A.

    Fractional powers act on the (strictly positive) eigenvalues; A must be
    Hermitian positive definite.
    """
    w, q = _hermitian_pd_eig(a)
    bm = _square(b).astype(complex)
    if bm.shape != (len(w), len(w)):
        raise ShapeError("A and B must have matching shapes")
    left = (q * w ** (p / 2.0 - 1.0)) @ q.conj().T
    right = (q * w ** (-p / 2.0)) @ q.conj().T
    return left @ bm @ right


def commutes(a, b, tol: float = 1e-12) -> bool:
    """Whether ``AB - BA`` vanishes relative to the factor norms (Frobenius)."""
    am, bm = _square(a), _square(b)
    if am.shape != bm.shape:
        raise ShapeError("A and B must have matching shapes")
    gap = np.linalg.norm(am @ bm - bm @ am)
    return gap <= tol * np.linalg.norm(am) * np.linalg.norm(bm)


@dataclass(frozen=True)
class PairedSpectrum:
    """Matched eigenvalues of a commuting pair sharing one eigenbasis.

    ``ratios[i] = delayed[i] / stiff[i]`` is the coupling ratio that decides
    the stable disk for mode i.
    """

    stiff: np.ndarray     # eigenvalues of A
    delayed: np.ndarray   # matched eigenvalues of B
    ratios: np.ndarray


def paired_generalized_eigenvalues(a, b) -> PairedSpectrum:
    """Match eigenvalues of B to the eigenvectors of A.

    A is diagonalized with a dense general eigensolver; each matched value is
    the Rayleigh quotient of B on an eigenvector of A, accepted only when the
    eigenvector residual confirms it is a true eigenpair of B.  Repeated
    eigenvalues of A make the matching ambiguous and are rejected.
    """
    am, bm = _square(a).astype(float), _square(b).astype(float)
    if am.shape != bm.shape:
        raise ShapeError("A and B must have matching shapes")
    lam, vecs = scipy.linalg.eig(am)
    scale = max(1.0, float(np.max(np.abs(lam))))
    lam_sorted = np.sort_complex(lam)
    if len(lam) > 1 and np.min(np.abs(np.diff(lam_sorted))) <= 1e-10 * scale:
        raise DegeneratePairingError(
            "repeated eigenvalues of A; eigenvector matching is ambiguous")
    b_norm = np.linalg.norm(bm, 2)
    gammas = np.empty(len(lam), dtype=complex)
    for i in range(len(lam)):
        v = vecs[:, i]
        gam = (v.conj() @ bm @ v) / (v.conj() @ v)
        residual = np.linalg.norm(bm @ v - gam * v)
        if residual > 1e-8 * max(b_norm, 1e-300) * np.linalg.norm(v):
            raise NotSimultaneouslyDiagonalizableError(
                "an eigenvector of A is not an eigenvector of B "
                f"(residual {residual:.3e})")
        gammas[i] = gam
    order = np.argsort(lam.real)
    lam, gammas = lam[order], gammas[order]
    return PairedSpectrum(stiff=lam, delayed=gammas, ratios=gammas / lam)


@dataclass(frozen=True)
class StepSizeReport:
    """Outcome of a step-size analysis.

    ``regime`` is "unconditional" (stable for every h), "conditional"
    (stable for h <= h_star) or "no_guarantee".  ``r_used`` is the disk
    radius that produced the verdict and ``lambda_d`` the largest eigenvalue
    of the stiff matrix.
    """

    method: str
    rule: str
    regime: str
    r_used: float
    lambda_d: float
    h_star: Optional[float] = None


def _real_positive(values: np.ndarray, what: str) -> np.ndarray:
    scale = max(1.0, float(np.max(np.abs(values))))
    if np.max(np.abs(values.imag)) > 1e-10 * scale or np.min(values.real) <= 0.0:
        raise DefinitenessError(f"{what} must be real and positive")
    return values.real


def step_bound_simdiag(a, b, method: MethodLike,
                       rule: str = RULE_PER_EIGENVALUE) -> StepSizeReport:
    """Step bound for a simultaneously diagonalizable pair (A, B).

    With matched eigenvalues ``lam_i`` of A and coupling ratios ``mu_i``, the
    per-eigenvalue rule bounds ``h < min_i |z(|mu_i|)| / lam_i`` while the
    max-eigenvalue rule divides every admissible z by the largest eigenvalue
    of A (simpler, more conservative in the typical case).
    """
    mth = _as_method(method)
    rule = normalize_rule(rule)
    if rule not in (RULE_PER_EIGENVALUE, RULE_MAX_EIGENVALUE):
        raise ValueError("step_bound_simdiag supports the eigenvalue-based rules only")
    pairs = paired_generalized_eigenvalues(a, b)
    lam = _real_positive(pairs.stiff, "the eigenvalues of A")
    mags = np.abs(pairs.ratios)
    lam_d = float(np.max(lam))
    r_used = float(np.max(mags))
    floor = unconditional_radius(mth)
    if r_used <= floor:
        return StepSizeReport(method=mth.label, rule=rule, regime="unconditional",
                              r_used=r_used, lambda_d=lam_d)
    if r_used >= 1.0:
        return StepSizeReport(method=mth.label, rule=rule, regime="no_guarantee",
                              r_used=r_used, lambda_d=lam_d)
    bounds = []
    for lam_i, mag in zip(lam, mags):
        if mag <= floor:
            continue  # this mode never restricts h
        z_adm = abs(z_for_radius(mth, mag))
        bounds.append(z_adm / (lam_i if rule == RULE_PER_EIGENVALUE else lam_d))
    return StepSizeReport(method=mth.label, rule=rule, regime="conditional",
                          r_used=r_used, lambda_d=lam_d,
                          h_star=float(min(bounds)))


def step_bound_fov(a, b, method: MethodLike, p: float = 0.0,
                   n_angles: int = 512) -> StepSizeReport:
    """Step bound from the numerical radius of ``A^(p/2-1) B A^(-p/2)``.

    Needs only Hermitian positive definiteness of A.  A radius at or below
    the unconditional threshold proves stability for every h; a radius up to
    1 yields ``h_star = |z(r)| / lambda_max(A)``; beyond 1 nothing is claimed.
    """
    mth = _as_method(method)
    w, _ = _hermitian_pd_eig(a)
    lam_d = float(w.max())
    estimate = fov(fp_matrix(a, b, p), n_angles=n_angles)
    r = estimate.numerical_radius
    floor = unconditional_radius(mth)
    if r <= floor:
        return StepSizeReport(method=mth.label, rule=RULE_FOV, regime="unconditional",
                              r_used=r, lambda_d=lam_d)
    if r > 1.0:
        return StepSizeReport(method=mth.label, rule=RULE_FOV, regime="no_guarantee",
                              r_used=r, lambda_d=lam_d)
    h_star = abs(z_for_radius(mth, r)) / lam_d
    return StepSizeReport(method=mth.label, rule=RULE_FOV, regime="conditional",
                          r_used=r, lambda_d=lam_d, h_star=h_star)


def asymptotic_stability_check(l_matrix, g_matrix, n_grid: int = 2001,
                               y_max: float = 100.0):
    """Best-effort sampled test that ``y' = L y + G y(t - tau)`` is stable.

    Three conditions are sampled, not proved: the spectrum of L lies in the
    open left half plane; the delay gain ``rho((i y I - L)^{-1} G)`` stays
    below 1 along the sampled imaginary axis (0 excluded); and -1 is not an
    eigenvalue of ``L^{-1} G``.  Returns (verdict, diagnostics) where the
    diagnostics carry the worst margins found and any skipped samples.
    """
    lm, gm = _square(l_matrix).astype(complex), _square(g_matrix).astype(complex)
    if lm.shape != gm.shape:
        raise ShapeError("L and G must have matching shapes")
    d = lm.shape[0]
    spectral_abscissa = float(np.max(np.linalg.eigvals(lm).real))
    cond1 = spectral_abscissa < 0.0

    ys = np.linspace(-y_max, y_max, n_grid)
    ys = ys[ys != 0.0]
    worst_gain = 0.0
    worst_y = None
    skipped = []
    eye = np.eye(d)
    for y in ys:
        try:
            resolvent = np.linalg.solve(1j * y * eye - lm, gm)
        except np.linalg.LinAlgError:
            skipped.append(float(y))
            continue
        gain = float(np.max(np.abs(np.linalg.eigvals(resolvent))))
        if gain > worst_gain:
            worst_gain, worst_y = gain, float(y)
    cond2 = worst_gain < 1.0

    distance = float(np.min(np.abs(np.linalg.eigvals(np.linalg.solve(lm, gm)) + 1.0)))
    cond3 = distance > 1e-8

    diagnostics = {
        "spectral_abscissa": spectral_abscissa,
        "worst_delay_gain": worst_gain,
        "worst_delay_gain_at": worst_y,
        "distance_to_minus_one": distance,
        "skipped_samples": skipped,
        "conditions": (cond1, cond2, cond3),
    }
    return cond1 and cond2 and cond3, diagnostics
