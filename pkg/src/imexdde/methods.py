"""Implicit-explicit backward-differentiation methods of orders 2 and 3."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import UnsupportedOrderError

__all__ = [
    "ImexCoefficients",
    "imex_bdf_coefficients",
    "method_from_tag",
    "convergence_rate",
]

# Classic BDF pairs (alpha ascending in the step offset j, implicit weight on
# the newest level only).
_BDF_ALPHA = {
    2: (0.5, -2.0, 1.5),
    3: (-1.0 / 3.0, 1.5, -3.0, 11.0 / 6.0),
}


@dataclass(frozen=True)
class ImexCoefficients:
    """Coefficient set of an s-step implicit-explicit multistep method.

    The update for ``y' = f_stiff(t, y) + g(t, y(t - tau))`` reads::

        sum_j alpha[j] y_{n+j} = h * ( sum_j beta[j] f_{n+j}
                                       + sum_{j<s} beta_star[j] g_{n+j-m} )

    where ``m = tau / h`` counts delay steps, ``(alpha, beta)`` is the
    implicit pair and ``beta_star[j] = beta[j] + beta[s] * sigma[j]`` carries
    the explicit extrapolation weights ``sigma``.
    """

    s: int
    p: int
    alpha: np.ndarray       # length s + 1
    beta: np.ndarray        # length s + 1
    sigma: np.ndarray       # length s
    beta_star: np.ndarray   # length s
    label: str = "custom"

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("step count must be at least 1")
        for name, length in (("alpha", self.s + 1), ("beta", self.s + 1),
                             ("sigma", self.s), ("beta_star", self.s)):
            arr = np.asarray(getattr(self, name), dtype=float)
            if arr.shape != (length,):
                raise ValueError(f"{name} must have length {length}")
            object.__setattr__(self, name, arr)


def _extrapolation_weights(s: int, p: int) -> np.ndarray:
    """Solve the Vandermonde system sum_j j^q sigma_j = s^q, q = 0..p-1.

    Uses the convention 0^0 := 1 so the q = 0 row is a plain sum.
    """
    j = np.arange(s, dtype=float)
    q = np.arange(p, dtype=float)
    vand = j[None, :] ** q[:, None]
    vand[0, :] = 1.0
    rhs = float(s) ** q
    rhs[0] = 1.0
    return np.linalg.solve(vand, rhs)


def imex_bdf_coefficients(order: int) -> ImexCoefficients:
    """Build the IMEX-BDF method of the given order (2 or 3).

    The implicit pair is the classic BDF formula; the explicit delayed-term
    weights come from the extrapolation conditions with step count equal to
    the order.
    """
    if order not in _BDF_ALPHA:
        raise UnsupportedOrderError(
            f"no IMEX-BDF coefficients for order {order!r}; supported orders: 2, 3")
    s = p = order
    alpha = np.array(_BDF_ALPHA[order])
    beta = np.zeros(s + 1)
    beta[s] = 1.0
    sigma = _extrapolation_weights(s, p)
    beta_star = beta[:-1] + beta[s] * sigma
    return ImexCoefficients(s=s, p=p, alpha=alpha, beta=beta, sigma=sigma,
                            beta_star=beta_star, label=f"bdf{order}")


def method_from_tag(tag: str) -> ImexCoefficients:
    """Resolve a short method name such as ``"bdf2"`` to its coefficients."""
    name = tag.strip().lower()
    if name in ("bdf2", "imex-bdf2"):
        return imex_bdf_coefficients(2)
    if name in ("bdf3", "imex-bdf3"):
        return imex_bdf_coefficients(3)
    raise UnsupportedOrderError(f"unknown method tag {tag!r}")


def convergence_rate(err_h1: float, err_h2: float, h1: float, h2: float) -> float:
    """Observed order from two error norms at step sizes h1 > h2.

    Returns ``log(err_h1 / err_h2) / log(h1 / h2)``.
    """
    if not (h1 > h2 > 0.0):
        raise ValueError("step sizes must satisfy h1 > h2 > 0")
    if err_h1 <= 0.0 or err_h2 <= 0.0:
        raise ValueError("error norms must be positive")
    return float(np.log(err_h1 / err_h2) / np.log(h1 / h2))
