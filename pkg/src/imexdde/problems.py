"""Constant-delay problem descriptions consumed by the integrator."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

__all__ = ["DelayProblem", "validate_problem", "stability_matrices"]

Vector = np.ndarray
VecFun = Callable[[float], np.ndarray]


@dataclass(frozen=True)
class DelayProblem:
    """System ``y'(t) = -A y(t) + forcing(t) + delayed_map(t, y(t - tau))``.

    ``matrix`` holds A (the stiff part enters with a minus sign, so for the
    diffusion-type problems here A is positive definite).  ``history`` supplies
    y(t) for t <= t0.  ``delayed_matrix`` is set when the delayed term is
    linear, ``delayed_linearization`` maps a state to the coupling matrix of a
    nonlinear delayed term (used only by the step-size analyzers).  ``exact``
    is the known solution when one exists.
    """

    dim: int
    tau: float
    matrix: np.ndarray
    delayed_map: Callable[[float, Vector], Vector]
    history: VecFun
    forcing: Optional[VecFun] = None
    delayed_matrix: Optional[np.ndarray] = None
    delayed_linearization: Optional[Callable[[Vector], np.ndarray]] = None
    exact: Optional[VecFun] = None
    t0: float = 0.0
    name: str = ""

    def __post_init__(self):
        if self.tau <= 0.0:
            raise ValueError("delay tau must be positive")
        a = np.asarray(self.matrix, dtype=float)
        if a.shape != (self.dim, self.dim):
            raise ValueError(f"matrix must be {self.dim}x{self.dim}")
        object.__setattr__(self, "matrix", a)
        if self.delayed_matrix is not None:
            b = np.asarray(self.delayed_matrix, dtype=float)
            if b.shape != (self.dim, self.dim):
                raise ValueError(f"delayed_matrix must be {self.dim}x{self.dim}")
            object.__setattr__(self, "delayed_matrix", b)


def validate_problem(problem: DelayProblem, rng=None, n_samples: int = 5) -> None:
    """Consistency checks that need evaluation, not just shapes.

    Verifies that the history has the declared dimension and, when a
    ``delayed_matrix`` is present, that ``delayed_map`` agrees with it on
    random states.
    """
    rng = np.random.default_rng(rng)
    y0 = np.asarray(problem.history(problem.t0), dtype=float)
    if y0.shape != (problem.dim,):
        raise ValueError("history(t0) does not return a vector of length dim")
    if problem.forcing is not None:
        f0 = np.asarray(problem.forcing(problem.t0), dtype=float)
        if f0.shape != (problem.dim,):
            raise ValueError("forcing(t0) does not return a vector of length dim")
    if problem.delayed_matrix is not None:
        scale = max(1.0, float(np.abs(problem.delayed_matrix).max()))
        for _ in range(n_samples):
            v = rng.standard_normal(problem.dim)
            t = problem.t0 + rng.uniform(0.0, 10.0)
            lhs = np.asarray(problem.delayed_map(t, v), dtype=float)
            rhs = problem.delayed_matrix @ v
            if not np.allclose(lhs, rhs, atol=1e-12 * scale * problem.dim, rtol=1e-12):
                raise ValueError("delayed_map disagrees with delayed_matrix")


def stability_matrices(problem: DelayProblem) -> tuple[np.ndarray, np.ndarray]:
    """Return the pair (A, B) used by the step-size analyzers.

    For a linear delayed term B is the stored coupling matrix; for a
    nonlinear one it is the linearization at the initial history state
    y(t0 - tau).
    """
    if problem.delayed_matrix is not None:
        return problem.matrix, problem.delayed_matrix
    if problem.delayed_linearization is not None:
        state = np.asarray(problem.history(problem.t0 - problem.tau), dtype=float)
        return problem.matrix, problem.delayed_linearization(state)
    raise ValueError("problem exposes neither a delayed matrix nor a linearization")
