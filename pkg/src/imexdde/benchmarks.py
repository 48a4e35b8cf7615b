"""Built-in benchmark problems.

Two small dense linear delay systems with known solutions (a commuting pair
and a non-commuting pair), plus method-of-lines reductions of two delayed
parabolic problems: a coupled linear reaction-diffusion system on [-1, 1] and
a forced viscous conservation law whose convective term lags by the delay.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .problems import DelayProblem

__all__ = [
    "MolGrid",
    "example1",
    "example2",
    "toeplitz_eigenvalues",
    "second_difference_matrix",
    "linear_pdde_mol",
    "burgers_mol",
    "burgers_delayed_matrix",
    "PROBLEM_BUILDERS",
    "make_problem",
]

E = math.e


@dataclass
class MolGrid:
    """Uniform 1-D grid with n intervals; nodes include both boundaries."""

    n: int
    x0: float
    xn: float
    dx: float = field(init=False)
    nodes: np.ndarray = field(init=False)

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("grid needs at least 3 intervals")
        if self.xn <= self.x0:
            raise ValueError("grid endpoints must be increasing")
        self.dx = (self.xn - self.x0) / self.n
        self.nodes = self.x0 + self.dx * np.arange(self.n + 1)

    @property
    def interior(self) -> np.ndarray:
        return self.nodes[1:-1]


def second_difference_matrix(n_interior: int, dx: float) -> np.ndarray:
    """Dirichlet-eliminated centered second-difference matrix (1, -2, 1)/dx^2."""
    t = np.diag(-2.0 * np.ones(n_interior))
    t += np.diag(np.ones(n_interior - 1), 1) + np.diag(np.ones(n_interior - 1), -1)
    return t / dx**2


def toeplitz_eigenvalues(alpha: float, beta: float, gamma: float, n: int) -> np.ndarray:
    """Eigenvalues of the n x n tridiagonal Toeplitz matrix (gamma, alpha, beta).

    ``alpha - 2 sqrt(beta * gamma) cos(r pi / (n + 1))`` for r = 1..n; requires
    ``beta * gamma >= 0`` (the complex-spectrum case is out of scope).
    """
    if beta * gamma < 0.0:
        raise ValueError("beta * gamma must be nonnegative")
    r = np.arange(1, n + 1)
    return alpha - 2.0 * math.sqrt(beta * gamma) * np.cos(r * np.pi / (n + 1))


# --------------------------------------------------------------------------
# dense linear examples with known solutions
# --------------------------------------------------------------------------

_A1 = np.array([[39.0, -27.0, -9.0, 5.0],
                [9.0, 3.0, -9.0, 5.0],
                [22.0, -27.0, 8.0, 5.0],
                [9.0, 0.0, -9.0, 8.0]])
_B1 = np.array([[8.0, -2.0, -4.0, 5.0],
                [4.0, 2.0, -4.0, 5.0],
                [-3.0, -2.0, 7.0, 5.0],
                [4.0, 0.0, -4.0, 7.0]])


def _example1_solution(t: float) -> np.ndarray:
    return np.array([np.exp(-t), np.sin(t), 2.0 * t * t, 1.0 + t])


def _example1_forcing(t: float) -> np.ndarray:
    # Closed form of y' + A y - B y(t-1); the exp(t)*exp(-t) round trip of the
    # raw expansion is cancelled analytically so large t cannot overflow.
    emt = np.exp(-t)
    return np.array([
        13.0 - 2.0 * t * (5.0 * t + 8.0) - 2.0 * np.sin(1.0 - t) - 27.0 * np.sin(t)
        + (38.0 - 8.0 * E) * emt,
        13.0 - 2.0 * t * (5.0 * t + 8.0) + 2.0 * np.sin(1.0 - t) + 3.0 * np.sin(t)
        + np.cos(t) + (9.0 - 4.0 * E) * emt,
        (22.0 + 3.0 * E) * emt + 2.0 * t * (t + 16.0) - 2.0 * np.sin(1.0 - t)
        - 27.0 * np.sin(t) - 9.0,
        17.0 - 5.0 * t * (2.0 * t + 3.0) + (9.0 - 4.0 * E) * emt,
    ])


def example1() -> DelayProblem:
    """4x4 linear delay system whose matrices commute; solution known."""
    return DelayProblem(
        dim=4, tau=1.0, matrix=_A1,
        delayed_map=lambda t, v: _B1 @ v,
        delayed_matrix=_B1,
        history=_example1_solution,
        exact=_example1_solution,
        forcing=_example1_forcing,
        name="example1",
    )


_A2 = np.array([[20.0, -4.0, 0.0],
                [-4.0, 20.0, 0.0],
                [0.0, 0.0, 10.0]])
_B2 = np.array([[-2.0, 1.0, 0.0],
                [-1.0, -2.0, 0.0],
                [0.0, 1.0, 6.0]])


def _example2_solution(t: float) -> np.ndarray:
    return np.array([np.cos(t), np.exp(-0.1 * t), 1.0 + t])


def _example2_forcing(t: float) -> np.ndarray:
    return np.array([
        -np.exp(-0.1 * (t - 1.0)) - 4.0 * np.exp(-0.1 * t) - np.sin(t)
        + 2.0 * np.cos(1.0 - t) + 20.0 * np.cos(t),
        2.0 * np.exp(-0.1 * (t - 1.0)) + 19.9 * np.exp(-0.1 * t)
        + np.cos(1.0 - t) - 4.0 * np.cos(t),
        1.0 - 6.0 * t - np.exp(-0.1 * (t - 1.0)) + 10.0 * (t + 1.0),
    ])


def example2() -> DelayProblem:
    """3x3 linear delay system whose matrices do not commute; solution known."""
    return DelayProblem(
        dim=3, tau=1.0, matrix=_A2,
        delayed_map=lambda t, v: _B2 @ v,
        delayed_matrix=_B2,
        history=_example2_solution,
        exact=_example2_solution,
        forcing=_example2_forcing,
        name="example2",
    )


# --------------------------------------------------------------------------
# method-of-lines problems
# --------------------------------------------------------------------------

def linear_pdde_mol(a1: float = 1.0, a2: float = 1.0, l: float = -0.75,
                    n: int = 100, tau: float = 1.0) -> DelayProblem:
    """Two coupled delayed diffusion equations on [-1, 1], semi-discretized.

    Interior nodes only (homogeneous Dirichlet); state = (u1, u2) stacked, so
    the dimension is 2(n-1).  The stiff matrix is the (positive definite)
    negated block diffusion operator; the delayed coupling is linear with the
    skew-plus-diagonal block structure scaled by exp(l*pi/2).

    A closed-form solution ``u1 = e^{lt} sin(t) cos(pi x / 2)``,
    ``u2 = e^{lt} cos(t) cos(pi x / 2)`` satisfies the system only for unit
    diffusivities and ``tau = pi/2`` (the coupling constant absorbs exactly
    that lag); the problem carries it as its exact solution in that case.
    """
    if a1 <= 0.0 or a2 <= 0.0:
        raise ValueError("diffusivities must be positive")
    if n < 4:
        raise ValueError("n must be at least 4")
    grid = MolGrid(n=n, x0=-1.0, xn=1.0)
    n_int = n - 1
    tpl = second_difference_matrix(n_int, grid.dx)
    zero = np.zeros((n_int, n_int))
    a = -np.block([[a1 * tpl, zero], [zero, a2 * tpl]])
    c = l + np.pi**2 / 4.0
    eye = np.eye(n_int)
    b = np.exp(l * np.pi / 2.0) * np.block([[-eye, c * eye], [-c * eye, -eye]])
    profile = np.cos(np.pi * grid.interior / 2.0)

    def solution(t: float) -> np.ndarray:
        envelope = np.exp(l * t)
        return np.concatenate([envelope * np.sin(t) * profile,
                               envelope * np.cos(t) * profile])

    solvable = (abs(a1 - 1.0) < 1e-12 and abs(a2 - 1.0) < 1e-12
                and abs(tau - np.pi / 2.0) < 1e-12)
    return DelayProblem(
        dim=2 * n_int, tau=tau, matrix=a,
        delayed_map=lambda t, v: b @ v,
        delayed_matrix=b,
        history=solution,
        exact=solution if solvable else None,
        name="pdde_linear",
    )


def burgers_delayed_matrix(state: np.ndarray, dx: float) -> np.ndarray:
    """Coupling matrix of the lagged convective term at a frozen state.

    Row j carries ``state[j] / (2 dx)`` on the subdiagonal and its negative on
    the superdiagonal (the frozen-factor linearization: applied to the state
    itself it reproduces the nonlinear term exactly).
    """
    v = np.asarray(state, dtype=float)
    m = np.zeros((len(v), len(v)))
    sub = v[1:] / (2.0 * dx)
    sup = -v[:-1] / (2.0 * dx)
    m[np.arange(1, len(v)), np.arange(len(v) - 1)] = sub
    m[np.arange(len(v) - 1), np.arange(1, len(v))] = sup
    return m


def burgers_mol(epsilon: float = 1.0, n: int = 100, tau: float = 1.0,
                forcing_amp: float = 10.0) -> DelayProblem:
    """Forced viscous conservation law with a lagged convective term, on [0, 1].

    Semi-discretized on n intervals with homogeneous Dirichlet boundaries:
    implicit diffusion ``epsilon * (1, -2, 1)/dx^2``, explicit delayed term
    ``g(u)_j = -u_j (u_{j+1} - u_{j-1}) / (2 dx)`` with ghost zeros at the
    walls, forcing ``amp * x (1-x) (1 + x sin(t x))`` and history sin(pi x).
    """
    if epsilon <= 0.0:
        raise ValueError("epsilon must be positive")
    if n < 4:
        raise ValueError("n must be at least 4")
    grid = MolGrid(n=n, x0=0.0, xn=1.0)
    x = grid.interior
    dx = grid.dx
    a = -epsilon * second_difference_matrix(n - 1, dx)
    profile = np.sin(np.pi * x)

    def delayed(t: float, u: np.ndarray) -> np.ndarray:
        up = np.concatenate([u[1:], [0.0]])
        um = np.concatenate([[0.0], u[:-1]])
        return -u * (up - um) / (2.0 * dx)

    def forcing(t: float) -> np.ndarray:
        return forcing_amp * x * (1.0 - x) * (1.0 + x * np.sin(t * x))

    return DelayProblem(
        dim=n - 1, tau=tau, matrix=a,
        delayed_map=delayed,
        delayed_linearization=lambda v: burgers_delayed_matrix(v, dx),
        history=lambda t: profile,
        forcing=forcing,
        name="burgers",
    )


PROBLEM_BUILDERS: dict[str, Callable[..., DelayProblem]] = {
    "example1": example1,
    "example2": example2,
    "pdde_linear": linear_pdde_mol,
    "burgers": burgers_mol,
}


def make_problem(name: str, **params) -> DelayProblem:
    """Build a registered problem by name, forwarding keyword parameters."""
    try:
        builder = PROBLEM_BUILDERS[name]
    except KeyError:
        known = ", ".join(sorted(PROBLEM_BUILDERS))
        raise ValueError(f"unknown problem {name!r}; available: {known}") from None
    import inspect

    accepted = set(inspect.signature(builder).parameters)
    extra = set(params) - accepted
    if extra:
        raise ValueError(
            f"problem {name!r} does not accept parameter(s) {sorted(extra)}; "
            f"accepted: {sorted(accepted) or 'none'}")
    return builder(**params)
