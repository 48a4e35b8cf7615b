"""Fixed-step time integration of constant-delay systems.

The implicit part must be affine, ``-A y + forcing(t)``, so each run factors
``alpha_s I + h beta_s A`` once and back-substitutes every step.  The delay
must be an integer multiple of the step size; delayed states are read from a
ring buffer that falls back to the problem history for times at or before t0.

Each run owns its mutable buffer; problems, methods and finished trajectories
are immutable, so independent runs (e.g. a step-size sweep) are safe to
execute in parallel.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from .exceptions import FactorizationError, StepSizeError
from .methods import ImexCoefficients, convergence_rate
from .problems import DelayProblem

__all__ = [
    "HistoryBuffer",
    "Trajectory",
    "integrate",
    "ConvergenceRow",
    "ConvergenceStudy",
    "convergence_study",
    "max_trajectory_error",
]

_TIME_STAMP_RTOL = 1e-10


class HistoryBuffer:
    """Ring of the most recent states on the step grid ``t0 + n h``.

    Keeps exactly ``capacity`` slots, enough for the delayed and multistep
    lookups of one scheme (``m + s``).  Lookups with n <= 0 that have never
    been stored delegate to the continuous history function.
    """

    def __init__(self, history: Callable[[float], np.ndarray], t0: float,
                 h: float, capacity: int, dim: int):
        self._history = history
        self.t0 = t0
        self.h = h
        self.capacity = capacity
        self._states = np.empty((capacity, dim))
        # sentinel below any reachable step index (lookups never precede -m-s)
        self._stamps = np.full(capacity, np.iinfo(np.int64).min, dtype=np.int64)

    def push(self, n: int, state: np.ndarray) -> None:
        slot = n % self.capacity
        self._states[slot] = state
        self._stamps[slot] = n

    def time_of(self, n: int) -> float:
        return self.t0 + n * self.h

    def get(self, n: int) -> np.ndarray:
        """State at step n (a view into the ring; copy it to retain it)."""
        slot = n % self.capacity
        if self._stamps[slot] == n:
            return self._states[slot]
        if n <= 0:
            return np.asarray(self._history(self.time_of(n)), dtype=float)
        raise LookupError(f"step {n} has scrolled out of the history window")


@dataclass(frozen=True)
class Trajectory:
    """Accepted states of one integration run.

    ``blowup_time`` is the first grid time at which the state norm exceeded
    the blow-up threshold (the run stops there); None for a completed run.
    """

    times: np.ndarray
    states: np.ndarray
    h: float
    delay_steps: int
    blowup_time: Optional[float] = None

    def __len__(self) -> int:
        return len(self.times)

    def __iter__(self):
        return zip(self.times, self.states)

    @property
    def blew_up(self) -> bool:
        return self.blowup_time is not None

    @property
    def final_time(self) -> float:
        return float(self.times[-1])

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]

    def state_at(self, t: float) -> np.ndarray:
        n = int(round((t - self.times[0]) / self.h))
        if not (0 <= n < len(self.times)) or abs(self.times[n] - t) > 1e-9 * max(1.0, abs(t)):
            raise KeyError(f"time {t} is not on the trajectory grid")
        return self.states[n]


def _delay_steps(tau: float, h: float) -> int:
    m = int(round(tau / h))
    if m < 1 or abs(tau / h - m) > 1e-9 * m:
        raise StepSizeError(
            f"tau/h = {tau / h!r} is not a positive integer; pick h = tau/m")
    return m


def _lu_or_raise(matrix: np.ndarray):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # scipy warns on singular input; we raise
        try:
            lu = lu_factor(matrix)
        except np.linalg.LinAlgError as exc:  # pragma: no cover - scipy raises rarely
            raise FactorizationError(str(exc)) from exc
    if np.min(np.abs(np.diag(lu[0]))) == 0.0:
        raise FactorizationError("implicit system matrix is singular")
    return lu


def _forcing_or_zero(problem: DelayProblem):
    if problem.forcing is not None:
        return problem.forcing
    zero = np.zeros(problem.dim)
    return lambda t: zero


def _bootstrap_startup(problem: DelayProblem, method: ImexCoefficients,
                       h: float, m: int) -> np.ndarray:
    """Starting values y_1 .. y_{s-1} from substepped implicit-explicit Euler.

    Uses 2**p substeps per coarse step so the startup error does not dominate
    the observable accuracy at practical step sizes.
    """
    s, p = method.s, method.p
    sub = 2 ** p
    hf = h / sub
    mf = m * sub
    nf = (s - 1) * sub
    forcing = _forcing_or_zero(problem)
    fine = np.empty((nf + 1, problem.dim))
    fine[0] = np.asarray(problem.history(problem.t0), dtype=float)
    lu = _lu_or_raise(np.eye(problem.dim) + hf * problem.matrix)
    for k in range(nf):
        i = k + 1 - mf
        t_del = problem.t0 + i * hf
        y_del = fine[i] if i >= 0 else np.asarray(problem.history(t_del), dtype=float)
        rhs = fine[k] + hf * forcing(problem.t0 + (k + 1) * hf) \
            + hf * problem.delayed_map(t_del, y_del)
        fine[k + 1] = lu_solve(lu, rhs)
    return fine[sub::sub].copy()


def integrate(problem: DelayProblem, method: ImexCoefficients, h: float,
              t_end: float, startup: str = "auto",
              blowup_threshold: float = 1e12,
              _refactor_each_step: bool = False) -> Trajectory:
    """Advance the problem from t0 to t_end with a fixed step h.

    ``startup`` selects how y_1 .. y_{s-1} are produced: "exact" evaluates the
    known solution, "bootstrap" substeps an implicit-explicit Euler scheme,
    and "auto" picks "exact" whenever the problem carries one.  Integration
    stops early when the max-norm of the state exceeds ``blowup_threshold``;
    the returned trajectory then carries the first blow-up time.

    ``_refactor_each_step`` re-runs the LU factorization of the (constant)
    implicit matrix every step; it exists to demonstrate that reusing the
    factorization is exact, not an approximation.
    """
    if t_end <= problem.t0:
        raise StepSizeError("t_end must exceed the initial time")
    if h <= 0.0:
        raise StepSizeError("step size must be positive")
    m = _delay_steps(problem.tau, h)
    n_steps = int(np.ceil((t_end - problem.t0) / h - 1e-9))
    s = method.s
    alpha, beta, beta_star = method.alpha, method.beta, method.beta_star
    forcing = _forcing_or_zero(problem)

    if startup not in ("auto", "exact", "bootstrap"):
        raise ValueError(f"unknown startup policy {startup!r}")
    use_exact = problem.exact is not None if startup == "auto" else startup == "exact"
    if use_exact and problem.exact is None:
        raise ValueError("startup='exact' requires the problem to carry a solution")

    states = np.empty((n_steps + 1, problem.dim))
    states[0] = np.asarray(problem.history(problem.t0), dtype=float)
    n_startup = min(s - 1, n_steps)
    if n_startup > 0:
        if use_exact:
            for k in range(1, n_startup + 1):
                states[k] = np.asarray(problem.exact(problem.t0 + k * h), dtype=float)
        else:
            states[1:n_startup + 1] = _bootstrap_startup(problem, method, h, m)[:n_startup]

    buffer = HistoryBuffer(problem.history, problem.t0, h, m + s, problem.dim)
    for k in range(n_startup + 1):
        buffer.push(k, states[k])

    implicit = alpha[s] * np.eye(problem.dim) + h * beta[s] * problem.matrix
    lu = _lu_or_raise(implicit)

    times = problem.t0 + h * np.arange(n_steps + 1)
    blowup_time = None
    last = n_startup
    for n in range(n_steps - s + 1):
        if _refactor_each_step:
            lu = _lu_or_raise(implicit)
        t_new = times[n + s]
        rhs = h * beta[s] * forcing(t_new)
        for j in range(s):
            rhs = rhs - alpha[j] * states[n + j]
            i = n + j - m
            rhs = rhs + h * beta_star[j] * problem.delayed_map(buffer.time_of(i),
                                                               buffer.get(i))
        y_new = lu_solve(lu, rhs)
        states[n + s] = y_new
        buffer.push(n + s, y_new)
        last = n + s
        if not np.all(np.isfinite(y_new)) or np.max(np.abs(y_new)) > blowup_threshold:
            blowup_time = float(t_new)
            break

    return Trajectory(times=times[:last + 1], states=states[:last + 1], h=h,
                      delay_steps=m, blowup_time=blowup_time)


@dataclass(frozen=True)
class ConvergenceRow:
    h: float
    errors: Optional[np.ndarray]      # componentwise |y_N - exact(t_end)|
    blowup_time: Optional[float]


@dataclass(frozen=True)
class ConvergenceStudy:
    rows: tuple[ConvergenceRow, ...]
    t_end: float
    norm: str
    rate_pair: tuple[float, float]
    rate: Optional[float]

    def row(self, h: float) -> ConvergenceRow:
        for r in self.rows:
            if abs(r.h - h) <= 1e-12 * max(1.0, h):
                return r
        raise KeyError(f"no row for h = {h}")


def _error_norm(errors: np.ndarray, norm: str) -> float:
    if norm == "l2":
        return float(np.linalg.norm(errors))
    if norm == "max":
        return float(np.max(np.abs(errors)))
    raise ValueError(f"unknown norm {norm!r} (use 'l2' or 'max')")


def convergence_study(problem: DelayProblem, method: ImexCoefficients,
                      h_list, t_end: float,
                      rate_pair: tuple[float, float] = (0.05, 0.005),
                      norm: str = "l2") -> ConvergenceStudy:
    """Errors at t_end over a list of step sizes, plus an observed rate.

    Requires the problem to carry its solution.  Rows whose run blows up
    report the blow-up time instead of errors.  The rate uses the two step
    sizes in ``rate_pair`` (both must be in ``h_list`` and stable) and the
    chosen norm of the componentwise errors.
    """
    if problem.exact is None:
        raise ValueError("convergence study requires a problem with a known solution")
    _error_norm(np.zeros(1) + 1.0, norm)  # validate the norm tag up front
    rows = []
    for h in h_list:
        traj = integrate(problem, method, h, t_end)
        if traj.blew_up:
            rows.append(ConvergenceRow(h=h, errors=None, blowup_time=traj.blowup_time))
        else:
            err = np.abs(traj.final_state - np.asarray(problem.exact(traj.final_time)))
            rows.append(ConvergenceRow(h=h, errors=err, blowup_time=None))
    study = ConvergenceStudy(rows=tuple(rows), t_end=t_end, norm=norm,
                             rate_pair=tuple(rate_pair), rate=None)
    try:
        r1, r2 = study.row(rate_pair[0]), study.row(rate_pair[1])
    except KeyError:
        return study
    if r1.errors is None or r2.errors is None:
        return study
    rate = convergence_rate(_error_norm(r1.errors, norm), _error_norm(r2.errors, norm),
                            rate_pair[0], rate_pair[1])
    return ConvergenceStudy(rows=study.rows, t_end=t_end, norm=norm,
                            rate_pair=tuple(rate_pair), rate=rate)


def max_trajectory_error(traj: Trajectory, exact) -> float:
    """Max-norm error against a known solution over the whole trajectory."""
    worst = 0.0
    for t, y in traj:
        worst = max(worst, float(np.max(np.abs(y - np.asarray(exact(t))))))
    return worst
