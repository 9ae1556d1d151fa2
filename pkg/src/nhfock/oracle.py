"""Brute-force check that the analytic states really sit at the minimum.

Minimizes the dispersion product Delta_A * Delta_B over unit vectors
supported on the low-level subspace, from several seeded random starts.
The search works on the squared product Var_A * Var_B of the normalized
vector, parametrized by the real and imaginary parts of the raw
coefficients; since the objective is scale-invariant in that
parametrization, normalization is built into every evaluation.  The route
shares nothing with the analytic state constructors, which is the point.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import scipy.optimize

from .errors import InvalidDimension, NoConvergence
from .fock_core import FockOperator, FockState, low_indices
from .uncertainty import _check_hermitian, heisenberg_bound


@dataclass(frozen=True)
class MinimizeConfig:
    """Search budget and reproducibility knobs."""

    n_eff: int = 12
    max_iters: int = 5000
    step_tol: float = 1e-10
    restarts: int = 8
    rng_seed: int = 0

    def __post_init__(self):
        if self.n_eff < 2:
            raise ValueError(f"n_eff must be >= 2, got {self.n_eff}")
        if self.restarts < 1:
            raise ValueError(f"restarts must be >= 1, got {self.restarts}")


@dataclass(frozen=True)
class MinimizeResult:
    state: FockState
    value: float
    bound: float
    iterations: int
    seed: int

    @property
    def gap(self) -> float:
        return self.value - self.bound

    def to_json_dict(self, pair: str = "") -> dict:
        return {
            "pair": pair,
            "value": self.value,
            "bound": self.bound,
            "gap": self.gap,
            "iterations": self.iterations,
            "seed": self.seed,
        }


def product_objective(a: FockOperator, b: FockOperator, n_eff: int):
    """Objective Var_A(psi) * Var_B(psi) with analytic gradient.

    Returns (fun, m) where ``fun(v) -> (value, grad)`` takes the stacked
    real/imaginary coefficient vector of length 2 m over the low subspace.
    The operators act on the full space; only the state support is
    restricted, so second moments count population pushed above the
    subspace.
    """
    a._check_compatible(b)
    _check_hermitian(a, "first operator")
    _check_hermitian(b, "second operator")
    idx = low_indices(a.trunc, a.n_modes, n_eff)
    m = idx.size
    # m x m blocks: first and second moments of each operator on the subspace
    a_cols = a.entries[:, idx]
    b_cols = b.entries[:, idx]
    a1 = a.entries[np.ix_(idx, idx)]
    b1 = b.entries[np.ix_(idx, idx)]
    a2 = a_cols.conj().T @ a_cols
    b2 = b_cols.conj().T @ b_cols

    def fun(v: np.ndarray):
        u = v[:m] + 1j * v[m:]
        nrm2 = float(np.vdot(u, u).real)
        a1u, a2u = a1 @ u, a2 @ u
        b1u, b2u = b1 @ u, b2 @ u
        qa1 = np.vdot(u, a1u).real / nrm2
        qa2 = np.vdot(u, a2u).real / nrm2
        qb1 = np.vdot(u, b1u).real / nrm2
        qb2 = np.vdot(u, b2u).real / nrm2
        var_a = qa2 - qa1 * qa1
        var_b = qb2 - qb1 * qb1
        value = var_a * var_b
        # Wirtinger derivative of q_M = <u|M|u>/<u|u> is (M u - q u)/<u|u>
        d_var_a = ((a2u - qa2 * u) - 2.0 * qa1 * (a1u - qa1 * u)) / nrm2
        d_var_b = ((b2u - qb2 * u) - 2.0 * qb1 * (b1u - qb1 * u)) / nrm2
        g = var_b * d_var_a + var_a * d_var_b
        grad = np.concatenate([2.0 * g.real, 2.0 * g.imag])
        return value, grad

    return fun, m


def fd_gradient_check(fun, point: np.ndarray, h: float = 1e-5) -> float:
    """Max deviation of the analytic gradient from central differences.

    Deviation is normalized by max(1, largest analytic component); ``h``
    must sit in [1e-7, 1e-3].
    """
    if not 1e-7 <= h <= 1e-3:
        raise ValueError(f"h must be in [1e-7, 1e-3], got {h}")
    point = np.asarray(point, dtype=np.float64)
    _, grad = fun(point)
    fd = np.empty_like(grad)
    for i in range(point.size):
        step = np.zeros_like(point)
        step[i] = h
        f_plus, _ = fun(point + step)
        f_minus, _ = fun(point - step)
        fd[i] = (f_plus - f_minus) / (2.0 * h)
    scale = max(1.0, float(np.abs(grad).max()))
    return float(np.abs(fd - grad).max()) / scale


def _worker_count() -> int:
    env = os.environ.get("NHFOCK_THREADS", "").strip()
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def minimize_product(a: FockOperator, b: FockOperator, cfg: MinimizeConfig) -> MinimizeResult:
    """Best local minimum of Delta_A * Delta_B over the low-subspace sphere.

    Runs ``cfg.restarts`` independent seeded starts (in parallel, capped by
    NHFOCK_THREADS) and keeps the lowest converged value; raises
    :class:`NoConvergence` if no restart converges.  Identical seeds give
    identical results regardless of scheduling.
    """
    if cfg.n_eff > a.trunc.n_levels:
        raise InvalidDimension(f"cfg.n_eff = {cfg.n_eff} exceeds n_levels = {a.trunc.n_levels}")
    fun, m = product_objective(a, b, cfg.n_eff)

    def run_restart(i: int):
        rng = np.random.default_rng([cfg.rng_seed, i])
        v0 = rng.standard_normal(2 * m)
        v0 /= np.linalg.norm(v0)
        res = scipy.optimize.minimize(
            fun,
            v0,
            jac=True,
            method="L-BFGS-B",
            options={"maxiter": cfg.max_iters, "gtol": cfg.step_tol, "ftol": 1e-15},
        )
        return res

    with ThreadPoolExecutor(max_workers=min(_worker_count(), cfg.restarts)) as pool:
        results = list(pool.map(run_restart, range(cfg.restarts)))

    converged = [(i, r) for i, r in enumerate(results) if r.success]
    if not converged:
        raise NoConvergence(
            f"no restart converged within {cfg.max_iters} iterations "
            f"(statuses: {[r.message for r in results]})"
        )
    best_i, best = min(converged, key=lambda pair: (pair[1].fun, pair[0]))
    u = best.x[:m] + 1j * best.x[m:]
    u /= np.linalg.norm(u)
    idx = low_indices(a.trunc, a.n_modes, cfg.n_eff)
    full = np.zeros(a.dim, dtype=np.complex128)
    full[idx] = u
    state = FockState(full, a.trunc)
    value = float(np.sqrt(max(best.fun, 0.0)))
    return MinimizeResult(
        state=state,
        value=value,
        bound=heisenberg_bound(a, b, state),
        iterations=int(sum(r.nit for r in results)),
        seed=cfg.rng_seed,
    )
