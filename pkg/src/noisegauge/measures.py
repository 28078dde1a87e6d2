"""The two noise functionals: depolarizing threshold and iteration order.

``mu_given_rho0`` computes the minimal probability of mixing a channel with
the "prepare rho0" map before the mixture becomes entanglement breaking; the
search is a bisection over the PPT separability decision, which is valid
because separability along the mixing segment is monotone (the separable set
is convex and the endpoint is a product state).

``mu_c`` minimizes that threshold over the prepared state rho0.  Unital and
damping channels have exact closed forms; for everything else a multistart
derivative-free search over the Bloch ball is used, with the closed forms
serving as its accuracy oracle in the test suite.

``n_c`` is the smallest number of self-compositions after which the channel
breaks entanglement; by monotonicity of the EB^n families a single upward
scan suffices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from . import gad as gadforms
from .channels import (
    Channel,
    GadParams,
    IDENTITY_2,
    KrausChannel,
    UnitalChannel,
    as_kraus,
    bloch_to_density,
    choi,
    compose_kraus,
    validate_density,
)
from .linalg import partial_transpose, trace_norm
from .report import NcResult, NoiseReport
from .separability import SEP_TOL, ChoiState, is_eb

DEFAULT_CAP = 64
DEFAULT_TOL = 1e-6
EB_TOL = 1e-10


def mu_c_upper_bound(d: int) -> float:
    """Dimension bound d / (1 + d) on the depolarizing threshold."""
    if d < 2:
        raise ValueError("dimension must be >= 2")
    return d / (1.0 + d)


def mu_c_unital(c: UnitalChannel) -> float:
    """Exact threshold for unital channels: max(0, (||T||_1 - 1) / ||T||_1)."""
    tn = trace_norm(c.t)
    if tn <= 1.0:
        return 0.0
    return (tn - 1.0) / tn


def _pt_choi(c: Channel) -> np.ndarray:
    """Partial transpose of the channel's Choi matrix, validated as a state."""
    return partial_transpose(ChoiState(choi(c)).g)


def _mu_threshold(gpt: np.ndarray, ppt: np.ndarray, tol: float) -> float:
    """Bisection for the separability onset along (1-mu) gpt + mu ppt."""
    if float(np.linalg.eigvalsh(gpt).min()) >= -SEP_TOL:
        return 0.0
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        m = (1.0 - mid) * gpt + mid * ppt
        if float(np.linalg.eigvalsh(m).min()) >= -SEP_TOL:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _check_tol(tol: float) -> float:
    if not 0.0 < tol <= 1e-3:
        raise ValueError(f"tolerance {tol} outside (0, 1e-3]")
    return float(tol)


def mu_given_rho0(c: Channel, rho0, tol: float = DEFAULT_TOL) -> float:
    """Minimal mixing probability towards the fixed state rho0, by bisection.

    Returns 0 when the channel is already entanglement breaking.  The result
    is within `tol` of the exact threshold.
    """
    tol = _check_tol(tol)
    r = validate_density(rho0)
    gpt = _pt_choi(c)
    # rho0 (x) 1/2 equals its own partial transpose (the second factor is 1/2).
    ppt = np.kron(r, IDENTITY_2 / 2)
    return _mu_threshold(gpt, ppt, tol)


def coarse_bloch_grid() -> list[np.ndarray]:
    """26 starting points: 6 axis poles, 8 cube corners and 12 cube edge
    midpoints, the latter two rescaled to radius 0.7."""
    pts = []
    for i in range(3):
        for s in (1.0, -1.0):
            w = np.zeros(3)
            w[i] = s
            pts.append(w)
    for sx in (-1.0, 1.0):
        for sy in (-1.0, 1.0):
            for sz in (-1.0, 1.0):
                pts.append(0.7 * np.array([sx, sy, sz]) / np.sqrt(3))
    for i in range(3):
        for j in range(i + 1, 3):
            for si in (-1.0, 1.0):
                for sj in (-1.0, 1.0):
                    w = np.zeros(3)
                    w[i], w[j] = si, sj
                    pts.append(0.7 * w / np.sqrt(2))
    return pts


@dataclass(frozen=True)
class MuSearchResult:
    """Outcome of the generic threshold minimization over rho0."""

    value: float
    bloch: np.ndarray
    restart_spread: float
    evaluations: int


def mu_c_search(
    c: Channel,
    tol: float = DEFAULT_TOL,
    restarts: int = 3,
    xatol: float = 1e-4,
) -> MuSearchResult:
    """Minimize mu_given_rho0 over the Bloch ball, any channel with a valid
    Choi matrix.

    Coarse grid first, then Nelder-Mead refinement from the `restarts` best
    grid points; points outside the ball are radially projected.  The spread
    between refined restarts is reported so callers can judge whether the
    landscape looked multimodal; the returned value is the minimum over every
    evaluation either way.
    """
    tol = _check_tol(tol)
    gpt = _pt_choi(c)
    if float(np.linalg.eigvalsh(gpt).min()) >= -SEP_TOL:
        return MuSearchResult(0.0, np.zeros(3), 0.0, 1)

    count = [0]

    def objective(w: np.ndarray) -> float:
        count[0] += 1
        r = float(np.linalg.norm(w))
        if r > 1.0:
            w = w / r
        ppt = np.kron(bloch_to_density(w), IDENTITY_2 / 2)
        return _mu_threshold(gpt, ppt, tol)

    grid = coarse_bloch_grid()
    values = [objective(w) for w in grid]
    ranking = np.argsort(values, kind="stable")

    best_value = min(values)
    best_point = grid[int(np.argmin(values))]
    refined = []
    for idx in ranking[: max(0, restarts)]:
        res = minimize(
            objective,
            grid[int(idx)],
            method="Nelder-Mead",
            options={"xatol": xatol, "fatol": 1e-12, "maxiter": 600},
        )
        refined.append(float(res.fun))
        if res.fun < best_value:
            best_value = float(res.fun)
            w = np.asarray(res.x, dtype=float)
            r = float(np.linalg.norm(w))
            best_point = w / r if r > 1.0 else w
    spread = (max(refined) - min(refined)) if refined else 0.0
    return MuSearchResult(best_value, best_point, spread, count[0])


def mu_c(
    c: Channel,
    tol: float = DEFAULT_TOL,
    restarts: int = 3,
    xatol: float = 1e-4,
) -> float:
    """Depolarizing threshold of a channel, never above d/(1+d) = 2/3.

    Closed forms for unital and damping channels; multistart search
    otherwise.
    """
    if isinstance(c, UnitalChannel):
        return mu_c_unital(c)
    if isinstance(c, GadParams):
        return gadforms.mu_c_gad(c.p, c.gamma)
    return mu_c_search(c, tol=tol, restarts=restarts, xatol=xatol).value


def ebn_member(c: Channel, n: int) -> bool:
    """Does the n-fold self-composition break entanglement?

    Boundary inclusive: for unital channels ||T^n||_1 = 1 counts as EB.
    """
    if n < 1:
        raise ValueError("membership order n must be >= 1")
    if isinstance(c, UnitalChannel):
        return trace_norm(np.linalg.matrix_power(c.t, n)) <= 1.0 + EB_TOL
    if isinstance(c, GadParams):
        return c.p >= gadforms.p_n(c.gamma, n)
    return is_eb(_kraus_power(as_kraus(c), n))


def _kraus_power(base: KrausChannel, n: int) -> KrausChannel:
    out = base
    for _ in range(n - 1):
        out = compose_kraus(base, out)
    return out


def n_c(c: Channel, cap: int = DEFAULT_CAP) -> NcResult:
    """Smallest n <= cap whose n-fold composition breaks entanglement.

    Monotonicity of the EB^n families makes the upward scan exact.  Damping
    channels go through the closed-form band map, which also certifies
    divergence on the zero-temperature edge.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if isinstance(c, GadParams):
        return gadforms.n_c_gad(c.p, c.gamma, cap)
    if isinstance(c, UnitalChannel):
        power = np.eye(3)
        for n in range(1, cap + 1):
            power = power @ c.t
            if trace_norm(power) <= 1.0 + EB_TOL:
                return NcResult(n, cap)
        return NcResult(None, cap)
    base = as_kraus(c)
    current = base
    for n in range(1, cap + 1):
        if is_eb(current):
            return NcResult(n, cap)
        if n < cap:
            current = compose_kraus(base, current)
    return NcResult(None, cap)


def noise_report(c: Channel, cap: int = DEFAULT_CAP, tol: float = DEFAULT_TOL) -> NoiseReport:
    """Assemble threshold, order and EB^n flags for a qubit channel."""
    order = n_c(c, cap)
    flags = tuple(order.n is not None and k >= order.n for k in range(1, cap + 1))
    # The EB decision carries a tolerance; inside it the threshold is zero.
    value = 0.0 if flags[0] else mu_c(c, tol=tol)
    return NoiseReport(value, order, flags)
