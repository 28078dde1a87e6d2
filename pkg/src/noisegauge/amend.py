"""Amendability: raising a channel's entanglement-breaking order by filtering.

A channel whose two-fold self-composition breaks entanglement can sometimes
be rescued: interposing a fixed unitary filter between uses keeps the
composition non-entanglement-breaking for longer.  ``is_amendable2`` tests a
given filter, ``amend_order`` computes the order of the filtered iteration,
and ``search_filter`` looks for a good filter among the named Pauli /
rotation candidates plus a seeded Euler-angle grid.

Filters are unitary channels given by their Bloch rotation.  Improper
orthogonal Bloch actions (determinant -1) are accepted for compositions with
unital channels, where everything reduces to trace norms of 3x3 matrices;
they do not correspond to any Kraus form and are rejected when a Kraus-route
composition is required.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .channels import (
    Channel,
    GadParams,
    IDENTITY_2,
    KrausChannel,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    UnitalChannel,
    as_kraus,
    choi,
    compose_kraus,
    gad_kraus,
)
from .gad import p_n
from .linalg import polar_decompose, trace_norm
from .measures import DEFAULT_CAP, EB_TOL, ebn_member, n_c
from .report import NcResult
from .separability import is_eb, min_pt_eigenvalue

_PAULI_VECTOR = (SIGMA_X, SIGMA_Y, SIGMA_Z)


def _rot(axis: int, angle: float) -> np.ndarray:
    """Right-handed rotation about a coordinate axis (0=x, 1=y, 2=z)."""
    c, s = math.cos(angle), math.sin(angle)
    m = np.eye(3)
    i, j = [(1, 2), (2, 0), (0, 1)][axis]
    m[i, i] = c
    m[j, j] = c
    m[i, j] = -s
    m[j, i] = s
    return m


def _su2(axis: int, angle: float) -> np.ndarray:
    """exp(-i angle/2 sigma_axis); conjugation rotates Bloch vectors by angle."""
    return math.cos(angle / 2) * IDENTITY_2 - 1j * math.sin(angle / 2) * _PAULI_VECTOR[axis]


def su2_from_so3(r: np.ndarray) -> np.ndarray:
    """Unitary whose conjugation action realizes a proper rotation r.

    Quaternion extraction stable for all rotation angles including pi.
    """
    t = float(np.trace(r))
    if t >= max(r[0, 0], r[1, 1], r[2, 2]):
        w = math.sqrt(max(0.0, 1.0 + t)) / 2
        x = (r[2, 1] - r[1, 2]) / (4 * w)
        y = (r[0, 2] - r[2, 0]) / (4 * w)
        z = (r[1, 0] - r[0, 1]) / (4 * w)
    else:
        i = int(np.argmax([r[0, 0], r[1, 1], r[2, 2]]))
        j, k = (i + 1) % 3, (i + 2) % 3
        s = math.sqrt(max(0.0, 1.0 + r[i, i] - r[j, j] - r[k, k])) / 2
        axis = [0.0, 0.0, 0.0]
        axis[i] = s
        w = (r[k, j] - r[j, k]) / (4 * s)
        axis[j] = (r[j, i] + r[i, j]) / (4 * s)
        axis[k] = (r[k, i] + r[i, k]) / (4 * s)
        x, y, z = axis
    return w * IDENTITY_2 - 1j * (x * SIGMA_X + y * SIGMA_Y + z * SIGMA_Z)


@dataclass(frozen=True)
class FilterCandidate:
    """A unitary filter: Pauli conjugation, named rotation pair, Euler
    rotation, or an explicit orthogonal Bloch action."""

    kind: str
    params: tuple = ()

    _PAULI_BLOCH = {
        "s1": np.diag([1.0, -1.0, -1.0]),
        "s2": np.diag([-1.0, 1.0, -1.0]),
        "s3": np.diag([-1.0, -1.0, 1.0]),
    }

    def __post_init__(self):
        kind = self.kind
        if kind in ("s1", "s2", "s3", "r2r1"):
            if self.params:
                raise ValueError(f"filter kind {kind!r} takes no parameters")
        elif kind == "euler":
            if len(self.params) != 3:
                raise ValueError("euler filter needs three angles (alpha, beta, theta)")
            object.__setattr__(self, "params", tuple(float(a) for a in self.params))
        elif kind == "orthogonal":
            m = np.asarray(self.params, dtype=float).reshape(3, 3)
            if np.abs(m @ m.T - np.eye(3)).max() > 1e-10:
                raise ValueError("orthogonal filter matrix is not orthogonal")
            object.__setattr__(self, "params", tuple(float(x) for x in m.ravel()))
        else:
            raise ValueError(f"unknown filter kind {kind!r}")

    @classmethod
    def pauli(cls, axis: int) -> "FilterCandidate":
        if axis not in (1, 2, 3):
            raise ValueError("Pauli filter axis must be 1, 2 or 3")
        return cls(f"s{axis}")

    @classmethod
    def r2r1(cls) -> "FilterCandidate":
        return cls("r2r1")

    @classmethod
    def euler(cls, alpha: float, beta: float, theta: float) -> "FilterCandidate":
        return cls("euler", (alpha, beta, theta))

    @classmethod
    def orthogonal(cls, m) -> "FilterCandidate":
        return cls("orthogonal", tuple(np.asarray(m, dtype=float).ravel()))

    def bloch_matrix(self) -> np.ndarray:
        if self.kind in self._PAULI_BLOCH:
            return self._PAULI_BLOCH[self.kind].copy()
        if self.kind == "r2r1":
            # quarter turn about x, then a quarter turn about y
            return _rot(1, math.pi / 2) @ _rot(0, math.pi / 2)
        if self.kind == "euler":
            a, b, t = self.params
            return _rot(2, a) @ _rot(1, b) @ _rot(2, t)
        return np.asarray(self.params, dtype=float).reshape(3, 3)

    def unitary(self) -> np.ndarray:
        """2x2 unitary realizing the filter; fails for improper rotations."""
        if self.kind in ("s1", "s2", "s3"):
            return _PAULI_VECTOR[int(self.kind[1]) - 1].copy()
        if self.kind == "r2r1":
            return _su2(1, math.pi / 2) @ _su2(0, math.pi / 2)
        if self.kind == "euler":
            a, b, t = self.params
            return _su2(2, a) @ _su2(1, b) @ _su2(2, t)
        m = self.bloch_matrix()
        if np.linalg.det(m) < 0:
            raise ValueError(
                "improper orthogonal Bloch action has no unitary realization"
            )
        return su2_from_so3(m)

    def inverse(self) -> "FilterCandidate":
        """Filter realizing the inverse Bloch action."""
        return FilterCandidate.orthogonal(self.bloch_matrix().T)

    def to_json(self) -> dict:
        return {"kind": self.kind, "params": [float(x) for x in self.params]}

    @classmethod
    def from_json(cls, data: dict) -> "FilterCandidate":
        return cls(data["kind"], tuple(data.get("params", ())))


def apply_filter(f: FilterCandidate, c: Channel) -> Channel:
    """The filtered channel f . c (channel first, filter after)."""
    if isinstance(c, UnitalChannel):
        return UnitalChannel(f.bloch_matrix() @ c.t)
    u = f.unitary()
    base = as_kraus(c)
    return KrausChannel(tuple(u @ e for e in base.ops))


def sandwich(c: Channel, f: FilterCandidate) -> Channel:
    """The two-use composition c . f . c."""
    if isinstance(c, UnitalChannel):
        return UnitalChannel(c.t @ f.bloch_matrix() @ c.t)
    base = as_kraus(c)
    u = f.unitary()
    mid = KrausChannel(tuple(u @ e for e in base.ops))
    return compose_kraus(base, mid)


@dataclass(frozen=True)
class AmendReport:
    """Search outcome: orders before/after filtering and the winning filter."""

    base_nc: NcResult
    filtered_nc: NcResult
    filter: FilterCandidate
    amendable: bool

    def __post_init__(self):
        if self.amendable and not self.filtered_nc.order_key() > self.base_nc.order_key():
            raise ValueError("amendable reports must raise the order")

    def to_json(self) -> dict:
        return {
            "base_nc": self.base_nc.to_json(),
            "filtered_nc": self.filtered_nc.to_json(),
            "filter": self.filter.to_json(),
            "amendable": self.amendable,
        }


def is_amendable2(c: Channel, f: FilterCandidate) -> bool:
    """Does the filter rescue the two-use composition?

    True when c is in EB^2 but c . f . c is not entanglement breaking.
    """
    return ebn_member(c, 2) and not is_eb(sandwich(c, f))


def amend_order(c: Channel, f: FilterCandidate, cap: int = DEFAULT_CAP) -> NcResult:
    """Entanglement-breaking order of the filtered iteration (f . c)^m."""
    return n_c(apply_filter(f, c), cap)


def _order_and_margin(c: Channel, f: FilterCandidate, cap: int) -> tuple[NcResult, float]:
    """Order of f . c plus a sub-integer tie-break margin in (-1, 0].

    At the step where the iterate first turns entanglement breaking, the
    margin measures how close it sits to the boundary (trace norm for the
    unital route, minimal partial-transpose eigenvalue otherwise); a margin
    near zero means the filter almost reached the next order.
    """
    filtered = apply_filter(f, c)
    if isinstance(filtered, UnitalChannel):
        power = np.eye(3)
        for m in range(1, cap + 1):
            power = power @ filtered.t
            tn = trace_norm(power)
            if tn <= 1.0 + EB_TOL:
                return NcResult(m, cap), max(-1.0, tn - 1.0)
        return NcResult(None, cap), 0.0
    base = as_kraus(filtered)
    current = base
    for m in range(1, cap + 1):
        low = min_pt_eigenvalue(choi(current))
        if low >= -EB_TOL:
            return NcResult(m, cap), -min(1.0, 2.0 * max(0.0, low))
        if m < cap:
            current = compose_kraus(base, current)
    return NcResult(None, cap), 0.0


def _score(result: NcResult, margin: float, cap: int) -> float:
    """Total order: ExceedsCap > Finite(m) > Finite(m' < m), margins tie-break."""
    base = cap + 1.0 if result.n is None else float(result.n)
    return base + margin


def _is_unitary_channel(c: Channel) -> bool:
    if isinstance(c, UnitalChannel):
        return c.is_orthogonal()
    if isinstance(c, KrausChannel) and len(c.ops) == 1:
        u = c.ops[0]
        return bool(np.abs(u @ u.conj().T - IDENTITY_2).max() <= 1e-10)
    return False


def search_filter(
    c: Channel,
    cap: int = DEFAULT_CAP,
    budget: int = 1000,
    seed: int = 42,
) -> AmendReport:
    """Look for the filter that maximally delays entanglement breaking.

    Tries the named filters (three Pauli conjugations and the x-then-y
    quarter-turn pair), the inverse polar rotation for unital channels, and a
    seeded Euler-angle lattice of about `budget` points, then refines the best
    lattice point with a Nelder-Mead pass.  Deterministic for a fixed seed;
    ties keep the first maximum in evaluation order.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if _is_unitary_channel(c):
        raise ValueError("unitary channels never break entanglement; nothing to amend")

    candidates: list[FilterCandidate] = [
        FilterCandidate.pauli(1),
        FilterCandidate.pauli(2),
        FilterCandidate.pauli(3),
        FilterCandidate.r2r1(),
    ]
    if isinstance(c, UnitalChannel):
        rotation, _ = polar_decompose(c.t)
        candidates.append(FilterCandidate.orthogonal(rotation.T))

    rng = np.random.default_rng(seed)
    per_axis = max(1, int(math.floor(budget ** (1.0 / 3.0))))
    spans = (2 * math.pi, math.pi, 2 * math.pi)
    offsets = [rng.uniform(0.0, span / per_axis) for span in spans]
    axes = [
        offsets[k] + np.arange(per_axis) * (spans[k] / per_axis)
        for k in range(3)
    ]
    euler_points = [
        (float(a), float(b), float(t))
        for a in axes[0]
        for b in axes[1]
        for t in axes[2]
    ]
    candidates.extend(FilterCandidate.euler(*pt) for pt in euler_points)

    best_filter = None
    best_result = None
    best_score = -math.inf
    best_euler = None
    best_euler_score = -math.inf
    for cand in candidates:
        result, margin = _order_and_margin(c, cand, cap)
        score = _score(result, margin, cap)
        if score > best_score:
            best_filter, best_result, best_score = cand, result, score
        if cand.kind == "euler" and score > best_euler_score:
            best_euler, best_euler_score = cand, score

    if best_euler is not None:

        def negated(angles: np.ndarray) -> float:
            cand = FilterCandidate.euler(*angles)
            result, margin = _order_and_margin(c, cand, cap)
            return -_score(result, margin, cap)

        res = minimize(
            negated,
            np.asarray(best_euler.params, dtype=float),
            method="Nelder-Mead",
            options={"xatol": 1e-4, "fatol": 1e-12, "maxiter": 200},
        )
        if -res.fun > best_score:
            best_filter = FilterCandidate.euler(*(float(a) for a in res.x))
            best_result, margin = _order_and_margin(c, best_filter, cap)
            best_score = _score(best_result, margin, cap)

    base = n_c(c, cap)
    amendable = ebn_member(c, 2) and best_result.order_key() > 2
    return AmendReport(base, best_result, best_filter, amendable)


def gad_amendable(p: float, gamma: float, f: FilterCandidate) -> bool:
    """Membership test for the damping-channel amendable region.

    The rescued channel at point (p, gamma) is the damping channel composed
    with the rotation f; the order-raising filter is the inverse rotation
    (equivalently ``is_amendable2`` on that pair).  Written out: the
    interleaved two-use map (damping . f . damping) breaks entanglement while
    the plain two-fold composition does not, the latter decided through the
    closed-form band edge.
    """
    channel = GadParams(p, gamma)
    if channel.p >= p_n(channel.gamma, 2):
        return False
    return is_eb(sandwich(gad_kraus(channel), f))
