"""
Gradient flow lines of a difference function on the torus.

Lines are integrated in arclength (unit-speed gradient field) with an embedded
Dormand-Prince 5(4) pair. The local error is held below ``flow_error`` times
the step length, so the global error target is per unit arclength. A line
stops once it enters the capture ball of a critical point other than its start.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import AmbiguousTerminalError, FlowError
from .critical import CriticalPoint, critical_points
from .strands import DEFAULT_TOLERANCES, TWO_PI, DiffFunction, MorseTolerances

MONOTONE_SLACK = 1e-12

# Dormand-Prince 5(4) tableau
_A = [np.array(row) for row in [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]]
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40])


def torus_offset(x: np.ndarray, p: np.ndarray) -> np.ndarray:
    """Shortest representative of ``x - p`` on the unit torus."""
    d = np.asarray(x) - np.asarray(p)
    return d - np.round(d)


def torus_distance(x: np.ndarray, p: np.ndarray) -> float:
    return float(np.linalg.norm(torus_offset(x, p)))


@dataclass
class FlowLine:
    points: np.ndarray  # (K, 2) unwrapped (t, theta) samples
    values: np.ndarray  # g along the samples
    start: CriticalPoint
    end: CriticalPoint
    arclength: float
    direction: str      # "descending" or "ascending"
    branch: float

    def to_json(self) -> dict:
        return {
            "start": [self.start.t, self.start.theta],
            "end": [self.end.t, self.end.theta],
            "start_index": self.start.index,
            "end_index": self.end.index,
            "arclength": self.arclength,
            "direction": self.direction,
            "branch": self.branch,
            "samples": len(self.points),
        }


def _canonical(v: np.ndarray) -> np.ndarray:
    v = v / np.linalg.norm(v)
    k = 0 if abs(v[0]) > 1e-12 else 1
    return v if v[k] > 0 else -v


def unstable_directions(g: DiffFunction, start: CriticalPoint, ascending: bool = False) -> np.ndarray:
    """Eigenvectors (rows) spanning the unstable manifold of the chosen flow."""
    w, v = np.linalg.eigh(g.hessian(start.t, start.theta))
    mask = w > 0 if ascending else w < 0
    return np.array([_canonical(v[:, k]) for k in np.flatnonzero(mask)])


def _branch_direction(dirs: np.ndarray, branch: float) -> np.ndarray:
    if len(dirs) == 1:
        if branch not in (1, -1):
            raise FlowError("a one-dimensional unstable manifold has branches +1 and -1")
        return branch * dirs[0]
    ang = TWO_PI * float(branch)
    return np.cos(ang) * dirs[0] + np.sin(ang) * dirs[1]


def trace_flow(g: DiffFunction, start: CriticalPoint, branch: float = 1, ascending: bool = False,
               tol: MorseTolerances = DEFAULT_TOLERANCES,
               targets: list[CriticalPoint] | None = None) -> FlowLine:
    """Follow the (descending, or ascending) gradient flow out of ``start``.

    ``branch`` picks the ray of the unstable manifold: ``+1``/``-1`` when it is
    one-dimensional, otherwise an angle as a fraction of a full turn in the
    plane of the two unstable eigenvectors.
    """
    dirs = unstable_directions(g, start, ascending)
    if len(dirs) == 0:
        flow = "ascending" if ascending else "descending"
        raise FlowError(f"index-{start.index} point has no unstable directions for the {flow} flow")
    if targets is None:
        targets = critical_points(g, tol)
    others = [c for c in targets
              if torus_distance(c.location, start.location) > tol.capture]
    if not others:
        raise FlowError("no critical point to flow to")
    locs = np.array([c.location for c in others])
    sign = 1.0 if ascending else -1.0

    def field(x):
        t, theta = x
        c, s_ = math.cos(TWO_PI * theta), math.sin(TWO_PI * theta)
        dx, dy, px, py, _, _ = g.jet(t)
        gt, gth = px * c + py * s_, TWO_PI * (dy * c - dx * s_)
        norm = math.hypot(gt, gth)
        if norm == 0.0:
            raise FlowError(f"flow stalled at a critical point near {x}")
        return np.array([sign * gt / norm, sign * gth / norm])

    def nearest(x):
        return np.linalg.norm(torus_offset(x, locs), axis=1)

    x = start.location + tol.start_offset * _branch_direction(dirs, branch)
    points = [start.location.copy(), x.copy()]
    values = [start.value, float(g(*x))]
    s = tol.start_offset
    h = min(0.01, tol.start_offset)
    h_max = 0.05
    k = np.empty((7, 2))
    k[0] = field(x)
    for _ in range(tol.max_steps):
        dist = nearest(x)
        close = np.flatnonzero(dist < tol.capture)
        if len(close):
            if len(close) > 1:
                raise AmbiguousTerminalError(
                    "flow line ends within the capture radius of "
                    f"{len(close)} critical points; tighten the tolerances")
            end = others[int(close[0])]
            pts = np.array(points)
            vals = np.array(values)
            _check_monotone(vals, ascending)
            return FlowLine(pts, vals, start, end, s,
                            "ascending" if ascending else "descending", float(branch))
        h = min(h, h_max, 0.5 * float(dist.min()))
        for stage in range(1, 7):
            k[stage] = field(x + h * (_A[stage] @ k[:stage]))
        y5 = x + h * (_B5 @ k)
        err = h * float(np.linalg.norm((_B5 - _B4) @ k))
        allowed = tol.flow_error * h
        if err <= allowed:
            x = y5
            s += h
            points.append(x.copy())
            values.append(float(g(*x)))
            k[0] = k[6]  # first-same-as-last
        factor = 5.0 if err == 0 else 0.9 * (allowed / err) ** 0.25
        h = h * min(5.0, max(0.2, factor))
        if h < 1e-14:
            raise FlowError("step size underflow; the flow left the refinement tolerance")
    raise FlowError(f"flow did not reach a critical point within {tol.max_steps} steps")


def _check_monotone(values: np.ndarray, ascending: bool) -> None:
    steps = np.diff(values)
    bad = steps < -MONOTONE_SLACK if ascending else steps > MONOTONE_SLACK
    if bad.any():
        raise FlowError("g is not monotone along the traced flow line")
