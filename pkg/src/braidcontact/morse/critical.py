"""
Critical points of difference functions.

``g_ij = r(t) cos(2 pi (theta - psi(t)))`` in polar form of ``f_i - f_j``, so
its critical points sit over the critical points of ``r = |f_i - f_j|`` with
``theta`` aligned (``g = r``) or anti-aligned (``g = -r``) with ``f_i - f_j``.
Over an r-maximum these are the global max and min of ``g``; over an
r-minimum both are saddles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DegenerateCriticalPointError, GeometryError, SeparationError
from .strands import (
    DEFAULT_TOLERANCES, TWO_PI, DiffFunction, MorseTolerances, StrandSystem, random_system,
)


@dataclass(frozen=True)
class RadialExtremum:
    t: float
    r: float
    r2: float  # second derivative of r
    kind: str  # "min" or "max"


@dataclass(frozen=True)
class RadialProfile:
    pair: tuple[int, int]
    extrema: tuple[RadialExtremum, ...]

    @property
    def minima(self) -> list[RadialExtremum]:
        return [e for e in self.extrema if e.kind == "min"]

    @property
    def maxima(self) -> list[RadialExtremum]:
        return [e for e in self.extrema if e.kind == "max"]

    @property
    def one_min_one_max(self) -> bool:
        return len(self.minima) == 1 and len(self.maxima) == 1

    def to_json(self) -> dict:
        return {
            "pair": list(self.pair),
            "extrema": [{"t": e.t, "r": e.r, "r2": e.r2, "kind": e.kind} for e in self.extrema],
            "one_min_one_max": self.one_min_one_max,
        }


def _h(g: DiffFunction, t):
    """``r r' = D . D'``, which vanishes exactly where ``r'`` does."""
    D, D1 = g.D(t), g.D(t, 1)
    return (D * D1).sum(axis=0)


def _h_prime(g: DiffFunction, t):
    D, D1, D2 = g.D(t), g.D(t, 1), g.D(t, 2)
    return (D1 * D1).sum(axis=0) + (D * D2).sum(axis=0)


def _safe_newton(g: DiffFunction, lo: float, hi: float, f_lo: float) -> float:
    """Root of ``h`` in ``[lo, hi]`` (sign change given); Newton with bisection fallback."""
    x = 0.5 * (lo + hi)
    for _ in range(200):
        fx = float(_h(g, x))
        if fx == 0.0:
            return x
        if (fx < 0) == (f_lo < 0):
            lo, f_lo = x, fx
        else:
            hi = x
        dfx = float(_h_prime(g, x))
        step = x - fx / dfx if dfx != 0 else None
        x_new = step if step is not None and lo < step < hi else 0.5 * (lo + hi)
        if abs(x_new - x) < 1e-15:
            return x_new
        x = x_new
    return x


def _merge_circular(points: list[float], eps: float) -> list[float]:
    pts = sorted(x % 1.0 for x in points)
    out: list[float] = []
    for x in pts:
        if not out or x - out[-1] > eps:
            out.append(x)
    if len(out) > 1 and out[0] + 1.0 - out[-1] <= eps:
        out.pop()
    return out


def radial_profile(system: StrandSystem, i: int, j: int,
                   tol: MorseTolerances = DEFAULT_TOLERANCES) -> RadialProfile:
    """Critical points of ``r_ij(t) = |f_i(t) - f_j(t)|`` on the circle."""
    g = DiffFunction(system, i, j)
    N = tol.samples
    ts = np.arange(N + 1) / N
    D = g.D(ts)
    r = np.hypot(*D)
    if r.min() <= tol.separation:
        raise SeparationError(f"strands {i} and {j} come within {r.min():.3g}")
    h = _h(g, ts)
    scale = max(float(np.abs(h).max()), 0.0)
    if scale < tol.nondeg:
        raise DegenerateCriticalPointError(
            f"|f_{i} - f_{j}| is constant; its critical points are not isolated")
    roots = []
    for k in range(N):
        if h[k] == 0.0:
            roots.append(float(ts[k]))
        elif h[k] * h[k + 1] < 0:
            roots.append(_safe_newton(g, float(ts[k]), float(ts[k + 1]), float(h[k])))
    extrema = []
    for t in _merge_circular(roots, 1e-9):
        rt = float(np.hypot(*g.D(t)))
        r2 = float(_h_prime(g, t)) / rt
        if abs(r2) < tol.nondeg:
            raise DegenerateCriticalPointError(
                f"r_{i}{j} has a degenerate critical point at t={t:.6g} (r''={r2:.3g})")
        extrema.append(RadialExtremum(t, rt, r2, "min" if r2 > 0 else "max"))
    return RadialProfile((i, j), tuple(extrema))


@dataclass(frozen=True)
class CriticalPoint:
    pair: tuple[int, int]
    t: float
    theta: float
    value: float
    index: int
    residual: float
    eigenvalues: tuple[float, float]
    over: str  # "min" or "max" of the radial profile

    @property
    def location(self) -> np.ndarray:
        return np.array([self.t, self.theta])

    def to_json(self) -> dict:
        return {
            "pair": list(self.pair), "t": self.t, "theta": self.theta, "value": self.value,
            "index": self.index, "residual": self.residual,
            "eigenvalues": list(self.eigenvalues), "over": self.over,
        }


def _refine(g: DiffFunction, x: np.ndarray, tol: MorseTolerances) -> np.ndarray:
    for _ in range(50):
        grad = g.grad(*x)
        if np.linalg.norm(grad) < 1e-3 * tol.crit:
            break
        x = x - np.linalg.solve(g.hessian(*x), grad)
    return x


def critical_points(g: DiffFunction, tol: MorseTolerances = DEFAULT_TOLERANCES) -> list[CriticalPoint]:
    """All critical points of ``g`` on the torus, sorted by (index, t, theta)."""
    profile = radial_profile(g.system, g.i, g.j, tol)
    found = []
    for ext in profile.extrema:
        dx, dy = g.D(ext.t)
        psi = np.arctan2(dy, dx) / TWO_PI
        for shift in (0.0, 0.5):
            x = _refine(g, np.array([ext.t, psi + shift]), tol)
            t, theta = float(x[0] % 1.0), float(x[1] % 1.0)
            res = float(np.linalg.norm(g.grad(t, theta)))
            hess = g.hessian(t, theta)
            if abs(np.linalg.det(hess)) < tol.nondeg:
                raise DegenerateCriticalPointError(
                    f"g_{g.i}{g.j} has a degenerate critical point at ({t:.6g}, {theta:.6g})")
            eig = np.linalg.eigvalsh(hess)
            found.append(CriticalPoint(
                g.pair, t, theta, float(g(t, theta)), int((eig < 0).sum()), res,
                (float(eig[0]), float(eig[1])), ext.kind))
    found.sort(key=lambda c: (c.index, c.t, c.theta))
    if profile.one_min_one_max and len(found) != 4:
        raise GeometryError(f"expected 4 critical points for g_{g.i}{g.j}, found {len(found)}")
    return found


def is_generic(system: StrandSystem, tol: MorseTolerances = DEFAULT_TOLERANCES) -> bool:
    """Every pair separated, with exactly one minimum and one maximum of ``r_ij``."""
    try:
        system.check_separation(tol)
        return all(radial_profile(system, i, j, tol).one_min_one_max for i, j in system.pairs())
    except (SeparationError, DegenerateCriticalPointError):
        return False


def random_generic_system(n: int, rng: np.random.Generator, harmonics: int = 2,
                          tol: MorseTolerances = DEFAULT_TOLERANCES,
                          max_tries: int = 1000) -> StrandSystem:
    """Rejection-sample :func:`random_system` until :func:`is_generic` holds."""
    for _ in range(max_tries):
        s = random_system(n, rng, harmonics)
        if is_generic(s, tol):
            return StrandSystem(s.coeffs, tol=tol)
    raise GeometryError(f"no generic {n}-strand system found in {max_tries} draws")
