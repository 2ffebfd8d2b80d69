"""
Strand systems: ``n`` closed curves ``f_i: S^1 -> R^2`` given by truncated
Fourier series, and the difference functions on the torus

    g_ij(t, theta) = <f_i(t) - f_j(t), (cos 2 pi theta, sin 2 pi theta)>.

Coefficient arrays are indexed by harmonic ``h = 0..H``:
``x(t) = sum_h cx[h] cos(2 pi h t) + sx[h] sin(2 pi h t)`` (``sx[0]`` is inert),
and likewise for ``y`` with ``cy``, ``sy``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import BraidContactError, SeparationError

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class MorseTolerances:
    crit: float = 1e-9        # gradient residual of a refined critical point
    nondeg: float = 1e-6      # |det Hessian| and |r''| lower bound
    capture: float = 1e-4     # radius at which a flow line is captured
    separation: float = 1e-3  # min distance between strands
    samples: int = 2048       # radial-profile sampling density
    flow_error: float = 1e-10  # integrator error target per unit arclength
    start_offset: float = 1e-3  # displacement off the start point along the branch
    max_steps: int = 200_000

    def __post_init__(self):
        bad = [k for k, v in self.to_json().items() if not v > 0]
        if bad:
            raise BraidContactError(f"Morse tolerances must be positive: {', '.join(bad)}")

    def to_json(self) -> dict:
        return {
            "crit": self.crit, "nondeg": self.nondeg, "capture": self.capture,
            "separation": self.separation, "samples": self.samples,
            "flow_error": self.flow_error, "start_offset": self.start_offset,
            "max_steps": self.max_steps,
        }


DEFAULT_TOLERANCES = MorseTolerances()


class StrandSystem:
    """``coeffs`` has shape ``(n, 4, H + 1)`` with rows ``cx, sx, cy, sy`` per strand."""

    def __init__(self, coeffs, check: bool = True, tol: MorseTolerances = DEFAULT_TOLERANCES):
        arr = np.asarray(coeffs, dtype=float)
        if arr.ndim != 3 or arr.shape[1] != 4 or arr.shape[2] < 1:
            raise BraidContactError(f"coefficients must have shape (n, 4, H+1), got {arr.shape}")
        self.coeffs = arr
        self.coeffs.setflags(write=False)
        if check:
            self.check_separation(tol)

    @property
    def n(self) -> int:
        return self.coeffs.shape[0]

    @property
    def harmonics(self) -> int:
        return self.coeffs.shape[2] - 1

    def position(self, i: int, t, deriv: int = 0) -> np.ndarray:
        """``deriv``-th t-derivative of strand ``i`` (1-based); shape ``(2,) + shape(t)``."""
        t = np.asarray(t, dtype=float)
        h = np.arange(self.coeffs.shape[2])
        omega = TWO_PI * h
        phase = np.multiply.outer(t, omega)
        factor = (1j * omega) ** deriv
        e = factor * np.exp(1j * phase)
        cx, sx, cy, sy = self.coeffs[i - 1]
        x = e.real @ cx + e.imag @ sx
        y = e.real @ cy + e.imag @ sy
        return np.stack([x, y])

    def diff(self, i: int, j: int) -> DiffFunction:
        return DiffFunction(self, i, j)

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(1, self.n + 1) for j in range(i + 1, self.n + 1)]

    def check_separation(self, tol: MorseTolerances = DEFAULT_TOLERANCES) -> None:
        t = np.arange(tol.samples) / tol.samples
        for i, j in self.pairs():
            dist = np.hypot(*(self.position(i, t) - self.position(j, t)))
            if dist.min() <= tol.separation:
                raise SeparationError(
                    f"strands {i} and {j} come within {dist.min():.3g} "
                    f"(separation tolerance {tol.separation})")

    def to_json(self) -> dict:
        strands = []
        for c in self.coeffs:
            strands.append({k: [float(v) for v in row] for k, row in zip(("cx", "sx", "cy", "sy"), c)})
        return {"n": self.n, "strands": strands}

    @classmethod
    def from_json(cls, data: dict, tol: MorseTolerances = DEFAULT_TOLERANCES) -> StrandSystem:
        strands = data["strands"]
        if int(data["n"]) != len(strands):
            raise BraidContactError(f"n = {data['n']} but {len(strands)} strands given")
        width = max(len(s.get(k, [])) for s in strands for k in ("cx", "sx", "cy", "sy"))
        width = max(width, 1)
        coeffs = np.zeros((len(strands), 4, width))
        for a, s in enumerate(strands):
            for b, k in enumerate(("cx", "sx", "cy", "sy")):
                row = s.get(k, [])
                coeffs[a, b, : len(row)] = row
        return cls(coeffs, tol=tol)


class DiffFunction:
    """``g_ij(t, theta)`` for an ordered pair of strands, with closed-form derivatives."""

    def __init__(self, system: StrandSystem, i: int, j: int):
        if i == j or not (1 <= i <= system.n and 1 <= j <= system.n):
            raise BraidContactError(f"invalid strand pair ({i}, {j})")
        self.system = system
        self.i, self.j = i, j
        self._coeffs = [tuple(map(float, row)) for row in
                        system.coeffs[i - 1] - system.coeffs[j - 1]]

    @property
    def pair(self) -> tuple[int, int]:
        return (self.i, self.j)

    def reversed(self) -> DiffFunction:
        return DiffFunction(self.system, self.j, self.i)

    def D(self, t, deriv: int = 0) -> np.ndarray:
        """``f_i - f_j`` and its t-derivatives."""
        s = self.system
        return s.position(self.i, t, deriv) - s.position(self.j, t, deriv)

    def __call__(self, t, theta):
        dx, dy = self.D(t)
        return dx * np.cos(TWO_PI * theta) + dy * np.sin(TWO_PI * theta)

    def jet(self, t: float) -> tuple[float, float, float, float, float, float]:
        """Scalar ``(Dx, Dy, Dx', Dy', Dx'', Dy'')`` at ``t``; the hot path of flow tracing."""
        cx, sx, cy, sy = self._coeffs
        dx = dy = px = py = qx = qy = 0.0
        for h in range(len(cx)):
            w = TWO_PI * h
            c, s = math.cos(w * t), math.sin(w * t)
            ex, ey = cx[h] * c + sx[h] * s, cy[h] * c + sy[h] * s
            dx += ex
            dy += ey
            px += w * (sx[h] * c - cx[h] * s)
            py += w * (sy[h] * c - cy[h] * s)
            qx -= w * w * ex
            qy -= w * w * ey
        return dx, dy, px, py, qx, qy

    def grad(self, t: float, theta: float) -> np.ndarray:
        c, s = math.cos(TWO_PI * theta), math.sin(TWO_PI * theta)
        dx, dy, px, py, _, _ = self.jet(t)
        return np.array([px * c + py * s, TWO_PI * (-dx * s + dy * c)])

    def hessian(self, t: float, theta: float) -> np.ndarray:
        c, s = math.cos(TWO_PI * theta), math.sin(TWO_PI * theta)
        dx, dy, px, py, qx, qy = self.jet(t)
        g_tt = qx * c + qy * s
        g_tth = TWO_PI * (-px * s + py * c)
        g_thth = -TWO_PI ** 2 * (dx * c + dy * s)
        return np.array([[g_tt, g_tth], [g_tth, g_thth]])


def closed_form_system() -> StrandSystem:
    """Two strands with ``f_1 - f_2 = (2 + cos 2 pi t, sin 2 pi t)``."""
    coeffs = np.zeros((2, 4, 2))
    coeffs[0, 0] = [2.0, 1.0]   # cx
    coeffs[0, 3] = [0.0, 1.0]   # sy
    return StrandSystem(coeffs)


def random_system(n: int, rng: np.random.Generator, harmonics: int = 2,
                  wobble: float = 0.35) -> StrandSystem:
    """Strands centred on a circle of radius 1 with random low-harmonic wobble.

    No genericity is guaranteed; see :func:`random_generic_system`.
    """
    coeffs = np.zeros((n, 4, harmonics + 1))
    for i in range(n):
        ang = TWO_PI * i / max(n, 1)
        coeffs[i, 0, 0] = np.cos(ang)
        coeffs[i, 2, 0] = np.sin(ang)
        for h in range(1, harmonics + 1):
            coeffs[i, :, h] = rng.normal(scale=wobble / h ** 2, size=4)
    return StrandSystem(coeffs, check=False)
