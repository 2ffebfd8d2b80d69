"""
Morse complex of a difference function and the generator inventory of a strand system.

Boundary coefficients count rigid flow lines between critical points of
adjacent index mod 2. For an index-1 point both descending branches are
traced (lines to index-0 points) and both ascending branches (lines from
index-2 points). Lines between index 2 and 0 come in 1-parameter families
and are not counted.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import BraidContactError, GeometryError
from ..gfp import dense_rank_mod_p
from .critical import CriticalPoint, critical_points, radial_profile
from .flow import FlowLine, trace_flow
from .strands import DEFAULT_TOLERANCES, DiffFunction, MorseTolerances, StrandSystem


@dataclass
class MorseComplex:
    pair: tuple[int, int]
    points: list[CriticalPoint]
    lines: list[FlowLine]
    # counts[k][a][b]: rigid lines from the a-th index-k point to the b-th index-(k-1) point
    counts: dict[int, np.ndarray]

    def by_index(self, k: int) -> list[CriticalPoint]:
        return [c for c in self.points if c.index == k]

    def boundary(self, k: int) -> np.ndarray:
        """Matrix of d_k over F_2, shape ``(#index k-1, #index k)``."""
        return (self.counts[k].T % 2).astype(np.int64)

    @property
    def d_squared_zero(self) -> bool:
        return not np.any((self.boundary(1) @ self.boundary(2)) % 2)

    @property
    def ranks(self) -> tuple[int, int, int]:
        c = [len(self.by_index(k)) for k in range(3)]
        r1 = dense_rank_mod_p(self.boundary(1).tolist(), 2) if c[0] and c[1] else 0
        r2 = dense_rank_mod_p(self.boundary(2).tolist(), 2) if c[1] and c[2] else 0
        return (c[0] - r1, c[1] - r1 - r2, c[2] - r2)

    def to_json(self) -> dict:
        return {
            "pair": list(self.pair),
            "critical_points": [c.to_json() for c in self.points],
            "flow_lines": [ln.to_json() for ln in self.lines],
            "endpoint_counts": {str(k): self.counts[k].tolist() for k in sorted(self.counts)},
            "d_squared_zero": self.d_squared_zero,
            "homology": list(self.ranks),
        }


def _position(points: list[CriticalPoint], target: CriticalPoint) -> int:
    for k, c in enumerate(points):
        if c is target:
            return k
    raise GeometryError("flow line ended at an unknown critical point")


def morse_complex(g: DiffFunction, q: int = 2,
                  tol: MorseTolerances = DEFAULT_TOLERANCES) -> MorseComplex:
    """Mod-2 Morse complex of ``g`` on the torus from traced rigid flow lines."""
    if q != 2:
        raise BraidContactError("flow lines carry no orientations here; only q = 2 is supported")
    points = critical_points(g, tol)
    idx = {k: [c for c in points if c.index == k] for k in range(3)}
    counts = {1: np.zeros((len(idx[1]), len(idx[0])), dtype=np.int64),
              2: np.zeros((len(idx[2]), len(idx[1])), dtype=np.int64)}
    lines = []
    for a, saddle in enumerate(idx[1]):
        for branch in (1, -1):
            down = trace_flow(g, saddle, branch, ascending=False, tol=tol, targets=points)
            if down.end.index != 0:
                raise GeometryError(
                    f"descending line from saddle {a} ends at an index-{down.end.index} point "
                    "(saddle connection; the function is not Morse-Smale)")
            counts[1][a, _position(idx[0], down.end)] += 1
            up = trace_flow(g, saddle, branch, ascending=True, tol=tol, targets=points)
            if up.end.index != 2:
                raise GeometryError(
                    f"ascending line from saddle {a} ends at an index-{up.end.index} point "
                    "(saddle connection; the function is not Morse-Smale)")
            counts[2][_position(idx[2], up.end), a] += 1
            lines.extend([down, up])
    mc = MorseComplex(g.pair, points, lines, counts)
    if not mc.d_squared_zero:
        raise GeometryError(f"Morse boundary of g_{g.i}{g.j} does not square to zero")
    return mc


def generator_inventory(system: StrandSystem,
                        tol: MorseTolerances = DEFAULT_TOLERANCES) -> dict[str, CriticalPoint]:
    """Label the critical points of every ``g_ij`` as braid DGA generators.

    For the ordered pair (i, j): ``a_i_j`` is the critical point over the
    minimum of ``|f_i - f_j|`` where ``g_ij > 0`` and ``b_i_j`` the one over the
    maximum where ``g_ij > 0``; ``a_j_i``, ``b_j_i`` are their partners with
    ``g_ij < 0``. This is a labelling convention only.
    """
    out: dict[str, CriticalPoint] = {}
    for i, j in system.pairs():
        profile = radial_profile(system, i, j, tol)
        if not profile.one_min_one_max:
            raise GeometryError(
                f"|f_{i} - f_{j}| has {len(profile.minima)} minima and "
                f"{len(profile.maxima)} maxima; need exactly one of each")
        for c in critical_points(system.diff(i, j), tol):
            first, second = (i, j) if c.value > 0 else (j, i)
            letter = "a" if c.over == "min" else "b"
            out[f"{letter}_{first}_{second}"] = c
    return dict(sorted(out.items(), key=lambda kv: (kv[0][0], kv[1].pair, kv[0])))


@dataclass
class TreeVertex:
    """Corner or trivalent vertex of a gradient flow tree."""

    location: tuple[float, float]
    critical: CriticalPoint | None = None  # set for valence-1 and valence-2 corners


@dataclass
class TreeEdge:
    tail: int
    head: int
    sheets: tuple[int, int]  # (i, j): the edge follows a flow line of g_ij


@dataclass
class FlowTree:
    """A gradient flow tree: a tree on the torus whose edges follow flows of the g_ij.

    Only the combinatorial shape is checked (1, 2 and 3-valent vertices, a
    single source corner, corners at critical points, sheet labels compatible
    at trivalent vertices). Rigid trees are not enumerated.
    """

    vertices: list[TreeVertex] = field(default_factory=list)
    edges: list[TreeEdge] = field(default_factory=list)

    def valence(self, v: int) -> int:
        return sum((e.tail == v) + (e.head == v) for e in self.edges)

    def sources(self) -> list[int]:
        """Corners with every incident edge pointing away."""
        return [v for v in range(len(self.vertices))
                if self.valence(v) in (1, 2) and all(e.tail == v for e in self.edges
                                                     if v in (e.tail, e.head))]

    def check_shape(self) -> list[str]:
        problems = []
        nv = len(self.vertices)
        if nv and len(self.edges) != nv - 1:
            problems.append("not a tree: |E| != |V| - 1")
        for v in range(nv):
            val = self.valence(v)
            if val not in (1, 2, 3):
                problems.append(f"vertex {v} has valence {val}")
            if val in (1, 2) and self.vertices[v].critical is None:
                problems.append(f"corner {v} is not at a critical point")
            if val == 3:
                ins = [e for e in self.edges if e.head == v]
                outs = [e for e in self.edges if e.tail == v]
                if len(ins) != 1 or len(outs) != 2:
                    problems.append(f"trivalent vertex {v} needs one incoming and two outgoing edges")
                else:
                    i, j = ins[0].sheets
                    labels = sorted(e.sheets for e in outs)
                    ks = {e.sheets[1] for e in outs if e.sheets[0] == i}
                    if len(ks) != 1 or sorted([(i, *ks), (*ks, j)]) != labels:
                        problems.append(f"trivalent vertex {v} outgoing labels must be g_ik and g_kj")
        if len(self.sources()) != 1:
            problems.append("need exactly one source corner")
        return problems
