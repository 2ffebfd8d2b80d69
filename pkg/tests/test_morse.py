import math
from dataclasses import replace

import numpy as np
import pytest

from braidcontact.errors import (
    BraidContactError, DegenerateCriticalPointError, FlowError, GeometryError, SeparationError,
)
from braidcontact.invariants import make_rng
from braidcontact.morse import (
    DEFAULT_TOLERANCES, FlowTree, StrandSystem, TreeEdge, TreeVertex, closed_form_system,
    critical_points, generator_inventory, is_generic, morse_complex, radial_profile,
    random_generic_system, trace_flow, unstable_directions,
)

from oracles import CLOSED_FORM_POINTS, CLOSED_FORM_R2


def _key(c):
    return (round(c.t, 9) % 1.0, round(c.theta, 9) % 1.0)


@pytest.fixture(scope="module")
def closed():
    return closed_form_system()


@pytest.fixture(scope="module")
def generic3():
    return random_generic_system(3, make_rng(5))


def test_closed_form_radial_profile(closed):
    prof = radial_profile(closed, 1, 2)
    assert prof.one_min_one_max
    (mn,), (mx,) = prof.minima, prof.maxima
    assert mn.t == pytest.approx(0.5, abs=1e-12) and mn.r == pytest.approx(1.0, abs=1e-12)
    assert mx.t == pytest.approx(0.0, abs=1e-12) and mx.r == pytest.approx(3.0, abs=1e-12)
    assert mn.r2 == pytest.approx(CLOSED_FORM_R2["min"], rel=1e-9)
    assert mx.r2 == pytest.approx(CLOSED_FORM_R2["max"], rel=1e-9)


def test_closed_form_critical_points(closed):
    pts = critical_points(closed.diff(1, 2))
    assert {_key(c): (round(c.value, 9), c.index) for c in pts} == CLOSED_FORM_POINTS
    assert all(c.residual < 1e-9 for c in pts)


def test_hessian_determinant_formula(closed):
    # det Hess g = -(2 pi)^2 r r'' at every critical point
    g = closed.diff(1, 2)
    prof = radial_profile(closed, 1, 2)
    r2 = {e.kind: (e.r, e.r2) for e in prof.extrema}
    for c in critical_points(g):
        r, rpp = r2[c.over]
        assert np.linalg.det(g.hessian(c.t, c.theta)) == pytest.approx(
            -(2 * math.pi) ** 2 * r * rpp, rel=1e-9)


def test_gradient_matches_finite_differences(generic3):
    g = generic3.diff(1, 3)
    t, th, h = 0.137, 0.612, 1e-6
    fd = np.array([(g(t + h, th) - g(t - h, th)) / (2 * h), (g(t, th + h) - g(t, th - h)) / (2 * h)])
    assert np.allclose(g.grad(t, th), fd, atol=1e-6)
    H = g.hessian(t, th)
    fd_row = (g.grad(t + h, th) - g.grad(t - h, th)) / (2 * h)
    assert np.allclose(H[0], fd_row, atol=1e-5)


def test_reversed_pair_swaps_indices(generic3):
    g = generic3.diff(1, 2)
    rev = g.reversed()
    fwd = {_key(c): c.index for c in critical_points(g)}
    back = {_key(c): c.index for c in critical_points(rev)}
    assert fwd.keys() == back.keys()
    assert all(back[k] == 2 - fwd[k] for k in fwd)


def test_morse_complex_closed_form(closed):
    mc = morse_complex(closed.diff(1, 2))
    assert mc.d_squared_zero and mc.ranks == (1, 2, 1)
    assert len(mc.lines) == 8
    # every saddle reaches the minimum twice and the maximum twice
    assert mc.counts[1].tolist() == [[2], [2]]
    assert mc.counts[2].tolist() == [[2, 2]]


def test_flow_lines_are_monotone_and_end_at_the_right_index(closed):
    g = closed.diff(1, 2)
    pts = critical_points(g)
    saddle = next(c for c in pts if c.index == 1)
    down = trace_flow(g, saddle, 1, targets=pts)
    up = trace_flow(g, saddle, -1, ascending=True, targets=pts)
    assert down.end.index == 0 and np.all(np.diff(down.values) <= 1e-12)
    assert up.end.index == 2 and np.all(np.diff(up.values) >= -1e-12)
    with pytest.raises(FlowError):
        trace_flow(g, saddle, 0.3, targets=pts)  # one-dimensional manifold: branch must be +-1


def test_flow_from_extrema(closed):
    g = closed.diff(1, 2)
    pts = critical_points(g)
    minimum = next(c for c in pts if c.index == 0)
    maximum = next(c for c in pts if c.index == 2)
    with pytest.raises(FlowError):
        trace_flow(g, minimum, targets=pts)  # nothing flows down out of a minimum
    with pytest.raises(FlowError):
        trace_flow(g, maximum, ascending=True, targets=pts)
    assert len(unstable_directions(g, minimum, ascending=True)) == 2
    line = trace_flow(g, minimum, 0.1, ascending=True, targets=pts)
    assert line.end.index in (1, 2)


def test_step_and_sampling_invariance(generic3):
    g = generic3.diff(2, 3)
    base = morse_complex(g)
    fine = replace(DEFAULT_TOLERANCES, flow_error=DEFAULT_TOLERANCES.flow_error / 2,
                   samples=2 * DEFAULT_TOLERANCES.samples)
    other = morse_complex(g, tol=fine)
    assert [_key(c) for c in base.points] == [_key(c) for c in other.points]
    for k in (1, 2):
        assert base.counts[k].tolist() == other.counts[k].tolist()


def test_only_mod_two_complex():
    with pytest.raises(BraidContactError):
        morse_complex(closed_form_system().diff(1, 2), q=3)


def test_inventory(generic3):
    inv = generator_inventory(generic3)
    assert len(inv) == 12
    for name, c in inv.items():
        letter, i, j = name.split("_")
        i, j = int(i), int(j)
        assert c.over == ("min" if letter == "a" else "max")
        # value of g_ij at the labelled point is positive
        g_val = generic3.diff(i, j)(c.t, c.theta)
        assert g_val > 0
        # points are stored for g_ij with i < j; g_ji = -g_ij has complementary index
        index = c.index if c.pair == (i, j) else 2 - c.index
        assert index == {"a": 1, "b": 2}[letter]


def test_inventory_sizes():
    assert generator_inventory(closed_form_system()).keys() == {"a_1_2", "a_2_1", "b_1_2", "b_2_1"}
    single = StrandSystem(np.zeros((1, 4, 2)))
    assert generator_inventory(single) == {}


def test_separation_error():
    coeffs = np.zeros((2, 4, 2))
    coeffs[0, 0, 1] = 1.0  # f_1 - f_2 = (cos 2 pi t, 0) vanishes at t = 1/4
    with pytest.raises(SeparationError):
        StrandSystem(coeffs)


def test_degenerate_profile():
    coeffs = np.zeros((2, 4, 2))
    coeffs[0, 0, 1], coeffs[0, 3, 1] = 1.0, 1.0  # a circle: constant distance
    system = StrandSystem(coeffs)
    with pytest.raises(DegenerateCriticalPointError):
        radial_profile(system, 1, 2)
    assert not is_generic(system)


def test_non_generic_system_is_rejected_by_inventory():
    coeffs = np.zeros((2, 4, 3))
    coeffs[0, 0, 0] = 3.0
    coeffs[0, 0, 2] = 1.0  # r has two minima and two maxima
    system = StrandSystem(coeffs)
    assert not radial_profile(system, 1, 2).one_min_one_max
    with pytest.raises(GeometryError):
        generator_inventory(system)


def test_system_json_round_trip(generic3):
    back = StrandSystem.from_json(generic3.to_json())
    assert np.array_equal(back.coeffs, generic3.coeffs)
    with pytest.raises(BraidContactError):
        StrandSystem.from_json({"n": 3, "strands": []})


def test_random_generic_system_is_seeded():
    a = random_generic_system(3, make_rng(9))
    b = random_generic_system(3, make_rng(9))
    assert np.array_equal(a.coeffs, b.coeffs)


def test_flow_tree_shape_checks():
    pts = critical_points(closed_form_system().diff(1, 2))
    ok = FlowTree([TreeVertex((0, 0), pts[0]), TreeVertex((0.5, 0.5), pts[1])],
                  [TreeEdge(0, 1, (1, 2))])
    assert ok.check_shape() == []
    y = FlowTree([TreeVertex((0, 0), pts[0]), TreeVertex((0.2, 0.2)),
                  TreeVertex((0.4, 0.4), pts[1]), TreeVertex((0.6, 0.6), pts[2])],
                 [TreeEdge(0, 1, (1, 3)), TreeEdge(1, 2, (1, 2)), TreeEdge(1, 3, (2, 3))])
    assert y.check_shape() == []
    bad = FlowTree([TreeVertex((0, 0)), TreeVertex((0.2, 0.2), pts[1])], [TreeEdge(0, 1, (1, 2))])
    assert "corner 0 is not at a critical point" in bad.check_shape()
