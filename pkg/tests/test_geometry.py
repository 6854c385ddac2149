import math
from fractions import Fraction as F

import numpy as np
import pytest

from dioecy import (
    BasinLabel,
    FitnessParams,
    NotApplicable,
    StabilityClass,
    classify_square,
    evolve,
    iterate,
    male_update,
    odds_jacobian,
    quadrant_fixed_points,
    reduce_params,
    scan_basins,
    stable_boundary,
    unstable_curve,
)
from dioecy.geometry import grid_coordinates, invariance_defect, polyline_distance
from oracles import W_exact

SYM = FitnessParams(1.0, 1, 4, 1, 1, 4)
ROW1 = FitnessParams(3.0, 1, 10, 2, 1, 10)


def test_basin_equal_fitness():
    raster = scan_basins(FitnessParams(1.0, 1, 1, 1, 1, 1), 11)
    assert raster.labels[0, 0] == BasinLabel.TO_Z0
    rest = raster.labels.copy()
    rest[0, 0] = BasinLabel.TO_Z3
    assert np.all(rest == BasinLabel.TO_Z3)


def test_basin_symmetric_split_matches_rational_count():
    n = 21
    below = sum(
        1
        for j in range(n)
        for i in range(n)
        if W_exact((1, 1, 4, 1, 1, 4), F(i, n - 1), F(j, n - 1))[0] < F(2, 3)
    )
    assert below == 276
    raster = scan_basins(SYM, n)
    assert np.count_nonzero(raster.labels == BasinLabel.TO_Z0) == below
    assert np.count_nonzero(raster.labels == BasinLabel.TO_Z3) == n * n - below
    # per cell, not just in total
    for j, y in enumerate(grid_coordinates(n)):
        for i, x in enumerate(grid_coordinates(n)):
            want = BasinLabel.TO_Z0 if male_update(SYM, (x, y)) < 2 / 3 else BasinLabel.TO_Z3
            assert raster.labels[j, i] == want


@pytest.mark.parametrize(
    "params", [(1.0, 1, 1, 1, 1, 1), (3.0, 1, 10, 2, 1, 10), (1.0, 1, 0, 1, 1, 1)]
)
def test_basin_minimal_grid(params):
    p = FitnessParams(*params)
    raster = scan_basins(p, 2)
    assert raster.labels.shape == (2, 2)
    # both edge corners and (1, 1) land on (1, 1) in one step
    for j, i in ((0, 1), (1, 0), (1, 1)):
        assert raster.labels[j, i] == BasinLabel.TO_Z3
    corner = raster.labels[0, 0]
    if p.c == 0:
        assert corner == BasinLabel.UNRESOLVED  # 0/0 at the origin
    else:
        assert corner == BasinLabel.TO_Z0


def test_basin_other_limit_is_indexed():
    # b = 0 males and alpha = 0 females: (1, 0) is a boundary equilibrium
    p = FitnessParams(1.0, 0, 1, 0, 1, 1)
    raster = scan_basins(p, 5)
    assert raster.labels.dtype == np.int8
    others = raster.labels == BasinLabel.TO_OTHER
    assert np.all(raster.other_index[others] >= 0)
    assert np.all(raster.other_index[~others] == -1)


def _label_changes(labels):
    n = labels.shape[0]
    mask = np.zeros_like(labels, dtype=bool)
    for dj, di in ((0, 1), (1, 0)):
        diff = labels[: n - dj, : n - di] != labels[dj:, di:]
        mask[: n - dj, : n - di] |= diff
        mask[dj:, di:] |= diff
    return mask


@pytest.mark.parametrize("params", [(1.0, 1, 4, 1, 1, 4), (3.0, 1, 10, 2, 1, 10)])
def test_basin_labels_stable_under_refinement(params):
    p = FitnessParams(*params)
    n = 11
    coarse = scan_basins(p, n)
    fine = scan_basins(p, 2 * n + 1)
    xs_c = np.asarray(grid_coordinates(n))
    xs_f = np.asarray(grid_coordinates(2 * n + 1))
    change = _label_changes(coarse.labels)
    cj, ci = np.nonzero(change)
    change_pts = np.stack([xs_c[ci], xs_c[cj]], axis=1)
    for j, y in enumerate(xs_f):
        for i, x in enumerate(xs_f):
            i0 = int(np.argmin(np.abs(xs_c - x)))
            j0 = int(np.argmin(np.abs(xs_c - y)))
            if len(change_pts) and np.min(np.max(np.abs(change_pts - [x, y]), axis=1)) <= 2 / n:
                continue
            assert fine.labels[j, i] == coarse.labels[j0, i0]


def test_basin_parallel_matches_serial():
    serial = scan_basins(ROW1, 9)
    parallel = scan_basins(ROW1, 9, workers=2)
    assert np.array_equal(serial.labels, parallel.labels)


def test_unstable_curve_row_one_saddle():
    anchor = classify_square(ROW1, "z2")
    assert anchor.stability is StabilityClass.SADDLE
    h = 1e-6
    curve = unstable_curve(ROW1, anchor, steps=30, h=h)
    assert len(curve.branches) == 2 and all(len(b) > 1 for b in curve.branches)
    for br in curve.branches:
        assert max(abs(br[0][0] - anchor.location[0]), abs(br[0][1] - anchor.location[1])) <= 1e-10
    lam = abs(anchor.eigen.lambda1)
    m = curve.seed_counts[0]
    for br in curve.branches:
        body = br[1:]
        for idx, z in enumerate(body[:-m]):
            k = idx // m
            assert polyline_distance(evolve(ROW1, z), curve.branches) < 10 * h * lam ** (k + 1)
    assert invariance_defect(ROW1, curve) <= 1e-3
    # leaves along the eigenvector of the dominant eigenvalue (odds space)
    r = reduce_params(ROW1)
    q0 = anchor.quadrant_location
    J = np.array(odds_jacobian(r, q0), dtype=float)
    first = curve.branches[0][1]
    s = first[0] / (1 - first[0]) - float(q0[0])
    t = first[1] / (1 - first[1]) - float(q0[1])
    v = np.array([s, t]) / math.hypot(s, t)
    assert np.allclose(J @ v, lam * v, atol=1e-4)
    assert all(e is not None and e > 0 for e in curve.escape_steps)


def test_unstable_curve_from_origin_saddle():
    p = FitnessParams(2.0, 1, 2, 1, 3, 2)  # B + D = 1/2 + 3/2 = 2
    anchor = classify_square(p, "z0")
    assert anchor.stability is StabilityClass.SADDLE
    r = reduce_params(p)
    J = np.array(odds_jacobian(r, (0.0, 0.0)), dtype=float)
    col = np.array([float(r.B), float(r.D)])
    assert np.allclose(J @ col, float(r.B + r.D) * col)
    curve = unstable_curve(p, anchor, steps=20)
    plus, minus = curve.branches
    assert len(plus) > 1 and curve.terminations[1] == "left_domain" and len(minus) == 1
    x, y = plus[1]
    s, t = x / (1 - x), y / (1 - y)
    assert s / t == pytest.approx(float(r.B / r.D), rel=1e-6)
    assert curve.terminations[0] in ("to_infinity", "steps_exhausted")


def test_unstable_curve_rejects_attractor_and_outside_repeller():
    anchor = classify_square(ROW1, "z0")
    with pytest.raises(NotApplicable) as info:
        unstable_curve(ROW1, anchor)
    assert info.value.classification is StabilityClass.ATTRACTOR
    # table row 3: P is a repeller but has a negative odds coordinate
    _, P = quadrant_fixed_points(reduce_params(FitnessParams(9.0, 5, 1, 2, 0.8, 1)))
    assert P.stability is StabilityClass.REPELLER
    with pytest.raises(NotApplicable):
        unstable_curve(FitnessParams(9.0, 5, 1, 2, 0.8, 1), P)


def test_stable_boundary_symmetric_separatrix():
    anchor = classify_square(SYM, "z2")
    curve = stable_boundary(SYM, anchor, rays=16)
    pts = [z for br in curve.branches for z in br[1:]]
    assert len(pts) >= 12
    for z in pts:
        assert abs(male_update(SYM, z) - 2 / 3) <= 1e-6
    # ordered away from the anchor along each branch
    for arc in curve.arcs:
        assert all(u <= v for u, v in zip(arc, arc[1:]))


def test_stable_boundary_requires_saddle():
    ones = FitnessParams(1.0, 1, 1, 1, 1, 1)
    with pytest.raises(NotApplicable):
        stable_boundary(ones, classify_square(ones, "z2"))
    with pytest.raises(NotApplicable):
        stable_boundary(ROW1, classify_square(ROW1, "z0"))


def test_stable_boundary_of_corner_saddle():
    ones = FitnessParams(1.0, 1, 1, 1, 1, 1)
    anchor = classify_square(ones, "z0")
    assert anchor.stability is StabilityClass.SADDLE
    curve = stable_boundary(ones, anchor, rays=8)
    # only the origin itself reaches the origin, so no transversal brackets
    for z in [z for br in curve.branches for z in br[1:]]:
        tr = iterate(ones, z)
        assert tr.verdict.label != "z3" or max(z) <= 1e-10
    assert len(curve.skipped_rays) == 8


def test_stable_boundary_asymmetric_saddle():
    anchor = classify_square(ROW1, "z2")
    curve = stable_boundary(ROW1, anchor, rays=12)
    pts = [z for br in curve.branches for z in br[1:]]
    assert pts
    for z in pts:
        # points on the boundary stay near the saddle for a long while
        tr = iterate(ROW1, z, max_iter=30)
        assert max(abs(tr.states[-1][0] - anchor.location[0]), abs(tr.states[-1][1] - anchor.location[1])) < 1e-2
