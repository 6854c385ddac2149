"""Basins of attraction and invariant curves of saddles and repellers.

Basins are rasters of orbit verdicts on a regular grid of starting
points. Unstable curves are grown by pushing short eigenvector segments
forward with the odds map; stable curves of saddles are located as the
boundary between two basins by bisection.
"""
from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .dynamics import DEFAULT_MAX_ITER, VerdictKind, iterate, known_fixed_points
from .equilibria import FixedPointReport, StabilityClass, odds_jacobian
from .errors import NotApplicable, Overflow, UndefinedImage
from .model import (
    FitnessParams,
    QuadrantState,
    SquareState,
    evolve,
    odds_map,
    quadrant_to_square,
    reduce_params,
)
from .numerics import DEFAULT_TOLERANCE, Backend, Tolerance

__all__ = [
    "BasinLabel",
    "BasinRaster",
    "scan_basins",
    "grid_coordinates",
    "ManifoldCurve",
    "unstable_curve",
    "stable_boundary",
    "polyline_distance",
    "invariance_defect",
]

ESCAPE_RADIUS = 0.05


class BasinLabel(enum.IntEnum):
    TO_Z0 = 0
    TO_Z3 = 1
    TO_Z2 = 2
    TO_OTHER = 3
    UNRESOLVED = 4


@dataclass(frozen=True)
class BasinRaster:
    """Orbit verdicts on an ``n x n`` grid of starting points.

    ``labels[j, i]`` belongs to the start ``(xs[i], ys[j])``, so rows run
    upward in y. Grid nodes include the edges of the square:
    ``xs = ys = k / (n - 1)``. For ``TO_OTHER`` cells ``other_index[j, i]``
    points into ``others`` (distinct limits that are not z0, z2 or z3);
    elsewhere it is -1.
    """

    resolution: int
    labels: np.ndarray
    other_index: np.ndarray
    others: tuple
    params: FitnessParams
    tol: Tolerance
    fixed_points: tuple = field(repr=False, default=())

    def fraction(self, label: BasinLabel) -> float:
        return float(np.count_nonzero(self.labels == label)) / self.labels.size


def grid_coordinates(n: int, backend: Backend = Backend.FLOAT) -> list:
    if n < 2:
        raise ValueError("grid size must be at least 2")
    if backend is Backend.RATIONAL:
        return [Fraction(k, n - 1) for k in range(n)]
    return [k / (n - 1) for k in range(n)]


def _label_one(args):
    p, z, tol, fixed, max_iter = args
    try:
        traj = iterate(p, z, max_iter, tol, fixed_points=fixed)
    except UndefinedImage:
        return None
    if traj.verdict.kind is not VerdictKind.CONVERGED:
        return None
    return traj.verdict.label, traj.verdict.limit


def scan_basins(
    p: FitnessParams,
    n: int,
    tol: Tolerance = DEFAULT_TOLERANCE,
    *,
    max_iter: int = DEFAULT_MAX_ITER,
    workers: int | None = None,
) -> BasinRaster:
    """Label every grid node by the limit of its orbit.

    ``workers > 1`` spreads rows over a process pool; results do not
    depend on it.
    """
    coords = grid_coordinates(n, p.backend)
    fixed = known_fixed_points(p, tol)
    jobs = [(p, SquareState(x, y), tol, fixed, max_iter) for y in coords for x in coords]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_label_one, jobs, chunksize=max(1, n)))
    else:
        results = [_label_one(job) for job in jobs]

    labels = np.full((n, n), BasinLabel.UNRESOLVED, dtype=np.int8)
    other_index = np.full((n, n), -1, dtype=np.int32)
    others: list = []
    named = {"z0": BasinLabel.TO_Z0, "z3": BasinLabel.TO_Z3, "z2": BasinLabel.TO_Z2}
    for k, res in enumerate(results):
        j, i = divmod(k, n)
        if res is None:
            continue
        label, limit = res
        if label in named:
            labels[j, i] = named[label]
            continue
        labels[j, i] = BasinLabel.TO_OTHER
        for idx, q in enumerate(others):
            if max(abs(q[0] - limit[0]), abs(q[1] - limit[1])) <= tol.eps_conv:
                break
        else:
            idx = len(others)
            others.append(limit)
        other_index[j, i] = idx
    return BasinRaster(n, labels, other_index, tuple(others), p, tol, tuple(fixed))


@dataclass(frozen=True)
class ManifoldCurve:
    """Polyline approximation of an invariant curve through a fixed point.

    ``branches`` holds one polyline per side of the anchor, each starting
    at the anchor, in square coordinates; ``arcs`` the matching cumulative
    chord lengths. ``terminations`` says why each branch ended
    (``"to_infinity"`` means it ran toward (1, 1)). For unstable curves
    ``escape_steps`` gives, per branch, the first iterate of the seed that
    leaves the odds-space ball of radius ``ESCAPE_RADIUS`` around the
    anchor (None if it never did). For stable curves ``skipped_rays``
    lists transversals with no change of verdict.
    """

    anchor: FixedPointReport
    kind: str
    branches: tuple
    arcs: tuple
    terminations: tuple = ()
    escape_steps: tuple = ()
    skipped_rays: tuple = ()
    seed_counts: tuple = ()

    @property
    def points(self) -> list:
        out = []
        for br in self.branches:
            out.extend(br)
        return out

    @property
    def arc_parameter(self) -> list:
        out = []
        for arc in self.arcs:
            out.extend(arc)
        return out


def _arc(points):
    acc = [0.0]
    for u, v in zip(points, points[1:]):
        acc.append(acc[-1] + math.hypot(float(v[0]) - float(u[0]), float(v[1]) - float(u[1])))
    return acc


def _segment_distance(z, u, v):
    px, py = float(z[0]), float(z[1])
    ux, uy = float(u[0]), float(u[1])
    dx, dy = float(v[0]) - ux, float(v[1]) - uy
    L = dx * dx + dy * dy
    t = 0.0 if L == 0.0 else min(1.0, max(0.0, ((px - ux) * dx + (py - uy) * dy) / L))
    cx, cy = ux + t * dx, uy + t * dy
    return max(abs(px - cx), abs(py - cy))


def polyline_distance(z, polylines) -> float:
    """Max-norm distance from ``z`` to the nearest piece of any polyline."""
    best = math.inf
    for pl in polylines:
        if len(pl) == 1:
            best = min(best, max(abs(float(z[0]) - float(pl[0][0])), abs(float(z[1]) - float(pl[0][1]))))
        for u, v in zip(pl, pl[1:]):
            best = min(best, _segment_distance(z, u, v))
    return best


def _require(anchor: FixedPointReport, allowed):
    if anchor.stability not in allowed:
        cls = anchor.stability.value if anchor.stability else "unclassified"
        raise NotApplicable(
            f"{anchor.label} is {cls}; need one of {', '.join(a.value for a in allowed)}",
            classification=anchor.stability,
        )
    if anchor.quadrant_location is None and anchor.label not in ("O", "P"):
        raise NotApplicable(f"{anchor.label} has no odds coordinates", anchor.stability)


def _square_anchor(anchor: FixedPointReport) -> FixedPointReport:
    """Give an odds-space report (O or P) its square location."""
    if anchor.label in ("O", "P"):
        return replace(
            anchor,
            location=quadrant_to_square(anchor.location),
            quadrant_location=anchor.location,
            label="z0" if anchor.label == "O" else "z2",
        )
    return anchor


def _eigvec(J, lam):
    (j11, j12), (j21, j22) = J
    v1 = (j12, lam - j11)
    v2 = (lam - j22, j21)
    v = v1 if math.hypot(*v1) >= math.hypot(*v2) else v2
    norm = math.hypot(*v)
    if norm == 0.0:
        # J is a multiple of the identity; any direction works
        return (1.0, 0.0)
    return (v[0] / norm, v[1] / norm)


def _float_matrix(J):
    return tuple(tuple(float(v) for v in row) for row in J)


def unstable_curve(
    p: FitnessParams,
    anchor: FixedPointReport,
    steps: int = 30,
    h: float = 1e-6,
    tol: Tolerance = DEFAULT_TOLERANCE,
    *,
    per_domain: int = 8,
) -> ManifoldCurve:
    """Grow the unstable curve of a saddle or repeller.

    ``per_domain`` seeds are spaced geometrically between ``h`` and
    ``h * |lam|`` along the unstable eigenvector (``lam`` the eigenvalue
    of largest modulus) on each side of the anchor, and all of them are
    pushed forward ``steps`` times with the odds map. For negative ``lam``
    the second iterate is used so each branch stays on its own side. A
    branch ends early when a point passes ``tol.big`` (the orbit runs to
    (1, 1)) or leaves the closed quadrant.

    Raises :class:`NotApplicable` for attractors, non-hyperbolic points,
    complex eigenvalues or anchors outside the closed quadrant.
    """
    _require(anchor, (StabilityClass.SADDLE, StabilityClass.REPELLER))
    anchor = _square_anchor(anchor)
    r = reduce_params(p)
    r_float = type(r)(*(float(v) for v in r))
    q0 = anchor.quadrant_location
    q0 = QuadrantState(float(q0[0]), float(q0[1]))
    if q0.s < 0 or q0.t < 0:
        raise NotApplicable(f"{anchor.label} lies outside the closed quadrant", anchor.stability)
    eig = anchor.eigen
    lam = eig.dominant()
    if lam.imag != 0.0:
        raise NotApplicable(f"{anchor.label} has complex eigenvalues", anchor.stability)
    lam = lam.real
    J = _float_matrix(odds_jacobian(r_float, q0))
    v = _eigvec(J, lam)
    power = 1 if lam > 0 else 2
    factor = abs(lam) ** power
    fracs = [factor ** (k / per_domain) for k in range(per_domain)]
    anchor_sq = quadrant_to_square(q0)

    def push(q):
        for _ in range(power):
            q = odds_map(r_float, q, big=tol.big)
        return q

    branches, arcs, ends, escapes = [], [], [], []
    for sign in (1.0, -1.0):
        seeds = [QuadrantState(q0.s + sign * h * f * v[0], q0.t + sign * h * f * v[1]) for f in fracs]
        pts = [anchor_sq]
        end = "steps_exhausted"
        escape = None
        if any(q.s < 0 or q.t < 0 for q in seeds):
            branches.append(pts)
            arcs.append(_arc(pts))
            ends.append("left_domain")
            escapes.append(None)
            continue
        level = seeds
        for k in range(steps + 1):
            pts.extend(quadrant_to_square(q) for q in level)
            if escape is None and math.hypot(level[0].s - q0.s, level[0].t - q0.t) > ESCAPE_RADIUS:
                escape = k * power
            if k == steps:
                break
            try:
                nxt = [push(q) for q in level]
            except Overflow:
                end = "to_infinity"
                break
            if any(q.s < 0 or q.t < 0 for q in nxt):
                end = "left_domain"
                break
            level = nxt
        branches.append(pts)
        arcs.append(_arc(pts))
        ends.append(end)
        escapes.append(escape)
    return ManifoldCurve(
        anchor,
        "unstable",
        tuple(tuple(b) for b in branches),
        tuple(tuple(a) for a in arcs),
        terminations=tuple(ends),
        escape_steps=tuple(escapes),
        seed_counts=(per_domain, per_domain),
    )


def _square_eigvecs(anchor, r_float):
    q0 = anchor.quadrant_location
    s, t = float(q0[0]), float(q0[1])
    J = _float_matrix(odds_jacobian(r_float, (s, t)))
    l1, l2 = anchor.eigen.lambda1.real, anchor.eigen.lambda2.real
    lam_s, lam_u = (l1, l2) if abs(l1) < abs(l2) else (l2, l1)
    # tangent map of s -> s/(1+s) is diagonal
    scale = (1.0 / (1.0 + s) ** 2, 1.0 / (1.0 + t) ** 2)

    def to_sq(v):
        w = (v[0] * scale[0], v[1] * scale[1])
        n = math.hypot(*w)
        return (w[0] / n, w[1] / n)

    return to_sq(_eigvec(J, lam_s)), to_sq(_eigvec(J, lam_u))


def _clip_line(origin, direction):
    """Parameter interval of ``origin + sigma * direction`` inside the unit square."""
    lo, hi = -math.inf, math.inf
    for o, d in zip(origin, direction):
        if d == 0.0:
            if not 0.0 <= o <= 1.0:
                return None
            continue
        a, b = (0.0 - o) / d, (1.0 - o) / d
        lo, hi = max(lo, min(a, b)), min(hi, max(a, b))
    return (lo, hi) if lo <= hi else None


def stable_boundary(
    p: FitnessParams,
    anchor: FixedPointReport,
    rays: int = 16,
    tol: Tolerance = DEFAULT_TOLERANCE,
    *,
    max_iter: int = DEFAULT_MAX_ITER,
) -> ManifoldCurve:
    """Locate the stable curve of a saddle as a basin boundary.

    The square is crossed by ``rays`` parallel transversals running along
    the unstable direction, offset along the stable direction of the
    anchor. On each transversal whose two ends go to different limits the
    verdict change is bracketed by bisection down to ``tol.eps_conv``
    (or until a midpoint's orbit settles on the anchor itself). Points are
    returned in two branches by the sign of their offset, each ordered
    away from the anchor. Transversals without a change of verdict are
    listed in ``skipped_rays``.
    """
    _require(anchor, (StabilityClass.SADDLE,))
    anchor = _square_anchor(anchor)
    if anchor.eigen is None or not anchor.eigen.is_real:
        raise NotApplicable(f"{anchor.label} has no real eigenvalues", anchor.stability)
    pf = p.to_backend(Backend.FLOAT)
    r_float = reduce_params(pf)
    e_s, e_u = _square_eigvecs(anchor, r_float)
    z_a = (float(anchor.location[0]), float(anchor.location[1]))
    fixed = known_fixed_points(pf, tol)

    def verdict(sigma, origin):
        z = (origin[0] + sigma * e_u[0], origin[1] + sigma * e_u[1])
        z = SquareState(min(1.0, max(0.0, z[0])), min(1.0, max(0.0, z[1])))
        try:
            tr = iterate(pf, z, max_iter, tol, fixed_points=fixed)
        except UndefinedImage:
            return "undefined", z
        if tr.verdict.kind is not VerdictKind.CONVERGED:
            return "unresolved", z
        return tr.verdict.label or "raw", z

    # offsets along e_s for which the transversal meets the square
    det = e_s[0] * e_u[1] - e_s[1] * e_u[0]
    taus = []
    for cx, cy in ((0, 0), (1, 0), (0, 1), (1, 1)):
        dx, dy = cx - z_a[0], cy - z_a[1]
        taus.append((dx * e_u[1] - dy * e_u[0]) / det)
    tau_lo, tau_hi = min(taus), max(taus)
    width = tau_hi - tau_lo
    offsets = [tau_lo + (k + 0.5) * width / rays for k in range(rays)]

    neg, pos, skipped = [], [], []
    for k, tau in enumerate(offsets):
        origin = (z_a[0] + tau * e_s[0], z_a[1] + tau * e_s[1])
        span = _clip_line(origin, e_u)
        if span is None:
            skipped.append(k)
            continue
        lo, hi = span
        v_lo, _ = verdict(lo, origin)
        v_hi, _ = verdict(hi, origin)
        if v_lo == v_hi or "undefined" in (v_lo, v_hi):
            skipped.append(k)
            continue
        point = None
        while hi - lo > tol.eps_conv:
            mid = 0.5 * (lo + hi)
            v_mid, z_mid = verdict(mid, origin)
            if v_mid == anchor.label:
                point = z_mid
                break
            if v_mid == v_lo:
                lo = mid
            else:
                hi = mid
        if point is None:
            _, point = verdict(0.5 * (lo + hi), origin)
        (pos if tau >= 0 else neg).append((abs(tau), point))

    anchor_sq = SquareState(*z_a)
    branches = []
    for side in (pos, neg):
        side.sort(key=lambda item: item[0])
        branches.append(tuple([anchor_sq] + [pt for _, pt in side]))
    return ManifoldCurve(
        anchor,
        "stable",
        tuple(branches),
        tuple(tuple(_arc(b)) for b in branches),
        terminations=("rays_exhausted", "rays_exhausted"),
        skipped_rays=tuple(skipped),
    )


def invariance_defect(p: FitnessParams, curve: ManifoldCurve, *, skip_tail: int | None = None) -> float:
    """Largest distance from the image of a curve vertex to the curve.

    The last ``skip_tail`` vertices of each branch (default: one seed
    generation) are left out, since their images lie beyond the computed
    piece.
    """
    pf = p.to_backend(Backend.FLOAT)
    worst = 0.0
    for br, tail in zip(curve.branches, curve.seed_counts or (1,) * len(curve.branches)):
        n_skip = tail if skip_tail is None else skip_tail
        body = br[1 : len(br) - n_skip] if n_skip else br[1:]
        for z in body:
            try:
                w = evolve(pf, z)
            except UndefinedImage:
                continue
            worst = max(worst, polyline_distance(w, curve.branches))
    return worst
