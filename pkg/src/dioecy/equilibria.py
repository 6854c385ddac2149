"""Fixed points of the square and odds maps, their linearization and type.

All closed-form candidates are always evaluated and returned, each with
its membership in the state space and a residual obtained by plugging
the candidate back into the map. Which of them are real equilibria for a
given parameter set is therefore read off the reports rather than coded
as a case split.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, replace

from .errors import NotAFixedPoint, UndefinedImage, ZeroDenominator
from .model import (
    FitnessParams,
    QuadrantState,
    ReducedParams,
    SquareState,
    evolve,
    in_square,
    odds_map,
    quadrant_to_square,
    reduce_params,
)
from .numerics import DEFAULT_TOLERANCE, Tolerance, quadratic_roots

__all__ = [
    "Eigenpair",
    "StabilityClass",
    "FixedPointReport",
    "square_fixed_points",
    "quadrant_fixed_points",
    "odds_jacobian",
    "classify",
    "classify_square",
    "stability_of",
    "SQUARE_LABELS",
]

SQUARE_LABELS = ("z0", "z1", "z2", "z3", "z4")


class StabilityClass(str, enum.Enum):
    ATTRACTOR = "Attractor"
    REPELLER = "Repeller"
    SADDLE = "Saddle"
    NON_HYPERBOLIC = "NonHyperbolic"


@dataclass(frozen=True)
class Eigenpair:
    """Eigenvalues of a 2x2 Jacobian, ordered by descending real part."""

    lambda1: complex
    lambda2: complex
    trace: object
    det: object

    @property
    def is_real(self) -> bool:
        return self.lambda1.imag == 0.0 and self.lambda2.imag == 0.0

    @property
    def moduli(self) -> tuple[float, float]:
        return abs(self.lambda1), abs(self.lambda2)

    def dominant(self) -> complex:
        """The eigenvalue of largest modulus (first one on ties)."""
        return self.lambda1 if abs(self.lambda1) >= abs(self.lambda2) else self.lambda2


@dataclass(frozen=True)
class FixedPointReport:
    """One closed-form fixed-point candidate.

    ``location`` is ``None`` when the candidate's formula has a vanishing
    denominator (``applicable`` is then False). ``residual`` is the
    max-norm of ``map(z) - z`` and is ``None`` when the map is undefined
    at the candidate (``defined`` False). For square candidates,
    ``quadrant_location`` holds the odds coordinates of the conjugate point
    when one exists.
    """

    label: str
    location: tuple | None
    in_domain: bool
    residual: object = None
    applicable: bool = True
    defined: bool = True
    eigen: Eigenpair | None = None
    stability: StabilityClass | None = None
    quadrant_location: QuadrantState | None = None
    note: str = ""

    def is_fixed(self, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
        """In the state space, map defined there, and residual within ``eps_fixed``."""
        return self.in_domain and self.residual is not None and self.residual <= tol.eps_fixed


def stability_of(eig: Eigenpair, tol: Tolerance = DEFAULT_TOLERANCE) -> StabilityClass:
    m1, m2 = eig.moduli
    if abs(m1 - 1.0) <= tol.eps_fixed or abs(m2 - 1.0) <= tol.eps_fixed:
        return StabilityClass.NON_HYPERBOLIC
    if m1 < 1.0 and m2 < 1.0:
        return StabilityClass.ATTRACTOR
    if m1 > 1.0 and m2 > 1.0:
        return StabilityClass.REPELLER
    return StabilityClass.SADDLE


def odds_jacobian(r: ReducedParams, q) -> tuple[tuple, tuple]:
    s, t = q
    return (
        (r.A * t + r.B, r.A * s + r.B),
        (r.C * t + r.D, r.C * s + r.D),
    )


def _square_residual(p, z):
    try:
        w = evolve(p, z)
    except UndefinedImage:
        return None
    return max(abs(w[0] - z[0]), abs(w[1] - z[1]))


def _square_candidates(p: FitnessParams):
    a, b, c, al, be, ga = p.astuple()
    zero, one = a - a, a - a + 1
    yield "z0", (zero, zero), ""
    if b - a != 0:
        yield "z1", (b / (b - a), one), ""
    else:
        yield "z1", None, "b - a = 0"
    den_x = (c - b) * (al + ga) + (a - c) * be
    den_y = (ga - be) * (a + c) + (al - ga) * b
    if den_x != 0 and den_y != 0:
        yield "z2", (((c - b) * ga - c * be) / den_x, ((ga - be) * c - ga * b) / den_y), ""
    else:
        yield "z2", None, "interior formula denominator vanishes"
    yield "z3", (one, one), ""
    if be - al != 0:
        yield "z4", (one, be / (be - al)), ""
    else:
        yield "z4", None, "beta - alpha = 0"


def square_fixed_points(
    p: FitnessParams, tol: Tolerance = DEFAULT_TOLERANCE, *, with_stability: bool = True
) -> list[FixedPointReport]:
    """Report all five closed-form candidates z0..z4 of the square map.

    Each report carries membership in ``[0, 1]**2`` and the substitution
    residual. With ``with_stability`` and ``c * gamma != 0``, z0 and z2
    also get eigenvalues and a type through the odds conjugacy; z1, z3 and
    z4 sit on the edge where odds coordinates blow up and are never
    classified.
    """
    reduced = None
    if with_stability and p.c != 0 and p.gamma != 0:
        reduced = reduce_params(p)
    out = []
    for label, loc, note in _square_candidates(p):
        if loc is None:
            out.append(FixedPointReport(label, None, False, applicable=False, defined=False, note=note))
            continue
        loc = SquareState(*loc)
        res = _square_residual(p, loc)
        report = FixedPointReport(
            label,
            loc,
            in_square(loc),
            residual=res,
            defined=res is not None,
            note=note if res is not None else "map is 0/0 here",
        )
        if reduced is not None and label in ("z0", "z2"):
            report = _attach_square_stability(report, reduced, tol)
        out.append(report)
    return out


def _attach_square_stability(report, reduced, tol):
    partner = _quadrant_candidate(reduced, "O" if report.label == "z0" else "P", tol)
    if partner.location is None:
        return replace(report, note=(report.note + "; " if report.note else "") + "odds partner undefined")
    try:
        classified = classify(reduced, partner, tol)
    except NotAFixedPoint:
        return replace(report, quadrant_location=partner.location)
    return replace(
        report,
        eigen=classified.eigen,
        stability=classified.stability,
        quadrant_location=partner.location,
    )


def _quadrant_candidate(r: ReducedParams, label: str, tol: Tolerance) -> FixedPointReport:
    A, B, C, D = r
    zero = A - A
    if label == "O":
        loc = QuadrantState(zero, zero)
    else:
        num = B + D - 1
        den_s = (B - 1) * C - A * D
        den_t = (D - 1) * A - B * C
        if den_s == 0 or den_t == 0:
            return FixedPointReport("P", None, False, applicable=False, defined=False,
                                    note="formula denominator vanishes")
        loc = QuadrantState(num / den_s, num / den_t)
    img = odds_map(r, loc, big=None)
    res = max(abs(img[0] - loc[0]), abs(img[1] - loc[1]))
    # "P > 0" membership; O is always in the closed quadrant
    inside = True if label == "O" else (loc.s > 0 and loc.t > 0)
    return FixedPointReport(label, loc, inside, residual=res)


def quadrant_fixed_points(r: ReducedParams, tol: Tolerance = DEFAULT_TOLERANCE) -> list[FixedPointReport]:
    """O = (0, 0) and the interior candidate P, classified when they are fixed.

    P is returned (with eigenvalues) even when it has a negative
    coordinate; ``in_domain`` records whether it is strictly positive.
    """
    out = []
    for label in ("O", "P"):
        rep = _quadrant_candidate(r, label, tol)
        if rep.location is not None and rep.residual <= tol.eps_fixed:
            rep = classify(r, rep, tol)
        out.append(rep)
    return out


def classify(r: ReducedParams, fp: FixedPointReport, tol: Tolerance = DEFAULT_TOLERANCE) -> FixedPointReport:
    """Fill ``eigen`` and ``stability`` of an odds-map fixed point."""
    loc = fp.quadrant_location if fp.quadrant_location is not None else fp.location
    if loc is None:
        raise NotAFixedPoint(f"{fp.label} has no location")
    img = odds_map(r, loc, big=None)
    res = max(abs(img[0] - loc[0]), abs(img[1] - loc[1]))
    if res > tol.eps_fixed:
        raise NotAFixedPoint(f"{fp.label} residual {float(res):.3g} exceeds {tol.eps_fixed:g}")
    (j11, j12), (j21, j22) = odds_jacobian(r, loc)
    trace = j11 + j22
    det = j11 * j22 - j12 * j21
    l1, l2 = quadratic_roots(trace, det)
    eig = Eigenpair(l1, l2, trace, det)
    return replace(fp, eigen=eig, stability=stability_of(eig, tol))


def classify_square(p: FitnessParams, label: str, tol: Tolerance = DEFAULT_TOLERANCE) -> FixedPointReport:
    """Type of z0 or z2 read off its odds partner O or P.

    Raises :class:`ZeroDenominator` when ``c`` or ``gamma`` is zero.
    """
    if label not in ("z0", "z2"):
        raise ValueError("only z0 and z2 have odds partners; got " + repr(label))
    reduced = reduce_params(p)
    for rep in square_fixed_points(p, tol, with_stability=False):
        if rep.label == label:
            break
    if rep.location is None:
        # the square formula failed; fall back to the odds formula if it exists
        partner = _quadrant_candidate(reduced, "P", tol)
        if partner.location is None:
            return rep
        try:
            loc = quadrant_to_square(partner.location)
        except ZeroDenominator:
            return rep
        rep = FixedPointReport(label, loc, in_square(loc), residual=_square_residual(p, loc))
        rep = replace(rep, defined=rep.residual is not None)
    return _attach_square_stability(rep, reduced, tol)
