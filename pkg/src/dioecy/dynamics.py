"""Orbits of the evolution map and what they converge to.

Besides plain iteration with a convergence verdict this module has two
checks with a closed-form answer:

* :func:`predict_symmetric_limit` gives the limit of every orbit when
  both sexes share the same fitnesses, from one application of the map.
* :func:`certify_orbit_avoids_one` proves, in exact integer arithmetic,
  that an orbit started off the edges never lands on ``x = 1`` or
  ``y = 1`` when ``c * gamma != 0``.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .equilibria import FixedPointReport, square_fixed_points
from .errors import BackendMismatch, InvalidParams, NotSymmetric, UndefinedImage
from .model import FitnessParams, SquareState, check_square, evolve, male_update
from .numerics import DEFAULT_TOLERANCE, Backend, Tolerance, backend_of, format_scalar

__all__ = [
    "VerdictKind",
    "Verdict",
    "Trajectory",
    "iterate",
    "Regime",
    "SymmetricCase",
    "predict_symmetric_limit",
    "LowConfidenceWarning",
    "OrbitCertificate",
    "certify_orbit_avoids_one",
    "DEFAULT_MAX_ITER",
]

DEFAULT_MAX_ITER = 10_000
CYCLE_WINDOW = 8
# exact orbits double their bit length every step; stop before they get absurd
DEFAULT_MAX_BITS = 1 << 16

# snapping preference when two candidates coincide (z1 == z3 when a == 0)
_SNAP_ORDER = ("z0", "z3", "z2", "z1", "z4")


class VerdictKind(str, enum.Enum):
    CONVERGED = "ConvergedTo"
    CYCLING = "Cycling"
    MAX_ITER = "MaxIterReached"
    PRECISION = "PrecisionExhausted"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    limit: SquareState | None = None
    label: str | None = None

    def __str__(self):
        if self.kind is VerdictKind.CONVERGED:
            return f"ConvergedTo({format_scalar(self.limit[0])},{format_scalar(self.limit[1])})"
        return self.kind.value

    @property
    def converged(self) -> bool:
        return self.kind is VerdictKind.CONVERGED


@dataclass(frozen=True)
class Trajectory:
    states: tuple
    verdict: Verdict
    steps_used: int
    params: FitnessParams = field(repr=False, default=None)

    @property
    def final(self) -> SquareState:
        return self.states[-1]


def _dist(u, v):
    return max(abs(u[0] - v[0]), abs(u[1] - v[1]))


def _too_big(z, max_bits):
    return any(
        isinstance(c, Fraction) and c.denominator.bit_length() > max_bits for c in z
    )


def _snap(z, fixed, tol):
    best = None
    for rep in fixed:
        d = _dist(z, rep.location)
        if d <= tol.eps_conv and (best is None or d < best[0]):
            best = (d, rep)
    return best[1] if best else None


def _approaching(w, step, prev_step, fixed, tol):
    """Is a fixed point within the geometric-tail error bound of ``w``?

    A linearly converging orbit with ratio ``rho`` can stop its steps below
    ``eps_conv`` while still ``step * rho / (1 - rho)`` away from the
    limit; iteration then goes on until the snap radius is reached.
    """
    if not prev_step or step == 0:
        return False
    rho = step / prev_step
    if rho >= 1:
        return False
    reach = step * rho / (1 - rho) + tol.eps_conv
    return any(_dist(w, rep.location) <= 2 * reach for rep in fixed)


def known_fixed_points(p: FitnessParams, tol: Tolerance = DEFAULT_TOLERANCE) -> list[FixedPointReport]:
    """Verified fixed points in the square, in snapping order."""
    reps = {r.label: r for r in square_fixed_points(p, tol, with_stability=False)}
    return [reps[k] for k in _SNAP_ORDER if reps[k].is_fixed(tol)]


def iterate(
    p: FitnessParams,
    z0,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: Tolerance = DEFAULT_TOLERANCE,
    *,
    fixed_points: list[FixedPointReport] | None = None,
    max_bits: int = DEFAULT_MAX_BITS,
) -> Trajectory:
    """Iterate the evolution map from ``z0`` until it settles.

    Stops when the max-norm step falls to ``tol.eps_conv``; the limit is
    snapped to a known fixed point within ``eps_conv`` of the last state,
    otherwise the last state itself is reported. If a known fixed point is
    still within the estimated remaining distance of a linearly
    converging orbit, iteration continues until it is within ``eps_conv``. A return within
    ``eps_conv`` to one of the previous ``CYCLE_WINDOW`` states ends the
    run as ``Cycling``. Exact orbits whose denominators outgrow
    ``max_bits`` end as ``PrecisionExhausted``.

    Raises :class:`UndefinedImage` with ``step`` and the partial ``states``
    if the map is 0/0 along the orbit.
    """
    z = check_square(z0)
    if fixed_points is None:
        fixed_points = known_fixed_points(p, tol)
    states = [z]
    prev_step = None
    for n in range(max_iter):
        try:
            w = evolve(p, z)
        except UndefinedImage as exc:
            raise UndefinedImage(
                f"{exc} (step {n})", coordinate=exc.coordinate, step=n, states=states
            ) from None
        states.append(w)
        step = _dist(w, z)
        if step <= tol.eps_conv:
            rep = _snap(w, fixed_points, tol)
            if rep is not None:
                return Trajectory(tuple(states), Verdict(VerdictKind.CONVERGED, rep.location, rep.label), n + 1, p)
            if not _approaching(w, step, prev_step, fixed_points, tol):
                return Trajectory(tuple(states), Verdict(VerdictKind.CONVERGED, w), n + 1, p)
        else:
            for prev in states[-CYCLE_WINDOW - 2 : -2]:
                if _dist(w, prev) <= tol.eps_conv:
                    return Trajectory(tuple(states), Verdict(VerdictKind.CYCLING), n + 1, p)
        prev_step = step
        if _too_big(w, max_bits):
            return Trajectory(tuple(states), Verdict(VerdictKind.PRECISION), n + 1, p)
        z = w
    return Trajectory(tuple(states), Verdict(VerdictKind.MAX_ITER), max_iter, p)


class Regime(str, enum.Enum):
    SHALLOW_CONVEX = "ShallowConvex"  # c <= 2b: everything but the origin goes to (1, 1)
    BISTABLE = "Bistable"  # c > 2b: interior threshold x* splits the square


class LowConfidenceWarning(UserWarning):
    """A float comparison against the threshold x* was too close to call."""


@dataclass(frozen=True)
class SymmetricCase:
    params: FitnessParams
    regime: Regime
    x_star: object = None

    @classmethod
    def from_params(cls, p: FitnessParams) -> "SymmetricCase":
        if not p.is_symmetric:
            raise NotSymmetric("need a == alpha > 0, b == beta > 0 and c == gamma")
        if p.c > 2 * p.b:
            return cls(p, Regime.BISTABLE, (p.c - 2 * p.b) / (p.a - 2 * p.b + p.c))
        return cls(p, Regime.SHALLOW_CONVEX)

    def __post_init__(self):
        if not self.params.is_symmetric:
            raise NotSymmetric("need a == alpha > 0, b == beta > 0 and c == gamma")
        bistable = self.params.c > 2 * self.params.b
        if bistable != (self.regime is Regime.BISTABLE) or bistable != (self.x_star is not None):
            raise NotSymmetric("regime and threshold inconsistent with the parameters")


def predict_symmetric_limit(sc: SymmetricCase, z0, tol: Tolerance = DEFAULT_TOLERANCE) -> SquareState:
    """Limit of the orbit of ``z0`` when both sexes share fitnesses.

    After one step the orbit sits on the diagonal at ``A = x'(z0)``; the
    limit is decided by where ``A`` falls relative to 0 (convex regime) or
    the threshold ``x*`` (bistable regime). An exact tie with ``x*`` is
    decided exactly on fractions; on floats a tie within ``eps_conv``
    returns ``(x*, x*)`` and emits :class:`LowConfidenceWarning`.
    """
    z = check_square(z0)
    p = sc.params
    A = male_update(p, z)
    zero, one = A - A, A - A + 1
    if sc.regime is Regime.SHALLOW_CONVEX:
        return SquareState(zero, zero) if A == 0 else SquareState(one, one)
    xs = sc.x_star
    if backend_of(A, xs) is Backend.RATIONAL:
        if A == xs:
            return SquareState(xs, xs)
    elif abs(A - xs) <= tol.eps_conv:
        warnings.warn(
            f"male update {A!r} within {tol.eps_conv:g} of threshold {float(xs)!r}",
            LowConfidenceWarning,
            stacklevel=2,
        )
        return SquareState(xs, xs)
    return SquareState(zero, zero) if A < xs else SquareState(one, one)


@dataclass(frozen=True)
class OrbitCertificate:
    """Result of :func:`certify_orbit_avoids_one`.

    ``gaps`` lists ``(1 - x_n, 1 - y_n)`` for n = 0..steps as exact
    fractions when ``method == "fraction"``. With ``method == "modular"``
    the gaps are not materialized; ``gap_residues`` holds, per step, the
    residues of the unreduced gap numerators modulo each prime in
    ``primes``. ``certified`` is True when every step was shown to stay
    off ``x = 1`` and ``y = 1``.
    """

    steps: int
    method: str
    certified: bool
    first_failure: int | None
    gaps: tuple = ()
    primes: tuple = ()
    gap_residues: tuple = ()


# primes for residue certificates (2**61 - 1 and two nearby 61-bit primes)
_PRIMES = (2305843009213693951, 2305843009213693921, 2305843009213693907)


def _integer_sex(params):
    den = math.lcm(*(Fraction(v).denominator for v in params))
    return tuple(int(Fraction(v) * den) for v in params)


def certify_orbit_avoids_one(
    p: FitnessParams, z0, n: int, *, method: str = "auto", primes=_PRIMES
) -> OrbitCertificate:
    """Prove that ``x_k != 1`` and ``y_k != 1`` for k = 1..n along an exact orbit.

    Needs exact (rational) parameters and start, ``c * gamma != 0`` and a
    start with ``x0 != 1`` and ``y0 != 1`` (a start on an edge is sent to
    ``(1, 1)`` at once, so both coordinates must be off it).

    ``method="fraction"`` iterates reduced fractions and returns the exact
    gaps; their size doubles every step, so it is only practical for
    ``n`` up to about 16. ``method="modular"`` iterates the unreduced
    integer numerators and denominators modulo large primes. Gap
    numerators are nonnegative integers, so a nonzero residue proves the
    exact gap is positive, which is the statement certified. ``"auto"``
    picks fractions for ``n <= 12`` and residues beyond.
    """
    if backend_of(*p.astuple()) is not Backend.RATIONAL or backend_of(*z0) is not Backend.RATIONAL:
        raise BackendMismatch("exact certification needs rational parameters and start")
    if p.c == 0 or p.gamma == 0:
        raise InvalidParams("certification needs c * gamma != 0")
    x0, y0 = Fraction(z0[0]), Fraction(z0[1])
    check_square((x0, y0))
    if x0 == 1 or y0 == 1:
        raise InvalidParams("start must have x0 != 1 and y0 != 1")
    if method == "auto":
        method = "fraction" if n <= 12 else "modular"
    if method == "fraction":
        return _certify_fraction(p, (x0, y0), n)
    if method == "modular":
        return _certify_modular(p, (x0, y0), n, tuple(primes))
    raise ValueError(f"unknown method {method!r}")


def _certify_fraction(p, z, n):
    gaps = [(1 - z[0], 1 - z[1])]
    failure = None
    for k in range(1, n + 1):
        z = evolve(p, z)
        gaps.append((1 - z[0], 1 - z[1]))
        if failure is None and (z[0] == 1 or z[1] == 1):
            failure = k
    return OrbitCertificate(n, "fraction", failure is None, failure, gaps=tuple(gaps))


def _certify_modular(p, z, n, primes):
    a, b, c = _integer_sex((p.a, p.b, p.c))
    al, be, ga = _integer_sex((p.alpha, p.beta, p.gamma))
    x, y = z
    residues = []
    failure = None
    # per prime: numerator N and gap G = D - N of each coordinate
    state = []
    for q in primes:
        nx, gx = x.numerator % q, (x.denominator - x.numerator) % q
        ny, gy = y.numerator % q, (y.denominator - y.numerator) % q
        state.append([nx, gx, ny, gy])
    residues.append(tuple((s[1], s[3]) for s in state))
    for k in range(1, n + 1):
        row = []
        ok_any = False
        for q, s in zip(primes, state):
            nx, gx, ny, gy = s
            hom1 = nx * ny % q
            het = (nx * gy + ny * gx) % q
            hom2 = gx * gy % q
            s[0] = (a * hom1 + b * het) % q
            s[1] = c * hom2 % q
            s[2] = (al * hom1 + be * het) % q
            s[3] = ga * hom2 % q
            row.append((s[1], s[3]))
            if s[1] != 0 and s[3] != 0:
                ok_any = True
        residues.append(tuple(row))
        if failure is None and not ok_any:
            failure = k
    return OrbitCertificate(
        n, "modular", failure is None, failure, primes=primes, gap_residues=tuple(residues)
    )
