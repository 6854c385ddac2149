"""Parameters, states and the three maps of the one-locus two-sex model.

* :func:`evolve` maps gamete frequencies ``(x, y)`` of males and females
  to those of the next generation, on the square ``[0, 1]**2``.
* :func:`diagonal_map` is its restriction to ``x == y`` when both sexes
  share the same fitnesses.
* :func:`odds_map` is the same dynamics in odds coordinates
  ``s = x/(1-x)``, ``t = y/(1-y)``, where it becomes a bilinear map of the
  closed quadrant.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import BoundaryState, InvalidParams, NotSymmetric, Overflow, UndefinedImage, ZeroDenominator
from .numerics import DEFAULT_TOLERANCE, Backend, backend_of, to_scalar

__all__ = [
    "FitnessParams",
    "ReducedParams",
    "SquareState",
    "QuadrantState",
    "evolve",
    "male_update",
    "diagonal_map",
    "odds_map",
    "reduce_params",
    "square_to_quadrant",
    "quadrant_to_square",
    "in_square",
    "check_square",
]


def _normalize(values, backend=None):
    if backend is None:
        backend = backend_of(*values)
    return tuple(to_scalar(v, backend) for v in values)


@dataclass(frozen=True)
class FitnessParams:
    """Relative viabilities of the three genotypes in each sex.

    ``a, b, c`` are the male fitnesses of A1A1, A1A2, A2A2 and
    ``alpha, beta, gamma`` the female ones. All must be nonnegative, with
    ``a + b > 0`` and ``alpha + beta > 0``.

    Ints and Fractions give an exact (rational) parameter set; any float
    switches all six values to floats.
    """

    a: object
    b: object
    c: object
    alpha: object
    beta: object
    gamma: object

    def __post_init__(self):
        values = _normalize(self.astuple())
        for name, v in zip(("a", "b", "c", "alpha", "beta", "gamma"), values):
            if v != v or v < 0:
                raise InvalidParams(f"fitness {name} must be nonnegative, got {v}")
            object.__setattr__(self, name, v)
        if values[0] + values[1] == 0:
            raise InvalidParams("a + b must be nonzero")
        if values[3] + values[4] == 0:
            raise InvalidParams("alpha + beta must be nonzero")

    @classmethod
    def of(cls, *values, backend: Backend | str | None = None) -> "FitnessParams":
        """Build from six values (numbers or ``"p/q"`` strings) in ``backend``."""
        if len(values) != 6:
            raise InvalidParams(f"expected 6 fitness values, got {len(values)}")
        if backend is None:
            backend = Backend.RATIONAL if all(isinstance(v, str) for v in values) else backend_of(*values)
        return cls(*_normalize(values, Backend(backend)))

    def astuple(self) -> tuple:
        return (self.a, self.b, self.c, self.alpha, self.beta, self.gamma)

    @property
    def backend(self) -> Backend:
        return backend_of(*self.astuple())

    def to_backend(self, backend: Backend | str) -> "FitnessParams":
        return type(self).of(*self.astuple(), backend=backend)

    @property
    def is_symmetric(self) -> bool:
        """Same fitnesses in both sexes, with ``a`` and ``b`` positive."""
        return (
            self.a == self.alpha
            and self.b == self.beta
            and self.c == self.gamma
            and self.a > 0
            and self.b > 0
        )

    def __iter__(self):
        return iter(self.astuple())


class ReducedParams(NamedTuple):
    """Fitnesses scaled by the A2A2 fitness of each sex: a/c, b/c, alpha/gamma, beta/gamma."""

    A: object
    B: object
    C: object
    D: object

    @classmethod
    def of(cls, *values, backend: Backend | str | None = None) -> "ReducedParams":
        if backend is None:
            backend = Backend.RATIONAL if all(isinstance(v, str) for v in values) else backend_of(*values)
        vals = _normalize(values, Backend(backend))
        if any(v < 0 for v in vals):
            raise InvalidParams("reduced parameters must be nonnegative")
        return cls(*vals)


class SquareState(NamedTuple):
    x: object
    y: object


class QuadrantState(NamedTuple):
    s: object
    t: object


def in_square(z) -> bool:
    x, y = z
    return 0 <= x <= 1 and 0 <= y <= 1


def check_square(z) -> SquareState:
    if not in_square(z):
        raise ValueError(f"state {tuple(z)} lies outside [0, 1]^2")
    return SquareState(*z)


def _genotype_weights(x, y):
    # zygote frequencies of A1A1, A1A2, A2A2 under random union of gametes
    return x * y, x * (1 - y) + y * (1 - x), (1 - x) * (1 - y)


def evolve(p: FitnessParams, z) -> SquareState:
    """One generation of viability selection: ``(x, y) -> (x', y')``.

    Raises :class:`UndefinedImage` when a numerator and its denominator
    both vanish (e.g. ``c == 0`` at the origin).
    """
    x, y = z
    hom1, het, hom2 = _genotype_weights(x, y)
    num_x = p.a * hom1 + p.b * het
    den_x = num_x + p.c * hom2
    if den_x == 0:
        raise UndefinedImage(f"male update is 0/0 at {(x, y)}", coordinate="x")
    num_y = p.alpha * hom1 + p.beta * het
    den_y = num_y + p.gamma * hom2
    if den_y == 0:
        raise UndefinedImage(f"female update is 0/0 at {(x, y)}", coordinate="y")
    return SquareState(num_x / den_x, num_y / den_y)


def male_update(p: FitnessParams, z):
    """Male coordinate of :func:`evolve`; in the symmetric case it fixes the whole limit."""
    x, y = z
    hom1, het, hom2 = _genotype_weights(x, y)
    num = p.a * hom1 + p.b * het
    den = num + p.c * hom2
    if den == 0:
        raise UndefinedImage(f"male update is 0/0 at {(x, y)}", coordinate="x")
    return num / den


def diagonal_map(p: FitnessParams, x):
    """The symmetric-case map ``x -> (a x^2 + 2bx(1-x)) / (a x^2 + 2bx(1-x) + c(1-x)^2)``."""
    if not p.is_symmetric:
        raise NotSymmetric("diagonal map needs a == alpha > 0, b == beta > 0, c == gamma")
    num = p.a * x * x + p.b * (x * (1 - x) + x * (1 - x))
    den = num + p.c * (1 - x) * (1 - x)
    if den == 0:
        raise UndefinedImage(f"diagonal map is 0/0 at {x}", coordinate="x")
    return num / den


def odds_map(r: ReducedParams, q, big: float | None = DEFAULT_TOLERANCE.big) -> QuadrantState:
    """``(s, t) -> (A st + B(s+t), C st + D(s+t))``.

    Raises :class:`Overflow` when a coordinate exceeds ``big``; pass
    ``big=None`` to disable the check (exact iteration).
    """
    s, t = q
    st = s * t
    tot = s + t
    s1 = r.A * st + r.B * tot
    t1 = r.C * st + r.D * tot
    if big is not None and (s1 > big or t1 > big):
        raise Overflow(f"odds coordinate beyond {big:g}", value=max(s1, t1))
    return QuadrantState(s1, t1)


def reduce_params(p: FitnessParams) -> ReducedParams:
    if p.c == 0:
        raise ZeroDenominator("fitness c is zero; odds coordinates need c != 0", name="c")
    if p.gamma == 0:
        raise ZeroDenominator("fitness gamma is zero; odds coordinates need gamma != 0", name="gamma")
    return ReducedParams(p.a / p.c, p.b / p.c, p.alpha / p.gamma, p.beta / p.gamma)


def square_to_quadrant(z) -> QuadrantState:
    x, y = z
    if x == 1 or y == 1:
        raise BoundaryState(f"state {(x, y)} is on the edge x = 1 or y = 1")
    return QuadrantState(x / (1 - x), y / (1 - y))


def quadrant_to_square(q) -> SquareState:
    s, t = q
    if s == -1 or t == -1:
        raise ZeroDenominator(f"odds {(s, t)} have no frequency (pole at -1)")
    return SquareState(s / (1 + s), t / (1 + t))

