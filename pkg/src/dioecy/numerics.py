"""Scalar backends, tolerances and small numerical kernels.

Two interchangeable number systems sit under the whole package:

* ``Backend.FLOAT``: plain Python ``float`` (IEEE double).
* ``Backend.RATIONAL``: :class:`fractions.Fraction`, always kept reduced
  with a positive denominator.

Model code is written once against ordinary arithmetic operators, so the
same function evaluates exactly on fractions and approximately on floats.
Mixing the two promotes to float, as usual in Python.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import BackendMismatch, ZeroDenominator

__all__ = [
    "Backend",
    "Tolerance",
    "DEFAULT_TOLERANCE",
    "backend_of",
    "to_scalar",
    "exact_div",
    "quadratic_roots",
    "format_scalar",
]


class Backend(str, enum.Enum):
    FLOAT = "float64"
    RATIONAL = "rational"


def backend_of(*values) -> Backend:
    """Rational only if every value is an exact rational (int or Fraction)."""
    for v in values:
        if isinstance(v, bool) or not isinstance(v, Rational):
            return Backend.FLOAT
    return Backend.RATIONAL


def to_scalar(value, backend: Backend | str = Backend.FLOAT):
    """Convert ``value`` to the number type of ``backend``.

    Strings may be decimals (``"0.3"``) or ratios (``"80/21"``). On the
    rational backend a decimal string is read exactly, and a float is read
    through its shortest repr, so ``0.3`` becomes ``3/10`` rather than the
    nearest binary fraction.
    """
    backend = Backend(backend)
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, str):
        text = value.strip()
        try:
            exact = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse scalar {value!r}") from exc
        return exact if backend is Backend.RATIONAL else float(exact)
    if backend is Backend.RATIONAL:
        if isinstance(value, Rational):
            return Fraction(value)
        if isinstance(value, float):
            if not math.isfinite(value):
                raise BackendMismatch(f"{value!r} has no rational value")
            return Fraction(repr(value))
        raise TypeError(f"unsupported scalar type {type(value).__name__}")
    return float(value)


def exact_div(n, d):
    """``n / d`` in the backend of the operands; exact for fractions."""
    if d == 0:
        raise ZeroDenominator(f"division of {n} by zero")
    if backend_of(n, d) is Backend.RATIONAL:
        return Fraction(n) / Fraction(d)
    return n / d


def quadratic_roots(trace, det) -> tuple[complex, complex]:
    """Roots of ``lam**2 - trace*lam + det = 0``.

    The larger-magnitude real root is formed without cancellation and the
    other one is recovered from the product ``det``. Roots are ordered by
    descending real part, then descending imaginary part.
    """
    tr = float(trace)
    dt = float(det)
    disc = tr * tr - 4.0 * dt
    if disc >= 0.0:
        sq = math.sqrt(disc)
        big = 0.5 * (tr + math.copysign(sq, tr))
        if big == 0.0:
            # tr == 0 and disc == 0 force det == 0
            roots = [complex(0.0), complex(0.0)]
        else:
            roots = [complex(big), complex(dt / big)]
    else:
        half = 0.5 * tr
        im = 0.5 * math.sqrt(-disc)
        roots = [complex(half, im), complex(half, -im)]
    roots.sort(key=lambda z: (z.real, z.imag), reverse=True)
    return roots[0], roots[1]


@dataclass(frozen=True)
class Tolerance:
    """Numerical thresholds.

    eps_fixed
        Residual bound for accepting a fixed point, and half-width of the
        non-hyperbolic band around unit modulus.
    eps_conv
        Successive-difference threshold for declaring convergence.
    big
        Divergence threshold for odds coordinates.
    """

    eps_fixed: float = 1e-12
    eps_conv: float = 1e-10
    big: float = 1e12

    def __post_init__(self):
        for name in ("eps_fixed", "eps_conv", "big"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ValueError(f"tolerance {name} must be positive and finite, got {v!r}")
        if self.eps_conv < 2.220446049250313e-16:
            raise ValueError("eps_conv below machine epsilon")


DEFAULT_TOLERANCE = Tolerance()


def format_scalar(v) -> str:
    """Deterministic text form: ``p/q`` for fractions, 17 significant digits for floats."""
    if isinstance(v, complex):
        if v.imag == 0.0:
            return format_scalar(v.real)
        sign = "+" if v.imag >= 0 else "-"
        return f"{format_scalar(v.real)}{sign}{format_scalar(abs(v.imag))}i"
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, Rational):
        f = Fraction(v)
        return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
    v = float(v)
    if v == 0.0:
        v = 0.0  # drop the sign of negative zero
    return format(v, ".17g")

