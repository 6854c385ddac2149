from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from dioecy import (
    FitnessParams,
    NotAFixedPoint,
    ReducedParams,
    StabilityClass,
    ZeroDenominator,
    classify,
    classify_square,
    odds_jacobian,
    odds_map,
    quadrant_fixed_points,
    square_fixed_points,
)
from dioecy.equilibria import Eigenpair, FixedPointReport, stability_of
from oracles import fd_jacobian, interior_fixed_points, odds_jacobian_eigs

red = st.fractions(min_value=0, max_value=8, max_denominator=10)


def by_label(reports):
    return {r.label: r for r in reports}


def test_equal_fitness_degeneracy():
    reps = by_label(square_fixed_points(FitnessParams(1, 1, 1, 1, 1, 1)))
    assert {k for k, r in reps.items() if r.is_fixed()} == {"z0", "z3"}
    for k in ("z1", "z2", "z4"):
        assert not reps[k].applicable and reps[k].location is None


def test_symmetric_interior_point_matches_solver():
    params = (1, 1, 4, 1, 1, 4)
    oracle = interior_fixed_points(params)
    assert oracle == {(F(2, 3), F(2, 3))}
    reps = by_label(square_fixed_points(FitnessParams(*params)))
    z2 = reps["z2"]
    assert (z2.location.x, z2.location.y) in oracle
    assert z2.in_domain and z2.residual == 0
    # coincides with the diagonal threshold (c - 2b)/(a - 2b + c)
    assert z2.location == (F(2, 3), F(2, 3))


def test_boundary_candidate_when_a_zero():
    reps = by_label(square_fixed_points(FitnessParams(0, 1, 1, 1, 1, 1)))
    assert reps["z1"].location == (1, 1) and reps["z1"].in_domain
    # every zygote at (1, 1) is A1A1, whose male fitness is 0: the map is 0/0 there
    assert not reps["z1"].defined and reps["z1"].residual is None


def test_asymmetric_interior_point_matches_solver():
    params = (3, 1, 10, 2, 1, 10)
    oracle = interior_fixed_points(params)
    z2 = by_label(square_fixed_points(FitnessParams(*params)))["z2"]
    assert {(z2.location.x, z2.location.y)} == oracle


def test_quadrant_fixed_points_examples():
    O, P = quadrant_fixed_points(ReducedParams.of(F(1, 10), F(1, 5), F(1, 3), F(1, 2)))
    assert P.in_domain  # B + D < 1
    O, P = quadrant_fixed_points(ReducedParams.of("0.3", "0.1", "0.2", "0.1"))
    assert P.location == (F(80, 21), F(80, 29)) and P.in_domain and P.residual == 0
    O, P = quadrant_fixed_points(ReducedParams.of("0.9", "0.5", "0.2", "0.8"))
    assert P.location.s == F(3, 10) / F(-82, 100) and not P.in_domain
    assert P.eigen is not None


@given(red, red, st.fractions(0, 1, max_denominator=20), st.fractions(0, 1, max_denominator=20))
def test_small_B_plus_D_gives_positive_P(A, C, u, v):
    B = u * (1 - v) * F(99, 100)
    D = v * (1 - u) * F(99, 100)
    _, P = quadrant_fixed_points(ReducedParams.of(A, B, C, D))
    assume(P.applicable)
    assert P.in_domain


def test_jacobian_examples():
    r = ReducedParams.of(F(3, 10), F(1, 10), F(1, 5), F(1, 10))
    assert odds_jacobian(r, (0, 0)) == ((r.B, r.B), (r.D, r.D))
    assert odds_jacobian(ReducedParams.of(1, 1, 1, 1), (1, 2)) == ((3, 2), (3, 2))
    assert odds_jacobian(r, (F(80, 21), F(80, 29))) == ((F(269, 290), F(87, 70)), (F(189, 290), F(181, 210)))


@settings(max_examples=50)
@given(red, red, red, red, st.floats(0, 5), st.floats(0, 5))
def test_jacobian_matches_finite_differences(A, B, C, D, s, t):
    r = ReducedParams.of(float(A), float(B), float(C), float(D))
    J = np.array(odds_jacobian(r, (s, t)), dtype=float)
    J_fd = fd_jacobian(lambda q: odds_map(r, q, big=None), (s, t))
    assert np.allclose(J, J_fd, atol=1e-6)


def test_classify_origin_attractor():
    O, _ = quadrant_fixed_points(ReducedParams.of(0.5, 0.1, 0.5, 0.1))
    assert (O.eigen.lambda1, O.eigen.lambda2) == (pytest.approx(0.2), 0)
    assert O.stability is StabilityClass.ATTRACTOR


@pytest.mark.parametrize(
    "r, expected, kind",
    [
        ((0.9, 0.5, 0.2, 0.8), (0.8055778837, -0.5430343293), StabilityClass.ATTRACTOR),
        ((9, 5, 2, 0.8), (12.72976779, 1.409215262), StabilityClass.REPELLER),
        ((9, 0.5, 2, 0.5), (1.0, 0.0), StabilityClass.NON_HYPERBOLIC),
    ],
)
def test_classify_table_rows(r, expected, kind):
    _, P = quadrant_fixed_points(ReducedParams.of(*r))
    assert P.eigen.lambda1.real == pytest.approx(expected[0], abs=1e-6)
    assert P.eigen.lambda2.real == pytest.approx(expected[1], abs=1e-6)
    assert P.stability is kind
    # independent eigen solver
    ev = sorted(odds_jacobian_eigs(r, *P.location).real, reverse=True)
    assert ev == pytest.approx([P.eigen.lambda1.real, P.eigen.lambda2.real], abs=1e-10)


def test_classify_rejects_non_fixed_point():
    r = ReducedParams.of(1, 1, 1, 1)
    fake = FixedPointReport("P", (1.0, 1.0), True, residual=0.0)
    with pytest.raises(NotAFixedPoint):
        classify(r, fake)


def test_classify_square_examples():
    z0 = classify_square(FitnessParams(3, 1, 10, 2, 1, 10), "z0")
    assert z0.stability is StabilityClass.ATTRACTOR
    z0 = classify_square(FitnessParams(1, 1, 1, 1, 1, 1), "z0")
    assert z0.stability is StabilityClass.SADDLE
    assert (z0.eigen.lambda1, z0.eigen.lambda2) == (2, 0)
    z2 = classify_square(FitnessParams(1, 1, 4, 1, 1, 4), "z2")
    _, P = quadrant_fixed_points(ReducedParams.of(F(1, 4), F(1, 4), F(1, 4), F(1, 4)))
    assert z2.stability is P.stability is StabilityClass.SADDLE
    assert z2.eigen.lambda1 == pytest.approx(P.eigen.lambda1)
    assert z2.quadrant_location == P.location == (2, 2)
    assert z2.eigen.lambda1 == pytest.approx(1.5) and abs(z2.eigen.lambda2) < 1e-15
    with pytest.raises(ZeroDenominator):
        classify_square(FitnessParams(1, 1, 0, 1, 1, 1), "z0")


def test_stability_band():
    ev = lambda a, b: Eigenpair(complex(a), complex(b), a + b, a * b)  # noqa: E731
    assert stability_of(ev(1 + 5e-13, 0.2)) is StabilityClass.NON_HYPERBOLIC
    assert stability_of(ev(1 + 5e-12, 0.2)) is StabilityClass.SADDLE
    assert stability_of(ev(-1.5, 1.2)) is StabilityClass.REPELLER
    assert stability_of(Eigenpair(0.5 + 0.5j, 0.5 - 0.5j, 1, 0.5)) is StabilityClass.ATTRACTOR


@given(red, red, red, red)
def test_origin_eigenvalues_exact(A, B, C, D):
    (j11, j12), (j21, j22) = odds_jacobian(ReducedParams.of(A, B, C, D), (F(0), F(0)))
    assert j11 + j22 == B + D
    assert j11 * j22 - j12 * j21 == 0


@given(red, red, red, red)
def test_trace_det_consistency(A, B, C, D):
    for rep in quadrant_fixed_points(ReducedParams.of(A, B, C, D)):
        if rep.eigen is None:
            continue
        e = rep.eigen
        tr, det = float(e.trace), float(e.det)
        scale = max(1.0, abs(e.lambda1), abs(e.lambda2))
        assert abs(e.lambda1 + e.lambda2 - tr) <= 1e-12 * scale
        assert abs(e.lambda1 * e.lambda2 - det) <= 1e-12 * scale * scale


def test_row_one_printed_second_eigenvalue_is_inconsistent():
    _, P = quadrant_fixed_points(ReducedParams.of(0.3, 0.1, 0.2, 0.1))
    assert P.eigen.lambda1.real == pytest.approx(1.795344459, abs=1e-8)
    assert P.eigen.lambda1 * P.eigen.lambda2 == pytest.approx(float(P.eigen.det), rel=1e-12)
    printed = -0.5853490213
    assert abs(P.eigen.lambda1.real * printed - float(P.eigen.det)) > 1.0
    assert P.eigen.lambda2.real == pytest.approx(printed / 100, rel=1e-7)


def test_two_fixed_points_when_interior_candidate_outside(rng):
    from conftest import random_params

    seen = 0
    while seen < 40:
        p = random_params(rng, positive=True)
        reps = by_label(square_fixed_points(p, with_stability=False))
        if reps["z2"].in_domain:
            continue
        seen += 1
        assert {k for k, r in reps.items() if r.is_fixed()} == {"z0", "z3"}
