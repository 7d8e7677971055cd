import math

import numpy as np
import pytest

from hardylab.functional import reduce_radial_functional
from hardylab.scenarios import ParameterDomainError, scenario_catalog
from hardylab.spectral import (AnnulusProblem, check_lambda1_lower_bound,
                               closed_form_lambda1_p2, eigenvalue,
                               first_eigenvalue, shoot)

PROB = AnnulusProblem(Q=3.0, p=2.0, theta=1.0, a=1.0, b=math.e)


def test_problem_validation():
    with pytest.raises(ParameterDomainError):
        AnnulusProblem(Q=3.0, p=2.0, theta=1.0, a=0.0, b=1.0)
    with pytest.raises(ParameterDomainError):
        AnnulusProblem(Q=3.0, p=1.5, theta=1.0, a=1.0, b=2.0)


def test_closed_form_values():
    assert closed_form_lambda1_p2(3.0, 1.0, 1.0, math.e) == pytest.approx(
        0.25 + math.pi ** 2, rel=1e-15)
    # critical weight Q = 2 theta still has a positive eigenvalue
    assert closed_form_lambda1_p2(4.0, 2.0, 1.0, 2.0) == pytest.approx(
        (math.pi / math.log(2.0)) ** 2, rel=1e-15)
    assert closed_form_lambda1_p2(2.0, 1.0, 1.0, math.exp(math.pi)) == \
        pytest.approx(1.0, rel=1e-15)


def test_shoot_at_eigenvalue_hits_endpoint():
    val, zeros = shoot(PROB, 0.25 + math.pi ** 2)
    assert abs(val) <= 1e-7
    assert zeros == 0


def test_shoot_matches_general_solution():
    # p=2 solution with phi(a)=0, m(a)=1: phi = a^-s sin(C ln(r/a)) / C * ...
    C = math.sqrt(4.75)
    val, zeros = shoot(PROB, 5.0)
    expected = math.exp(-0.5) * math.sin(C) / C
    assert val == pytest.approx(expected, rel=1e-9)
    assert zeros == 0


def test_shoot_counts_interior_zeros():
    # zeros of sin(C ln r) at ln r = k pi / C, C = sqrt(49.75)
    val, zeros = shoot(PROB, 50.0)
    assert zeros == 2


def test_first_eigenvalue_matches_closed_form():
    res = first_eigenvalue(PROB, tol=1e-10)
    assert res.lam == pytest.approx(0.25 + math.pi ** 2, rel=1e-8)
    assert res.zero_count == 0
    assert res.endpoint_residual <= 1e-7
    assert check_lambda1_lower_bound(PROB, res)


def test_critical_case_never_zero():
    prob = AnnulusProblem(Q=4.0, p=2.0, theta=2.0, a=1.0, b=math.e ** 2)
    res = first_eigenvalue(prob)
    assert res.lam == pytest.approx((math.pi / 2.0) ** 2, rel=1e-8)
    assert res.lam > 0
    assert check_lambda1_lower_bound(prob, res)


def test_p2_grid_against_closed_form():
    intervals = [(1.0, 2.0), (1.0, math.e), (0.5, 4.0)]
    for i, Q in enumerate((2.0, 3.0, 5.0)):
        for j, theta in enumerate((0.0, 1.0, 2.0)):
            a, b = intervals[(i + j) % 3]
            prob = AnnulusProblem(Q=Q, p=2.0, theta=theta, a=a, b=b)
            res = first_eigenvalue(prob)
            assert res.lam == pytest.approx(
                closed_form_lambda1_p2(Q, theta, a, b), rel=1e-8)


def test_p3_lower_bound_and_node_counts():
    prob = AnnulusProblem(Q=5.0, p=3.0, theta=1.0, a=1.0, b=2.0)
    res1 = eigenvalue(prob, which=1)
    assert res1.lam > (2.0 / 3.0) ** 3 + 1e-9
    assert res1.zero_count == 0
    assert check_lambda1_lower_bound(prob, res1)
    res2 = eigenvalue(prob, which=2)
    assert res2.zero_count == 1
    assert res2.lam > res1.lam
    # Rayleigh cross-check: the eigenfunction's quotient reproduces lam_1 and
    # sampled profiles never undercut it
    sc = scenario_catalog("annulus", Q=5.0, p=3.0, theta=1.0, a=1.0, b=2.0,
                          lambda1=res1.lam)
    red = reduce_radial_functional(sc, res1.eigenfunction)
    assert red.quotient == pytest.approx(res1.lam, rel=1e-6)
    from hardylab.functional import random_profile_slacks

    rows = random_profile_slacks(sc, 40, seed=6)
    assert min(r["slack"] for r in rows) >= -1e-8


def test_second_eigenvalue_p2():
    res2 = eigenvalue(PROB, which=2)
    assert res2.lam == pytest.approx(0.25 + 4.0 * math.pi ** 2, rel=1e-8)
    assert res2.zero_count == 1


def test_momentum_rescaling_leaves_lambda1():
    lam_ref = eigenvalue(PROB, tol=1e-12).lam
    for c in (3.7, 0.2):
        lam_c = eigenvalue(PROB, tol=1e-12, init_momentum=c).lam
        assert abs(lam_c - lam_ref) <= 1e-10 * lam_ref
    # homogeneity also shows in the raw shot: scaling m(a) scales phi(b)
    lam = 5.0
    v1, _ = shoot(PROB, lam)
    v2, _ = shoot(PROB, lam, init_momentum=3.0)
    assert v2 == pytest.approx(3.0 * v1, rel=1e-9)
    # p=3 case: phi scales like c^(1/(p-1))
    prob3 = AnnulusProblem(Q=5.0, p=3.0, theta=1.0, a=1.0, b=2.0)
    w1, _ = shoot(prob3, 10.0)
    w2, _ = shoot(prob3, 10.0, init_momentum=8.0)
    assert w2 == pytest.approx(8.0 ** 0.5 * w1, rel=1e-8)


def test_eigenfunction_quotient_equals_lambda1():
    res = first_eigenvalue(PROB, tol=1e-10)
    sc = scenario_catalog("annulus", Q=3.0, p=2.0, theta=1.0, a=1.0, b=math.e)
    red = reduce_radial_functional(sc, res.eigenfunction)
    assert red.quotient == pytest.approx(res.lam, rel=1e-6)


def test_eigenfunction_matches_p2_closed_form():
    from hardylab.besselpair import closed_form_maximizer

    res = first_eigenvalue(PROB, tol=1e-10)
    sc = scenario_catalog("annulus", Q=3.0, p=2.0, theta=1.0, a=1.0, b=math.e)
    ref = closed_form_maximizer(sc)
    r = np.linspace(1.0, math.e, 400)
    ref_vals = ref.value(r)
    ref_vals = ref_vals / np.max(np.abs(ref_vals))
    assert np.max(np.abs(res.eigenfunction.value(r) - ref_vals)) <= 1e-6


def test_eigenfunction_positive_inside():
    res = first_eigenvalue(PROB)
    r = np.linspace(1.0 + 1e-3, math.e - 1e-3, 500)
    assert np.min(res.eigenfunction.value(r)) > 0.0
    assert np.max(np.abs(res.eigenfunction.value(
        np.array([1.0, math.e])))) <= 1e-9


def test_eigenfunction_certifies_bessel_pair():
    from hardylab.besselpair import verify_bessel_pair

    res = first_eigenvalue(PROB)
    sc = scenario_catalog("annulus", Q=3.0, p=2.0, theta=1.0, a=1.0, b=math.e)
    cert = verify_bessel_pair(sc, (1.05, math.e - 0.05),
                              eigenfunction=res.eigenfunction)
    assert cert.is_positive
    assert cert.max_closed_form_error <= 1e-6


def test_lambda1_decreases_with_b():
    lams = []
    for b in (2.0, 3.0, 4.0):
        prob = AnnulusProblem(Q=3.0, p=2.0, theta=1.0, a=1.0, b=b)
        lams.append(first_eigenvalue(prob).lam)
    assert lams[0] > lams[1] > lams[2]
