"""Acceptance gate: one verification family per test, one summary line each.

Every test runs the corresponding full-suite family at its pinned default
parameters (the same runners back ``sumsetlab suite full``) and prints a
single PASS/FAIL line.  All comparisons are exact; the only tolerances are
the two stated runtime budgets and the exponent window in criterion 9.
"""

import pytest

from sumsetlab import suites


def _report(capsys, number, report, budget=None):
    line = f"criterion {number:02d}: {report.summary_line()}"
    with capsys.disabled():
        print(line)
    for failure in report.failures:
        print(failure)
    assert report.passed, f"{report.checked_failed} of {report.checked} checks failed"
    if budget is not None:
        assert report.seconds < budget, f"took {report.seconds:.1f}s (budget {budget}s)"
    return report


def test_criterion_01_exact_formula_grid(capsys):
    # simplex_cardinality == |k A_{d,N}| over d <= 4, N <= 12, k <= 6.
    _report(capsys, 1, suites.exact_formula_grid(), budget=300)


def test_criterion_02_kfold_lower_bound_equality(capsys):
    # Slack 0 on the simplex grid; Holds on 500 random full-dim sets.
    _report(capsys, 2, suites.kfold_lower_bound_equality_family())


def test_criterion_03_planar_kfold_bound(capsys):
    # Slack 0 on grid families; Holds on 1000 random planar instances.
    _report(capsys, 3, suites.planar_bound_grids())


def test_criterion_04_compression_laws(capsys):
    # Cardinality preservation, sum-monotonicity, projection monotonicity
    # on 1000 random instances.
    _report(capsys, 4, suites.compression_laws())


def test_criterion_05_rotation_reproduction(capsys):
    # |sum of rotated cubes| = (2dN+1)^d; Irreducible; Coprime.
    _report(capsys, 5, suites.rotation_reproduction(), budget=60)


def test_criterion_06_shear_regression(capsys):
    # |X| = 2N-1 and |L_1(X)+L_2(X)| = (2N-1)^2 up to N = 50.
    _report(capsys, 6, suites.shear_regression())


def test_criterion_07_sumset_ratio_family(capsys):
    # Ruzsa triangle, K^{m+n}, K^7 N, K^{7k+1} bounds on 1000 instances.
    _report(capsys, 7, suites.sumset_ratio_family())


def test_criterion_08_brunn_minkowski_family(capsys):
    # Never Violated on 500 instances; 25 = 25 equality case exact;
    # zero Indeterminate at the default precision cap.
    report = _report(capsys, 8, suites.brunn_minkowski_family())
    assert report.details["indeterminate"] == 0


def test_criterion_09_main_term_deficit(capsys):
    # Deficit 8N+3 on cubes, never Violated, exponent within 0.1 of 1/2.
    report = _report(capsys, 9, suites.main_term_deficit())
    assert abs(float(report.details["fitted_exponent"]) - 0.5) <= 0.1


def test_criterion_10_growth_polynomial(capsys):
    # Fitted growth of A_{2,4} equals (k+1)^2 from the first fold on.
    report = _report(capsys, 10, suites.growth_polynomial_fit())
    assert report.details["values"] == [(k + 1) ** 2 for k in range(1, 7)]


def test_criterion_11_reduction_pipeline(capsys):
    # 200 random planar sets reduce to A_{2,|A|} with monotone doubling.
    _report(capsys, 11, suites.reduction_pipeline(), budget=300)
