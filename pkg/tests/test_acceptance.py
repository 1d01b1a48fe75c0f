"""End-to-end acceptance suite.

Each test runs one verification family at its full stated bound and prints
a single PASS or FAIL line; run with -s to see the lines.  All arithmetic
is exact, so there are no tolerances to tune.
"""

from nqsym import verify


def report(result):
    status = "PASS" if result.passed else "FAIL"
    print(f"{status}: {result.check_id} ({result.elapsed:.2f}s) {result.details}")
    assert result.passed, result.details


def test_criterion_01_worked_examples_exact():
    # byte-exact fixed values, well under a second
    result = verify.check_worked_examples()
    report(result)
    assert result.elapsed < 1.0


def test_criterion_02_zbasis_unitriangular_n8():
    # integer unitriangular with integer inverse for every degree up to 8
    result = verify.check_zbasis(max_n=8)
    report(result)
    assert result.elapsed < 30.0


def test_criterion_03_structure_constants_weight8():
    # all products of total weight up to 8 against the quasi-shuffle oracle
    result = verify.check_structure_constants(max_weight=8)
    report(result)
    assert result.elapsed < 120.0


def test_criterion_04_matroid_membership():
    # every rank-two class up to weight 9 and 200 sampled loopless matroids
    result = verify.check_matroid_membership(
        rank2_max_n=9, sample_max_n=8, num_samples=200, seed=0
    )
    report(result)
    assert result.details["samples"] >= 200
    assert result.elapsed < 120.0


def test_criterion_05_uniform_formula_n9():
    result = verify.check_uniform_formula(max_n=9)
    report(result)
    assert result.elapsed < 10.0


def test_criterion_06_rank2_formula_n9():
    result = verify.check_rank2_formula(max_n=9)
    report(result)
    assert result.elapsed < 60.0


def test_criterion_07_recovery_n9():
    result = verify.check_recovery(max_n=9)
    report(result)
    assert result.elapsed < 60.0


def test_criterion_08_splits_and_decompositions_n8():
    result = verify.check_splits(max_n=8, seed=0)
    report(result)
    assert result.elapsed < 120.0


def test_criterion_09_hilbert_basis_n8():
    result = verify.check_hilbert_basis(max_n=8)
    report(result)
    assert result.elapsed < 120.0


def test_criterion_10_invariance_duality_coproduct():
    result = verify.check_invariance_duality_coproduct(
        num_matroids=100, seed=0, max_n=7
    )
    report(result)
    assert result.details["matroids"] >= 100
    assert result.elapsed < 60.0
