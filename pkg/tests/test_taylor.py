"""Taylor complex: bases, differentials, and the d^2 = 0 identity."""
import math
import random

import pytest

from citaylor import (
    Monomial,
    monomial_ideal,
    taylor_basis,
    taylor_complex,
    taylor_differential,
    verify_taylor,
)
from citaylor.instances import random_ideal

from conftest import build_squarefree_taylor, grid, ring


def test_basis_sizes_are_binomial(ring_xyz):
    I = monomial_ideal(ring_xyz, ["x^2", "y^2", "z^2"])
    for k in range(5):
        assert len(taylor_basis(I, k)) == math.comb(3, k)
    assert taylor_basis(I, -1) == []


def test_labels_sorted_and_one_based(ring_xyz):
    I = monomial_ideal(ring_xyz, ["x*y", "x*z", "y*z"])
    labels = taylor_basis(I, 2)
    assert [lab.indices for lab in labels] == [(1, 2), (1, 3), (2, 3)]
    assert [lab.compact() for lab in labels] == ["12", "13", "23"]
    assert I.generator(1) == Monomial((1, 1, 0))


def test_label_twist_is_lcm_degree(ring_xyz):
    I = monomial_ideal(ring_xyz, ["x*y", "x*z", "y*z"])
    assert I.subset(()).twist == 0
    assert I.subset((1,)).twist == 2
    assert I.subset((1, 2)).lcm == Monomial((1, 1, 1))
    assert I.subset((1, 2, 3)).twist == 3


def test_compact_label_widens_past_nine():
    R = ring(",".join(f"v{i}" for i in range(11)))
    gens = [tuple(1 if j == i else 0 for j in range(11)) for i in range(11)]
    I = monomial_ideal(R, gens)
    assert I.subset((1, 11)).compact() == "{1,11}"
    assert I.subset(()).compact() == "{}"


# ---- golden differentials --------------------------------------------------


def test_squarefree_example_tau1():
    cx = build_squarefree_taylor()
    assert grid(cx.differential(1)) == [["x*y", "x*z", "y*z"]]


def test_squarefree_example_tau2():
    cx = build_squarefree_taylor()
    assert grid(cx.differential(2)) == [
        ["z", "z", "0"],
        ["-y", "0", "y"],
        ["0", "-x", "-x"],
    ]


def test_squarefree_example_tau3():
    cx = build_squarefree_taylor()
    assert grid(cx.differential(3)) == [["1"], ["-1"], ["1"]]


def test_squarefree_example_twists():
    cx = build_squarefree_taylor()
    assert [lab.twist for lab in cx.basis(1)] == [2, 2, 2]
    assert [lab.twist for lab in cx.basis(2)] == [3, 3, 3]
    assert [lab.twist for lab in cx.basis(3)] == [3]


def test_differential_labels_match_bases():
    cx = build_squarefree_taylor()
    for k in (1, 2, 3):
        tau = cx.differential(k)
        assert tau.rows == cx.basis(k - 1)
        assert tau.cols == cx.basis(k)


def test_basis_out_of_range_is_empty():
    cx = build_squarefree_taylor()
    assert cx.basis(4) == ()
    assert cx.basis(-1) == ()


def test_differential_out_of_range(ring_xyz):
    I = monomial_ideal(ring_xyz, ["x*y"])
    with pytest.raises(ValueError):
        taylor_differential(I, 0)
    with pytest.raises(ValueError):
        taylor_differential(I, 2)


# ---- verification ----------------------------------------------------------


def test_verify_squarefree_example(ring_xyz):
    I = monomial_ideal(ring_xyz, ["x*y", "x*z", "y*z"])
    report = verify_taylor(I)
    assert report.passed
    assert any("tau_1.tau_2" in line for line in report.details)


def test_verify_single_generator(ring_xyz):
    report = verify_taylor(monomial_ideal(ring_xyz, ["x^2*y"]))
    assert report.passed


def test_differentials_are_homogeneous():
    cx = build_squarefree_taylor()
    for k in (1, 2, 3):
        assert cx.differential(k).homogeneity_violations() == []


def test_verify_random_ideals():
    rng = random.Random(20260816)
    for _ in range(10):
        I = random_ideal(rng)
        report = verify_taylor(I)
        assert report.passed, report.failure


def test_square_is_zero_random():
    rng = random.Random(5)
    for _ in range(6):
        I = random_ideal(rng, max_vars=3, max_gens=5)
        cx = taylor_complex(I)
        for k in range(1, I.ngens):
            assert cx.differential(k).compose(cx.differential(k + 1)).is_zero()


# ---- construction edge cases -----------------------------------------------


def test_duplicate_generators_warn(ring_xyz):
    with pytest.warns(UserWarning):
        monomial_ideal(ring_xyz, ["x*y", "x*y"])


def test_nonmonomial_generator_rejected(ring_xyz):
    with pytest.raises(ValueError):
        monomial_ideal(ring_xyz, ["x + y"])
    with pytest.raises(ValueError):
        monomial_ideal(ring_xyz, ["2*x"])


def test_empty_ideal_rejected(ring_xyz):
    with pytest.raises(ValueError):
        monomial_ideal(ring_xyz, [])


def test_wrong_arity_generator_rejected(ring_xyz):
    with pytest.raises(ValueError):
        monomial_ideal(ring_xyz, [(1, 0)])
