import math

import pytest

import shrinkdim


def test_cylinder_of_three():
    c = shrinkdim.cylinder([3])
    assert (c["left"], c["right"]) == ("1/4", "1/3")
    assert not c["left_closed"] and c["right_closed"]


def test_predim_zero_target_contains_root():
    r = shrinkdim.predim(1, B=4.0, target="zero", tol=1e-6)
    lo, hi = r["s1"]
    assert lo <= 0.7869640227730459820311 <= hi
    assert r["branch"] == "CASE_S1"
    assert r["a1z"] is None


def test_lemma_sum_a1_t1():
    lo, hi = shrinkdim.lemma_sum(1, 1.0)
    assert lo <= 1.0 <= hi and hi - lo < 1e-10


def test_membership_exact():
    assert shrinkdim.membership("7/23", "zero", 4.0, 1)


def test_witness_summary_mass():
    w = shrinkdim.witness_summary()
    assert math.isclose(w["total_mass"], 1.0, abs_tol=1e-9)
    assert w["gap_violations"] == 0
    assert w["membership_failures"] == 0


def test_errors_carry_code():
    with pytest.raises(shrinkdim.ShrinkdimError, match="ExponentTooSmall"):
        shrinkdim.lemma_sum(2, 0.4)
