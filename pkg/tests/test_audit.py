"""The Kodaira audit: Gritsenko verdicts, the two case families, coverage,
and lift consistency."""

import pytest

from k3lat.errors import NotRealizable, OutOfFamily, UnsupportedInvariant
from k3lat.audit import (
    DivisorLedger,
    gritsenko_verdict,
    case1_report,
    case2_report,
    theorem1_coverage,
    kodaira_report,
    lift_consistency,
)
from k3lat.geography import geography_table


def test_gritsenko_verdict_table():
    assert gritsenko_verdict(16, 2, 6, True, False) == "-infinity"
    assert gritsenko_verdict(12, 2, 6, False, True) == "-infinity"
    assert gritsenko_verdict(12, 2, 6, False, False) == "inconclusive"
    assert gritsenko_verdict(10, 2, 6, False, False) == "inconclusive"
    assert gritsenko_verdict(5, 1, 2, False, False) == "hypothesis-violated"


def test_gritsenko_strict_weight_validated():
    with pytest.raises(ValueError):
        gritsenko_verdict(12, 2, 6, True, False)


def test_case1_spot_rows():
    r = case1_report(14, 8, 1)
    assert (r["g"], r["nu"], r["k"], r["n"]) == (0, 2, 16, 6)
    assert r["margin"] == 4
    assert r["verdict"] == "-infinity"

    r = case1_report(17, 5, 1)
    assert (r["g"], r["nu"], r["k"], r["n"]) == (0, 2, 22, 3)
    assert r["verdict"] == "-infinity"

    r = case1_report(13, 9, 1)
    assert (r["nu"], r["k"], r["n"], r["margin"]) == (2, 14, 7, 0)
    assert r["special_flag"]
    assert r["verdict"] == "-infinity"
    assert "witness" in r


def test_case1_symbolic_margin_identity():
    """k - nu*n = 2*nu*(r - 13) across the whole case-1 family."""
    for e in geography_table():
        r, a, d = e.triplet
        if not 13 <= r <= 17:
            continue
        rep = case1_report(r, a, d)
        assert rep["margin"] == 2 * rep["nu"] * (r - 13), (r, a, d)


def test_case1_out_of_range():
    assert case1_report(10, 8, 0)["verdict"] == "not-covered-by-A.3"
    with pytest.raises(NotRealizable):
        case1_report(13, 13, 1)


def test_case2_spot_rows():
    r = case2_report(17, 5, 1)
    assert (r["m"], r["k"], r["n"], r["xi_weight"]) == (7, 12, 3, 24)
    assert r["margin"] == 9
    assert r["verdict"] == "-infinity"

    r = case2_report(11, 11, 1)
    assert (r["m"], r["k"], r["n"]) == (1, 114, 9)
    assert r["margin"] == 105

    r = case2_report(12, 10, 1)
    assert (r["m"], r["k"], r["n"]) == (2, 102, 8)


def test_case2_m_range():
    for e in geography_table():
        r, a, d = e.triplet
        if r + a == 22 and 11 <= r <= 17:
            rep = case2_report(r, a, d)
            assert 1 <= rep["m"] <= 7


def test_case2_out_of_family():
    with pytest.raises(OutOfFamily):
        case2_report(18, 4, 0)
    with pytest.raises(OutOfFamily):
        case2_report(10, 12, 1)


def test_coverage_is_theorem_set():
    cov = theorem1_coverage()
    assert len(cov) == 75
    neg = {row["triplet"] for row in cov if row["verdict"] == "-infinity"}
    expected = set()
    for e in geography_table():
        r, a, d = e.triplet
        if 13 <= r <= 17 or (r + a == 22 and r <= 17):
            expected.add((r, a, d))
    assert neg == expected


def test_kodaira_report_merges_cases():
    row = kodaira_report(17, 5, 1)
    assert set(row["cases"]) == {"A.3", "A.4"}
    assert row["verdict"] == "-infinity"
    row = kodaira_report(11, 11, 1)
    assert set(row["cases"]) == {"A.4"}
    row = kodaira_report(10, 8, 0)
    assert row["verdict"] == "not-covered"


def test_lift_consistency_family():
    for r_minus in range(5, 12):
        assert lift_consistency(r_minus), r_minus


def test_lift_consistency_rejects_12():
    with pytest.raises(UnsupportedInvariant):
        lift_consistency(12)


def test_divisor_ledger_validation():
    with pytest.raises(ValueError):
        DivisorLedger([("bogus", 1)], 1, 10, 3)
    with pytest.raises(ValueError):
        DivisorLedger([("Dprime", -1)], 1, 10, 3)
    led = DivisorLedger([("Dprime", 1), ("Ddoubleprime", 2)], 2, 14, 7)
    assert led.multiplicity("Ddoubleprime") == 2
