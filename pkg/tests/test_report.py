"""Report invariants."""

import pytest

from niho_perm.report import VerificationReport, combine_reports


def test_pass_with_witness_rejected():
    with pytest.raises(ValueError):
        VerificationReport(subject="s", method="m", passed=True,
                           witness={"type": "collision"})


def test_combine_takes_first_witness():
    good = VerificationReport(subject="a", method="m", passed=True)
    bad = VerificationReport(subject="b", method="m", passed=False,
                             witness={"type": "escape", "x": "1,0"})
    agg = combine_reports("all", "m", [good, bad])
    assert not agg.passed
    assert agg.witness["failing_subject"] == "b"
    assert agg.counts == {"checks": 2, "passed": 1}


def test_as_dict_elapsed_isolated():
    rep = VerificationReport(subject="s", method="m", passed=True,
                             elapsed_ms=12.5)
    with_t = rep.as_dict()
    without_t = rep.as_dict(with_elapsed=False)
    assert "elapsed_ms" in with_t
    assert "elapsed_ms" not in without_t
    assert {k: v for k, v in with_t.items() if k != "elapsed_ms"} == without_t
