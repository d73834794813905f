"""Structured pass/fail records emitted by every verification operation."""

from __future__ import annotations

import functools
import time
from dataclasses import dataclass, field


@dataclass
class VerificationReport:
    """One verdict with enough context to reproduce a failure.

    The witness, when present, is a small dict of primitives (element digit
    strings, indices) sufficient to replay the failure with one evaluation.
    A passing report never carries a witness.
    """

    subject: str
    method: str
    passed: bool
    witness: dict | None = None
    counts: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    elapsed_ms: float = 0.0

    def __post_init__(self):
        if self.passed and self.witness is not None:
            raise ValueError("a passing report cannot carry a witness")

    def as_dict(self, with_elapsed: bool = True) -> dict:
        out = {
            "subject": self.subject,
            "method": self.method,
            "pass": self.passed,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.counts:
            out["counts"] = dict(self.counts)
        if self.notes:
            out["notes"] = list(self.notes)
        if with_elapsed:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out


def timed(fn):
    """Stamp wall-clock elapsed_ms onto a report-returning function."""
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        rep = fn(*args, **kwargs)
        rep.elapsed_ms = (time.perf_counter() - start) * 1e3
        return rep
    return wrapper


def combine_reports(subject: str, method: str,
                    reports: list[VerificationReport]) -> VerificationReport:
    """Aggregate child reports; fails if any child fails, first witness wins."""
    passed = all(r.passed for r in reports)
    witness = None
    for r in reports:
        if not r.passed:
            witness = {"failing_subject": r.subject, **(r.witness or {})}
            break
    counts = {"checks": len(reports),
              "passed": sum(1 for r in reports if r.passed)}
    notes = [f"{'PASS' if r.passed else 'FAIL'}: {r.subject}" for r in reports]
    return VerificationReport(
        subject=subject, method=method, passed=passed, witness=witness,
        counts=counts, notes=notes,
        elapsed_ms=sum(r.elapsed_ms for r in reports))
