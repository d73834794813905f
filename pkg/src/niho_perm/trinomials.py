"""Trinomials x^(c0(q-1)+1) + s1*x^(c1(q-1)+1) + s2*x^(c2(q-1)+1) over
GF(5^{2k}), with permutation verdicts by two independent routes.

Every exponent is congruent to 1 mod q-1, so f(x) = x * h(x^(q-1)) with h
the signed coefficient polynomial in the residues c.  The exhaustive oracle
marks a full seen-table over the field; the subgroup criterion reduces the
question to whether x * h(x)^(q-1) permutes the (q+1)-circle, plus a gcd
condition that is computed rather than assumed.
"""

from __future__ import annotations

import math
import random
from typing import Sequence

import numpy as np

from .errors import GuardExceededError, UsageError
from .field import CHAR, FieldElement, FieldParams, tower_field
from .report import VerificationReport, timed
from .residues import resolve_residue
from .unity import (PowerFormMap, unity_group, unity_permutation_report,
                    is_permutation_of)

EXHAUSTIVE_GUARD_K = 4


class NihoTrinomial:
    """Three signed terms with exponents c*(q-1)+1, residues c mod q+1."""

    __slots__ = ("field", "k", "q", "terms")

    def __init__(self, field: FieldParams, terms: tuple[tuple[int, int], ...]):
        self.field = field
        self.k = field.subfield_degree
        self.q = field.q
        self.terms = terms

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(c * (self.q - 1) + 1 for _, c in self.terms)

    @property
    def degenerate(self) -> bool:
        cs = [c for _, c in self.terms]
        return len(set(cs)) < len(cs)

    def subject(self) -> str:
        parts = []
        for (sign, _), e in zip(self.terms, self.exponents):
            mono = "x" if e == 1 else f"x^{e}"
            if not parts:
                parts.append(mono if sign > 0 else f"-{mono}")
            else:
                parts.append(f"{'+' if sign > 0 else '-'} {mono}")
        body = " ".join(parts)
        tag = " [degenerate]" if self.degenerate else ""
        return f"{body} over GF(5^{2*self.k}){tag}"

    def __repr__(self):
        return f"<NihoTrinomial {self.subject()}>"

    def __eq__(self, other):
        return (isinstance(other, NihoTrinomial)
                and self.field.signature == other.field.signature
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.field.signature, self.terms))


def build_trinomial(k: int, terms: Sequence[tuple[int, int]],
                    modulus_override=None) -> NihoTrinomial:
    """Canonicalize three signed residues (first sign +) into a trinomial."""
    field = tower_field(k, modulus_override)
    if len(terms) != 3:
        raise UsageError("a trinomial needs exactly three signed residues")
    n = field.q + 1
    canon = []
    for pos, (sign, c) in enumerate(terms):
        if sign not in (1, -1):
            raise UsageError("signs must be +1 or -1")
        if pos == 0 and sign != 1:
            raise UsageError("the leading term's sign is fixed at +1")
        canon.append((sign, int(c) % n))
    return NihoTrinomial(field, tuple(canon))


def eval_trinomial(f: NihoTrinomial, x: FieldElement) -> FieldElement:
    """Plain evaluation; 0 maps to 0 since every exponent is positive."""
    acc = x.field.zero
    for (sign, _), e in zip(f.terms, f.exponents):
        t = x ** e
        acc = acc + t if sign > 0 else acc - t
    return acc


# ---------------------------------------------------------------------------
# exhaustive oracle over the whole field

def field_values(field: FieldParams, abs_terms: Sequence[tuple[int, int]]):
    """Values of sum sign * x^e over every field element, index order
    [0, g^0, g^1, ...].  Requires acceleration tables."""
    kern = field.accel_tables
    if kern is None:
        raise UsageError(
            "exhaustive evaluation needs acceleration tables (k <= 4)")
    logs = np.arange(kern.n1, dtype=np.int64)
    acc = None
    at_zero = 0
    for sign, e in abs_terms:
        coeff = 1 if sign > 0 else CHAR - 1
        rows = kern.digit_rows[kern.antilog[(logs * (e % kern.n1)) % kern.n1]]
        rows = rows.astype(np.int16) * coeff
        acc = rows if acc is None else acc + rows
        if e == 0:
            at_zero += coeff
    vals = (acc % CHAR).astype(np.int64) @ kern.pow5
    out = np.empty(field.order, dtype=np.int64)
    out[0] = kern.from_digits([at_zero % CHAR])
    out[1:] = vals
    return out


def _element_at_position(field: FieldParams, pos: int) -> FieldElement:
    kern = field.accel_tables
    if pos == 0:
        return field.zero
    return field.from_index(int(kern.antilog[pos - 1]))


@timed
def exhaustive_permutation_report(field: FieldParams,
                                  abs_terms: Sequence[tuple[int, int]],
                                  subject: str) -> VerificationReport:
    """Ground-truth oracle: seen-table over all of GF(5^{2k})."""
    vals = field_values(field, abs_terms)
    counts = np.bincount(vals, minlength=field.order)
    if counts.max() <= 1:
        return VerificationReport(
            subject=subject, method="exhaustive", passed=True,
            counts={"elements": field.order})
    dup_val = int(np.nonzero(counts > 1)[0][0])
    positions = np.nonzero(vals == dup_val)[0][:2]
    x1 = _element_at_position(field, int(positions[0]))
    x2 = _element_at_position(field, int(positions[1]))
    return VerificationReport(
        subject=subject, method="exhaustive", passed=False,
        witness={"type": "collision", "x1": x1.csv(), "x2": x2.csv(),
                 "value": FieldElement(field, field.kernel.from_index(dup_val)
                                       ).csv()},
        counts={"elements": field.order})


def is_permutation_exhaustive(f: NihoTrinomial, guard: int = EXHAUSTIVE_GUARD_K,
                              force: bool = False) -> VerificationReport:
    if f.k > guard and not force:
        raise GuardExceededError(
            f"exhaustive oracle guarded at k <= {guard} "
            f"(5^{2*f.k} elements); use the criterion method or force")
    abs_terms = list(zip((s for s, _ in f.terms), f.exponents))
    return exhaustive_permutation_report(f.field, abs_terms, f.subject())


# ---------------------------------------------------------------------------
# subgroup criterion

def induced_mu_map(f: NihoTrinomial) -> PowerFormMap:
    """The map x * h(x)^(q-1) on the circle, h the coefficient polynomial."""
    return PowerFormMap(name=f"induced:{f.subject()}", h_terms=f.terms)


@timed
def power_residue_criterion(field: FieldParams, l: int, s: int,
                            g_terms: Sequence[tuple[int, int]],
                            subject: str) -> VerificationReport:
    """Permutation test for f(x) = x^l * g(x^((Q-1)/s)), Q the field size.

    Condition 1 is gcd(l, (Q-1)/s) = 1, computed and logged; condition 2 is
    that x^l * g(x)^((Q-1)/s) permutes the s-th roots of unity, decided by
    enumeration.  A zero of g on that subgroup fails condition 2 with a
    witness (the image would leave the subgroup).
    """
    big = field.order - 1
    if big % s:
        raise UsageError(f"s = {s} does not divide {big}")
    d = big // s
    g_val = math.gcd(l, d)
    cond1 = g_val == 1
    note1 = f"condition 1: gcd(l={l}, {d}) = {g_val}"
    if s == field.q + 1 and l == 1:
        group = unity_group(field)
        map_ = PowerFormMap(name="induced", h_terms=tuple(
            (sign, c % s) for sign, c in g_terms))
        rep2 = unity_permutation_report(map_, group, "mu")
    else:
        kern = field.kernel
        base = kern.pow(kern.generator_handle, d)
        elems = [FieldElement(field, kern.one)]
        cur = kern.one
        for _ in range(s - 1):
            cur = kern.mul(cur, base)
            elems.append(FieldElement(field, cur))

        def the_map(x: FieldElement) -> FieldElement:
            gx = x.field.zero
            for sign, c in g_terms:
                t = x ** c
                gx = gx + t if sign > 0 else gx - t
            return x ** l * gx ** d

        rep2 = is_permutation_of(elems, the_map,
                                 subject=f"x^{l}*g(x)^{d} on mu_{s}")
    passed = cond1 and rep2.passed
    witness = None
    if not cond1:
        witness = {"type": "gcd", "l": l, "modulus": d, "gcd": g_val}
    elif not rep2.passed:
        witness = rep2.witness
    return VerificationReport(
        subject=subject, method="criterion", passed=passed, witness=witness,
        counts={"subgroup_order": s, **rep2.counts},
        notes=[note1, f"condition 2: {'pass' if rep2.passed else 'fail'}"])


def is_permutation_via_criterion(f: NihoTrinomial) -> VerificationReport:
    return power_residue_criterion(
        f.field, 1, f.q + 1, f.terms, subject=f.subject())


# ---------------------------------------------------------------------------
# named families

# family id -> (parity requirement, three signed residue formulas, conjectural)
FAMILY_CATALOG: dict[str, tuple[str, tuple[tuple[int, str], ...], bool]] = {
    "T1":  ("any",  ((1, "0"), (1, "(q+3)/4"), (-1, "(q+3)/2")), False),
    "C1":  ("any",  ((1, "1"), (1, "(3*q+5)/4"), (-1, "(q+1)/2")), False),
    "T2":  ("odd",  ((1, "0"), (1, "(q-1)/2"), (-1, "(q+3)/2")), False),
    "C2":  ("odd",  ((1, "1"), (1, "(q+5)/2"), (-1, "(q+1)/2")), False),
    "T3a": ("odd",  ((1, "0"), (-1, "(q+3)/2"), (1, "q")), False),
    "T3b": ("odd",  ((1, "1"), (-1, "(q+1)/2"), (1, "2")), False),
    "T4a": ("odd",  ((1, "0"), (-1, "(q+3)/2"), (1, "(q+5)/2")), False),
    "T4b": ("odd",  ((1, "1"), (-1, "(q+1)/2"), (1, "(q-1)/2")), False),
    "T5a": ("even", ((1, "0"), (-1, "2"), (1, "(q+3)/2")), False),
    "T5b": ("even", ((1, "1"), (-1, "q"), (1, "(q+1)/2")), False),
    "T6":  ("even", ((1, "0"), (1, "1"), (-1, "(q-1)/2")), False),
    "T7a": ("even", ((1, "0"), (-1, "1"), (1, "(q+5)/2")), False),
    "T7b": ("even", ((1, "0"), (1, "(q+3)/2"), (1, "(q+5)/2")), False),
    "T7c": ("even", ((1, "0"), (1, "(q+3)/2"), (-1, "q")), False),
    "P1":  ("odd",  ((1, "0"), (1, "2"), (-1, "q-1")), True),
    "P2":  ("even", ((1, "0"), (-1, "(q+2)/3+1"), (-1, "2*(q+2)/3")), True),
}

FAMILY_IDS = tuple(FAMILY_CATALOG)


def family_parity(family_id: str) -> str:
    if family_id not in FAMILY_CATALOG:
        raise UsageError(
            f"unknown family {family_id!r}; valid ids: {', '.join(FAMILY_IDS)}")
    return FAMILY_CATALOG[family_id][0]


def family_admits(family_id: str, k: int) -> bool:
    parity = family_parity(family_id)
    return (parity == "any" or (parity == "odd") == (k % 2 == 1))


def theorem_family(family_id: str, k: int) -> NihoTrinomial:
    """Instantiate a named family at a concrete k (parity checked)."""
    parity = family_parity(family_id)
    if not family_admits(family_id, k):
        raise UsageError(
            f"family {family_id} is defined only where k is {parity} "
            f"(got k={k})")
    q = CHAR ** k
    _, exprs, _ = FAMILY_CATALOG[family_id]
    terms = [(sign, resolve_residue(e, q, k)) for sign, e in exprs]
    return build_trinomial(k, terms)


def family_is_conjectural(family_id: str) -> bool:
    family_parity(family_id)
    return FAMILY_CATALOG[family_id][2]


# ---------------------------------------------------------------------------
# randomized dual-method agreement

def random_trinomial(k: int, rng: random.Random) -> NihoTrinomial:
    """Uniform c1, c2 in [0, q], independent signs, fixed leading +x."""
    q = CHAR ** k
    c1, c2 = rng.randrange(q + 1), rng.randrange(q + 1)
    s1 = 1 if rng.randrange(2) == 0 else -1
    s2 = 1 if rng.randrange(2) == 0 else -1
    return build_trinomial(k, [(1, 0), (s1, c1), (s2, c2)])


@timed
def oracle_agreement_report(k: int, samples: int,
                            seed: int) -> VerificationReport:
    """Criterion verdict vs exhaustive verdict on seeded random trinomials."""
    if k > EXHAUSTIVE_GUARD_K:
        raise GuardExceededError(
            f"agreement run needs the exhaustive oracle (k <= "
            f"{EXHAUSTIVE_GUARD_K})")
    rng = random.Random(seed)
    agreements = 0
    for idx in range(samples):
        f = random_trinomial(k, rng)
        via_oracle = is_permutation_exhaustive(f).passed
        via_criterion = is_permutation_via_criterion(f).passed
        if via_oracle != via_criterion:
            return VerificationReport(
                subject=f"oracle agreement at k={k}", method="dual",
                passed=False,
                witness={"type": "disagreement", "sample": idx,
                         "terms": list(f.terms),
                         "exhaustive": via_oracle, "criterion": via_criterion},
                counts={"samples": samples, "agreements": agreements},
                notes=[f"seed={seed}"])
        agreements += 1
    return VerificationReport(
        subject=f"oracle agreement at k={k}", method="dual", passed=True,
        counts={"samples": samples, "agreements": agreements},
        notes=[f"seed={seed}"])
