"""Finite verification of the two conjectured permutation maps, the
trace/norm profile chain behind the first conditional family, and the
(s, t, sign) search harness.

Conjecture checks are finite sweeps and are reported as VERIFIED over the
checked range, never as proved.  The search enumerates residue pairs with
an optional sum constraint, runs the subgroup criterion on each candidate,
and returns the passing set in canonical order; partitioning the s-range
across worker processes cannot change the output.
"""

from __future__ import annotations

import math
import multiprocessing
from dataclasses import dataclass

import numpy as np

from .errors import GuardExceededError, NihoPermError, UsageError
from .field import (CHAR, FieldElement, in_subfield, make_field, norm,
                    trace, tower_field)
from .report import VerificationReport, combine_reports, timed
from .trinomials import (EXHAUSTIVE_GUARD_K, eval_trinomial,
                         induced_mu_map, is_permutation_exhaustive,
                         is_permutation_via_criterion, theorem_family)
from .unity import (build_map, eval_on_unity, maps_agree_report, unity_group,
                    _sparse_on_unity)

SUBFIELD_SWEEP_GUARD_K = 8      # conjecture-1 domain is GF(5^k) itself
MU_GUARD_K = 8                  # circle-only checks (modulus table caps at 6)
SEARCH_GUARD_K = 4


class ProfileMismatchError(NihoPermError):
    """Direct trace/norm values disagree with the closed formulas."""

    def __init__(self, message: str, witness: dict):
        super().__init__(message)
        self.witness = witness


def is_square(x: FieldElement) -> bool:
    """Nonzero square test by the (order-1)/2 power."""
    if x.is_zero:
        raise UsageError("square test applies to nonzero elements")
    return x ** ((x.field.order - 1) // 2) == x.field.one


# ---------------------------------------------------------------------------
# conjecture 1: x*((x^2-x+2)/(x^2+x+2))^2 on GF(5^k), odd k

@timed
def conjecture1_check(k: int, force: bool = False) -> VerificationReport:
    """Exhaustive permutation and square-class stability sweep on GF(5^k)."""
    if k % 2 == 0:
        raise UsageError(f"the subfield map claim needs odd k (got {k})")
    if k > SUBFIELD_SWEEP_GUARD_K and not force:
        raise GuardExceededError(
            f"subfield sweep guarded at k <= {SUBFIELD_SWEEP_GUARD_K}")
    field = make_field(k)
    kern = field.accel_tables
    if kern is None:
        raise UsageError("subfield sweep needs acceleration tables (k <= 8)")
    subject = f"x*((x^2-x+2)/(x^2+x+2))^2 permutes GF(5^{k})"
    n1 = kern.n1
    logs = np.arange(n1, dtype=np.int64)
    x_ids = kern.antilog[logs]
    sq = kern.bpow(x_ids, 2)
    two = kern.from_digits([2])
    num = kern.badd(kern.badd(sq, kern.bneg(x_ids)), np.full(n1, two))
    den = kern.badd(kern.badd(sq, x_ids), np.full(n1, two))
    poles = np.nonzero(den == 0)[0]
    if poles.size:
        x = field.from_index(int(x_ids[poles[0]]))
        return VerificationReport(
            subject=subject, method="exhaustive", passed=False,
            witness={"type": "pole", "x": x.csv()},
            counts={"elements": field.order})
    ratio = kern.bmul(num, kern.binv(den))
    vals = kern.bmul(x_ids, kern.bmul(ratio, ratio))
    # permutation over the full field: 0 maps to 0, so nonzero values must
    # be nonzero and pairwise distinct
    counts = np.bincount(vals, minlength=field.order)
    if counts.max() > 1 or counts[0] > 0:
        dup = int(np.nonzero(counts > (1 if counts[0] == 0 else 0))[0][0])
        positions = np.nonzero(vals == dup)[0][:2]
        wit = {"type": "collision",
               "x1": field.from_index(int(x_ids[positions[0]])).csv(),
               "x2": field.from_index(int(x_ids[positions[-1]])).csv()
               if positions.size > 1 else "0" * 1}
        return VerificationReport(subject=subject, method="exhaustive",
                                  passed=False, witness=wit,
                                  counts={"elements": field.order})
    # square-class stability: squares sit at even logs, twice-squares at odd
    val_logs = kern.logt[vals]
    stable = ((logs % 2) == (val_logs % 2)).all()
    if not stable:
        bad = int(np.nonzero((logs % 2) != (val_logs % 2))[0][0])
        return VerificationReport(
            subject=subject, method="exhaustive", passed=False,
            witness={"type": "class_escape",
                     "x": field.from_index(int(x_ids[bad])).csv()},
            counts={"elements": field.order})
    return VerificationReport(
        subject=subject, method="exhaustive", passed=True,
        counts={"elements": field.order, "square_class_stable": 1},
        notes=["0 fixed; square and non-square classes each map into "
               "themselves"])


# ---------------------------------------------------------------------------
# conjecture 2: -x*((x^2-2)/(x^2+2))^2 on the circle, even k

@timed
def conjecture2_check(k: int) -> VerificationReport:
    if k % 2 == 1:
        raise UsageError(f"the circle map claim needs even k (got {k})")
    if k > MU_GUARD_K:
        raise GuardExceededError(f"circle checks guarded at k <= {MU_GUARD_K}")
    group = unity_group(tower_field(k))
    from .unity import unity_permutation_report
    return unity_permutation_report(build_map("conj2_map", k), group, "mu")


# ---------------------------------------------------------------------------
# trace/norm profile chain for the first conditional family

@dataclass(frozen=True)
class TraceNormProfile:
    """Subfield data of one point under x + x^(2(q-1)+1) - x^((q-1)(q-1)+1)."""

    a: FieldElement          # Tr(x)
    b: FieldElement          # N(x), nonzero off the subfield
    alpha: FieldElement      # Tr(f(x))
    beta: FieldElement       # N(f(x))
    r: FieldElement          # a^2/b
    gamma: FieldElement      # alpha^2/beta


def profile_of(x: FieldElement, family: str = "P1") -> TraceNormProfile:
    """Compute the profile both directly and by the closed formulas.

    The two routes must agree and gamma must equal
    -r*((r^2-r+2)/(r^2+r+2))^2; any mismatch raises ProfileMismatchError
    with the witness point.
    """
    if family != "P1":
        raise UsageError(f"profiles are defined for family P1, not {family!r}")
    field = x.field
    k = field.subfield_degree
    if k is None or k % 2 == 0:
        raise UsageError("profiles need a tower field with odd k")
    if in_subfield(x):
        raise UsageError("profile points must lie outside the subfield")
    f = theorem_family("P1", k)
    fx = eval_trinomial(f, x)
    a, b = trace(x), norm(x)
    alpha_d, beta_d = trace(fx), norm(fx)
    binv = b.inverse()
    r = a * a * binv
    alpha_f = a * (3 + a * a * binv - (a * a * binv) ** 2)
    beta_f = b * (1 - (a * a * binv) ** 4
                  - 2 * (a * a * binv) ** 3 + a * a * binv)
    if alpha_d != alpha_f or beta_d != beta_f:
        raise ProfileMismatchError(
            "direct trace/norm of f(x) disagrees with the closed formulas",
            witness={"x": x.csv(), "alpha_direct": alpha_d.csv(),
                     "alpha_formula": alpha_f.csv(),
                     "beta_direct": beta_d.csv(),
                     "beta_formula": beta_f.csv()})
    if beta_d.is_zero:
        raise ProfileMismatchError(
            "beta vanished off the subfield", witness={"x": x.csv()})
    gamma = alpha_d * alpha_d * beta_d.inverse()
    den = r * r + r + 2
    if den.is_zero:
        raise ProfileMismatchError(
            "r^2 + r + 2 vanished", witness={"x": x.csv(), "r": r.csv()})
    closed = -(r * ((r * r - r + 2) / den) ** 2)
    if gamma != closed:
        raise ProfileMismatchError(
            "gamma does not match -r*((r^2-r+2)/(r^2+r+2))^2",
            witness={"x": x.csv(), "gamma": gamma.csv(),
                     "closed": closed.csv()})
    return TraceNormProfile(a=a, b=b, alpha=alpha_d, beta=beta_d, r=r,
                            gamma=gamma)


@timed
def profile_sweep_report(k: int) -> VerificationReport:
    """Profile chain over every x outside the subfield, vectorized."""
    if k % 2 == 0:
        raise UsageError(f"the profile chain needs odd k (got {k})")
    field = tower_field(k)
    kern = field.accel_tables
    if kern is None:
        raise UsageError("profile sweep needs acceleration tables (k <= 4)")
    q = field.q
    n1 = kern.n1
    subject = f"trace/norm profile chain over GF(5^{2*k}) minus GF(5^{k})"
    logs = np.arange(n1, dtype=np.int64)
    off = logs[(logs * q) % n1 != logs]        # x with x^q != x
    x_ids = kern.antilog[off]
    xq_ids = kern.antilog[(off * q) % n1]
    a = kern.badd(x_ids, xq_ids)
    b = kern.antilog[(off * (q + 1)) % n1]
    f = theorem_family("P1", k)
    fx = None
    for (sign, _), e in zip(f.terms, f.exponents):
        rows = kern.antilog[(off * (e % n1)) % n1]
        rows = rows if sign > 0 else kern.bneg(rows)
        fx = rows if fx is None else kern.badd(fx, rows)
    if np.any(fx == 0):
        bad = int(np.nonzero(fx == 0)[0][0])
        return VerificationReport(
            subject=subject, method="exhaustive", passed=False,
            witness={"type": "zero_image",
                     "x": field.from_index(int(x_ids[bad])).csv()},
            counts={"points": off.size})
    lf = kern.logt[fx]
    fxq = kern.antilog[(lf * q) % n1]
    alpha_d = kern.badd(fx, fxq)
    beta_d = kern.bmul(fx, fxq)
    rr = kern.bmul(kern.bpow(a, 2), kern.binv(b))     # a^2/b
    three = np.full(off.size, kern.from_digits([3]), dtype=np.int64)
    alpha_f = kern.bmul(a, kern.badd(kern.badd(three, rr),
                                     kern.bneg(kern.bpow(rr, 2))))
    one = np.full(off.size, kern.one, dtype=np.int64)
    beta_f = kern.bmul(b, kern.badd(
        kern.badd(one, kern.bneg(kern.bpow(rr, 4))),
        kern.badd(kern.bscale(kern.bpow(rr, 3), 3), rr)))
    mism = np.nonzero((alpha_d != alpha_f) | (beta_d != beta_f))[0]
    if mism.size:
        bad = int(mism[0])
        return VerificationReport(
            subject=subject, method="exhaustive", passed=False,
            witness={"type": "route_mismatch",
                     "x": field.from_index(int(x_ids[bad])).csv()},
            counts={"points": off.size})
    if np.any(beta_d == 0):
        bad = int(np.nonzero(beta_d == 0)[0][0])
        return VerificationReport(
            subject=subject, method="exhaustive", passed=False,
            witness={"type": "zero_beta",
                     "x": field.from_index(int(x_ids[bad])).csv()},
            counts={"points": off.size})
    gamma = kern.bmul(kern.bpow(alpha_d, 2), kern.binv(beta_d))
    two = np.full(off.size, kern.from_digits([2]), dtype=np.int64)
    num = kern.badd(kern.badd(kern.bpow(rr, 2), kern.bneg(rr)), two)
    den = kern.badd(kern.badd(kern.bpow(rr, 2), rr), two)
    if np.any(den == 0):
        bad = int(np.nonzero(den == 0)[0][0])
        return VerificationReport(
            subject=subject, method="exhaustive", passed=False,
            witness={"type": "pole", "x": field.from_index(
                int(x_ids[bad])).csv()},
            counts={"points": off.size})
    closed = kern.bneg(kern.bmul(rr, kern.bpow(kern.bmul(num, kern.binv(den)),
                                               2)))
    mism = np.nonzero(gamma != closed)[0]
    if mism.size:
        bad = int(mism[0])
        return VerificationReport(
            subject=subject, method="exhaustive", passed=False,
            witness={"type": "gamma_mismatch",
                     "x": field.from_index(int(x_ids[bad])).csv()},
            counts={"points": off.size})
    return VerificationReport(subject=subject, method="exhaustive",
                              passed=True, counts={"points": off.size})


@timed
def subfield_stability_report(k: int) -> VerificationReport:
    """f(x) stays off the subfield whenever x is off it (family P1)."""
    if k % 2 == 0:
        raise UsageError(f"stability fact needs odd k (got {k})")
    field = tower_field(k)
    kern = field.accel_tables
    if kern is None:
        raise UsageError("stability sweep needs acceleration tables (k <= 4)")
    q = field.q
    n1 = kern.n1
    subject = f"P1 maps GF(5^{2*k}) minus GF(5^{k}) into itself"
    logs = np.arange(n1, dtype=np.int64)
    off = logs[(logs * q) % n1 != logs]
    f = theorem_family("P1", k)
    fx = None
    for (sign, _), e in zip(f.terms, f.exponents):
        rows = kern.antilog[(off * (e % n1)) % n1]
        rows = rows if sign > 0 else kern.bneg(rows)
        fx = rows if fx is None else kern.badd(fx, rows)
    in_sub = fx == 0
    nz = ~in_sub
    lf = kern.logt[fx[nz]]
    in_sub[nz] = (lf * q) % n1 == lf
    if np.any(in_sub):
        bad = int(np.nonzero(in_sub)[0][0])
        x = field.from_index(int(kern.antilog[off[bad]]))
        return VerificationReport(
            subject=subject, method="exhaustive", passed=False,
            witness={"type": "subfield_image", "x": x.csv()},
            counts={"points": off.size})
    return VerificationReport(subject=subject, method="exhaustive",
                              passed=True, counts={"points": off.size})


@timed
def quartic_obstruction_report(k: int) -> VerificationReport:
    """x^4+2x^3+x^2+2x+1 has no root on the circle (its roots have order 13,
    and 13 never divides q+1 for odd k)."""
    if k % 2 == 0:
        raise UsageError(f"obstruction fact needs odd k (got {k})")
    group = unity_group(tower_field(k))
    q = group.q
    g13 = math.gcd(13, q + 1)
    vals = _sparse_on_unity(group, range(group.n),
                            ((1, 4), (2, 3), (1, 2), (2, 1), (1, 0)))
    if isinstance(vals, np.ndarray):
        zero = np.nonzero(vals == 0)[0]
        bad = int(zero[0]) if zero.size else None
    else:
        bad = next((i for i, v in enumerate(vals) if v == 0), None)
    subject = f"no circle root of x^4+2x^3+x^2+2x+1 at k={k}"
    if bad is not None or g13 != 1:
        return VerificationReport(
            subject=subject, method="enumeration", passed=False,
            witness={"type": "root", "index": bad,
                     "gcd_13": g13},
            counts={"points": group.n})
    return VerificationReport(
        subject=subject, method="enumeration", passed=True,
        counts={"points": group.n}, notes=[f"gcd(13, q+1) = {g13}"])


# ---------------------------------------------------------------------------
# the two conditional families

@timed
def proposition_check(prop_id: str, k: int) -> VerificationReport:
    """Verify a conditional family and its proof-path reductions at one k."""
    if prop_id not in ("P1", "P2"):
        raise UsageError(f"unknown proposition id {prop_id!r}; valid: P1, P2")
    f = theorem_family(prop_id, k)     # parity guard lives here
    reports = [is_permutation_via_criterion(f)]
    if k <= EXHAUSTIVE_GUARD_K:
        reports.append(is_permutation_exhaustive(f))
    group = unity_group(f.field)
    if prop_id == "P1":
        if k <= EXHAUSTIVE_GUARD_K:
            reports.append(subfield_stability_report(k))
            reports.append(profile_sweep_report(k))
        reports.append(quartic_obstruction_report(k))
        reports.append(maps_agree_report(
            induced_mu_map(f), build_map("p1_bridge", k), group, "mu"))
    else:
        n = group.n
        g3 = math.gcd(3, n)
        reports.append(VerificationReport(
            subject=f"cube map permutes the circle at k={k}",
            method="integer", passed=g3 == 1,
            witness=None if g3 == 1 else {"type": "gcd", "gcd": g3},
            counts={"gcd_3_q_plus_1": g3}))
        g10 = build_map("g10", k)
        bridge = build_map("p2_bridge", k)
        cube_indices = [(3 * i) % n for i in range(n)]
        va, bad_a = eval_on_unity(g10, group, cube_indices)
        vb, bad_b = eval_on_unity(bridge, group, range(n))
        subject = f"g10 after the cube map matches its closed form at k={k}"
        if bad_a is not None or bad_b is not None:
            i = bad_a if bad_a is not None else bad_b
            reports.append(VerificationReport(
                subject=subject, method="enumeration", passed=False,
                witness={"type": "zero_or_pole", "index": i},
                counts={"points": n}))
        else:
            if isinstance(va, np.ndarray):
                diff = np.nonzero(np.asarray(va) != np.asarray(vb))[0]
                bad = int(diff[0]) if diff.size else None
            else:
                bad = next((p for p in range(n) if va[p] != vb[p]), None)
            reports.append(VerificationReport(
                subject=subject, method="enumeration", passed=bad is None,
                witness=None if bad is None else
                {"type": "mismatch", "index": bad},
                counts={"points": n}))
    return combine_reports(f"{prop_id} at k={k} (conditional family)",
                           "criterion+oracle+reductions", reports)


# ---------------------------------------------------------------------------
# the (s, t, sign) search harness

_SIGN_CHARS = {"+": 1, "-": -1}
CONSTRAINTS = ("none", "sum_zero", "sum_half")


@dataclass(frozen=True, order=True)
class SearchHit:
    s: int
    t: int
    sign1: str
    sign2: str


def _patterns_of(sign_pattern: str) -> tuple[tuple[int, int], ...]:
    if sign_pattern == "all":
        return ((1, 1), (1, -1), (-1, 1), (-1, -1))
    if (len(sign_pattern) == 2 and sign_pattern[0] in _SIGN_CHARS
            and sign_pattern[1] in _SIGN_CHARS):
        return ((_SIGN_CHARS[sign_pattern[0]], _SIGN_CHARS[sign_pattern[1]]),)
    raise UsageError(
        f"sign pattern must be two of +/- or 'all', got {sign_pattern!r}")


def _t_values(s: int, constraint: str, n: int) -> range | list[int]:
    if constraint == "none":
        return range(n)
    if constraint == "sum_zero":
        return [(-s) % n]
    if constraint == "sum_half":
        return [(n // 2 - s) % n]
    raise UsageError(
        f"unknown constraint {constraint!r}; valid: {', '.join(CONSTRAINTS)}")


def _search_range_table(k: int, s_lo: int, s_hi: int, constraint: str,
                        patterns) -> list[SearchHit]:
    field = tower_field(k)
    kern = field.accel_tables
    group = unity_group(field)
    n = group.n
    mu_digits = kern.digit_rows[group.ids]
    eye = np.arange(n, dtype=np.int64)
    ones_row = np.zeros((1, field.m), dtype=np.int16)
    ones_row[0, 0] = 1
    hits: list[SearchHit] = []
    for s in range(s_lo, s_hi):
        s_rows = {}
        for l1, l2 in patterns:
            key = 1 if l1 > 0 else CHAR - 1
            if key not in s_rows:
                s_rows[key] = mu_digits[(eye * s) % n].astype(np.int16) * key
        t_list = np.asarray(list(_t_values(s, constraint, n)), dtype=np.int64)
        idx_t = (t_list[:, None] * eye[None, :]) % n
        rows_t = mu_digits[idx_t].astype(np.int16)
        for l1, l2 in patterns:
            a_rows = s_rows[1 if l1 > 0 else CHAR - 1]
            b_rows = rows_t if l2 > 0 else rows_t * (CHAR - 1)
            h = (ones_row[None, :, :] + a_rows[None, :, :] + b_rows) % CHAR
            ids = h.astype(np.int64) @ kern.pow5
            zero_rows = (ids == 0).any(axis=1)
            logs_h = kern.logt[ids]
            j = (eye[None, :] + logs_h) % n
            offs = j + (np.arange(len(t_list))[:, None]) * n
            cnt = np.bincount(offs.ravel(), minlength=len(t_list) * n)
            ok = (cnt.reshape(len(t_list), n).max(axis=1) == 1) & ~zero_rows
            for pos in np.nonzero(ok)[0]:
                hits.append(SearchHit(
                    s=s, t=int(t_list[pos]),
                    sign1="+" if l1 > 0 else "-",
                    sign2="+" if l2 > 0 else "-"))
    hits.sort()
    return hits


def _search_range_scalar(k: int, s_lo: int, s_hi: int, constraint: str,
                         patterns) -> list[SearchHit]:
    from .trinomials import build_trinomial
    n = CHAR ** k + 1
    hits = []
    for s in range(s_lo, s_hi):
        for t in _t_values(s, constraint, n):
            for l1, l2 in patterns:
                f = build_trinomial(k, [(1, 0), (l1, s), (l2, t)])
                if is_permutation_via_criterion(f).passed:
                    hits.append(SearchHit(
                        s=s, t=t, sign1="+" if l1 > 0 else "-",
                        sign2="+" if l2 > 0 else "-"))
    hits.sort()
    return hits


def _search_chunk(args) -> list[SearchHit]:
    k, s_lo, s_hi, constraint, patterns, use_tables = args
    if use_tables:
        return _search_range_table(k, s_lo, s_hi, constraint, patterns)
    return _search_range_scalar(k, s_lo, s_hi, constraint, patterns)


def search_problem_instances(k: int, constraint: str = "none",
                             sign_pattern: str = "all",
                             guard: int = SEARCH_GUARD_K, force: bool = False,
                             threads: int = 1) -> list[SearchHit]:
    """All residue pairs whose trinomial passes the subgroup criterion.

    t is determined by s under the sum constraints; the full square is
    enumerated otherwise.  Output order is ascending (s, t, sign pattern)
    and is independent of the worker count.
    """
    if constraint not in CONSTRAINTS:
        raise UsageError(
            f"unknown constraint {constraint!r}; valid: {', '.join(CONSTRAINTS)}")
    if k > guard and not force:
        raise GuardExceededError(
            f"search guarded at k <= {guard}; pass force to override")
    patterns = _patterns_of(sign_pattern)
    field = tower_field(k)
    unity_group(field)                 # build before any fork
    use_tables = field.accel_tables is not None
    n = CHAR ** k + 1
    threads = max(1, int(threads))
    if threads == 1:
        return _search_chunk((k, 0, n, constraint, patterns, use_tables))
    bounds = np.linspace(0, n, threads + 1, dtype=int)
    chunks = [(k, int(lo), int(hi), constraint, patterns, use_tables)
              for lo, hi in zip(bounds[:-1], bounds[1:]) if lo < hi]
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(processes=threads) as pool:
        parts = pool.map(_search_chunk, chunks)
    out: list[SearchHit] = []
    for part in parts:
        out.extend(part)
    return out
