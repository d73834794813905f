"""The (q+1)-th roots of unity in GF(5^{2k}): enumeration, split halves,
named fractional maps, and permutation verdicts.

The circle mu_{q+1} is enumerated once per field as the powers of
zeta = g^(q-1); the square half Omega+ sits at even power indices and its
negation Omega- at odd ones.  Maps come in two shapes: closed rational
forms sign * x^pre * (num/den)^outer, and (q-1)-power forms x * h(x)^(q-1)
driven by a sparse signed h.  Power forms on the circle never leave it
unless h vanishes, which is reported as a zero witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import PoleError, UsageError
from .field import CHAR, FieldElement, FieldParams, factorize, tower_field
from .report import VerificationReport, combine_reports, timed
from .residues import resolve_residue


def batch_inverse(kernel, vals: Sequence[int]) -> list[int]:
    """Invert many nonzero handles with 3(n-1) multiplications and one inversion."""
    n = len(vals)
    if n == 0:
        return []
    prefix = [0] * n
    acc = vals[0]
    prefix[0] = acc
    mul = kernel.mul
    for i in range(1, n):
        acc = mul(acc, vals[i])
        prefix[i] = acc
    inv_acc = kernel.inv(acc)
    out = [0] * n
    for i in range(n - 1, 0, -1):
        out[i] = mul(inv_acc, prefix[i - 1])
        inv_acc = mul(inv_acc, vals[i])
    out[0] = inv_acc
    return out


class UnityGroup:
    """mu_{q+1} inside GF(5^{2k}), in zeta-power order, with its halves."""

    def __init__(self, field: FieldParams):
        if field.subfield_degree is None:
            raise UsageError(f"{field!r} has no quadratic tower structure")
        self.field = field
        self.k = field.subfield_degree
        self.q = field.q
        self.n = self.q + 1
        kern = field.kernel
        self.zeta = kern.pow(kern.generator_handle, self.q - 1)
        for r in set(factorize(self.n)):
            if kern.pow(self.zeta, self.n // r) == kern.one:
                raise UsageError("zeta does not have full order q+1")
        if kern.has_tables:
            logs = (np.arange(self.n, dtype=np.int64) * (self.q - 1)) % kern.n1
            self.ids = kern.antilog[logs]
            self.elements = self.ids.tolist()
        else:
            elems = [kern.one]
            cur = kern.one
            for _ in range(self.n - 1):
                cur = kern.mul(cur, self.zeta)
                elems.append(cur)
            self.elements = elems
            self.ids = None
        self.index = {h: i for i, h in enumerate(self.elements)}
        if len(self.index) != self.n:
            raise UsageError("unity subgroup enumeration collided")

    def __repr__(self):
        return f"mu_{self.n} in {self.field!r}"

    @property
    def omega_plus(self) -> range:
        """Indices of the squares in mu (zeta^even)."""
        return range(0, self.n, 2)

    @property
    def omega_minus(self) -> range:
        """Indices of the negated squares (zeta^odd; -1 = zeta^((q+1)/2), odd)."""
        return range(1, self.n, 2)

    def domain_indices(self, name: str) -> range:
        if name == "mu":
            return range(self.n)
        if name == "omega_plus":
            return self.omega_plus
        if name == "omega_minus":
            return self.omega_minus
        raise UsageError(f"unknown unity domain {name!r}")

    def handle(self, i: int) -> int:
        return self.elements[i % self.n]

    def element(self, i: int) -> FieldElement:
        return FieldElement(self.field, self.handle(i))

    def contains_handle(self, h: int) -> bool:
        return h in self.index

    def members(self, indices) -> list[FieldElement]:
        return [self.element(i) for i in indices]


def unity_group(field: FieldParams) -> UnityGroup:
    """Enumerate (or fetch the cached) mu_{q+1} of a tower field."""
    if field._unity is None:
        field._unity = UnityGroup(field)
    return field._unity


# ---------------------------------------------------------------------------
# map shapes

@dataclass(frozen=True)
class ClosedFormMap:
    """sign * x^pre_exp * (num(x)/den(x))^outer with sparse num and den."""

    name: str
    sign: int
    pre_exp: int
    num: tuple[tuple[int, int], ...]     # (coeff mod 5, exponent)
    den: tuple[tuple[int, int], ...]
    outer: int = 2
    domain: str = "mu"
    parity: str = "any"

    def eval_at(self, x: FieldElement) -> FieldElement:
        num = _sparse_at(self.num, x)
        den = _sparse_at(self.den, x)
        if den.is_zero:
            raise PoleError(f"{self.name} has a pole at {x.csv()}", witness=x)
        val = (num / den) ** self.outer * x ** self.pre_exp
        return -val if self.sign < 0 else val


@dataclass(frozen=True)
class PowerFormMap:
    """x * h(x)^(subgroup exponent) with h a sparse signed polynomial."""

    name: str
    h_terms: tuple[tuple[int, int], ...]  # (sign, c) residues mod the subgroup order
    domain: str = "mu"
    parity: str = "any"

    def h_at(self, x: FieldElement) -> FieldElement:
        acc = x.field.zero
        for sign, c in self.h_terms:
            t = x ** c
            acc = acc + t if sign > 0 else acc - t
        return acc

    def eval_at(self, x: FieldElement) -> FieldElement:
        q = x.field.q
        return x * self.h_at(x) ** (q - 1)


FractionalMap = ClosedFormMap | PowerFormMap


def _sparse_at(terms, x: FieldElement) -> FieldElement:
    acc = x.field.zero
    for coeff, e in terms:
        acc = acc + x.field.scalar(coeff) * x ** e
    return acc


def eval_map(map_: FractionalMap, x: FieldElement) -> FieldElement:
    """Exact evaluation of a named map at one point (PoleError on a pole)."""
    return map_.eval_at(x)


# ---------------------------------------------------------------------------
# catalog

_IDENT = ((1, "0"),)

MAP_SPECS: dict[str, dict] = {
    "g1": dict(kind="closed", parity="any", sign=-1, pre="(q+1)/2",
               num=((1, "(q+3)/4"), (-2, "0")),
               den=((1, "(q+3)/4"), (2, "0"))),
    "g2": dict(kind="power", parity="any",
               h=((1, "1"), (1, "3*(q-1)/4+2"), (-1, "(q+1)/2"))),
    "g3": dict(kind="power", parity="odd",
               h=((1, "0"), (1, "(q-1)/2"), (-1, "(q+3)/2"))),
    "g4": dict(kind="power", parity="odd",
               h=((1, "1"), (1, "(q+5)/2"), (-1, "(q+1)/2"))),
    "g5": dict(kind="power", parity="odd",
               h=((1, "0"), (-1, "(q+3)/2"), (1, "-1"))),
    "g6": dict(kind="power", parity="odd",
               h=((1, "1"), (-1, "(q+1)/2"), (1, "2"))),
    "g7": dict(kind="power", parity="even",
               h=((1, "0"), (-1, "2"), (1, "(q+3)/2"))),
    "g8": dict(kind="power", parity="even",
               h=((1, "1"), (-1, "-1"), (1, "(q+1)/2"))),
    "g9": dict(kind="power", parity="even",
               h=((1, "0"), (1, "1"), (-1, "(q-1)/2"))),
    "g10": dict(kind="power", parity="even",
                h=((1, "0"), (-1, "(q+2)/3+1"), (-1, "2*(q+2)/3"))),
    # internal closed forms used by claims, cross-checks and bridges
    "identity": dict(kind="closed", parity="any", sign=1, pre="1",
                     num=_IDENT, den=_IDENT, outer=1, internal=True),
    "half_f": dict(kind="closed", parity="any", sign=-1, pre="1",
                   num=((1, "1"), (-2, "0")), den=((1, "1"), (2, "0")),
                   internal=True),
    "half_g": dict(kind="closed", parity="any", sign=-1, pre="1",
                   num=((1, "1"), (2, "0")), den=((1, "1"), (-2, "0")),
                   internal=True),
    "half_f_inv": dict(kind="closed", parity="any", sign=-1, pre="-1",
                       num=((1, "1"), (-2, "0")), den=((1, "1"), (2, "0")),
                       internal=True),
    "half_g_inv": dict(kind="closed", parity="any", sign=-1, pre="-1",
                       num=((1, "1"), (2, "0")), den=((1, "1"), (-2, "0")),
                       internal=True),
    "g1_plus": dict(kind="closed", parity="any", sign=-1, pre="0",
                    num=((1, "(q+3)/4"), (-2, "0")),
                    den=((1, "(q+3)/4"), (2, "0")), internal=True),
    "g1_minus": dict(kind="closed", parity="any", sign=1, pre="0",
                     num=((1, "(q+3)/4"), (-2, "0")),
                     den=((1, "(q+3)/4"), (2, "0")), internal=True),
    "conj2_map": dict(kind="closed", parity="even", sign=-1, pre="1",
                      num=((1, "2"), (-2, "0")), den=((1, "2"), (2, "0")),
                      internal=True),
    "p1_bridge": dict(kind="closed", parity="odd", sign=-1, pre="1",
                      num=((1, "2"), (2, "0")), den=((1, "2"), (-2, "0")),
                      internal=True),
    "p2_bridge": dict(kind="closed", parity="even", sign=-1, pre="-1",
                      num=((1, "2"), (2, "0")), den=((1, "2"), (-2, "0")),
                      internal=True),
}

PUBLIC_MAP_NAMES = tuple(f"g{i}" for i in range(1, 11))

# uniform power form vs the half-specific closed forms from the proofs'
# case splits; checked pointwise on the parity the derivation covers
OMEGA_SPECIALIZATIONS: dict[str, dict[str, str]] = {
    "g1": {"omega_plus": "g1_plus", "omega_minus": "g1_minus"},
    "g3": {"omega_plus": "half_f", "omega_minus": "half_g"},
    "g5": {"omega_plus": "half_f", "omega_minus": "identity"},
    "g7": {"omega_plus": "half_f_inv", "omega_minus": "half_g_inv"},
    "g9": {"omega_plus": "half_g", "omega_minus": "identity"},
}


def build_map(name: str, k: int) -> FractionalMap:
    """Resolve a catalog map's residue expressions for a concrete k."""
    spec = MAP_SPECS.get(name)
    if spec is None:
        raise UsageError(
            f"unknown map {name!r}; valid maps: {', '.join(PUBLIC_MAP_NAMES)}")
    q = CHAR ** k
    n = q + 1
    parity = spec["parity"]
    if spec["kind"] == "power":
        terms = tuple((s, resolve_residue(e, q, k, modulus=n))
                      for s, e in spec["h"])
        return PowerFormMap(name=name, h_terms=terms, parity=parity)
    resolve = lambda e: resolve_residue(e, q, k, modulus=n)
    num = tuple((c % CHAR, resolve(e)) for c, e in spec["num"])
    den = tuple((c % CHAR, resolve(e)) for c, e in spec["den"])
    return ClosedFormMap(
        name=name, sign=spec["sign"], pre_exp=resolve(spec["pre"]),
        num=num, den=den, outer=spec.get("outer", 2), parity=parity)


# ---------------------------------------------------------------------------
# batched evaluation over unity indices

def _sparse_on_unity(group: UnityGroup, indices, terms):
    """Values of sum coeff * x^e at x = zeta^i for i in indices."""
    n = group.n
    kern = group.field.kernel
    if kern.has_tables:
        idx = np.asarray(indices, dtype=np.int64)
        acc = None
        for coeff, e in terms:
            rows = kern.digit_rows[group.ids[(idx * (e % n)) % n]]
            rows = rows.astype(np.int16) * (coeff % CHAR)
            acc = rows if acc is None else acc + rows
        return (acc % CHAR).astype(np.int64) @ kern.pow5
    elems = group.elements
    # constant terms (exponent 0 mod n) are the same at every circle point
    const = kern.zero
    varying = []
    for coeff, e in terms:
        if e % n == 0:
            const = kern.add(const, kern.from_digits([coeff]))
        else:
            varying.append((coeff % CHAR, e % n))
    add, scale = kern.add, kern.scale
    out = []
    for i in indices:
        acc = const
        for coeff, e in varying:
            v = elems[(i * e) % n]
            acc = add(acc, v if coeff == 1 else scale(v, coeff))
        out.append(acc)
    return out


def eval_power_on_unity(map_: PowerFormMap, group: UnityGroup, indices):
    """Power-form values on unity points; returns (values, zero_index).

    Values are handles.  If h vanishes at some point the first such index is
    returned and values is None (the image would leave the circle).
    """
    terms = tuple((1 if s > 0 else CHAR - 1, c) for s, c in map_.h_terms)
    h_vals = _sparse_on_unity(group, indices, terms)
    kern = group.field.kernel
    n = group.n
    if kern.has_tables:
        idx = np.asarray(indices, dtype=np.int64)
        zeros = np.nonzero(h_vals == 0)[0]
        if zeros.size:
            return None, int(idx[zeros[0]])
        # x * h^(q-1) = zeta^(i + log_g h mod n): stays on the circle
        j = (idx + kern.logt[h_vals]) % n
        return group.ids[j], None
    out = []
    for pos, i in enumerate(indices):
        if h_vals[pos] == 0:
            return None, i
    inverses = batch_inverse(kern, h_vals)
    field = group.field
    for pos, i in enumerate(indices):
        hq = field.frob_handle(h_vals[pos])
        out.append(kern.mul(group.elements[i], kern.mul(hq, inverses[pos])))
    return out, None


def eval_closed_on_unity(map_: ClosedFormMap, group: UnityGroup, indices):
    """Closed-form values on unity points; returns (values, pole_index)."""
    kern = group.field.kernel
    n = group.n
    num_vals = _sparse_on_unity(group, indices, map_.num)
    den_vals = _sparse_on_unity(group, indices, map_.den)
    if kern.has_tables:
        idx = np.asarray(indices, dtype=np.int64)
        poles = np.nonzero(den_vals == 0)[0]
        if poles.size:
            return None, int(idx[poles[0]])
        r = kern.bmul(num_vals, kern.binv(den_vals))
        val = r
        for _ in range(map_.outer - 1):
            val = kern.bmul(val, r)
        val = kern.bmul(val, group.ids[(idx * (map_.pre_exp % n)) % n])
        if map_.sign < 0:
            val = kern.bneg(val)
        return val, None
    for pos, i in enumerate(indices):
        if den_vals[pos] == 0:
            return None, i
    inverses = batch_inverse(kern, den_vals)
    out = []
    mul, neg_, one = kern.mul, kern.neg, kern.one
    pre, outer, negate = map_.pre_exp % n, map_.outer, map_.sign < 0
    elems = group.elements
    for pos, i in enumerate(indices):
        r = mul(num_vals[pos], inverses[pos])
        val = r
        for _ in range(outer - 1):
            val = mul(val, r)
        factor = elems[(i * pre) % n]
        if factor != one:
            val = mul(val, factor)
        if negate:
            val = neg_(val)
        out.append(val)
    return out, None


def eval_on_unity(map_: FractionalMap, group: UnityGroup, indices):
    if isinstance(map_, PowerFormMap):
        return eval_power_on_unity(map_, group, indices)
    return eval_closed_on_unity(map_, group, indices)


# ---------------------------------------------------------------------------
# permutation verdicts

def _first_collision(values) -> tuple[int, int] | None:
    """Earliest (i, j), i < j with values[i] == values[j], by second position."""
    arr = np.asarray(values)
    order = np.argsort(arr, kind="stable")
    dup = np.nonzero(arr[order][1:] == arr[order][:-1])[0]
    if not dup.size:
        return None
    starts = dup[np.r_[True, np.diff(dup) != 1]]
    best = min(starts, key=lambda s: order[s + 1])
    return int(order[best]), int(order[best + 1])


def _verdict(subject: str, method: str, group: UnityGroup, indices,
             values, failure_index, failure_type: str,
             domain_set=None) -> VerificationReport:
    """Shared pass/fail logic: pole/zero beats escape beats collision order."""
    n_points = len(indices)
    counts = {"points": n_points}
    idx_list = list(indices)
    if values is None:
        x = group.element(failure_index)
        return VerificationReport(
            subject=subject, method=method, passed=False,
            witness={"type": failure_type, "x": x.csv(),
                     "index": failure_index},
            counts=counts)
    if domain_set is not None:
        if isinstance(values, np.ndarray):
            member = np.isin(values, domain_set)
            esc = np.nonzero(~member)[0]
            escape_pos = int(esc[0]) if esc.size else None
        else:
            escape_pos = None
            for pos, v in enumerate(values):
                if v not in domain_set:
                    escape_pos = pos
                    break
        if escape_pos is not None:
            i = idx_list[escape_pos]
            x = group.element(i)
            img = FieldElement(group.field, int(values[escape_pos])
                               if isinstance(values, np.ndarray)
                               else values[escape_pos])
            return VerificationReport(
                subject=subject, method=method, passed=False,
                witness={"type": "escape", "x": x.csv(), "index": i,
                         "image": img.csv()},
                counts=counts)
    if isinstance(values, np.ndarray):
        coll = _first_collision(values)
    else:
        seen: dict = {}
        coll = None
        for pos, v in enumerate(values):
            if v in seen:
                coll = (seen[v], pos)
                break
            seen[v] = pos
    if coll is not None:
        p1, p2 = coll
        i1, i2 = idx_list[p1], idx_list[p2]
        x1, x2 = group.element(i1), group.element(i2)
        img = FieldElement(group.field, int(values[p2])
                           if isinstance(values, np.ndarray) else values[p2])
        return VerificationReport(
            subject=subject, method=method, passed=False,
            witness={"type": "collision", "x1": x1.csv(), "x2": x2.csv(),
                     "index1": i1, "index2": i2, "value": img.csv()},
            counts=counts)
    return VerificationReport(subject=subject, method=method, passed=True,
                              counts=counts)


@timed
def unity_permutation_report(map_: FractionalMap, group: UnityGroup,
                             domain: str = "mu") -> VerificationReport:
    """Does the map permute the named subset of the circle?"""
    indices = group.domain_indices(domain)
    subject = f"{map_.name} on {domain} over {group.field!r}"
    values, bad = eval_on_unity(map_, group, indices)
    failure_type = "zero" if isinstance(map_, PowerFormMap) else "pole"
    if domain == "mu":
        if isinstance(map_, PowerFormMap):
            domain_set = None        # power forms cannot leave the circle
        else:
            domain_set = (group.ids if group.field.kernel.has_tables
                          else group.index)
    else:
        members = [group.elements[i] for i in indices]
        domain_set = (np.asarray(members, dtype=np.int64)
                      if group.field.kernel.has_tables else set(members))
    return _verdict(subject, "enumeration", group, indices, values, bad,
                    failure_type, domain_set)


def is_permutation_of(domain: Sequence[FieldElement],
                      map_: FractionalMap | Callable[[FieldElement], FieldElement],
                      subject: str | None = None) -> VerificationReport:
    """Injectivity plus image containment for an arbitrary element set.

    Deterministic evaluation order (domain order); a pole inside the domain
    is a failure witness, not a crash.
    """
    if not domain:
        raise UsageError("domain must be nonempty")
    fn = map_.eval_at if isinstance(map_, (ClosedFormMap, PowerFormMap)) else map_
    name = getattr(map_, "name", getattr(map_, "__name__", "map"))
    subject = subject or f"{name} on {len(domain)} points"
    handles = {x.handle for x in domain}
    seen: dict = {}
    for x in domain:
        try:
            y = fn(x)
        except PoleError as exc:
            return VerificationReport(
                subject=subject, method="enumeration", passed=False,
                witness={"type": "pole", "x": exc.witness.csv()},
                counts={"points": len(domain)})
        if y.handle not in handles:
            return VerificationReport(
                subject=subject, method="enumeration", passed=False,
                witness={"type": "escape", "x": x.csv(), "image": y.csv()},
                counts={"points": len(domain)})
        if y.handle in seen:
            return VerificationReport(
                subject=subject, method="enumeration", passed=False,
                witness={"type": "collision", "x1": seen[y.handle].csv(),
                         "x2": x.csv(), "value": y.csv()},
                counts={"points": len(domain)})
        seen[y.handle] = x
    return VerificationReport(subject=subject, method="enumeration",
                              passed=True, counts={"points": len(domain)})


# ---------------------------------------------------------------------------
# the named subset-permutation claims

CIRCLE_CLAIMS = {
    "circle": ("any", (("g1", "mu"),)),
    "halves-odd": ("odd", (("half_f", "omega_plus"), ("half_g", "omega_minus"))),
    "halves-even": ("even", (("half_f", "omega_minus"), ("half_g", "omega_plus"))),
}
_CLAIM_ALIASES = {"L3": "circle", "L4": "halves-odd", "L5": "halves-even"}


def check_circle_claim(claim: str, k: int) -> VerificationReport:
    """Run one of the three named subset-permutation claims at a given k."""
    claim = _CLAIM_ALIASES.get(claim, claim)
    if claim not in CIRCLE_CLAIMS:
        raise UsageError(
            f"unknown claim {claim!r}; valid: {sorted(CIRCLE_CLAIMS)}")
    parity, checks = CIRCLE_CLAIMS[claim]
    if parity == "odd" and k % 2 == 0:
        raise UsageError(f"claim {claim} is stated only where k is odd (got {k})")
    if parity == "even" and k % 2 == 1:
        raise UsageError(f"claim {claim} is stated only where k is even (got {k})")
    group = unity_group(tower_field(k))
    reports = [unity_permutation_report(build_map(name, k), group, dom)
               for name, dom in checks]
    return combine_reports(f"claim {claim} at k={k}", "enumeration", reports)


@timed
def reciprocal_identity_report(name_a: str, name_b: str,
                               k: int) -> VerificationReport:
    """Pointwise product of two maps equals 1 everywhere on the circle."""
    group = unity_group(tower_field(k))
    map_a, map_b = build_map(name_a, k), build_map(name_b, k)
    subject = f"{name_a}*{name_b} = 1 on mu over GF(5^{2*k})"
    va, bad_a = eval_on_unity(map_a, group, range(group.n))
    vb, bad_b = eval_on_unity(map_b, group, range(group.n))
    if bad_a is not None or bad_b is not None:
        i = bad_a if bad_a is not None else bad_b
        return VerificationReport(
            subject=subject, method="enumeration", passed=False,
            witness={"type": "zero", "x": group.element(i).csv(), "index": i},
            counts={"points": group.n})
    kern = group.field.kernel
    if kern.has_tables:
        prod = kern.bmul(np.asarray(va), np.asarray(vb))
        bad = np.nonzero(prod != kern.one)[0]
        bad_pos = int(bad[0]) if bad.size else None
    else:
        bad_pos = None
        for pos in range(group.n):
            if kern.mul(va[pos], vb[pos]) != kern.one:
                bad_pos = pos
                break
    if bad_pos is not None:
        return VerificationReport(
            subject=subject, method="enumeration", passed=False,
            witness={"type": "product_not_one",
                     "x": group.element(bad_pos).csv(), "index": bad_pos},
            counts={"points": group.n})
    return VerificationReport(subject=subject, method="enumeration",
                              passed=True, counts={"points": group.n})


@timed
def maps_agree_report(map_a: FractionalMap, map_b: FractionalMap,
                      group: UnityGroup, domain: str) -> VerificationReport:
    """Pointwise equality of two maps on a unity subset."""
    indices = group.domain_indices(domain)
    subject = (f"{map_a.name} = {map_b.name} on {domain} "
               f"over {group.field!r}")
    va, bad_a = eval_on_unity(map_a, group, indices)
    vb, bad_b = eval_on_unity(map_b, group, indices)
    if bad_a is not None or bad_b is not None:
        i = bad_a if bad_a is not None else bad_b
        return VerificationReport(
            subject=subject, method="enumeration", passed=False,
            witness={"type": "zero_or_pole", "x": group.element(i).csv(),
                     "index": i},
            counts={"points": len(indices)})
    if isinstance(va, np.ndarray):
        diff = np.nonzero(np.asarray(va) != np.asarray(vb))[0]
        bad_pos = int(diff[0]) if diff.size else None
    else:
        bad_pos = next((p for p in range(len(va)) if va[p] != vb[p]), None)
    if bad_pos is not None:
        i = list(indices)[bad_pos]
        return VerificationReport(
            subject=subject, method="enumeration", passed=False,
            witness={"type": "mismatch", "x": group.element(i).csv(),
                     "index": i},
            counts={"points": len(indices)})
    return VerificationReport(subject=subject, method="enumeration",
                              passed=True, counts={"points": len(indices)})


@timed
def mu_check_report(map_name: str, k: int) -> VerificationReport:
    """CLI entry: does the named catalog map permute the circle at this k?"""
    if map_name not in PUBLIC_MAP_NAMES:
        raise UsageError(
            f"unknown map {map_name!r}; valid maps: "
            f"{', '.join(PUBLIC_MAP_NAMES)}")
    map_ = build_map(map_name, k)
    group = unity_group(tower_field(k))
    return unity_permutation_report(map_, group, "mu")
