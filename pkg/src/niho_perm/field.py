"""Exact arithmetic in GF(5^m) and the quadratic tower GF(5^k) < GF(5^{2k}).

Elements live in the power basis of a validated primitive modulus.  Small
fields (5^m <= 5^8) get log/antilog/Zech acceleration tables built with
numpy; larger fields use packed power-basis arithmetic, one 32-bit limb per
base-5 digit, so that products reduce with whole-integer operations instead
of per-digit Python loops.  The digit vector is the canonical form either
way and the two representations are cross-checkable.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import FieldConstructionError, GuardExceededError, UsageError
from .report import VerificationReport, timed

CHAR = 5
MAX_DEGREE = 12
TABLE_LIMIT = CHAR ** 8

# One validated primitive modulus per degree, coefficients lowest-degree
# first, monic.  Degree 2 is pinned to x^2 + 4x + 2 so the documented GF(25)
# basis satisfies w^2 = w + 3; the rest are the smallest primitive monic in
# base-5 integer encoding.  Construction re-validates every entry.
PRIMITIVE_MODULI: dict[int, tuple[int, ...]] = {
    1: (3, 1),
    2: (2, 4, 1),
    3: (2, 3, 0, 1),
    4: (2, 2, 1, 0, 1),
    5: (2, 4, 0, 0, 0, 1),
    6: (2, 1, 0, 0, 0, 0, 1),
    7: (2, 3, 0, 0, 0, 0, 0, 1),
    8: (3, 2, 1, 0, 0, 0, 0, 0, 1),
    9: (3, 2, 1, 0, 0, 0, 0, 0, 0, 1),
    10: (3, 1, 1, 0, 0, 0, 0, 0, 0, 0, 1),
    11: (2, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    12: (3, 2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
}


# ---------------------------------------------------------------------------
# dense-list polynomial helpers over GF(5), used only for validation and
# construction (never on the hot path)

def _pstrip(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmulmod(a: list[int], b: list[int], f: Sequence[int]) -> list[int]:
    m = len(f) - 1
    if not a or not b:
        return []
    c = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                c[i + j] = (c[i + j] + ai * bj) % CHAR
    for d in range(len(c) - 1, m - 1, -1):
        cd = c[d]
        if cd:
            c[d] = 0
            for j in range(m):
                c[d - m + j] = (c[d - m + j] - cd * f[j]) % CHAR
    return _pstrip(c[:m])


def _ppowmod(a: list[int], e: int, f: Sequence[int]) -> list[int]:
    r, b = [1], list(a)
    while e:
        if e & 1:
            r = _pmulmod(r, b, f)
        b = _pmulmod(b, b, f)
        e >>= 1
    return r


def _psub(a: Sequence[int], b: Sequence[int]) -> list[int]:
    n = max(len(a), len(b))
    return _pstrip([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0))
                    % CHAR for i in range(n)])


def _pmod(a: Sequence[int], b: Sequence[int]) -> list[int]:
    a = list(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], CHAR - 2, CHAR)
    while a and len(a) - 1 >= db:
        d = len(a) - 1 - db
        c = a[-1] * inv_lead % CHAR
        for j in range(len(b)):
            a[d + j] = (a[d + j] - c * b[j]) % CHAR
        _pstrip(a)
    return a


def _pgcd(a: Sequence[int], b: Sequence[int]) -> list[int]:
    a, b = list(a), list(b)
    while b:
        a, b = b, _pmod(a, b)
    return a


def factorize(n: int) -> list[int]:
    """Prime factorization by trial division (inputs stay below 5^12)."""
    out, d = [], 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _validate_modulus(m: int, modulus: Sequence[int]) -> tuple[int, ...]:
    mod = tuple(int(c) for c in modulus)
    if len(mod) != m + 1:
        raise FieldConstructionError(
            f"modulus must have degree {m} (got {len(mod) - 1})")
    if any(not 0 <= c < CHAR for c in mod):
        raise FieldConstructionError("modulus digits must lie in 0..4")
    if mod[-1] != 1:
        raise FieldConstructionError("modulus must be monic")
    if m > 1:
        # irreducible iff x^(5^m) = x mod f and x^(5^(m/r)) - x is coprime
        # to f for every prime r | m
        frob = [[0, 1]]
        y = [0, 1]
        for _ in range(m):
            y2 = _pmulmod(y, y, mod)
            y = _pmulmod(_pmulmod(y2, y2, mod), y, mod)
            frob.append(y)
        if frob[m] != [0, 1]:
            raise FieldConstructionError(
                "modulus is reducible (x^(5^m) != x in the quotient)")
        for r in set(factorize(m)):
            g = _pgcd(_psub(frob[m // r], [0, 1]), mod)
            if len(g) > 1:
                raise FieldConstructionError(
                    f"modulus is reducible (shares a factor of degree "
                    f"dividing {m // r})")
    order = CHAR ** m - 1
    for r in sorted(set(factorize(order))):
        if _ppowmod([0, 1], order // r, mod) == [1]:
            raise FieldConstructionError(
                f"modulus is not primitive (root order divides {order // r})")
    return mod


# ---------------------------------------------------------------------------
# packed power-basis kernel (any degree)

_LIMB = 32
_LMASK = (1 << _LIMB) - 1
_DIV5 = 52429          # floor(v/5) = (v * 52429) >> 18, exact for v <= 81919
_DIV5_SHIFT = 18


class PolyKernel:
    """Power-basis arithmetic on integers packed one digit per 32-bit limb.

    Multiplication is a single big-integer product (the limb spacing keeps
    convolution sums exact), followed by modulus reduction rounds and a
    parallel per-limb reduction mod 5.  Safe because every intermediate limb
    stays below 81920.
    """

    has_tables = False

    def __init__(self, m: int, modulus: Sequence[int]):
        self.m = m
        self.modulus = tuple(modulus)
        self.order = CHAR ** m
        width = 2 * m
        self._shift = _LIMB * m
        self._low = (1 << self._shift) - 1
        ones_m = sum(1 << (_LIMB * i) for i in range(m))
        ones_w = sum(1 << (_LIMB * i) for i in range(width))
        self._threes = 3 * ones_m
        self._sel = 8 * ones_m
        self._fives = 5 * ones_m
        self._qmask = sum(0x3FFF << (_LIMB * i) for i in range(width))
        # x^m mod f, packed: drives the reduction rounds
        red = [(-c) % CHAR for c in modulus[:m]]
        self._rpack = self._pack(red)
        self.zero = 0
        self.one = 1
        self.generator_handle = 1 << _LIMB if m > 1 else self._pack(
            [(-modulus[0]) % CHAR])

    def _pack(self, digits: Iterable[int]) -> int:
        v = 0
        for i, d in enumerate(digits):
            v |= int(d) << (_LIMB * i)
        return v

    def _mod5(self, v: int) -> int:
        q = ((v * _DIV5) >> _DIV5_SHIFT) & self._qmask
        return v - 5 * q

    def from_digits(self, digits: Iterable[int]) -> int:
        return self._pack(d % CHAR for d in digits)

    def digits(self, h: int) -> tuple[int, ...]:
        return tuple((h >> (_LIMB * i)) & _LMASK for i in range(self.m))

    def from_index(self, idx: int) -> int:
        v = 0
        for i in range(self.m):
            idx, d = divmod(idx, CHAR)
            v |= d << (_LIMB * i)
        return v

    def to_index(self, h: int) -> int:
        v = 0
        for i in reversed(range(self.m)):
            v = v * CHAR + ((h >> (_LIMB * i)) & _LMASK)
        return v

    def add(self, a: int, b: int) -> int:
        t = a + b
        sel = (t + self._threes) & self._sel
        return t - ((sel >> 3) * 5)

    def neg(self, a: int) -> int:
        t = self._fives - a
        sel = (t + self._threes) & self._sel
        return t - ((sel >> 3) * 5)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def scale(self, a: int, c: int) -> int:
        c %= CHAR
        if c == 0:
            return 0
        return self._mod5(a * c)

    def mul(self, a: int, b: int) -> int:
        acc = self._mod5(a * b)
        hi = acc >> self._shift
        while hi:
            acc = self._mod5((acc & self._low) + hi * self._rpack)
            hi = acc >> self._shift
        return acc

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return self.one
            if e < 0:
                raise ZeroDivisionError("0 has no negative power")
            return 0
        e %= self.order - 1
        r, b = self.one, a
        while e:
            if e & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.order - 2)

    def linear_map(self, cols: Sequence[int], a: int) -> int:
        """Apply the GF(5)-linear map sending x^j to cols[j]."""
        acc = 0
        for i in range(self.m):
            d = (a >> (_LIMB * i)) & _LMASK
            if d:
                acc += d * cols[i]
        return self._mod5(acc)


# ---------------------------------------------------------------------------
# table-accelerated kernel (5^m <= TABLE_LIMIT)

class TableKernel:
    """Log/antilog/Zech tables over the packed base-5 index representation.

    Handles are plain integers in [0, 5^m): the base-5 digits are the power
    basis coordinates.  Scalar ops are table lookups; b* methods operate on
    whole numpy arrays of handles for the exhaustive sweeps.
    """

    has_tables = True

    def __init__(self, m: int, modulus: Sequence[int]):
        self.m = m
        self.modulus = tuple(modulus)
        self.order = CHAR ** m
        self.n1 = self.order - 1
        self.pow5 = np.array([CHAR ** i for i in range(m)], dtype=np.int64)
        digs = np.zeros((self.n1, m), dtype=np.int8)
        digs[0, 0] = 1
        gpoly = [0, 1] if m > 1 else [(-modulus[0]) % CHAR]
        filled = 1
        gblock = list(gpoly)  # generator^filled as a dense poly
        while filled < self.n1:
            step = min(filled, self.n1 - filled)
            # multiplication by generator^filled is linear: build its matrix
            mat = np.zeros((m, m), dtype=np.int64)
            col = list(gblock)
            basis = [1]
            for j in range(m):
                prod = _pmulmod(basis, gblock, modulus)
                mat[j, :len(prod)] = prod
                basis = _pmulmod(basis, [0, 1], modulus)
            digs[filled:filled + step] = (
                digs[:step].astype(np.int64) @ mat % CHAR).astype(np.int8)
            if filled + step < self.n1:
                gblock = _ppowmod(gpoly, 2 * filled, modulus)
            filled += step
        ids = digs.astype(np.int64) @ self.pow5
        self.antilog = ids                       # antilog[n] = id of g^n
        self.logt = np.full(self.order, -1, dtype=np.int64)
        self.logt[ids] = np.arange(self.n1, dtype=np.int64)
        self.digit_rows = np.zeros((self.order, m), dtype=np.int8)
        self.digit_rows[ids] = digs
        plus_one = digs.copy()
        plus_one[:, 0] = (plus_one[:, 0] + 1) % CHAR
        self.zech = self.logt[plus_one.astype(np.int64) @ self.pow5]
        self.zero = 0
        self.one = 1
        self.generator_handle = int(ids[1]) if self.n1 > 1 else 1
        self._neg_shift = self.n1 // 2 if self.n1 > 1 else 0

    # -- scalar ops -------------------------------------------------------
    def from_digits(self, digits: Iterable[int]) -> int:
        v = 0
        for i, d in enumerate(digits):
            v += (int(d) % CHAR) * CHAR ** i
        return v

    def digits(self, h: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.m):
            h, d = divmod(h, CHAR)
            out.append(d)
        return tuple(out)

    def from_index(self, idx: int) -> int:
        return idx

    def to_index(self, h: int) -> int:
        return h

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.antilog[(int(self.logt[a]) + int(self.logt[b]))
                                % self.n1])

    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        la, lb = int(self.logt[a]), int(self.logt[b])
        z = int(self.zech[(lb - la) % self.n1])
        if z < 0:
            return 0
        return int(self.antilog[(la + z) % self.n1])

    def neg(self, a: int) -> int:
        if a == 0 or self.n1 == 1:
            return 0 if a == 0 else a
        return int(self.antilog[(int(self.logt[a]) + self._neg_shift)
                                % self.n1])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def scale(self, a: int, c: int) -> int:
        c %= CHAR
        if c == 0 or a == 0:
            return 0
        return self.mul(a, self.from_digits([c]))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("0 has no negative power")
            return 0
        return int(self.antilog[(int(self.logt[a]) * (e % self.n1)) % self.n1])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self.antilog[(-int(self.logt[a])) % self.n1])

    def linear_map(self, cols: Sequence[int], a: int) -> int:
        acc = 0
        for i in range(self.m):
            a, d = divmod(a, CHAR)
            if d:
                acc = self.add(acc, self.scale(cols[i], d))
        return acc

    # -- batch ops on int64 arrays of handles -------------------------------
    def bmul(self, a, b):
        out = self.antilog[(self.logt[a] + self.logt[b]) % self.n1]
        zero = (a == 0) | (b == 0)
        return np.where(zero, 0, out)

    def badd(self, a, b):
        s = (self.digit_rows[a] + self.digit_rows[b]) % CHAR
        return s.astype(np.int64) @ self.pow5

    def bscale(self, a, c):
        c %= CHAR
        if c == 0:
            return np.zeros_like(np.asarray(a, dtype=np.int64))
        s = (self.digit_rows[a] * c) % CHAR
        return s.astype(np.int64) @ self.pow5

    def bneg(self, a):
        return self.bscale(a, CHAR - 1)

    def bpow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        e_red = e % self.n1
        out = self.antilog[(self.logt[a] * e_red) % self.n1]
        if e == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, out)

    def binv(self, a):
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in batch")
        return self.antilog[(-self.logt[a]) % self.n1]


# ---------------------------------------------------------------------------
# public field objects

class FieldParams:
    """Immutable description of one realization of GF(5^m).

    Holds the validated modulus, the cached generator, the arithmetic kernel
    (table-backed when 5^m fits the table budget), and, for even m, the
    tower structure GF(5^k) < GF(5^{2k}) with k = m/2.
    """

    def __init__(self, m: int, modulus: tuple[int, ...], _token=None):
        if _token is not _FIELD_TOKEN:
            raise UsageError("use make_field() to construct fields")
        self.p = CHAR
        self.m = m
        self.modulus = modulus
        self.order = CHAR ** m
        self.subfield_degree = m // 2 if m % 2 == 0 else None
        if self.order <= TABLE_LIMIT:
            self.kernel: TableKernel | PolyKernel = TableKernel(m, modulus)
        else:
            self.kernel = PolyKernel(m, modulus)
        self.signature = (m, modulus)
        self._frob_cols: tuple[int, ...] | None = None
        self._unity = None          # filled lazily by unity.unity_group
        self._poly_twin: PolyKernel | None = None

    def __repr__(self):
        return f"GF(5^{self.m})"

    def __eq__(self, other):
        return isinstance(other, FieldParams) and self.signature == other.signature

    def __hash__(self):
        return hash(self.signature)

    @property
    def q(self) -> int:
        """Subfield size 5^k of the tower; requires even m."""
        if self.subfield_degree is None:
            raise UsageError(f"{self!r} has no quadratic tower structure")
        return CHAR ** self.subfield_degree

    @property
    def accel_tables(self) -> TableKernel | None:
        return self.kernel if self.kernel.has_tables else None

    @property
    def generator(self) -> "FieldElement":
        return FieldElement(self, self.kernel.generator_handle)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, self.kernel.zero)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, self.kernel.one)

    def scalar(self, c: int) -> "FieldElement":
        return FieldElement(self, self.kernel.from_digits([c % CHAR]))

    def from_digits(self, digits: Iterable[int]) -> "FieldElement":
        digits = list(digits)
        if len(digits) > self.m:
            raise UsageError(f"too many digits for {self!r}")
        return FieldElement(self, self.kernel.from_digits(digits))

    def from_csv(self, text: str) -> "FieldElement":
        return self.from_digits(int(t) for t in text.split(","))

    def from_index(self, idx: int) -> "FieldElement":
        if not 0 <= idx < self.order:
            raise UsageError("element index out of range")
        return FieldElement(self, self.kernel.from_index(idx))

    def elements(self) -> Iterator["FieldElement"]:
        for idx in range(self.order):
            yield self.from_index(idx)

    def random_element(self, rng) -> "FieldElement":
        return self.from_index(rng.randrange(self.order))

    # tower operations on raw handles (used by the hot paths)
    def frob_handle(self, h: int) -> int:
        if self.subfield_degree is None:
            raise UsageError(f"{self!r} has no quadratic tower structure")
        kern = self.kernel
        if kern.has_tables:
            return kern.pow(h, self.q)
        if self._frob_cols is None:
            xq = kern.pow(kern.generator_handle, self.q)
            cols = [kern.one]
            for _ in range(self.m - 1):
                cols.append(kern.mul(cols[-1], xq))
            self._frob_cols = tuple(cols)
        return kern.linear_map(self._frob_cols, h)

    def trace_handle(self, h: int) -> int:
        return self.kernel.add(h, self.frob_handle(h))

    def norm_handle(self, h: int) -> int:
        return self.kernel.mul(h, self.frob_handle(h))

    def polynomial_twin(self) -> PolyKernel:
        """Packed power-basis kernel over the same modulus, for cross-checks."""
        if self._poly_twin is None:
            self._poly_twin = PolyKernel(self.m, self.modulus)
        return self._poly_twin


_FIELD_TOKEN = object()


class FieldElement:
    """One element of a FieldParams context, in canonical reduced form."""

    __slots__ = ("field", "handle")

    def __init__(self, field: FieldParams, handle: int):
        self.field = field
        self.handle = handle

    @property
    def digits(self) -> tuple[int, ...]:
        return self.field.kernel.digits(self.handle)

    @property
    def index(self) -> int:
        return self.field.kernel.to_index(self.handle)

    @property
    def is_zero(self) -> bool:
        return self.handle == 0

    def csv(self) -> str:
        return ",".join(str(d) for d in self.digits)

    def __str__(self):
        return self.csv()

    def __repr__(self):
        return f"<{self.field!r} {self.csv()}>"

    def __hash__(self):
        return hash((self.field.signature, self.index))

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field.signature != self.field.signature:
                raise UsageError("operands belong to different fields")
            return other
        if isinstance(other, int):
            return self.field.scalar(other)
        return NotImplemented

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.handle == o.handle

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.kernel.add(self.handle, o.handle))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.kernel.sub(self.handle, o.handle))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.kernel.sub(o.handle, self.handle))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.kernel.mul(self.handle, o.handle))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, self.field.kernel.neg(self.handle))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.kernel.pow(self.handle, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.kernel.inv(self.handle))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()


@lru_cache(maxsize=None)
def _make_field_cached(m: int, modulus: tuple[int, ...]) -> FieldParams:
    return FieldParams(m, modulus, _token=_FIELD_TOKEN)


def make_field(m: int, modulus_override: Sequence[int] | str | None = None
               ) -> FieldParams:
    """Build (or fetch the cached) GF(5^m) with a validated primitive modulus.

    The override, if given, is a coefficient list lowest degree first (or a
    comma-separated digit string) and must be monic, irreducible and
    primitive; validation failures name the failing check.
    """
    if not isinstance(m, int) or not 1 <= m <= MAX_DEGREE:
        raise UsageError(f"degree m must be an integer in 1..{MAX_DEGREE}")
    if modulus_override is None:
        modulus = PRIMITIVE_MODULI[m]
    elif isinstance(modulus_override, str):
        modulus = tuple(int(t) for t in modulus_override.split(","))
    else:
        modulus = tuple(int(c) for c in modulus_override)
    modulus = _validate_modulus(m, modulus)
    return _make_field_cached(m, modulus)


def tower_field(k: int, modulus_override=None) -> FieldParams:
    """GF(5^{2k}) with its subfield tower marked."""
    if not isinstance(k, int) or k < 1:
        raise UsageError("k must be a positive integer")
    return make_field(2 * k, modulus_override)


# spec-level operation wrappers -------------------------------------------

def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def neg(a: FieldElement) -> FieldElement:
    return -a


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def power(a: FieldElement, e: int) -> FieldElement:
    return a ** e


def frobenius(x: FieldElement) -> FieldElement:
    """x^(5^k) in the tower GF(5^k) < GF(5^{2k}); an involution."""
    return FieldElement(x.field, x.field.frob_handle(x.handle))


def trace(x: FieldElement) -> FieldElement:
    """Relative trace x + x^q onto the Frobenius-fixed subfield."""
    return FieldElement(x.field, x.field.trace_handle(x.handle))


def norm(x: FieldElement) -> FieldElement:
    """Relative norm x^(q+1) onto the Frobenius-fixed subfield."""
    return FieldElement(x.field, x.field.norm_handle(x.handle))


def in_subfield(x: FieldElement) -> bool:
    return x.field.frob_handle(x.handle) == x.handle


# ---------------------------------------------------------------------------
# the five power-trace identities

# Tr(x^e) = sum coeff * Tr(x)^a * N(x)^b, coefficients already reduced mod 5
TRACE_POWER_IDENTITIES: tuple[tuple[int, tuple[tuple[int, int, int], ...]], ...] = (
    (2, ((1, 2, 0), (3, 0, 1))),
    (3, ((1, 3, 0), (2, 1, 1))),
    (4, ((1, 4, 0), (1, 2, 1), (2, 0, 2))),
    (8, ((1, 8, 0), (2, 6, 1), (4, 2, 3), (2, 0, 4))),
    (9, ((1, 9, 0), (1, 7, 1), (4, 1, 4), (2, 5, 2))),
)


@timed
def trace_power_identity_report(k: int, guard: int = 3,
                                force: bool = False) -> VerificationReport:
    """Check all five Tr(x^e)-in-(Tr, N) identities over every x in GF(5^{2k})."""
    if k < 1:
        raise UsageError("k must be >= 1")
    if k > guard and not force:
        raise GuardExceededError(
            f"exhaustive identity sweep guarded at k <= {guard}; "
            f"pass force to override")
    field = tower_field(k)
    kern = field.accel_tables
    if kern is None:
        raise UsageError(
            "exhaustive identity sweep needs acceleration tables (k <= 4)")
    q = field.q
    n1 = kern.n1
    logs = np.arange(n1, dtype=np.int64)

    def tr_of_power(e: int):
        a = kern.antilog[(logs * (e % n1)) % n1]
        b = kern.antilog[(logs * ((e * q) % n1)) % n1]
        return kern.badd(a, b)

    t_ids = tr_of_power(1)
    n_ids = kern.antilog[(logs * ((q + 1) % n1)) % n1]
    subject = f"power-trace identity suite over GF(5^{2*k})"
    for e, terms in TRACE_POWER_IDENTITIES:
        lhs = tr_of_power(e)
        rhs = np.zeros_like(lhs)
        for coeff, a_exp, b_exp in terms:
            term = kern.bmul(kern.bpow(t_ids, a_exp), kern.bpow(n_ids, b_exp))
            rhs = kern.badd(rhs, kern.bscale(term, coeff))
        bad = np.nonzero(lhs != rhs)[0]
        if bad.size:
            x = field.from_index(int(kern.antilog[bad[0]]))
            return VerificationReport(
                subject=subject, method="exhaustive", passed=False,
                witness={"type": "identity_mismatch", "power": e, "x": x.csv()},
                counts={"elements": field.order, "identities": 5})
        # x = 0 reads 0 = 0 for every identity: Tr(0) = N(0) = 0 and every
        # right-hand term carries a positive power of Tr or N
        assert all(a or b for _, a, b in terms)
    return VerificationReport(
        subject=subject, method="exhaustive", passed=True,
        counts={"elements": field.order, "identities": 5})


# ---------------------------------------------------------------------------
# dual-representation agreement

@timed
def representation_agreement_report(field: FieldParams,
                                    samples: int = 10_000,
                                    seed: int = 0) -> VerificationReport:
    """Table arithmetic vs packed power-basis arithmetic on random pairs.

    Exhaustive over all ordered pairs when the field has at most 5^4
    elements; otherwise a seeded sample of the given size.
    """
    import random as _random
    kern = field.kernel
    if not kern.has_tables:
        raise UsageError("agreement check applies to table-backed fields")
    twin = field.polynomial_twin()
    if field.order <= CHAR ** 4:
        pairs: Iterable[tuple[int, int]] = itertools.product(
            range(field.order), repeat=2)
        total = field.order ** 2
        method = "exhaustive"
    else:
        rng = _random.Random(seed)
        pairs = ((rng.randrange(field.order), rng.randrange(field.order))
                 for _ in range(samples))
        total = samples
        method = f"sampled(seed={seed})"
    checked = 0
    for ia, ib in pairs:
        a_t, b_t = kern.from_index(ia), kern.from_index(ib)
        a_p, b_p = twin.from_index(ia), twin.from_index(ib)
        ops = (
            ("mul", kern.mul(a_t, b_t), twin.mul(a_p, b_p)),
            ("add", kern.add(a_t, b_t), twin.add(a_p, b_p)),
            ("sub", kern.sub(a_t, b_t), twin.sub(a_p, b_p)),
        )
        for name, via_table, via_poly in ops:
            if kern.digits(via_table) != twin.digits(via_poly):
                return VerificationReport(
                    subject=f"representation agreement over {field!r}",
                    method=method, passed=False,
                    witness={"type": "representation_mismatch", "op": name,
                             "a": str(ia), "b": str(ib)},
                    counts={"pairs": total})
        checked += 1
    return VerificationReport(
        subject=f"representation agreement over {field!r}",
        method=method, passed=True, counts={"pairs": checked})
