"""Residue arithmetic: extended Euclid, modular fractions, q-expressions.

Exponents throughout the package are residues modulo q + 1 given as closed
formulas in q (and occasionally k).  They are resolved exactly with Fraction
arithmetic so that a non-integral value is an error, never a truncation.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NoInverseError, ResidueError


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        quot = old_r // r
        old_r, r = r, old_r - quot * r
        old_x, x = x, old_x - quot * x
        old_y, y = y, old_y - quot * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def frac_mod(num: int, den: int, modulus: int) -> int:
    """num * den^-1 mod modulus via extended Euclid."""
    if modulus < 2:
        raise ResidueError(f"modulus must be >= 2, got {modulus}")
    g, x, _ = extended_gcd(den % modulus, modulus)
    if g != 1:
        raise NoInverseError(
            f"{den} is not invertible mod {modulus} (gcd {g})", gcd=g)
    return (num * x) % modulus


def resolve_residue(expr: str | int, q: int, k: int | None = None,
                    modulus: int | None = None) -> int:
    """Evaluate a closed formula in q (and k) to a canonical residue.

    The expression is evaluated with exact Fractions; a fractional result
    raises ResidueError.  Result is reduced into [0, modulus), modulus
    defaulting to q + 1.
    """
    if modulus is None:
        modulus = q + 1
    if isinstance(expr, int):
        return expr % modulus
    try:
        value = eval(expr, {"__builtins__": {}}, {"q": Fraction(q), "k": k})
    except ZeroDivisionError:
        raise ResidueError(f"expression {expr!r} divides by zero at q={q}")
    value = Fraction(value)
    if value.denominator != 1:
        raise ResidueError(
            f"expression {expr!r} is not an integer at q={q} (got {value})")
    return int(value) % modulus
