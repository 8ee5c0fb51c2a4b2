"""Exact rationals and their wire format.

Every rational in JSON output is the string "p/q" (or just "p" when
q = 1), with the sign on the numerator.  fractions.Fraction already
keeps gcd(|p|, q) = 1 and q > 0, which is exactly the invariant we
need, so we use it directly instead of a bespoke class.
"""

from fractions import Fraction

from .errors import InputError


def rat(value) -> Fraction:
    """Coerce ints, Fractions, and 'p/q' strings to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {value!r}") from exc
    if isinstance(value, float):
        raise InputError("floating point is banned; pass 'p/q' strings")
    raise InputError(f"not a rational: {value!r}")


def rat_str(value) -> str:
    """Serialize a rational as 'p/q', or 'p' when the denominator is 1."""
    q = rat(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
