from fractions import Fraction

from sympy import Integer, Rational as SymRational
from sympy.polys.domains import QQ

QQ_TYPE = QQ.dtype


def is_integer(num):
    if isinstance(num, bool):
        return False
    if isinstance(num, (int, Integer)):
        return True
    else:
        return False


def is_rational(num):
    if isinstance(num, bool):
        return False
    if isinstance(num, (int, Integer, SymRational, Fraction, QQ_TYPE)):
        return True
    else:
        return False


def as_rational(value):
    """
    Convert ``value`` to an exact ``QQ`` element.

    Accepts ints, ``QQ`` elements, fractions, sympy rationals and strings of the form
    ``"p/q"``. Floats are refused because they are not exact.
    """
    if isinstance(value, QQ_TYPE):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"Inexact or non-numeric value {value!r}, use an int or a 'p/q' string")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, (Integer, SymRational)):
        return QQ.from_sympy(value)
    if isinstance(value, str):
        try:
            r = SymRational(value.strip())
        except (TypeError, ValueError, ZeroDivisionError):
            raise ValueError(f"Cannot parse rational {value!r}")
        if not isinstance(r, SymRational):
            raise ValueError(f"Cannot parse rational {value!r}")
        return QQ.from_sympy(r)
    raise TypeError(f"Unsupported rational type {type(value)}")


def format_rational(value) -> str:
    """Render an exact rational as ``"p/q"``, or ``"p"`` when integral."""
    if isinstance(value, int):
        return str(value)
    value = as_rational(value)
    if value.denominator == 1:
        return str(int(value.numerator))
    return f"{int(value.numerator)}/{int(value.denominator)}"


def sign_of(value) -> int:
    if value > 0:
        return 1
    elif value < 0:
        return -1
    return 0
