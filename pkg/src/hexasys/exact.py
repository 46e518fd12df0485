"""Exact scalars: rationals, the quadratic field Q[sqrt 3], and multiples of pi^e.

Rationals are plain :class:`fractions.Fraction` values.  The two classes here
cover the places where the geometry leaves Q: Euclidean coordinates of the
hexagon (``QSqrt3``) and areas or ratios carrying a power of pi (``PiValue``).
"""

import re
from fractions import Fraction

__all__ = [
    "IncompatiblePiPowers",
    "PiValue",
    "QSqrt3",
    "SQRT3",
    "PI_LOWER",
    "PI_UPPER",
    "format_exact",
    "parse_exact",
]

# rational enclosure of pi, tight enough for every comparison made here
PI_LOWER = Fraction(3141592653589793, 10**15)
PI_UPPER = Fraction(3141592653589794, 10**15)


def format_exact(q):
    """Serialize a rational as ``num/den`` (or ``num`` when integral)."""
    return str(Fraction(q))


def parse_exact(text):
    """Inverse of :func:`format_exact`; also accepts decimals like ``0.125``."""
    return Fraction(text.strip())


class QSqrt3:
    """Element ``a + b*sqrt(3)`` with rational ``a``, ``b``."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, QSqrt3):
            return other
        if isinstance(other, (int, Fraction)):
            return cls(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QSqrt3(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt3(-self.a, -self.b)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QSqrt3(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QSqrt3(self.a * other.a + 3 * self.b * other.b,
                      self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def conjugate(self):
        return QSqrt3(self.a, -self.b)

    def norm(self):
        """Field norm ``a^2 - 3 b^2`` (a rational)."""
        return self.a * self.a - 3 * self.b * self.b

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q[sqrt 3]")
        num = self * other.conjugate()
        return QSqrt3(num.a / n, num.b / n)

    def __rtruediv__(self, other):
        return QSqrt3._coerce(other) / self

    def sign(self):
        a, b = self.a, self.b
        if a >= 0 and b >= 0:
            return int(a > 0 or b > 0)
        if a <= 0 and b <= 0:
            return -1
        # opposite signs: compare a^2 with 3 b^2
        if a > 0:
            return 1 if a * a > 3 * b * b else -1
        return 1 if 3 * b * b > a * a else -1

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def is_rational(self):
        return self.b == 0

    def __float__(self):
        return float(self.a) + float(self.b) * 3 ** 0.5

    def __repr__(self):
        return f"QSqrt3({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        root = "sqrt(3)" if self.b == 1 else f"{self.b}*sqrt(3)"
        if self.a == 0:
            return root
        return f"{self.a} + {root}"


SQRT3 = QSqrt3(0, 1)


class IncompatiblePiPowers(ValueError):
    pass


_PI_PATTERNS = [
    # q*pi, pi, pi/den, num*pi/den
    (re.compile(r"^(?:(-?\d+)\*)?pi(?:/(\d+))?$"), 1),
    # num/pi, num/(den*pi)
    (re.compile(r"^(-?\d+)/(?:pi|\((\d+)\*pi\))$"), -1),
]


class PiValue:
    """Exact value ``coefficient * pi**pi_power`` with ``pi_power`` in {-1, 0, 1}."""

    __slots__ = ("coefficient", "pi_power")

    def __init__(self, coefficient, pi_power=0):
        if pi_power not in (-1, 0, 1):
            raise IncompatiblePiPowers(f"pi power {pi_power} outside {{-1, 0, 1}}")
        self.coefficient = Fraction(coefficient)
        self.pi_power = pi_power

    def _check(self, other):
        if not isinstance(other, PiValue):
            other = PiValue(other)
        return other

    def __add__(self, other):
        other = self._check(other)
        if other.pi_power != self.pi_power and other.coefficient and self.coefficient:
            raise IncompatiblePiPowers("cannot add values with different powers of pi")
        power = self.pi_power if self.coefficient else other.pi_power
        return PiValue(self.coefficient + other.coefficient, power)

    __radd__ = __add__

    def __mul__(self, other):
        other = self._check(other)
        return PiValue(self.coefficient * other.coefficient, self.pi_power + other.pi_power)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        return PiValue(self.coefficient / other.coefficient, self.pi_power - other.pi_power)

    def __rtruediv__(self, other):
        return self._check(other) / self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PiValue(other)
        if not isinstance(other, PiValue):
            return NotImplemented
        if self.coefficient == 0 and other.coefficient == 0:
            return True
        return self.coefficient == other.coefficient and self.pi_power == other.pi_power

    def __hash__(self):
        return hash((self.coefficient, self.pi_power))

    def __float__(self):
        from math import pi
        return float(self.coefficient) * pi ** self.pi_power

    def bounds(self):
        """Rational interval certainly containing the value."""
        if self.pi_power == 0:
            return self.coefficient, self.coefficient
        lo, hi = (PI_LOWER, PI_UPPER) if self.pi_power == 1 else (1 / PI_UPPER, 1 / PI_LOWER)
        ends = sorted((self.coefficient * lo, self.coefficient * hi))
        return ends[0], ends[1]

    def exceeds(self, other):
        """Certified ``self > other`` for a rational or a ``QSqrt3`` value.

        Raises ``ValueError`` when the rational enclosure of pi is too coarse
        to decide.
        """
        lo, hi = self.bounds()
        if isinstance(other, QSqrt3):
            if other < lo:
                return True
            if other >= hi:
                return False
        else:
            other = Fraction(other)
            if other < lo:
                return True
            if other >= hi:
                return False
        raise ValueError("comparison not decidable at the current enclosure of pi")

    def __str__(self):
        c, p = self.coefficient, self.pi_power
        if p == 0:
            return str(c)
        num, den = c.numerator, c.denominator
        if p == 1:
            head = "pi" if num == 1 else ("-pi" if num == -1 else f"{num}*pi")
            return head if den == 1 else f"{head}/{den}"
        return f"{num}/pi" if den == 1 else f"{num}/({den}*pi)"

    def __repr__(self):
        return f"PiValue({self.coefficient!s}, {self.pi_power})"

    @classmethod
    def parse(cls, text):
        text = text.strip().replace(" ", "")
        for pattern, power in _PI_PATTERNS:
            m = pattern.match(text)
            if not m:
                continue
            if power == 1:
                num = int(m.group(1)) if m.group(1) else 1
                den = int(m.group(2)) if m.group(2) else 1
            else:
                num = int(m.group(1))
                den = int(m.group(2)) if m.group(2) else 1
            return cls(Fraction(num, den), power)
        if text == "-pi":
            return cls(-1, 1)
        return cls(Fraction(text), 0)
