"""Exact value types for closed-form volumes and probabilities.

All closed-form results handled by this package are rational multiples of
integer powers of pi, occasionally carrying a square-root radical (sqrt(N)
normalization factors, or half-integer powers of 2 and pi).  Two small
immutable types cover both cases and keep the arithmetic exact end to end,
so that printed denominators and prime factorizations can be compared
digit for digit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath


def square_free_split(n: int) -> tuple[int, int]:
    """Write ``n = s**2 * r`` with ``r`` square-free; return ``(s, r)``.

    Only used on small radicands (products of matrix dimensions and 2),
    so naive extraction is fine.
    """
    if n <= 0:
        raise ValueError("radicand must be positive")
    s, r = 1, n
    d = 2
    while d * d <= r:
        while r % (d * d) == 0:
            r //= d * d
            s *= d
        d += 1
    return s, r


@dataclass(frozen=True)
class PiRational:
    """Exact value ``(p/q) * pi**a`` with big-integer p, q.

    Invariants: ``coefficient`` is a reduced Fraction with positive
    denominator (guaranteed by :class:`fractions.Fraction`), and the value
    is reconstructible to any requested precision via :meth:`value`.
    """

    coefficient: Fraction
    pi_power: int = 0

    @property
    def numerator(self) -> int:
        return self.coefficient.numerator

    @property
    def denominator(self) -> int:
        return self.coefficient.denominator

    def value(self, dps: int = 50) -> mpmath.mpf:
        """Numeric value at ``dps`` significant digits."""
        with mpmath.workdps(dps + 10):
            v = mpmath.mpf(self.numerator) / self.denominator * mpmath.pi ** self.pi_power
            return +v

    def __float__(self) -> float:
        return float(self.value(30))

    def __mul__(self, other):
        if isinstance(other, PiRational):
            return PiRational(self.coefficient * other.coefficient,
                              self.pi_power + other.pi_power)
        if isinstance(other, (int, Fraction)):
            return PiRational(self.coefficient * other, self.pi_power)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PiRational):
            return PiRational(self.coefficient / other.coefficient,
                              self.pi_power - other.pi_power)
        if isinstance(other, (int, Fraction)):
            return PiRational(self.coefficient / other, self.pi_power)
        return NotImplemented

    def format(self) -> str:
        """Render as ``p/q*pi^a`` (omitting trivial parts)."""
        c = self.coefficient
        s = str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
        if self.pi_power == 0:
            return s
        pi = "pi" if self.pi_power == 1 else f"pi^{self.pi_power}"
        return f"{s}*{pi}"


@dataclass(frozen=True)
class RadicalPiRational:
    """Exact value ``c * pi**(pi_twice/2) * sqrt(radicand)``.

    Extends :class:`PiRational` with a square-free integer radicand and
    half-integer powers of pi (``pi_twice`` counts powers of sqrt(pi)).
    Total-volume formulas over the reals and the Milz-Strunz volume
    profile produce values of this shape; the radical is carried
    symbolically, never rounded.
    """

    coefficient: Fraction
    pi_twice: int = 0
    radicand: int = 1

    def __post_init__(self):
        s, r = square_free_split(self.radicand)
        if s != 1 or r != self.radicand:
            object.__setattr__(self, "coefficient", self.coefficient * s)
            object.__setattr__(self, "radicand", r)
        if self.coefficient == 0:
            object.__setattr__(self, "pi_twice", 0)
            object.__setattr__(self, "radicand", 1)

    @property
    def pi_power(self) -> int:
        """Integer part of the pi exponent (valid when ``pi_twice`` is even)."""
        if self.pi_twice % 2:
            raise ValueError("pi exponent is half-integer; use pi_twice")
        return self.pi_twice // 2

    def value(self, dps: int = 50) -> mpmath.mpf:
        with mpmath.workdps(dps + 10):
            v = (mpmath.mpf(self.coefficient.numerator) / self.coefficient.denominator
                 * mpmath.pi ** (mpmath.mpf(self.pi_twice) / 2)
                 * mpmath.sqrt(self.radicand))
            return +v

    def __float__(self) -> float:
        return float(self.value(30))

    def __mul__(self, other):
        if isinstance(other, RadicalPiRational):
            merged = self.radicand * other.radicand
            return RadicalPiRational(self.coefficient * other.coefficient,
                                     self.pi_twice + other.pi_twice, merged)
        if isinstance(other, PiRational):
            return RadicalPiRational(self.coefficient * other.coefficient,
                                     self.pi_twice + 2 * other.pi_power, self.radicand)
        if isinstance(other, (int, Fraction)):
            return RadicalPiRational(self.coefficient * other, self.pi_twice, self.radicand)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PiRational):
            return RadicalPiRational(self.coefficient / other.coefficient,
                                     self.pi_twice - 2 * other.pi_power, self.radicand)
        if isinstance(other, RadicalPiRational):
            # sqrt(a)/sqrt(b) = sqrt(a*b)/b
            return RadicalPiRational(self.coefficient / (other.coefficient * other.radicand),
                                     self.pi_twice - other.pi_twice,
                                     self.radicand * other.radicand)
        if isinstance(other, (int, Fraction)):
            return RadicalPiRational(self.coefficient / other, self.pi_twice, self.radicand)
        return NotImplemented

    def format(self) -> str:
        c = self.coefficient
        parts = [str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"]
        half, odd = divmod(self.pi_twice, 2)
        if half:
            parts.append("pi" if half == 1 else f"pi^{half}")
        if odd and self.radicand != 1:
            parts.append(f"sqrt({self.radicand}*pi)")
        elif odd:
            parts.append("sqrt(pi)")
        elif self.radicand != 1:
            parts.append(f"sqrt({self.radicand})")
        return "*".join(parts)


@dataclass(frozen=True)
class PrimeFactorization:
    """Ordered list of ``(prime, exponent)`` pairs with nonzero exponents."""

    factors: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    def value(self) -> Fraction:
        """Reconstruct the exact rational this factorization represents."""
        out = Fraction(1)
        for p, e in self.factors:
            out *= Fraction(p) ** e
        return out

    def format(self) -> str:
        if not self.factors:
            return "1"
        bits = []
        for p, e in self.factors:
            bits.append(str(p) if e == 1 else f"{p}^{e}")
        return "*".join(bits)


@dataclass(frozen=True)
class FactorizedPiRational:
    """Result of factoring a :class:`PiRational`: sign, factored p and q, pi power."""

    sign: int
    numerator: PrimeFactorization
    denominator: PrimeFactorization
    pi_power: int

    def value(self) -> PiRational:
        coeff = self.sign * self.numerator.value() / self.denominator.value()
        return PiRational(coeff, self.pi_power)
