"""Exact arithmetic in Z[w], w = exp(2 pi i / 3), w^2 = -1 - w."""

from __future__ import annotations

import cmath
from dataclasses import dataclass

OMEGA = cmath.exp(2j * cmath.pi / 3)


@dataclass(frozen=True)
class EisensteinInt:
    a: int
    b: int

    @classmethod
    def coerce(cls, x) -> "EisensteinInt":
        if isinstance(x, EisensteinInt):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        raise TypeError(f"cannot interpret {x!r} as an Eisenstein integer")

    @classmethod
    def from_trace_counts(cls, c0: int, c1: int, c2: int) -> "EisensteinInt":
        """c0 + c1 w + c2 w^2."""
        return cls(int(c0) - int(c2), int(c1) - int(c2))

    def __add__(self, o):
        o = EisensteinInt.coerce(o)
        return EisensteinInt(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return EisensteinInt(-self.a, -self.b)

    def __sub__(self, o):
        return self + (-EisensteinInt.coerce(o))

    def __rsub__(self, o):
        return EisensteinInt.coerce(o) - self

    def __mul__(self, o):
        o = EisensteinInt.coerce(o)
        # (a + b w)(c + d w) = ac + (ad + bc) w + bd w^2, with w^2 = -1 - w
        ac, bd = self.a * o.a, self.b * o.b
        return EisensteinInt(ac - bd, self.a * o.b + self.b * o.a - bd)

    __rmul__ = __mul__

    def conjugate(self) -> "EisensteinInt":
        # a + b w^2 = (a - b) - b w
        return EisensteinInt(self.a - self.b, -self.b)

    def norm(self) -> int:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def divisible_by(self, n: int) -> bool:
        return self.a % n == 0 and self.b % n == 0

    def halve(self) -> "EisensteinInt":
        if self.a % 2 or self.b % 2:
            raise ValueError(f"{self} is not divisible by 2")
        return EisensteinInt(self.a // 2, self.b // 2)

    def __complex__(self):
        return self.a + self.b * OMEGA

    def __str__(self):
        return f"{self.a}{self.b:+d}w"

    def to_list(self) -> list[int]:
        return [self.a, self.b]


SQRT_MINUS_3 = EisensteinInt(1, 2)


def sqrt_minus_power_of_3(m: int) -> EisensteinInt:
    """sqrt(-3^m) = 3^((m-1)/2) * (1 + 2w) for odd m."""
    if m % 2 == 0:
        raise ValueError("m must be odd")
    return SQRT_MINUS_3 * 3 ** ((m - 1) // 2)


def skew_character_values(m: int) -> tuple[EisensteinInt, EisensteinInt]:
    """The two values (-1 +- sqrt(-3^m)) / 2 a skew Hadamard set in GF(3^m) may take."""
    s = sqrt_minus_power_of_3(m)
    return (s - 1).halve(), (-s - 1).halve()
