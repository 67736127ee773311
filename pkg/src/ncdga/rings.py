"""Exact scalar rings: the integers, the rationals and prime fields.

Scalars are stored as plain ``int`` (Z and Z/p, the latter reduced into
[0, p)) or ``fractions.Fraction`` (Q, always in lowest terms).  All
arithmetic goes through the owning :class:`Ring` so nothing ever touches
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NcdgaError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Ring:
    kind: str  # "Z", "Q" or "Zp"
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Zp"):
            raise NcdgaError(f"unknown scalar ring kind {self.kind!r}")
        if self.kind == "Zp" and (self.p is None or not _is_prime(self.p)):
            raise NcdgaError(f"Z/{self.p} is not a prime field")

    @property
    def name(self) -> str:
        return f"Z{self.p}" if self.kind == "Zp" else self.kind

    @property
    def is_field(self) -> bool:
        return self.kind in ("Q", "Zp")

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == "Zp" else 0

    def coerce(self, value):
        if self.kind == "Zp":
            if isinstance(value, Fraction):
                return self.div(value.numerator % self.p, value.denominator % self.p)
            return int(value) % self.p
        if self.kind == "Q":
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise NcdgaError(f"{value} is not an integer")
            return value.numerator
        return int(value)

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def is_zero(self, value) -> bool:
        return value == 0

    def add(self, a, b):
        return (a + b) % self.p if self.kind == "Zp" else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.kind == "Zp" else a - b

    def neg(self, a):
        return (-a) % self.p if self.kind == "Zp" else -a

    def mul(self, a, b):
        return (a * b) % self.p if self.kind == "Zp" else a * b

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "Zp":
            return pow(a, -1, self.p)
        if self.kind == "Q":
            return 1 / Fraction(a)
        if a in (1, -1):
            return a
        raise NcdgaError(f"{a} is not invertible in Z")

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def scalar_str(self, value) -> str:
        return str(value)

    def split_sign(self, value):
        """(is_negative, magnitude) for printing; Z/p values never negate."""
        if self.kind != "Zp" and value < 0:
            return True, -value
        return False, value

    @staticmethod
    def from_name(name: str) -> "Ring":
        if name == "Z":
            return Z
        if name == "Q":
            return Q
        if name.startswith("Z") and name[1:].isdigit():
            return Ring("Zp", int(name[1:]))
        raise NcdgaError(f"unknown ring {name!r}")


Z = Ring("Z")
Q = Ring("Q")
Z2 = Ring("Zp", 2)


def Zp(p: int) -> Ring:
    return Ring("Zp", p)
