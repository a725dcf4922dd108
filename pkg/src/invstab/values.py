"""Exact invariant values: nonnegative rationals extended with +infinity.

Counting invariants need big integers, ratio bounds need exact rationals,
and girth-like invariants need +infinity. A single total order covers all
of them so stability searches can compare values without tolerance knobs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Rationalish = Union[int, Fraction, str]


class ExtRational:
    """An exact nonnegative rational, or +infinity.

    Immutable. Products are defined for finite values only; +infinity
    participates in comparisons and minima.
    """

    __slots__ = ("_frac",)

    def __init__(self, value: Rationalish | None = None, *, infinite: bool = False):
        if infinite:
            if value is not None:
                raise ValueError("infinite value takes no numerator")
            self._frac = None
            return
        if value is None:
            raise ValueError("finite value required unless infinite=True")
        frac = Fraction(value)
        if frac < 0:
            raise ValueError(f"negative value not representable: {frac}")
        self._frac = frac

    @property
    def is_infinite(self) -> bool:
        return self._frac is None

    @property
    def is_finite(self) -> bool:
        return self._frac is not None

    def as_fraction(self) -> Fraction:
        if self._frac is None:
            raise ValueError("infinite value has no fraction form")
        return self._frac

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExtRational):
            return NotImplemented
        return self._frac == other._frac

    def __hash__(self) -> int:
        return hash(("ExtRational", self._frac))

    def __lt__(self, other: "ExtRational") -> bool:
        if not isinstance(other, ExtRational):
            return NotImplemented
        if self._frac is None:
            return False
        if other._frac is None:
            return True
        return self._frac < other._frac

    def __le__(self, other: "ExtRational") -> bool:
        return self == other or self < other

    def __gt__(self, other: "ExtRational") -> bool:
        if not isinstance(other, ExtRational):
            return NotImplemented
        return other < self

    def __ge__(self, other: "ExtRational") -> bool:
        return self == other or other < self

    def __mul__(self, other: "ExtRational") -> "ExtRational":
        if not isinstance(other, ExtRational):
            return NotImplemented
        if self._frac is None or other._frac is None:
            raise ValueError("product undefined for infinite values")
        return ExtRational(self._frac * other._frac)

    def __repr__(self) -> str:
        if self._frac is None:
            return "ExtRational(inf)"
        return f"ExtRational({self._frac})"

    def __str__(self) -> str:
        if self._frac is None:
            return "inf"
        return str(self._frac)

    def to_json(self) -> dict:
        """Serialize as {"fin": "p/q"} or {"inf": true}."""
        if self._frac is None:
            return {"inf": True}
        return {"fin": f"{self._frac.numerator}/{self._frac.denominator}"}

    @classmethod
    def from_json(cls, obj: dict) -> "ExtRational":
        if obj.get("inf") is True:
            return INF
        if "fin" in obj:
            return cls(Fraction(obj["fin"]))
        raise ValueError(f"not an extended rational: {obj!r}")


INF = ExtRational(infinite=True)
ZERO = ExtRational(0)
ONE = ExtRational(1)


def finite(value: Rationalish) -> ExtRational:
    """Shorthand constructor for finite values."""
    return ExtRational(value)


def min_value(values) -> ExtRational:
    """Minimum of an iterable of ExtRational; +infinity when empty."""
    best = INF
    for v in values:
        if v < best:
            best = v
    return best
