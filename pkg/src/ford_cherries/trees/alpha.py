"""The model parameter alpha, in floating-point or exact rational form."""

import math
from fractions import Fraction
from typing import Union

from ford_cherries.errors import InvalidParameterError

Number = Union[float, Fraction]


class Alpha:
    """Ford model parameter with 0 <= alpha <= 1.

    The value is kept as a ``Fraction`` when one is supplied (or parsed from ``"p/q"``), so that
    exact-rational routines can run on it; every other input is stored as a float.

    Args:
        value: A float, int, ``Fraction``, another ``Alpha`` or a string such as ``"0.25"`` or ``"1/4"``.

    Raises:
        InvalidParameterError: If the value is not a number in [0, 1].
    """

    __slots__ = ("_value",)

    def __init__(self, value: Union["Alpha", Number, int, str]):
        if isinstance(value, Alpha):
            value = value.value
        elif isinstance(value, str):
            value = self._parse(value)
        elif isinstance(value, int) and not isinstance(value, bool):
            value = Fraction(value)
        if not isinstance(value, Fraction):
            value = float(value)
            if math.isnan(value):
                raise InvalidParameterError("alpha must be a number, got nan")
        if not 0 <= value <= 1:
            raise InvalidParameterError(f"alpha must lie in [0, 1], got {value}")
        self._value: Number = value

    @staticmethod
    def _parse(text: str) -> Number:
        text = text.strip()
        try:
            if "/" in text:
                return Fraction(text)
            return float(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidParameterError(f"cannot parse alpha from {text!r}") from exc

    @property
    def value(self) -> Number:
        return self._value

    @property
    def beta(self) -> Number:
        """The pendant-edge weight 1 - alpha."""
        return 1 - self._value

    @property
    def is_exact(self) -> bool:
        return isinstance(self._value, Fraction)

    @property
    def is_interior(self) -> bool:
        return 0 < self._value < 1

    def __float__(self) -> float:
        return float(self._value)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Alpha):
            return self._value == other._value
        if isinstance(other, (int, float, Fraction)):
            return self._value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._value)

    def __repr__(self) -> str:
        return f"Alpha({self._value})"


AlphaLike = Union[Alpha, Number, int, str]
