from typing import \
    Union, List, Dict, \
    Any

import json

from decimal import Decimal

from fractions import Fraction

_ExtJSON = Union[Dict[str, "_ExtJSON"], List["_ExtJSON"], \
    bool, int, float, str, Decimal, Fraction, None]

_StrictJSON = Union[Dict[str, "_StrictJSON"], List["_StrictJSON"], \
    bool, int, float, str, None]

_PLACES = Decimal("0.000001")

def render_decimal(value: Union[Fraction, Decimal, float, int]) -> str:
    """
    Renders <value> with exactly six fractional digits, rounding half-even.
    Fractions are divided in decimal arithmetic, never through a binary float.
    """

    if isinstance(value, Fraction):
        value = Decimal(value.numerator) / Decimal(value.denominator)
    elif isinstance(value, float):
        value = Decimal(repr(value))
    elif isinstance(value, int):
        value = Decimal(value)

    return format(value.quantize(_PLACES), "f")

def _clear(dictionary: Dict[str, Any]) -> Dict[str, Any]:
    return { key: value for key, value in dictionary.items() \
        if value is not None }

def _adapter(data: _ExtJSON) -> _StrictJSON:
    if isinstance(data, (Decimal, Fraction)):
        return render_decimal(data)

    if isinstance(data, (list, tuple)):
        return [ _adapter(sub_data) for sub_data in data ]
    if isinstance(data, dict):
        return _clear({ key: _adapter(value) for key, value in data.items() })

    return data

class JSONEncoder(json.JSONEncoder):
    def encode(self, o: _ExtJSON) -> str:
        return super().encode(_adapter(o))
