from typing import Dict, Any

from decimal import Decimal

import re, json

# Values written by render_decimal: an optional sign, digits, then exactly six decimals.
_RENDERED = re.compile(r"^-?\d+\.\d{6}$")

def _restore(value: Any) -> Any:
    if isinstance(value, str) and _RENDERED.match(value):
        return Decimal(value)

    return value

def _object_hook(data: Dict[str, Any]) -> Any:
    return { key: _restore(value) for key, value in data.items() }

class JSONDecoder(json.JSONDecoder):
    """
    Inverse of JSONEncoder: six-digit decimal strings come back as Decimal.
    """

    def __init__(self, *args: Any, **kwargs: Any) -> None:
        super().__init__(object_hook=_object_hook, *args, **kwargs)
