import hashlib
import json
import math
import numbers

import numpy as np

__all__ = ['canonical_json', 'dumps', 'format_float', 'digest', 'array_digest']

FLOAT_FORMAT = '.17g'


def format_float(v: float) -> str:
    """Decimal text with 17 significant digits; integral values keep a
    ``.0`` so that they read back as floats."""
    text = format(v, FLOAT_FORMAT)
    if not any(c in text for c in '.en'):
        text += '.0'
    return text


def _wrap(opening: str, closing: str, parts, indent, level: int) -> str:
    if not parts:
        return opening + closing
    if indent is None:
        return opening + ','.join(parts) + closing
    pad = '\n' + ' ' * (indent * (level + 1))
    return opening + pad + (',' + pad).join(parts) + '\n' + ' ' * (indent * level) + closing


def _encode(obj, indent, level: int) -> str:
    if obj is None or isinstance(obj, (bool, str)):
        return json.dumps(obj)
    if isinstance(obj, numbers.Integral):
        return str(int(obj))
    if isinstance(obj, numbers.Real):
        v = float(obj)
        if not math.isfinite(v):
            raise ValueError(f"out of range float value {v!r} is not JSON compliant")
        return format_float(v)
    if isinstance(obj, dict):
        colon = ':' if indent is None else ': '
        parts = [json.dumps(str(k)) + colon + _encode(v, indent, level + 1)
                 for k, v in sorted(obj.items(), key=lambda kv: str(kv[0]))]
        return _wrap('{', '}', parts, indent, level)
    if isinstance(obj, (list, tuple)):
        return _wrap('[', ']', [_encode(v, indent, level + 1) for v in obj], indent, level)
    raise TypeError(f"object of type {type(obj).__name__} is not JSON serializable")


def dumps(obj, indent: int = None) -> str:
    """Key-sorted JSON of plain types with floats written by `format_float`;
    compact unless `indent` is given."""
    return _encode(obj, indent, 0)


def canonical_json(obj) -> str:
    return dumps(obj)


def digest(obj) -> str:
    return hashlib.sha256(canonical_json(obj).encode('utf-8')).hexdigest()


def array_digest(*arrays) -> str:
    h = hashlib.sha256()
    for a in arrays:
        a = np.ascontiguousarray(a, dtype=np.complex128)
        h.update(str(a.shape).encode('ascii'))
        h.update(a.tobytes())
    return h.hexdigest()
