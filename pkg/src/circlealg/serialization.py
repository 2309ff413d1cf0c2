"""Measure JSON schema.

    { "discrete": [ { "re": "1/2", "im": 0.25, "angle": "1/3+2*g1" }, ... ],
      "ac":       [ [ n, re, im ], ... ] }

Exact rationals are serialized as "p/q" strings (JSON integers are also
accepted as exact), floats as ordinary JSON numbers with round-trip
precision.  Measures whose weights are Gaussian rationals or floats
round-trip bit-exactly; exact weights outside the Gaussian rationals
(e.g. produced by exact shift automorphisms) degrade to floats.
"""

import json

from .angles import format_angle, parse_angle
from .cyclotomic import Cyclotomic
from .errors import SerializationError
from .measures import Measure, measure, wt_is_exact
from .rationals import format_rat, parse_rat


def _encode_number(x):
    # exact rational -> "p/q" string, float -> JSON number
    return format_rat(x) if not isinstance(x, float) else x


def _weight_to_pair(w):
    if wt_is_exact(w):
        parts = w.gaussian_parts()
        if parts is not None:
            return _encode_number(parts[0]), _encode_number(parts[1])
        z = complex(w)
        return z.real, z.imag
    return w.real, w.imag


def _decode_number(x):
    if isinstance(x, str):
        try:
            return parse_rat(x)
        except ValueError as exc:
            raise SerializationError(str(exc)) from exc
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise SerializationError(f"bad numeric entry: {x!r}")
    return x


def _pair_to_weight(re, im):
    re = _decode_number(re)
    im = _decode_number(im)
    if isinstance(re, float) or isinstance(im, float):
        return complex(float(re), float(im))
    return Cyclotomic.gaussian(re, im)


def measure_to_dict(m: Measure) -> dict:
    discrete = []
    for angle, w in m.atoms:
        re, im = _weight_to_pair(w)
        discrete.append({"re": re, "im": im, "angle": format_angle(angle)})
    ac = []
    for n, c in m.ac:
        re, im = _weight_to_pair(c)
        ac.append([n, re, im])
    return {"discrete": discrete, "ac": ac}


def measure_from_dict(data) -> Measure:
    if not isinstance(data, dict):
        raise SerializationError("measure JSON must be an object")
    atoms = []
    for entry in data.get("discrete", ()):
        if not isinstance(entry, dict) or "angle" not in entry:
            raise SerializationError(f"bad atom entry: {entry!r}")
        atoms.append(
            (parse_angle(entry["angle"]), _pair_to_weight(entry.get("re", 0), entry.get("im", 0)))
        )
    ac = []
    for entry in data.get("ac", ()):
        if not isinstance(entry, (list, tuple)) or len(entry) != 3:
            raise SerializationError(f"bad ac entry: {entry!r}")
        n, re, im = entry
        if isinstance(n, bool) or not isinstance(n, int):
            raise SerializationError(f"ac frequency must be an integer: {n!r}")
        ac.append((n, _pair_to_weight(re, im)))
    return measure(atoms=atoms, ac=ac)


def measure_to_json(m: Measure, **kwargs) -> str:
    return json.dumps(measure_to_dict(m), **kwargs)


def measure_from_json(text: str) -> Measure:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SerializationError(f"invalid JSON: {exc}") from exc
    return measure_from_dict(data)


def load_measure(path) -> Measure:
    with open(path, "r", encoding="utf-8") as fh:
        return measure_from_json(fh.read())


def save_measure(m: Measure, path, indent=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(measure_to_json(m, indent=indent))
        fh.write("\n")
