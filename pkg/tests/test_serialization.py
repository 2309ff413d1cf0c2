from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from circlealg.angles import generator_angle, turns_angle
from circlealg.cyclotomic import Cyclotomic
from circlealg.errors import SerializationError
from circlealg.measures import dirac, haar_cyclic, measure
from circlealg.serialization import (
    measure_from_dict,
    measure_from_json,
    measure_to_dict,
    measure_to_json,
)


def test_rationals_serialized_as_strings():
    d = measure_to_dict(haar_cyclic(3))
    assert d["discrete"][0]["re"] == "1/3"
    assert d["discrete"][0]["im"] == "0"


def test_round_trip_exact_weights():
    m = measure(
        atoms=[
            (F(1, 3), Cyclotomic.gaussian(F(2, 7), F(-1, 5))),
            (generator_angle(1, 2), F(3, 4)),
        ],
        ac={-2: F(1, 2), 5: Cyclotomic.gaussian(0, 1)},
    )
    assert measure_from_json(measure_to_json(m)) == m


def test_round_trip_float_weights():
    m = measure(
        atoms=[(turns_angle(1, 7), 0.1 + 0.25j), (generator_angle(2), -1.5)],
        ac={3: 0.7j},
    )
    assert measure_from_json(measure_to_json(m)) == m


def test_json_integers_parse_as_exact():
    m = measure_from_dict({"discrete": [{"re": 1, "im": 0, "angle": "1/2"}], "ac": []})
    assert m == dirac(F(1, 2))


def test_zero_measure_round_trip():
    m = measure()
    assert measure_from_json(measure_to_json(m)) == m


@pytest.mark.parametrize(
    "payload",
    [
        "[]",
        '{"discrete": [{"re": "1/2", "im": "0"}], "ac": []}',
        '{"discrete": [], "ac": [[1, 2]]}',
        '{"discrete": [], "ac": [["x", 0, 0]]}',
        '{"discrete": [{"re": "a/b", "im": 0, "angle": "0"}], "ac": []}',
        "not json at all",
    ],
)
def test_malformed_inputs_raise(payload):
    with pytest.raises(SerializationError):
        measure_from_json(payload)


weights = st.one_of(
    st.fractions(min_value=F(-9), max_value=F(9), max_denominator=12).filter(bool),
    st.floats(-4, 4, allow_nan=False).filter(lambda x: abs(x) > 1e-6),
)


@given(
    st.lists(
        st.tuples(
            st.fractions(min_value=F(0), max_value=F(1), max_denominator=16),
            weights,
        ),
        max_size=4,
    ),
    st.dictionaries(st.integers(-10, 10), weights, max_size=4),
)
def test_round_trip_property(atoms, ac):
    m = measure(atoms=[(turns_angle(t), w) for t, w in atoms], ac=ac)
    assert measure_from_json(measure_to_json(m)) == m
