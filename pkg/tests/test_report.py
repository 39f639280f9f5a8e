import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperlp.report import CheckReport, dumps_csv, dumps_json, timed, validate_report


def test_close_and_bound():
    assert CheckReport.close("a", 1.0 + 1e-7, 1.0, 1e-6).passed
    assert not CheckReport.close("a", 1.1, 1.0, 1e-6).passed
    assert CheckReport.bound("b", 3.0, 4.0).passed
    assert not CheckReport.bound("b", 3.0, 4.0, upper=False).passed


def test_line_format():
    line = CheckReport.close("x", 0.5, 0.5, 0.1).line()
    assert line.startswith("[PASS] x:") and "tol=0.1" in line


def test_runtime_left_out_by_default():
    rep = CheckReport.close("x", 1.0, 1.0, 0.0)
    rep.runtime_ms = 12.3
    assert "runtime_ms" not in rep.to_dict()
    assert rep.to_dict(runtime=True)["runtime_ms"] == 12.3


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_json_round_trips_floats_exactly(x):
    assert json.loads(dumps_json({"v": x}))["v"] == x


def test_json_special_values_and_complex():
    text = dumps_json({"z": 1 + 2j, "n": math.nan, "i": -math.inf, "a": np.arange(2)})
    assert '"re": 1' in text and "NaN" in text and "-Infinity" in text
    assert json.loads(text)["a"] == [0, 1]


def test_csv_uses_17_digits():
    text = dumps_csv(["x", "ok"], [[0.1, True], [1 / 3, False]])
    assert text.splitlines() == ["x,ok", "0.10000000000000001,true", "0.33333333333333331,false"]


def test_timed():
    holder = []
    with timed(holder):
        pass
    assert len(holder) == 1 and holder[0] >= 0


def test_validate_report():
    rep = CheckReport.close("x", 1.0, 1.0, 0.0)
    doc = {"config": {"command": "c", "params": {}, "out": ".", "format": "json", "seed": 0, "version": "0"},
           "pass": True, "checks": [rep.to_dict()]}
    assert validate_report(json.loads(dumps_json(doc))) == []
    del doc["checks"][0]["anchor"]
    assert validate_report(doc) == ["checks[0] lacks 'anchor'"]
    assert validate_report([]) == ["report is not an object"]


@pytest.mark.parametrize("value", [np.float32(0.5), np.int64(3), np.bool_(True)])
def test_numpy_scalars_serialise(value):
    assert json.loads(dumps_json({"v": value}))["v"] == value
