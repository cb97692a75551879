"""JSON parsing, validation messages, and deterministic rendering."""

import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sldlab import TrigPoly, autocorrelation, errors
from sldlab.serialize import (
    autocorr_dict,
    complex_pair,
    complex_pairs,
    load_json,
    parse_autocorr,
    parse_constellation,
    parse_signal,
    render_report,
    signal_dict,
)


def _write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj), encoding="utf-8")
    return str(path)


def test_load_json_reports_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"m": 1,\n  "coeffs": [,]}', encoding="utf-8")
    with pytest.raises(errors.ParseError) as exc:
        load_json(str(path))
    assert "line 2" in str(exc.value)
    assert "column" in str(exc.value)


def test_load_json_missing_file(tmp_path):
    with pytest.raises(errors.ParseError) as exc:
        load_json(str(tmp_path / "nope.json"))
    assert "cannot read" in str(exc.value)


def test_parse_signal_roundtrip(tmp_path):
    p = TrigPoly(m=1, coeffs=[0.5 - 0.25j, 2.0, 1j])
    path = _write(tmp_path, "sig.json", signal_dict(p))
    q = parse_signal(load_json(path))
    assert q.m == 1
    assert q.period == 1.0
    assert np.array_equal(q.coeffs, p.coeffs)


def test_parse_signal_length_message(tmp_path):
    obj = {"m": 1, "coeffs": [[0, 0], [1, 0]]}
    with pytest.raises(errors.SchemaMismatch) as exc:
        parse_signal(obj)
    assert "expected 2m+1 = 3 entries, got 2" in str(exc.value)


def test_parse_signal_type_message():
    with pytest.raises(errors.SchemaMismatch) as exc:
        parse_signal({"m": "x", "coeffs": [[1, 0]]})
    assert "signal: field m:" in str(exc.value)
    assert "integer" in str(exc.value)


def test_parse_signal_rejects_bare_floats():
    with pytest.raises(errors.SchemaMismatch):
        parse_signal({"m": 0, "coeffs": [1.0]})


def test_parse_autocorr_roundtrip(tmp_path):
    s = autocorrelation(TrigPoly(m=1, coeffs=[0, 1, 1]))
    path = _write(tmp_path, "ac.json", autocorr_dict(s))
    t = parse_autocorr(load_json(path))
    assert t.m == 1
    assert np.array_equal(t.coeffs, s.coeffs)


def test_parse_autocorr_length_message():
    obj = {"m": 1, "coeffs": [[0, 0], [1, 0], [2, 0]]}
    with pytest.raises(errors.SchemaMismatch) as exc:
        parse_autocorr(obj)
    assert "expected 4m+1 = 5 entries, got 3" in str(exc.value)


def test_parse_constellation_normalizes():
    obj = {
        "m": 0,
        "points": [
            {"coeffs": [[1, 0]], "probability": 2.0},
            {"coeffs": [[2, 0]], "probability": 6.0},
        ],
    }
    c = parse_constellation(obj)
    assert np.allclose(c.probs, [0.25, 0.75])
    assert len(c.signals) == 2


def test_parse_constellation_point_length():
    obj = {
        "m": 1,
        "points": [{"coeffs": [[1, 0]], "probability": 1.0}],
    }
    with pytest.raises(errors.SchemaMismatch) as exc:
        parse_constellation(obj)
    assert "points.0.coeffs" in str(exc.value)


def test_complex_pair_encoding():
    assert complex_pair(1.5 - 2j) == [1.5, -2.0]
    assert complex_pairs(np.array([1j, 2.0])) == [[0.0, 1.0], [2.0, 0.0]]


def test_render_report_deterministic():
    payload = {"b": 1, "a": {"z": [1, 2], "y": 0.5}}
    text = render_report(payload)
    assert text == render_report(payload)
    assert text.endswith("}\n")
    assert text.index('"a"') < text.index('"b"')
    assert json.loads(text) == payload


@given(
    st.integers(0, 3),
    st.lists(
        st.tuples(
            st.floats(-5, 5, allow_nan=False),
            st.floats(-5, 5, allow_nan=False),
        ),
        min_size=1,
        max_size=9,
    ),
)
def test_signal_dict_reparses_to_same_values(m, pairs):
    if len(pairs) != 2 * m + 1:
        return
    coeffs = np.array([complex(a, b) for a, b in pairs])
    if not np.abs(coeffs).max():
        return
    p = TrigPoly(m=m, coeffs=coeffs)
    again = parse_signal(json.loads(render_report(signal_dict(p))))
    assert np.array_equal(again.coeffs, p.coeffs)
    assert again.m == p.m and again.period == p.period
