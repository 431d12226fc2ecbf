from __future__ import annotations

import io
import json

import pytest

from polync.io import SAFE_INT, dumps
from polync.report import AnalysisReport, render_text, use_color


def _sample() -> AnalysisReport:
    r = AnalysisReport("monodromy")
    r.monodromy = {
        "colors": ["a", "b"],
        "matrix": [[0, 5 * SAFE_INT], [5 * SAFE_INT, 1]],
        "determinant": -25 * SAFE_INT * SAFE_INT,
        "rank": 2,
        "signature": [1, 1, 0],
    }
    r.charges = {"components": {"v": {"k": 3, "cycle": [["e", -1]], "charge": 6}}, "total": 6, "ok": None}
    r.fail("something")
    return r


def test_json_round_trip_keeps_big_integers():
    r = _sample()
    doc = json.loads(dumps(r.to_dict()))
    assert doc["monodromy"]["determinant"] == str(-25 * SAFE_INT * SAFE_INT)
    back = AnalysisReport.from_dict(doc)
    assert back == r


def test_from_dict_rejects_unknown_versions_and_fields():
    doc = _sample().to_dict()
    with pytest.raises(ValueError, match="version"):
        AnalysisReport.from_dict(dict(doc, schema_version=2))
    with pytest.raises(ValueError, match="unknown"):
        AnalysisReport.from_dict(dict(doc, extra=1))


def test_text_and_json_carry_the_same_values():
    r = _sample()
    text = r.render_text()
    assert text.startswith("polync monodromy: FAIL\n")
    assert f"determinant: {-25 * SAFE_INT * SAFE_INT}" in text
    assert "signature (+, -, 0): (1, 1, 0)" in text
    assert "charges: total 6\n" in text
    assert "note: something" in text


def test_charge_verdict_is_shown_when_known():
    d = _sample().to_dict()
    d["charges"]["ok"] = True
    assert "charges: total 6 PASS" in render_text(d)


class _Tty(io.StringIO):
    def isatty(self):
        return True


def test_color_follows_environment(monkeypatch):
    monkeypatch.delenv("POLYNC_COLOR", raising=False)
    assert use_color(_Tty())
    assert not use_color(io.StringIO())
    assert not use_color(None)
    monkeypatch.setenv("POLYNC_COLOR", "never")
    assert not use_color(_Tty())
    assert "\033[" not in _sample().render_text(_Tty())
    monkeypatch.setenv("POLYNC_COLOR", "auto")
    assert "\033[31mFAIL\033[0m" in _sample().render_text(_Tty())
