"""Tests for the flat key=value configuration format."""

import pytest

from triplewalk.config import format_config, load_config, parse_config_text


def test_parse_simple_options():
    text = "n=11\nl=6\nj=10.0\n"
    assert parse_config_text(text) == {"n": "11", "l": "6", "j": "10.0"}


def test_parse_skips_blanks_and_comments():
    text = "\n# run parameters\nn=11\n\n  # indented comment\nhorizon=100\n"
    assert parse_config_text(text) == {"n": "11", "horizon": "100"}


def test_parse_strips_whitespace_and_keeps_order():
    text = "  start = 3 \n dt= 0.05\n"
    options = parse_config_text(text)
    assert list(options.items()) == [("start", "3"), ("dt", "0.05")]


def test_parse_value_may_contain_equals():
    assert parse_config_text("out=a=b.csv") == {"out": "a=b.csv"}


def test_parse_rejects_line_without_equals():
    with pytest.raises(ValueError, match="line 2"):
        parse_config_text("n=11\nbogus line\n")


def test_parse_rejects_empty_name():
    with pytest.raises(ValueError, match="line 1"):
        parse_config_text("=5\n")


def test_format_round_trip():
    options = {"n": "11", "l": "6", "s": "1", "j": "10.0", "out": "trace.csv"}
    assert parse_config_text(format_config(options)) == options


def test_format_empty():
    assert format_config({}) == ""
    assert parse_config_text("") == {}


def test_load_config(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("n=7\nhorizon=25\n", encoding="utf-8")
    assert load_config(str(path)) == {"n": "7", "horizon": "25"}
