# Copyright 2026 cppforge contributors.
# This Software is subject to the terms of the XMOS Public Licence: Version 1.
from cppforge.common_utils import json_to_dict, rows_to_csv, strip_comments


def test_comment_without_final_newline(tmp_path):
    config = tmp_path / "run.json"
    config.write_text('{"p": 5, "n": 2} // last line')
    assert json_to_dict(str(config)) == {"p": 5, "n": 2}


def test_comment_markers_inside_strings_survive(tmp_path):
    config = tmp_path / "run.json"
    config.write_text('{\n  "out": "http://host/report.json", // where to write\n  "L": "L=[(0,1)]"\n}\n')
    assert json_to_dict(str(config)) == {"out": "http://host/report.json", "L": "L=[(0,1)]"}


def test_escaped_quote_in_string():
    assert strip_comments('{"a": "say \\"//hi\\""} // x') == '{"a": "say \\"//hi\\""} '


def test_rows_to_csv(tmp_path):
    path = tmp_path / "rows.csv"
    text = rows_to_csv([{"field": "p=2;r=1;mod=[0,1]", "table": [0, 1], "extra": 1}], ("field", "table"), str(path))
    assert text.splitlines() == ["field,table", '"p=2;r=1;mod=[0,1]","[0, 1]"']
    assert path.read_text() == text
