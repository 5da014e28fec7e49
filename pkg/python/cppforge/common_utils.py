# Copyright 2026 cppforge contributors.
# This Software is subject to the terms of the XMOS Public Licence: Version 1.
""" File helpers shared by the catalogue, the config loader and the CLI reports """

import json
import re

import numpy as np
import pandas as pd

# A string literal (kept) or a comment running to the end of the line.
_COMMENT = re.compile(r'("(?:\\.|[^"\\])*")|//[^\n]*')


def _plain(value):
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"{type(value).__name__} is not JSON serialisable")


def json_to_dict(config_file):
    with open(config_file, "r") as f:
        input_str = f.read()
    return json.loads(strip_comments(input_str))


def strip_comments(text):
    """ Drop '//' line comments; string literals are left alone """
    return _COMMENT.sub(lambda m: m.group(1) or "", text)


def dumps(obj, indent=None):
    return json.dumps(obj, indent=indent, default=_plain)


def write_json_lines(records, path):
    with open(path, "w") as f:
        for record in records:
            f.write(dumps(record))
            f.write("\n")


def read_json_lines(path):
    records = []
    with open(path, "r") as f:
        for line in f:
            line = line.strip()
            if line:
                records.append(json.loads(line))
    return records


def rows_to_csv(rows, columns, path=None):
    """ CSV text of rows restricted to columns; written to path when given """
    frame = pd.DataFrame([{c: _cell(row.get(c)) for c in columns} for row in rows], columns=list(columns))
    text = frame.to_csv(index=False, lineterminator="\n")
    if path is not None:
        with open(path, "w") as f:
            f.write(text)
    return text


def _cell(value):
    if isinstance(value, (list, tuple, dict)):
        return dumps(value)
    if value is None:
        return ""
    return value
