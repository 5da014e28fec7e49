# Copyright 2026 cppforge contributors.
# This Software is subject to the terms of the XMOS Public Licence: Version 1.
"""
Complete mappings of small F_q, their interpolating polynomials, and the
h-forms x h(x^n) and x h(x) the lift builders take as input.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from . import (BadTableLength, FieldMismatch, PreconditionViolated,
               ReconstructionMismatch, SearchCapExceeded)
from .common_utils import read_json_lines, write_json_lines
from .config import get_settings
from .gf_core import FieldDesc, parse_field
from .perm_check import check_cap, cpp_table, evaluate_table
from .polynomial import Poly

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CompleteMapping:
    """A complete mapping of F_q as a value table plus its interpolant."""
    field: FieldDesc
    table: Tuple[int, ...]
    poly: Poly
    normalized: bool

    @classmethod
    def from_table(cls, field: FieldDesc, table: Sequence[int]) -> "CompleteMapping":
        poly = lagrange_interpolate(field, table)
        normalized = poly.constant_term == 0 and poly.is_monic()
        return cls(field, tuple(int(v) for v in table), poly, normalized)

    def is_complete(self) -> bool:
        return cpp_table(np.asarray(self.table, dtype=np.int64), self.field)

    def to_dict(self) -> dict:
        return {"field": self.field.describe(), "table": list(self.table),
                "poly_coeffs": self.poly.to_list(), "normalized": self.normalized}


def lagrange_interpolate(field, table: Sequence[int]) -> Poly:
    """The polynomial of degree < q with the given value table.

    Every point is a root of Z = x^q - x, so the basis numerator for a is
    Z/(x - a) (synthetic division, done for all a at once) and its value at
    a is Z'(a) = -1.
    """
    q = field.order
    values = np.asarray(table, dtype=np.int64)
    if values.shape != (q,):
        raise BadTableLength(values.size, q)
    points = field.codes()
    # Z/(x - a) has x^j coefficient a^(q-1-j) for j >= 1 and a^(q-1) - 1 at j = 0
    coeffs = np.zeros(q, dtype=np.int64)
    quotient = np.ones(q, dtype=np.int64)
    for j in range(q - 1, -1, -1):
        term = quotient if j else np.asarray(field.sub(quotient, 1))
        weighted = np.asarray(field.mul(values, term))
        total = 0
        for w in weighted[weighted != 0]:
            total = field.add(total, int(w))
        coeffs[j] = field.neg(total)
        quotient = np.asarray(field.mul(quotient, points))
    return Poly(field, coeffs.tolist())


def _check_search_cap(field: FieldDesc, cap: Optional[int]) -> None:
    cap = cap if cap is not None else get_settings().search_cap
    if field.order > cap:
        raise SearchCapExceeded(field.order, cap)


def _tables(field: FieldDesc) -> List[List[int]]:
    a, b = np.meshgrid(field.codes(), field.codes(), indexing="ij")
    return np.asarray(field.add(a, b)).tolist()


def _complete_tables_from(field: FieldDesc, first: int, add: List[List[int]]) -> Iterator[Tuple[int, ...]]:
    """Complete mappings with f(0) = 0 and f(1) = first, lexicographic order."""
    q = field.order
    table = [0] * q
    used_values = [False] * q
    used_sums = [False] * q
    used_values[0] = used_sums[0] = True
    if used_sums[add[first][1]]:
        return
    table[1] = first
    used_values[first] = True
    used_sums[add[first][1]] = True

    def extend(x):
        if x == q:
            yield tuple(table)
            return
        for v in range(1, q):
            s = add[v][x]
            if used_values[v] or used_sums[s]:
                continue
            table[x] = v
            used_values[v] = used_sums[s] = True
            yield from extend(x + 1)
            used_values[v] = used_sums[s] = False

    yield from extend(2)


def enumerate_complete_mappings(field: FieldDesc, normalized_only: bool = True,
                                cap: Optional[int] = None) -> List[CompleteMapping]:
    """All complete mappings of F_q, in lexicographic order of value tables.

    With normalized_only (the default) only mappings with f(0) = 0 are
    returned; otherwise every translate f + c of those is included.
    The scan is split into chunks by the image of 1.
    """
    if not isinstance(field, FieldDesc):
        raise FieldMismatch("complete mappings are searched over F_q, not over a tower")
    _check_search_cap(field, cap)
    add = _tables(field)
    tables: List[Tuple[int, ...]] = []
    for first in range(1, field.order):
        chunk = list(_complete_tables_from(field, first, add))
        logger.debug("f(1)=%d: %d complete mappings of %s", first, len(chunk), field.describe())
        tables.extend(chunk)
    if not normalized_only:
        translates = []
        for table in tables:
            for c in range(field.order):
                translates.append(tuple(add[v][c] for v in table))
        tables = sorted(translates)
    logger.info("%d complete mappings of %s", len(tables), field.describe())
    return [CompleteMapping.from_table(field, t) for t in tables]


def count_complete_mappings(field: FieldDesc, method: str = "table", cap: Optional[int] = None) -> int:
    """Complete mappings with f(0) = 0, counted over every such permutation.

    "table" filters value tables directly; "interpolant" interpolates each
    permutation and runs the complete-permutation test on the polynomial.
    """
    _check_search_cap(field, cap)
    q = field.order
    count = 0
    for rest in itertools.permutations(range(1, q)):
        table = np.asarray((0,) + rest, dtype=np.int64)
        if method == "table":
            ok = cpp_table(table, field)
        elif method == "interpolant":
            ok = cpp_table(evaluate_table(lagrange_interpolate(field, table)), field)
        else:
            raise ValueError(f"method must be 'table' or 'interpolant', not {method!r}")
        count += bool(ok)
    logger.debug("%s count over %s: %d", method, field.describe(), count)
    return count


def to_h_form(f: Poly, n: int) -> Poly:
    """h over F_q with x h(x^n) = f as maps on F_q.

    Each term c x^m (m reduced to 1..q-1) contributes c x^((m-1) n' mod q-1),
    n n' = 1 mod q-1.
    """
    field = f.home
    if not isinstance(field, FieldDesc):
        raise FieldMismatch("h-forms are taken over F_q")
    q = field.order
    if f.eval_code(0) != 0:
        raise PreconditionViolated("f(0) = 0", f"f(0)={f.eval_code(0)}")
    if n < 1 or math.gcd(n, q - 1) != 1:
        raise PreconditionViolated("gcd(n, q-1) = 1", f"n={n}, q={q}")
    n_inv = pow(n, -1, q - 1)
    terms = {}
    for m, c in f.terms():
        m = (m - 1) % (q - 1) + 1
        e = ((m - 1) * n_inv) % (q - 1)
        terms[e] = field.add(terms.get(e, 0), c)
    h = Poly.from_terms(field, terms)
    rebuilt = h.compose_monomial(n).shift(1)
    if not np.array_equal(evaluate_table(rebuilt), evaluate_table(f)):
        raise ReconstructionMismatch(f"x h(x^{n}) does not reproduce {f}")
    return h


def to_trace_form(f: Poly) -> Poly:
    """h with f = x h(x) as maps, the input shape of the trace lifts."""
    return to_h_form(f, 1)


def write_catalog(path: str, mappings: Sequence[CompleteMapping]) -> int:
    write_json_lines([m.to_dict() for m in mappings], path)
    return len(mappings)


def read_catalog(path: str) -> List[CompleteMapping]:
    """Load a JSON-lines catalogue, re-checking every entry."""
    mappings = []
    for lineno, record in enumerate(read_json_lines(path), start=1):
        field = parse_field(record["field"])
        check_cap(field)
        mapping = CompleteMapping.from_table(field, record["table"])
        if mapping.poly.to_list() != list(record["poly_coeffs"]) or not mapping.is_complete():
            raise ReconstructionMismatch(f"{path}:{lineno}: catalogue entry does not check out")
        mappings.append(mapping)
    return mappings
