# Copyright 2026 cppforge contributors.
# This Software is subject to the terms of the XMOS Public Licence: Version 1.
"""
Relative trace and norm of a tower F_{q^n}/F_q, the trace kernel, and
p-polynomials L(x) = sum a_i x^(p^i) with coefficients in F_q.
"""

from __future__ import annotations

import enum
import functools
import json
import logging
import math
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import (FieldMismatch, MapEscapesKernel, ParseError,
               PreconditionViolated)
from .gf_core import FieldDesc, FieldElement, TowerDesc
from .polynomial import Poly

logger = logging.getLogger(__name__)


def _tower_of(x: FieldElement) -> TowerDesc:
    if not isinstance(x.home, TowerDesc):
        raise FieldMismatch(f"{x.home.describe()} is not a tower")
    return x.home


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@functools.lru_cache(maxsize=64)
def trace_table(tower: TowerDesc) -> np.ndarray:
    """tr(x) for every code x, as base-field codes."""
    y = tower.codes()
    acc = np.zeros_like(y)
    for _ in range(tower.n):
        acc = np.asarray(tower.add(acc, y))
        y = np.asarray(tower.power(y, tower.q))
    assert tower.is_base_code(acc), "trace left F_q"
    return _frozen(acc)


@functools.lru_cache(maxsize=64)
def norm_table(tower: TowerDesc) -> np.ndarray:
    """nor(x) for every code x, as base-field codes."""
    acc = np.asarray(tower.power(tower.codes(), norm_exponent(tower)))
    assert tower.is_base_code(acc), "norm left F_q"
    return _frozen(acc)


def norm_exponent(tower: TowerDesc) -> int:
    return (tower.order - 1) // (tower.q - 1)


def rel_trace(x: FieldElement) -> FieldElement:
    tower = _tower_of(x)
    acc, y = 0, x.code
    for _ in range(tower.n):
        acc = tower.add(acc, y)
        y = tower.power(y, tower.q)
    assert acc < tower.q and tower.base.power(acc, tower.q) == acc, "trace left F_q"
    return FieldElement(tower.base, acc)


def rel_norm(x: FieldElement) -> FieldElement:
    tower = _tower_of(x)
    value = tower.power(x.code, norm_exponent(tower))
    assert value < tower.q, "norm left F_q"
    return FieldElement(tower.base, value)


@functools.lru_cache(maxsize=64)
def kernel_codes(tower: TowerDesc) -> np.ndarray:
    return _frozen(np.flatnonzero(trace_table(tower) == 0).astype(np.int64))


def trace_kernel(tower: TowerDesc) -> List[FieldElement]:
    """ker(tr) in canonical encoding order; q**(n-1) elements."""
    return [FieldElement(tower, int(k)) for k in kernel_codes(tower)]


def trace_polynomial(tower: TowerDesc) -> Poly:
    """sum_{i<n} x^(q^i) over the tower."""
    return Poly.from_terms(tower, {tower.q ** i: 1 for i in range(tower.n)})


# -- p-polynomials --------------------------------------------------------------

@dataclass(frozen=True)
class PPoly:
    """L(x) = sum a_i x^(p^i), 0 <= i < rn, a_i in F_q; stored as sorted nonzero (i, a_i)."""
    tower: TowerDesc
    coeffs: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        merged: Dict[int, int] = {}
        for i, a in self.coeffs:
            i, a = int(i), int(a)
            if not 0 <= i < self.tower.total_degree:
                raise PreconditionViolated("p-polynomial index in [0, rn)", f"i={i}, rn={self.tower.total_degree}")
            if not 0 <= a < self.tower.q:
                raise PreconditionViolated("p-polynomial coefficients lie in F_q", f"a_{i}={a}")
            merged[i] = self.tower.base.add(merged.get(i, 0), a)
        coeffs = tuple(sorted((i, a) for i, a in merged.items() if a))
        if not coeffs:
            raise PreconditionViolated("p-polynomial is nonzero")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_dict(cls, tower: TowerDesc, coeffs: Dict[int, int]) -> "PPoly":
        return cls(tower, tuple(coeffs.items()))

    @classmethod
    def binomial_head(cls, tower: TowerDesc, k: int) -> "PPoly":
        """x^(p^k); the index is reduced mod rn, which leaves the induced map unchanged."""
        return cls(tower, ((k % tower.total_degree, 1),))

    @classmethod
    def parse(cls, tower: TowerDesc, text: str) -> "PPoly":
        """'L=[(i,a_i),...]' or a JSON list of [i, a_i] pairs."""
        body = re.sub(r"^\s*L\s*=\s*", "", text)
        try:
            pairs = json.loads(body.replace("(", "[").replace(")", "]"))
        except json.JSONDecodeError as err:
            raise ParseError("p-polynomial", text, err.pos, err.msg)
        if not isinstance(pairs, list) or not all(isinstance(t, list) and len(t) == 2 for t in pairs):
            raise ParseError("p-polynomial", text, 0, "expected a list of (i, a_i) pairs")
        return cls(tower, tuple((int(i), int(a)) for i, a in pairs))

    def describe(self) -> str:
        return "L=[" + ",".join(f"({i},{a})" for i, a in self.coeffs) + "]"

    def as_dict(self) -> Dict[int, int]:
        return dict(self.coeffs)

    def is_strict_form(self) -> bool:
        """All of a_0..a_{r-1} nonzero and nothing above index r-1."""
        return [i for i, _ in self.coeffs] == list(range(self.tower.r))

    def to_poly(self) -> Poly:
        p = self.tower.p
        return Poly.from_terms(self.tower, {p ** i: a for i, a in self.coeffs})

    def table(self, codes) -> np.ndarray:
        tower = self.tower
        codes = np.asarray(codes, dtype=np.int64)
        acc = np.zeros_like(codes)
        y = codes
        wanted = self.as_dict()
        for i in range(max(wanted) + 1):
            if i in wanted:
                acc = np.asarray(tower.add(acc, tower.mul(wanted[i], y)))
            y = np.asarray(tower.power(y, tower.p))
        return acc

    def __call__(self, x: FieldElement) -> FieldElement:
        return ppoly_eval(self, x)


def ppoly_eval(L: PPoly, x) -> FieldElement:
    code = L.tower.coerce(x)
    return FieldElement(L.tower, int(L.table(np.asarray([code]))[0]))


def ppoly_quotient(L: PPoly) -> Poly:
    """A(x) = L(x)/x = sum a_i x^(p^i - 1); A(0) = a_0."""
    p = L.tower.p
    return Poly.from_terms(L.tower, {p ** i - 1: a for i, a in L.coeffs})


def quotient_table(L: PPoly, codes) -> np.ndarray:
    """A(x) pointwise: L(x)/x away from 0, a_0 at 0."""
    codes = np.asarray(codes, dtype=np.int64)
    values = L.table(codes)
    out = np.full(codes.shape, L.as_dict().get(0, 0), dtype=np.int64)
    nonzero = codes != 0
    if np.any(nonzero):
        out[nonzero] = np.asarray(L.tower.mul(values[nonzero], L.tower.inv(codes[nonzero])))
    return out


def _shift_code(tower: TowerDesc, theta) -> int:
    if isinstance(theta, FieldElement) and theta.home not in (tower, tower.base):
        raise FieldMismatch(f"shift from {theta.home.describe()}")
    code = tower.coerce(theta) if theta is not None else 0
    if code >= tower.q:
        raise PreconditionViolated("shift coefficient lies in F_q", f"theta={code}")
    return code


def ppoly_permutes_kernel(L: PPoly, theta=0) -> bool:
    """Whether x -> L(x) - theta*x, theta in F_q, is a bijection of ker(tr)."""
    tower = L.tower
    theta = _shift_code(tower, theta)
    ker = kernel_codes(tower)
    image = np.asarray(tower.sub(L.table(ker), tower.mul(theta, ker)))
    escaped = np.flatnonzero(trace_table(tower)[image] != 0)
    if escaped.size:
        i = int(escaped[0])
        raise MapEscapesKernel(int(ker[i]), int(image[i]))
    return np.unique(image).size == ker.size


# -- binomial criterion ----------------------------------------------------------

class KernelCase(str, enum.Enum):
    CASE1 = "Case1"
    CASE2 = "Case2"
    NONE = "NoCaseApplies"


@dataclass(frozen=True)
class KernelCriterionVerdict:
    case: KernelCase
    predicted: Optional[bool]
    k: int
    c: int
    note: str = ""

    def __post_init__(self):
        if self.case is KernelCase.NONE:
            assert self.predicted is None
        else:
            assert self.predicted is True

    def to_dict(self) -> dict:
        out = {"case": self.case.value, "predicted": self.predicted, "k": self.k, "c": self.c}
        if self.note:
            out["note"] = self.note
        return out


def _check_coprime_k(k: int, tower: TowerDesc) -> None:
    if k < 1:
        raise PreconditionViolated("k >= 1", f"k={k}")
    if math.gcd(k, tower.n) != 1:
        raise PreconditionViolated("gcd(k, n) = 1", f"k={k}, n={tower.n}")


def binomial_kernel_criterion(k: int, c, tower: TowerDesc) -> KernelCriterionVerdict:
    """Sufficient conditions for x^(p^k) - c x to permute ker(tr).

    Case1: c != 0, c^((q-1)/(p^d-1)) = 1 and p does not divide n.
    Case2: c^(n(q-1)/(p^d-1)) != 1, or c = 0 (a Frobenius power).
    d = gcd(k, r). No claim is made when neither case holds.
    """
    _check_coprime_k(k, tower)
    base = tower.base
    c = _shift_code(tower, c)
    d = math.gcd(k, tower.r)
    e = (tower.q - 1) // (tower.p ** d - 1)
    if c != 0 and base.power(c, e) == 1 and tower.n % tower.p != 0:
        return KernelCriterionVerdict(KernelCase.CASE1, True, k, c)
    if c == 0:
        return KernelCriterionVerdict(KernelCase.CASE2, True, k, c, note="c = 0: pure Frobenius power")
    if base.power(c, tower.n * e) != 1:
        return KernelCriterionVerdict(KernelCase.CASE2, True, k, c)
    return KernelCriterionVerdict(KernelCase.NONE, None, k, c)


def binomial_kernel_all_c(k: int, tower: TowerDesc) -> Tuple[bool, Optional[str]]:
    """Whether x^(p^k) - c x permutes ker(tr) for every c in F_q by the arithmetic conditions.

    Returns (holds, first failing condition).
    """
    if k < 1 or math.gcd(k, tower.n) != 1:
        return False, "gcd(k, n) = 1"
    if tower.n % tower.p == 0:
        return False, "p does not divide n"
    if math.gcd(tower.n, tower.p ** math.gcd(k, tower.r) - 1) != 1:
        return False, "gcd(n, p^gcd(k,r) - 1) = 1"
    return True, None

