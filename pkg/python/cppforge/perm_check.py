# Copyright 2026 cppforge contributors.
# This Software is subject to the terms of the XMOS Public Licence: Version 1.
"""
Exhaustive permutation and complete-permutation tests.

Maps are normalised to value tables: table[k] is the code of f(decode(k)).
Polynomials are turned into tables by the power-sum kernel, which keeps one
cached x**e table per (field, exponent) so sweeps over many polynomials of
the same field share the work.
"""

from __future__ import annotations

import functools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from . import BadTableLength, FieldMismatch, OrderCapExceeded
from .config import exhaustive_cap
from .field_maps import norm_table, trace_table
from .gf_core import FieldElement, TowerDesc
from .polynomial import Poly

logger = logging.getLogger(__name__)

MapLike = Union[Poly, np.ndarray, list, tuple]


def check_cap(home, cap: Optional[int] = None) -> None:
    cap = exhaustive_cap(cap)
    if home.order > cap:
        raise OrderCapExceeded(home.order, cap)


@functools.lru_cache(maxsize=512)
def power_table(home, e: int) -> np.ndarray:
    """x**e for every code x of home."""
    table = np.asarray(home.power(home.codes(), e))
    table.setflags(write=False)
    return table


def _evaluate_codes(f: Poly, xs: np.ndarray) -> np.ndarray:
    home = f.home
    acc = np.zeros(xs.shape, dtype=np.int64)
    for e, c in f.terms():
        acc = np.asarray(home.add(acc, home.mul(c, home.power(xs, e))))
    return acc


def evaluate_table(f: Poly, chunk_size: Optional[int] = None, workers: int = 1,
                   method: str = "auto") -> np.ndarray:
    """f at every element of its field, in encoding order.

    method is "power" (sum of cached x**e tables), "horner", or "auto", which
    picks Horner once more than a quarter of the coefficients are nonzero.
    With chunk_size the encoding range is split into disjoint chunks which
    may be evaluated concurrently; the result does not depend on the split.
    """
    home = f.home
    if method == "auto":
        method = "horner" if 4 * len(f.terms()) > len(f.coeffs) else "power"
    if method == "horner":
        return f.evaluate_codes(home.codes())
    if chunk_size is None or chunk_size >= home.order:
        acc = np.zeros(home.order, dtype=np.int64)
        for e, c in f.terms():
            acc = np.asarray(home.add(acc, home.mul(c, power_table(home, e))))
        return acc
    bounds = [(start, min(start + chunk_size, home.order)) for start in range(0, home.order, chunk_size)]
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        parts = list(pool.map(lambda b: _evaluate_codes(f, np.arange(*b, dtype=np.int64)), bounds))
    return np.concatenate(parts)


def as_table(f: MapLike, home=None, chunk_size: Optional[int] = None, workers: int = 1) -> Tuple[object, np.ndarray]:
    if isinstance(f, Poly):
        if home is not None and home != f.home:
            raise FieldMismatch(f"polynomial over {f.home.describe()} checked on {home.describe()}")
        return f.home, evaluate_table(f, chunk_size, workers)
    if home is None:
        raise FieldMismatch("a value table needs its field")
    table = np.asarray(f, dtype=np.int64)
    if table.shape != (home.order,):
        raise BadTableLength(table.size, home.order)
    return home, table


def eval_poly(f: Poly, x) -> FieldElement:
    """Horner evaluation at one element."""
    code = f.home.coerce(x)
    return FieldElement(f.home, f.eval_code(code))


def eval_poly_power_sum(f: Poly, x) -> FieldElement:
    code = f.home.coerce(x)
    acc = 0
    for e, c in f.terms():
        acc = f.home.add(acc, f.home.mul(c, f.home.power(code, e)))
    return FieldElement(f.home, acc)


@dataclass(frozen=True)
class PermVerdict:
    is_permutation: bool
    witness: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        assert (self.witness is None) == self.is_permutation

    def to_dict(self) -> dict:
        return {"is_permutation": self.is_permutation,
                "witness": list(self.witness) if self.witness else None}

    def witness_is_sound(self, table) -> bool:
        if self.witness is None:
            return True
        x1, x2 = self.witness
        return x1 != x2 and table[x1] == table[x2]


def collision_witness(table: np.ndarray) -> Optional[Tuple[int, int]]:
    """Collision (x1, x2), x1 < x2, minimal in (x1, x2); None for a bijection."""
    order = np.argsort(table, kind="stable")
    ranked = table[order]
    dup = np.flatnonzero(ranked[1:] == ranked[:-1])
    if dup.size == 0:
        return None
    group_start = dup[(dup == 0) | (ranked[np.maximum(dup - 1, 0)] != ranked[dup])]
    firsts = order[group_start]
    best = int(np.argmin(firsts))
    return int(firsts[best]), int(order[group_start[best] + 1])


def table_is_permutation(table: np.ndarray) -> bool:
    return np.unique(table).size == table.size


def is_permutation(f: MapLike, home=None, cap: Optional[int] = None,
                   chunk_size: Optional[int] = None, workers: int = 1) -> PermVerdict:
    home = home if home is not None else getattr(f, "home", None)
    if home is not None:
        check_cap(home, cap)
    home, table = as_table(f, home, chunk_size, workers)
    witness = collision_witness(table)
    return PermVerdict(witness is None, witness)


def is_complete_permutation(f: MapLike, home=None, cap: Optional[int] = None,
                            chunk_size: Optional[int] = None, workers: int = 1) -> Tuple[PermVerdict, PermVerdict]:
    """Verdicts for f and for f + x; f is complete iff both hold."""
    home = home if home is not None else getattr(f, "home", None)
    if home is not None:
        check_cap(home, cap)
    home, table = as_table(f, home, chunk_size, workers)
    shifted = np.asarray(home.add(table, home.codes()))
    first = collision_witness(table)
    second = collision_witness(shifted)
    return PermVerdict(first is None, first), PermVerdict(second is None, second)


def is_cpp(f: MapLike, home=None, cap: Optional[int] = None) -> bool:
    first, second = is_complete_permutation(f, home, cap)
    return first.is_permutation and second.is_permutation


def cpp_table(table: np.ndarray, home) -> bool:
    """Bare complete-mapping test on a table, no cap or verdicts."""
    return table_is_permutation(table) and table_is_permutation(np.asarray(home.add(table, home.codes())))


# -- fibre criterion --------------------------------------------------------------

@dataclass(frozen=True)
class FiberReport:
    """Bijectivity of f read through a commuting square lambda(f(x)) = h(lambda(x))."""
    lambda_kind: str
    square_commutes: bool
    lambda_surjective: bool
    lambdabar_surjective: bool
    h_bijective: bool
    fibers_injective: bool
    conclusion: Optional[bool]
    cross_check: bool

    @property
    def criterion_applies(self) -> bool:
        return self.square_commutes and self.lambda_surjective and self.lambdabar_surjective

    @property
    def agrees(self) -> bool:
        return not self.criterion_applies or self.conclusion == self.cross_check

    def to_dict(self) -> dict:
        return {"lambda": self.lambda_kind,
                "square_commutes": self.square_commutes,
                "lambda_surjective": self.lambda_surjective,
                "lambdabar_surjective": self.lambdabar_surjective,
                "h_bijective": self.h_bijective,
                "fibers_injective": self.fibers_injective,
                "conclusion": self.conclusion,
                "cross_check": self.cross_check}


def lambda_table(tower: TowerDesc, lambda_kind: str) -> np.ndarray:
    if lambda_kind == "trace":
        return trace_table(tower)
    if lambda_kind == "norm":
        return norm_table(tower)
    raise ValueError(f"lambda must be 'trace' or 'norm', not {lambda_kind!r}")


def induced_h(f_table: np.ndarray, lam: np.ndarray, q: int) -> np.ndarray:
    """h(s) = lambda(f(x)) for the first x of each fibre lambda^-1(s)."""
    values, first = np.unique(lam, return_index=True)
    h = np.zeros(q, dtype=np.int64)
    h[values] = lam[f_table[first]]
    return h


def fiber_criterion_verify(f: MapLike, h: Optional[MapLike] = None, lambda_kind: str = "trace",
                           tower: Optional[TowerDesc] = None, cap: Optional[int] = None) -> FiberReport:
    """Check f : F_{q^n} -> F_{q^n} through lambda = lambdabar in {trace, norm}.

    h may be a polynomial over F_q, a value table, or omitted, in which case it
    is read off the fibres and the square check decides whether it is well defined.
    """
    tower = tower if tower is not None else getattr(f, "home", None)
    if not isinstance(tower, TowerDesc):
        raise FieldMismatch("the fibre criterion needs a map on a tower")
    check_cap(tower, cap)
    _, f_table = as_table(f, tower)
    lam = lambda_table(tower, lambda_kind)
    q = tower.q
    if h is None:
        h_table = induced_h(f_table, lam, q)
    else:
        _, h_table = as_table(h, tower.base)
    square = bool(np.array_equal(lam[f_table], h_table[lam]))
    surjective = np.unique(lam).size == q
    h_bijective = table_is_permutation(h_table)
    fibers_injective = np.unique(lam * tower.order + f_table).size == tower.order
    applies = square and surjective
    report = FiberReport(
        lambda_kind=lambda_kind,
        square_commutes=square,
        lambda_surjective=surjective,
        lambdabar_surjective=surjective,
        h_bijective=h_bijective,
        fibers_injective=fibers_injective,
        conclusion=(h_bijective and fibers_injective) if applies else None,
        cross_check=table_is_permutation(f_table),
    )
    logger.debug("fibre criterion on %s: %s", tower.describe(), report.to_dict())
    return report


# Short name for the fibre criterion check.
agw_verify = fiber_criterion_verify
