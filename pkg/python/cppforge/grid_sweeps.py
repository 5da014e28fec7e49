# Copyright 2026 cppforge contributors.
# This Software is subject to the terms of the XMOS Public Licence: Version 1.
"""
Equivalence sweeps over parameter grids.

A sweep builds every construction of its grid, verifies each lifted map
exhaustively and compares the outcome with the subfield prediction. Where
the lifted map has a commuting trace or norm square, the fibre criterion is
run as well and must agree with the direct bijectivity test. Any
disagreement is reported verbatim as a counterexample.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Tuple

import numpy as np
import sympy

from . import HypothesisFails, PreconditionViolated
from .config import SWEEPS, get_settings
from .cpp_search import (count_complete_mappings, enumerate_complete_mappings,
                         to_h_form)
from .field_maps import (PPoly, binomial_kernel_all_c,
                         binomial_kernel_criterion, ppoly_permutes_kernel)
from .gf_core import FieldDesc, TowerDesc, make_field, make_tower
from .lift_constructions import (LiftResult, binary_monomial_construct,
                                 monomial_cpp_check, norm_lift,
                                 trace_identity_holds, trace_lift_binomial,
                                 trace_lift_general, trace_lift_simple,
                                 trace_permutation_lift)
from .perm_check import (evaluate_table, fiber_criterion_verify,
                         is_complete_permutation)
from .polynomial import Poly

logger = logging.getLogger(__name__)

# Every h of degree <= 2 is swept while q^3 stays below this many polynomials.
FULL_H_GRID = 4096


@dataclass
class SweepReport:
    sweep: str
    max_order: int
    seed: int
    total: int = 0
    agreements: int = 0
    skipped: int = 0
    fiber_checked: int = 0
    fiber_agreements: int = 0
    counterexamples: List[dict] = field(default_factory=list)
    by_field: Dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def record(self, agrees: bool, case: Dict[str, object]) -> None:
        self.total += 1
        if "field" in case:
            self.by_field[case["field"]] = self.by_field.get(case["field"], 0) + 1
        if agrees:
            self.agreements += 1
        else:
            logger.warning("%s counterexample: %s", self.sweep, case)
            self.counterexamples.append(case)

    def to_dict(self) -> dict:
        return {"sweep": self.sweep, "max_order": self.max_order, "seed": self.seed,
                "total": self.total, "agreements": self.agreements, "skipped": self.skipped,
                "fiber_checked": self.fiber_checked, "fiber_agreements": self.fiber_agreements,
                "by_field": dict(self.by_field),
                "counterexamples": self.counterexamples}


# -- grids --------------------------------------------------------------------------

def prime_powers(limit: int) -> Iterator[Tuple[int, int]]:
    """(p, r) with p^r <= limit, ordered by p then r."""
    for p in sympy.primerange(2, limit + 1):
        r = 1
        while p ** r <= limit:
            yield int(p), r
            r += 1


def towers(max_order: int, min_n: int = 2) -> Iterator[TowerDesc]:
    """Every tower F_{q^n} over a canonical F_q with q^n <= max_order, n >= min_n."""
    for p, r in prime_powers(int(math.isqrt(max_order))):
        q = p ** r
        n = min_n
        while q ** n <= max_order:
            yield make_tower(p, r, n)
            n += 1


def h_grid(base: FieldDesc, rng: np.random.Generator, random_count: int) -> List[Poly]:
    """All h of degree <= 2 on small fields, then random_count seeded h of degree < q."""
    q = base.order
    polys = []
    if q ** 3 <= FULL_H_GRID:
        polys = [Poly(base, coeffs) for coeffs in itertools.product(range(q), repeat=3)]
    for _ in range(random_count):
        polys.append(Poly(base, rng.integers(0, q, size=q).tolist()))
    return polys


def _case(result: LiftResult, **extra) -> dict:
    case = {"construction": result.construction, "field": result.tower.describe(),
            "params": result.params, "predicted": result.predicted_cpp
            if result.predicted_cpp is not None else result.predicted_permutation,
            "verified": result.verified_cpp if result.predicted_cpp is not None else result.verified_permutation}
    case.update(extra)
    return case


class Sweeper:
    """Runs one named sweep; check_expanded_every thins the dense-polynomial cross-check."""

    def __init__(self, max_order: int = 4096, seed: int = 0, random_count: int = 100,
                 check_expanded_every: int = 25, fiber: bool = True):
        self.max_order = max_order
        self.seed = seed
        self.random_count = random_count
        self.check_expanded_every = max(1, check_expanded_every)
        self.fiber = fiber

    def run(self, name: str) -> SweepReport:
        if name not in SWEEPS:
            raise ValueError(f"unknown sweep {name!r}; choose from {', '.join(SWEEPS)}")
        report = SweepReport(name, self.max_order, self.seed)
        runner: Callable[[SweepReport], None] = getattr(self, "_sweep_" + name.replace("-", "_"))
        logger.info("sweep %s up to order %d (seed %d)", name, self.max_order, self.seed)
        runner(report)
        logger.info("sweep %s: %d/%d agree, %d skipped", name, report.agreements, report.total, report.skipped)
        return report

    def _rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def _check(self, report: SweepReport, result: LiftResult, lambda_kind: Optional[str]) -> None:
        check_expanded = report.total % self.check_expanded_every == 0
        result.verify(check_expanded=check_expanded)
        report.record(result.agrees, _case(result))
        if self.fiber and lambda_kind is not None:
            self._check_fibres(report, result, lambda_kind)

    def _check_fibres(self, report: SweepReport, result: LiftResult, lambda_kind: str) -> None:
        """Fibre criterion on f and on f + x; completeness needs both."""
        tower = result.tower
        f_table = result.composite_table()
        for which, table in (("f", f_table), ("f_plus_x", np.asarray(tower.add(f_table, tower.codes())))):
            fibres = fiber_criterion_verify(table, lambda_kind=lambda_kind, tower=tower)
            if not fibres.criterion_applies:
                continue
            report.fiber_checked += 1
            if fibres.agrees:
                report.fiber_agreements += 1
            else:
                report.counterexamples.append(_case(result, fibre_map=which, fibre_report=fibres.to_dict()))

    # -- lifts ------------------------------------------------------------------------

    def _sweep_norm_lift(self, report: SweepReport) -> None:
        rng = self._rng()
        for tower in towers(self.max_order):
            if math.gcd(tower.n, tower.q - 1) != 1:
                continue
            for h in h_grid(tower.base, rng, self.random_count):
                self._check(report, norm_lift(h, tower), "norm")

    def _trace_sweep(self, report: SweepReport, build, admissible) -> None:
        rng = self._rng()
        for tower in towers(self.max_order):
            for h in h_grid(tower.base, rng, self.random_count):
                if not admissible(h, tower):
                    report.skipped += 1
                    continue
                self._check(report, build(h, tower), "trace")

    def _sweep_trace_simple(self, report: SweepReport) -> None:
        self._trace_sweep(report, trace_lift_simple,
                          lambda h, tower: h.constant_term not in (0, tower.base.minus_one))

    def _sweep_trace_perm(self, report: SweepReport) -> None:
        self._trace_sweep(report, trace_permutation_lift, lambda h, tower: h.constant_term != 0)

    def _sweep_trace_binomial(self, report: SweepReport) -> None:
        rng = self._rng()
        for tower in towers(self.max_order):
            for k in range(1, tower.total_degree):
                if not binomial_kernel_all_c(k, tower)[0]:
                    continue
                hs = h_grid(tower.base, rng, 0) or h_grid(tower.base, rng, self.random_count)
                for a in range(1, tower.q):
                    for h in hs:
                        result = trace_lift_binomial(h, k, a, tower)
                        if not result.identity_holds:
                            report.counterexamples.append(_case(result, identity=False))
                        self._check(report, result, "trace")

    def _sweep_trace_general(self, report: SweepReport) -> None:
        """Random (h, L, a); instances whose kernel hypothesis fails only check the trace identity."""
        rng = self._rng()
        for tower in towers(self.max_order):
            rn = tower.total_degree
            for _ in range(self.random_count):
                size = int(rng.integers(1, min(rn, 3) + 1))
                indices = sorted(set(int(i) for i in rng.integers(0, rn, size=size)))
                L = PPoly(tower, tuple((i, int(rng.integers(1, tower.q))) for i in indices))
                h = Poly(tower.base, rng.integers(0, tower.q, size=3).tolist())
                a = int(rng.integers(1, tower.q))
                if not trace_identity_holds(h, L, a):
                    report.counterexamples.append({"field": tower.describe(), "h": h.to_list(),
                                                   "L": L.describe(), "a": a, "identity": False})
                try:
                    result = trace_lift_general(h, L, a, tower)
                except HypothesisFails:
                    report.skipped += 1
                    continue
                self._check(report, result, "trace")

    # -- monomials ------------------------------------------------------------------

    def _sweep_monomial(self, report: SweepReport) -> None:
        for tower in towers(self.max_order):
            if math.gcd(tower.n, tower.q - 1) != 1:
                continue
            for alpha in range(1, tower.q):
                for s in range(tower.q):
                    self._check(report, monomial_cpp_check(alpha, s, tower), "norm")

    def _sweep_binary_monomial(self, report: SweepReport) -> None:
        for et in range(2, 64):
            q = 2 ** et
            if q * q > self.max_order:
                break
            for e in (d for d in range(1, et + 1) if et % d == 0):
                t = et // e
                for k in range(1, t):
                    if e == 1 and math.gcd(k, t) == 1:
                        continue
                    for alpha in range(1, q):
                        try:
                            result = binary_monomial_construct(e, t, k, alpha)
                        except PreconditionViolated:
                            report.skipped += 1
                            continue
                        result.verify(check_expanded=False)
                        agrees = result.verified_cpp and all(result.checks.values())
                        report.record(agrees, _case(result, checks=result.checks))

    # -- kernel criterion -------------------------------------------------------------

    def _sweep_kernel_binomial(self, report: SweepReport) -> None:
        """Every Case1/Case2 prediction must be confirmed on ker(tr); no-claim cases are skipped."""
        for tower in towers(self.max_order):
            for k in range(1, tower.total_degree):
                if math.gcd(k, tower.n) != 1:
                    continue
                L = PPoly.binomial_head(tower, k)
                all_c = binomial_kernel_all_c(k, tower)[0]
                for c in range(tower.q):
                    verdict = binomial_kernel_criterion(k, c, tower)
                    actual = ppoly_permutes_kernel(L, c)
                    case = {"field": tower.describe(), "k": k, "c": c,
                            "verdict": verdict.to_dict(), "exhaustive": actual}
                    if verdict.predicted is None and not all_c:
                        report.skipped += 1
                        continue
                    report.record(actual, case)
        # x^2 - cx with c^3 = 1 on F_16 over F_4 must fail on ker(tr)
        if 16 <= self.max_order:
            tower = make_tower(2, 2, 2)
            L = PPoly.binomial_head(tower, 1)
            for c in range(1, 4):
                if tower.base.power(c, 3) == 1:
                    actual = ppoly_permutes_kernel(L, c)
                    report.record(not actual, {"field": tower.describe(), "k": 1, "c": c,
                                               "expected": False, "exhaustive": actual})

    # -- search ---------------------------------------------------------------------------

    def _sweep_search(self, report: SweepReport) -> None:
        """Catalogue round trips on every F_q within the search cap and max order."""
        cap = get_settings().search_cap
        for p, r in prime_powers(min(cap, self.max_order)):
            base = make_field(p, r)
            q = base.order
            mappings = enumerate_complete_mappings(base)
            for m in mappings:
                f_ok, g_ok = is_complete_permutation(m.poly)
                report.record(f_ok.is_permutation and g_ok.is_permutation,
                              {"field": base.describe(), "table": list(m.table), "check": "interpolant"})
                for n in range(1, 4):
                    if math.gcd(n, q - 1) != 1:
                        continue
                    h = to_h_form(m.poly, n)
                    rebuilt = evaluate_table(h.compose_monomial(n).shift(1))
                    report.record(rebuilt.tolist() == list(m.table),
                                  {"field": base.describe(), "table": list(m.table), "check": f"h-form n={n}"})
            if q <= 8:
                by_table = count_complete_mappings(base, "table")
                by_poly = count_complete_mappings(base, "interpolant")
                report.record(by_table == by_poly == len(mappings),
                              {"field": base.describe(), "check": "count",
                               "search": len(mappings), "table": by_table, "interpolant": by_poly})


def run_sweep(name: str, max_order: int = 4096, seed: int = 0, **kwargs) -> SweepReport:
    return Sweeper(max_order=max_order, seed=seed, **kwargs).run(name)
