# Copyright 2026 cppforge contributors.
# This Software is subject to the terms of the XMOS Public Licence: Version 1.
"""
Builders that lift complete permutation polynomials of F_q to F_{q^n}.

Each builder validates its preconditions, describes the lifted polynomial
in two forms (a structured composite evaluated pointwise, and the expanded
dense polynomial, built on first use), and tests the subfield witness
exhaustively. The witness verdict is what the lift transports upward;
verify() checks the transport on the lifted map itself.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from . import (FieldMismatch, HypothesisFails, PreconditionViolated,
               ReconstructionMismatch)
from .config import get_settings
from .field_maps import (PPoly, norm_exponent, norm_table,
                         ppoly_permutes_kernel, ppoly_quotient, quotient_table,
                         trace_polynomial, trace_table)
from .gf_core import TowerDesc, make_extension, make_field
from .perm_check import (check_cap, cpp_table, evaluate_table, is_cpp,
                         is_permutation, power_table, table_is_permutation)
from .polynomial import Poly

logger = logging.getLogger(__name__)


@dataclass
class LiftResult:
    """A lifted polynomial together with the subfield polynomial it is judged by.

    predicted_cpp is only set once every precondition holds and the subfield
    witness has been tested exhaustively.
    """
    construction: str
    tower: TowerDesc
    params: Dict[str, object]
    shape: str
    subfield_witness: Poly
    preconditions: List[Tuple[str, bool]]
    composite: Callable[[], np.ndarray] = field(repr=False, compare=False)
    expander: Callable[[], Poly] = field(repr=False, compare=False)
    expanded_degree: int
    predicted_cpp: Optional[bool] = None
    predicted_permutation: Optional[bool] = None
    verified_cpp: Optional[bool] = None
    verified_permutation: Optional[bool] = None
    checks: Dict[str, bool] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)
    _lifted: Optional[Poly] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.predicted_cpp is not None:
            assert all(holds for _, holds in self.preconditions)

    @property
    def lifted(self) -> Poly:
        """The expanded polynomial over F_{q^n}; exponents are kept as written."""
        if self._lifted is None:
            self._lifted = self.expander()
        return self._lifted

    @property
    def expandable(self) -> bool:
        return self.expanded_degree <= get_settings().expand_limit

    @property
    def identity_holds(self) -> Optional[bool]:
        return self.checks.get("trace_identity")

    def composite_table(self) -> np.ndarray:
        return self.composite()

    def verify(self, cap: Optional[int] = None, check_expanded: bool = True) -> bool:
        """Exhaustively test the lifted map; returns and records verified_cpp.

        With check_expanded the dense polynomial is also evaluated and must
        agree with the composite at every point, unless its degree is above
        the expand limit.
        """
        check_cap(self.tower, cap)
        table = self.composite_table()
        if check_expanded and self.expandable:
            expanded = evaluate_table(self.lifted)
            if not np.array_equal(table, expanded):
                bad = int(np.flatnonzero(table != expanded)[0])
                raise ReconstructionMismatch(
                    f"{self.construction}: expanded polynomial and {self.shape} differ at code {bad}")
            self.checks["expanded_matches_composite"] = True
        self.verified_permutation = table_is_permutation(table)
        self.verified_cpp = cpp_table(table, self.tower)
        logger.debug("%s on %s: predicted %s, verified %s", self.construction, self.tower.describe(),
                     self.predicted_cpp, self.verified_cpp)
        return self.verified_cpp

    @property
    def agrees(self) -> bool:
        if self.predicted_cpp is not None and self.verified_cpp is not None:
            return self.predicted_cpp == self.verified_cpp
        if self.predicted_permutation is not None and self.verified_permutation is not None:
            return self.predicted_permutation == self.verified_permutation
        return True

    def to_dict(self) -> dict:
        out = {
            "construction": self.construction,
            "field": self.tower.describe(),
            "params": self.params,
            "shape": self.shape,
            "preconditions": [{"name": name, "holds": holds} for name, holds in self.preconditions],
            "subfield_witness": [list(t) for t in self.subfield_witness.terms()],
            "lifted": [list(t) for t in self.lifted.terms()] if self.expandable else None,
            "lifted_degree": self.expanded_degree,
            "predicted_cpp": self.predicted_cpp,
            "verified_cpp": self.verified_cpp,
        }
        if self.predicted_permutation is not None:
            out["predicted_permutation"] = self.predicted_permutation
            out["verified_permutation"] = self.verified_permutation
        if self.checks:
            out["checks"] = dict(self.checks)
        if self.notes:
            out["notes"] = list(self.notes)
        return out


# -- helpers ----------------------------------------------------------------------

def _require(condition: str, holds: bool, detail: str = "") -> Tuple[str, bool]:
    if not holds:
        raise PreconditionViolated(condition, detail)
    return condition, True


def _over_base(h: Poly, tower: TowerDesc) -> None:
    if h.home != tower.base:
        raise FieldMismatch(f"h lives over {h.home.describe()}, not over the base {tower.base.describe()}")


def _h_values(h: Poly) -> np.ndarray:
    """h at every element of F_q."""
    return h.evaluate_codes(h.home.codes())


def _times_x(tower: TowerDesc, values: np.ndarray) -> np.ndarray:
    return np.asarray(tower.mul(tower.codes(), values))


def _lift_gcd_condition(tower: TowerDesc) -> Tuple[str, bool]:
    return _require("gcd(n, q-1) = 1", math.gcd(tower.n, tower.q - 1) == 1,
                    f"n={tower.n}, q={tower.q}")


def _inverse_of_n(tower: TowerDesc) -> int:
    """n' with n n' = 1 mod q-1, taken in [1, q-1] so that x^(r n') fixes 0."""
    return pow(tower.n, -1, tower.q - 1) or tower.q - 1


def _monomial_table(tower: TowerDesc, alpha: int, exponent: int) -> Callable[[], np.ndarray]:
    return lambda: np.asarray(tower.mul(alpha, power_table(tower, exponent)))


# -- norm lifts -------------------------------------------------------------------

def norm_permutation_criterion(exp_r: int, h: Poly, tower: TowerDesc) -> bool:
    """Whether x^exp_r h(x^((q^n-1)/(q-1))) permutes F_{q^n}, decided on F_q.

    Holds iff gcd(exp_r, (q^n-1)/(q-1)) = 1 and x^(exp_r n') h(x) permutes
    F_q, n n' = 1 mod q-1. The equivalent form x^exp_r h(x^n) is evaluated
    as well and must agree.
    """
    _over_base(h, tower)
    _lift_gcd_condition(tower)
    _require("h is nonzero", not h.is_zero())
    _require("exp_r >= 1", exp_r >= 1, f"exp_r={exp_r}")
    base = tower.base
    codes = base.codes()
    coprime = math.gcd(exp_r, norm_exponent(tower)) == 1
    first = np.asarray(base.mul(base.power(codes, exp_r * _inverse_of_n(tower)), _h_values(h)))
    second = np.asarray(base.mul(base.power(codes, exp_r), h.evaluate_codes(base.power(codes, tower.n))))
    first_perm, second_perm = table_is_permutation(first), table_is_permutation(second)
    if first_perm != second_perm:
        raise ReconstructionMismatch(
            f"x^(r n')h(x) and x^r h(x^n) disagree on F_{tower.q} for r={exp_r}, h={h.to_list()}")
    return coprime and first_perm


def norm_lift(h: Poly, tower: TowerDesc) -> LiftResult:
    """x h(nor(x)) on F_{q^n}, judged by x h(x^n) on F_q."""
    _over_base(h, tower)
    preconditions = [_lift_gcd_condition(tower)]
    N = norm_exponent(tower)
    witness = h.compose_monomial(tower.n).shift(1)
    return LiftResult(
        construction="norm-lift",
        tower=tower,
        params={"h": h.to_list()},
        shape="x*h(nor(x))",
        subfield_witness=witness,
        preconditions=preconditions,
        composite=lambda: _times_x(tower, _h_values(h)[norm_table(tower)]),
        expander=lambda: h.embed(tower).compose_monomial(N).shift(1),
        expanded_degree=1 + max(h.degree, 0) * N,
        predicted_cpp=is_cpp(witness),
    )


def monomial_cpp_check(alpha, s: int, tower: TowerDesc) -> LiftResult:
    """alpha x^(1 + s(q^n-1)/(q-1)) on F_{q^n}, judged by alpha x^(1+ns) on F_q.

    The other form of the criterion, gcd(1 + s(q^n-1)/(q-1), q-1) = 1 with
    alpha x^(1+ns) + x permuting F_q, is evaluated too and must agree.
    """
    base = tower.base
    alpha = base.coerce(alpha)
    preconditions = [
        _lift_gcd_condition(tower),
        _require("alpha != 0", alpha != 0),
        _require("s >= 0", s >= 0, f"s={s}"),
    ]
    lifted_exp = 1 + s * norm_exponent(tower)
    witness = Poly.monomial(base, 1 + tower.n * s, alpha)
    predicted = is_cpp(witness)
    shifted = np.asarray(base.add(evaluate_table(witness), base.codes()))
    alternative = math.gcd(lifted_exp, base.order - 1) == 1 and table_is_permutation(shifted)
    if alternative != predicted:
        raise ReconstructionMismatch(f"monomial criteria disagree for alpha={alpha}, s={s}")
    return LiftResult(
        construction="monomial",
        tower=tower,
        params={"alpha": alpha, "s": s, "exponent": lifted_exp},
        shape="alpha*x^(1+s*(q^n-1)/(q-1))",
        subfield_witness=witness,
        preconditions=preconditions,
        composite=_monomial_table(tower, alpha, lifted_exp),
        expander=lambda: Poly.monomial(tower, lifted_exp, alpha),
        expanded_degree=lifted_exp,
        predicted_cpp=predicted,
        checks={"alternative_form": alternative},
    )


def binary_monomial_construct(e: int, t: int, k: int, alpha) -> LiftResult:
    """alpha x^(1 + (r^k-1)(q+1)q/2) on F_{q^2}, q = r^t = 2^(et).

    Needs k < t, gcd(k, t) != 1 when e = 1, and alpha outside the
    (r^k-1)-th powers of F_q. Under those conditions the monomial is a
    CPP outright. The monomial criterion with n = 2, s = (r^k-1)q/2 and
    the linearised permutation alpha x^(r^k) + x behind it are recorded
    as checks.
    """
    _require("e >= 1", e >= 1, f"e={e}")
    _require("1 <= k < t", 1 <= k < t, f"k={k}, t={t}")
    if e == 1:
        _require("gcd(k, t) != 1 when e = 1", math.gcd(k, t) != 1, f"k={k}, t={t}")
    r = 2 ** e
    base = make_field(2, e * t)
    tower = make_extension(base, 2, as_tower=True)
    q = base.order
    alpha = base.coerce(alpha)
    _require("alpha != 0", alpha != 0)
    g = math.gcd(r ** k - 1, q - 1)
    _require("alpha not in (F_q)^(r^k-1)", base.power(alpha, (q - 1) // g) != 1, f"alpha={alpha}")
    preconditions = [(name, True) for name in (
        "e >= 1", "1 <= k < t", "gcd(k, t) != 1 when e = 1", "alpha != 0", "alpha not in (F_q)^(r^k-1)")]
    exponent = 1 + (r ** k - 1) * (q + 1) * q // 2
    witness = Poly.monomial(base, 1 + (r ** k - 1) * q, alpha)
    proof_witness = Poly.monomial(base, r ** k, alpha)
    proof_table = np.asarray(base.add(evaluate_table(proof_witness), base.codes()))
    return LiftResult(
        construction="binary-monomial",
        tower=tower,
        params={"e": e, "t": t, "k": k, "alpha": alpha, "q": q, "exponent": exponent},
        shape="alpha*x^(1+(r^k-1)(q+1)q/2)",
        subfield_witness=witness,
        preconditions=preconditions,
        composite=_monomial_table(tower, alpha, exponent),
        expander=lambda: Poly.monomial(tower, exponent, alpha),
        expanded_degree=exponent,
        predicted_cpp=True,
        checks={
            "witness_cpp": is_cpp(witness),
            "proof_witness_permutes": table_is_permutation(proof_table),
        },
        notes=[f"alpha*x^{r ** k} + x is a linearised permutation of F_{q}"],
    )


# -- trace lifts ------------------------------------------------------------------

def _trace_composite(h: Poly, tower: TowerDesc) -> Callable[[], np.ndarray]:
    return lambda: _times_x(tower, _h_values(h)[trace_table(tower)])


def _trace_degree(h: Poly, tower: TowerDesc) -> int:
    return 1 + max(h.degree, 0) * tower.q ** (tower.n - 1)


def trace_permutation_lift(h: Poly, tower: TowerDesc) -> LiftResult:
    """x h(tr(x)) permutes F_{q^n} iff x h(x) permutes F_q, given h(0) != 0."""
    _over_base(h, tower)
    preconditions = [_require("h(0) != 0", h.constant_term != 0, f"h(0)={h.constant_term}")]
    witness = h.shift(1)
    return LiftResult(
        construction="trace-perm",
        tower=tower,
        params={"h": h.to_list()},
        shape="x*h(tr(x))",
        subfield_witness=witness,
        preconditions=preconditions,
        composite=_trace_composite(h, tower),
        expander=lambda: h.substitute(trace_polynomial(tower)).shift(1),
        expanded_degree=_trace_degree(h, tower),
        predicted_permutation=is_permutation(witness).is_permutation,
    )


def trace_lift_simple(h: Poly, tower: TowerDesc) -> LiftResult:
    """x h(tr(x)) on F_{q^n}, judged by x h(x) on F_q; h(0) not in {0, -1}."""
    _over_base(h, tower)
    h0 = h.constant_term
    preconditions = [_require("h(0) not in {0, -1}", h0 not in (0, tower.base.minus_one), f"h(0)={h0}")]
    witness = h.shift(1)
    return LiftResult(
        construction="trace-simple",
        tower=tower,
        params={"h": h.to_list()},
        shape="x*h(tr(x))",
        subfield_witness=witness,
        preconditions=preconditions,
        composite=_trace_composite(h, tower),
        expander=lambda: h.substitute(trace_polynomial(tower)).shift(1),
        expanded_degree=_trace_degree(h, tower),
        predicted_cpp=is_cpp(witness),
    )


def kernel_shifts(h: Poly, L: PPoly, a: int) -> List[Tuple[int, int, int]]:
    """(b, h(b)/a + A(b), (h(b)+1)/a + A(b)) for every b in F_q."""
    base = L.tower.base
    bs = base.codes()
    h_vals = _h_values(h)
    A_vals = quotient_table(L, bs)
    a_inv = base.inv(a)
    first = np.asarray(base.add(base.mul(h_vals, a_inv), A_vals))
    second = np.asarray(base.add(base.mul(base.add(h_vals, 1), a_inv), A_vals))
    return [(int(b), int(s1), int(s2)) for b, s1, s2 in zip(bs, first, second)]


def check_kernel_hypothesis(h: Poly, L: PPoly, a: int) -> None:
    """Raise HypothesisFails for the first b whose shifted map fails to permute ker(tr)."""
    verdicts: Dict[int, bool] = {}
    for b, theta1, theta2 in kernel_shifts(h, L, a):
        for which, theta in (("L(x) - (h(b)/a + A(b))x", theta1), ("L(x) - ((h(b)+1)/a + A(b))x", theta2)):
            if theta not in verdicts:
                verdicts[theta] = ppoly_permutes_kernel(L, theta)
            if not verdicts[theta]:
                raise HypothesisFails(b, which, theta)


def general_trace_table(h: Poly, L: PPoly, a: int) -> np.ndarray:
    """x (h(tr(x)) + a A(tr(x)) - a A(x)) pointwise, A(x) = L(x)/x."""
    tower = L.tower
    tr = trace_table(tower)
    A_base = quotient_table(L, tower.base.codes())
    H = tower.sub(tower.add(_h_values(h)[tr], tower.mul(a, A_base[tr])),
                  tower.mul(a, quotient_table(L, tower.codes())))
    return _times_x(tower, np.asarray(H))


def trace_identity_holds(h: Poly, L: PPoly, a) -> bool:
    """tr(x H(x)) = tr(x) h(tr(x)) on all of F_{q^n}; needs no kernel hypothesis."""
    tower = L.tower
    a = tower.base.coerce(a)
    tr = trace_table(tower)
    lifted = general_trace_table(h, L, a)
    return bool(np.array_equal(tr[lifted], np.asarray(tower.base.mul(tr, _h_values(h)[tr]))))


def trace_lift_general(h: Poly, L: PPoly, a, tower: TowerDesc, construction: str = "trace-general",
                       extra_preconditions: Optional[List[Tuple[str, bool]]] = None,
                       extra_params: Optional[Dict[str, object]] = None) -> LiftResult:
    """x H(x) with H(x) = h(tr(x)) + a A(tr(x)) - a A(x), A(x) = L(x)/x.

    Requires a != 0 and that both shifted maps of every b in F_q permute
    ker(tr). The identity tr(x H(x)) = tr(x) h(tr(x)) is checked on the
    whole tower and recorded.
    """
    _over_base(h, tower)
    if L.tower != tower:
        raise FieldMismatch("p-polynomial and h live over different towers")
    a = tower.base.coerce(a)
    preconditions = list(extra_preconditions or [])
    preconditions.append(_require("a != 0", a != 0))
    check_kernel_hypothesis(h, L, a)
    preconditions.append(("shifted p-polynomials permute ker(tr) for every b", True))

    def expand():
        T = trace_polynomial(tower)
        A = ppoly_quotient(L)
        return (h.substitute(T) + A.substitute(T).scale(a) - A.scale(a)).shift(1)

    A_degree = tower.p ** max(i for i, _ in L.coeffs) - 1
    witness = h.shift(1)
    notes = []
    if not L.is_strict_form():
        notes.append("L is outside the strict form (nonzero a_0..a_{r-1} only); the permissive reading is used")
    params = {"h": h.to_list(), "L": L.describe(), "a": a}
    params.update(extra_params or {})
    return LiftResult(
        construction=construction,
        tower=tower,
        params=params,
        shape="x*(h(tr(x)) + a*A(tr(x)) - a*A(x))",
        subfield_witness=witness,
        preconditions=preconditions,
        composite=lambda: general_trace_table(h, L, a),
        expander=expand,
        expanded_degree=1 + max(h.degree, A_degree, 0) * tower.q ** (tower.n - 1),
        predicted_cpp=is_cpp(witness),
        checks={"trace_identity": trace_identity_holds(h, L, a)},
        notes=notes,
    )


def trace_lift_binomial(h: Poly, k: int, a, tower: TowerDesc) -> LiftResult:
    """x (h(tr(x)) + a tr(x)^(p^k-1) - a x^(p^k-1)), the general lift with L = x^(p^k)."""
    p, r, n = tower.p, tower.r, tower.n
    _require("k >= 1", k >= 1, f"k={k}")
    preconditions = [
        _require("gcd(k, n) = 1", math.gcd(k, n) == 1, f"k={k}, n={n}"),
        _require("p does not divide n", n % p != 0, f"p={p}, n={n}"),
        _require("gcd(n, p^gcd(k,r) - 1) = 1", math.gcd(n, p ** math.gcd(k, r) - 1) == 1,
                 f"n={n}, p={p}, r={r}, k={k}"),
    ]
    L = PPoly.binomial_head(tower, k)
    result = trace_lift_general(h, L, a, tower, construction="trace-binomial",
                                extra_preconditions=preconditions, extra_params={"k": k})
    if k >= tower.total_degree:
        result.notes.append(f"x^(p^{k}) acts on F_{tower.order} as x^(p^{k % tower.total_degree})")
    return result
