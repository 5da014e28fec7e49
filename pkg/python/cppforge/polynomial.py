# Copyright 2026 cppforge contributors.
# This Software is subject to the terms of the XMOS Public Licence: Version 1.
""" Dense univariate polynomials over a described field """

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import TYPE_CHECKING, Dict, List, Tuple

import numpy as np

from . import FieldMismatch, ParseError, PreconditionViolated

if TYPE_CHECKING:
    from .gf_core import Field, TowerDesc


@dataclass(frozen=True)
class Poly:
    """coeffs[i] is the code of the x**i coefficient; no trailing zeros, zero poly is ()."""
    home: "Field"
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        coeffs = [int(c) for c in self.coeffs]
        if any(not 0 <= c < self.home.order for c in coeffs):
            raise PreconditionViolated("polynomial coefficients are codes of the field",
                                       f"coeffs={coeffs}, order={self.home.order}")
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, home) -> "Poly":
        return cls(home, ())

    @classmethod
    def constant(cls, home, c) -> "Poly":
        return cls(home, (home.coerce(c),))

    @classmethod
    def x(cls, home) -> "Poly":
        return cls(home, (0, 1))

    @classmethod
    def monomial(cls, home, e: int, c=1) -> "Poly":
        c = home.coerce(c)
        return cls(home, (0,) * e + (c,))

    @classmethod
    def from_terms(cls, home, terms: Dict[int, int]) -> "Poly":
        if not terms:
            return cls.zero(home)
        coeffs = [0] * (max(terms) + 1)
        for e, c in terms.items():
            coeffs[e] = home.add(coeffs[e], c)
        return cls(home, coeffs)

    @classmethod
    def parse(cls, home, text: str, what: str = "polynomial") -> "Poly":
        """JSON list of coefficient codes, lowest degree first; what names the input in errors."""
        try:
            values = json.loads(text)
        except json.JSONDecodeError as err:
            raise ParseError(what, text, err.pos, err.msg)
        if not isinstance(values, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in values):
            raise ParseError(what, text, 0, "expected a list of integer codes")
        for i, v in enumerate(values):
            if not 0 <= v < home.order:
                raise ParseError(what, text, i, f"coefficient {v} outside field of order {home.order}")
        return cls(home, values)

    # -- inspection -------------------------------------------------------------

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading_coefficient(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def constant_term(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def coefficient(self, e: int) -> int:
        return self.coeffs[e] if 0 <= e < len(self.coeffs) else 0

    def terms(self) -> List[Tuple[int, int]]:
        return [(e, c) for e, c in enumerate(self.coeffs) if c]

    def is_monic(self) -> bool:
        return self.leading_coefficient == 1

    def to_list(self) -> List[int]:
        return list(self.coeffs)

    # -- arithmetic -------------------------------------------------------------

    def _same(self, other: "Poly") -> None:
        if other.home != self.home:
            raise FieldMismatch(f"polynomials over {self.home.describe()} and {other.home.describe()}")

    def __add__(self, other: "Poly") -> "Poly":
        self._same(other)
        size = max(len(self.coeffs), len(other.coeffs))
        a = np.zeros(size, dtype=np.int64)
        b = np.zeros(size, dtype=np.int64)
        a[:len(self.coeffs)] = self.coeffs
        b[:len(other.coeffs)] = other.coeffs
        return Poly(self.home, np.atleast_1d(self.home.add(a, b)).tolist())

    def __neg__(self) -> "Poly":
        if not self.coeffs:
            return self
        return Poly(self.home, np.atleast_1d(self.home.neg(np.asarray(self.coeffs))).tolist())

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, c) -> "Poly":
        c = self.home.coerce(c)
        if not self.coeffs or c == 0:
            return Poly.zero(self.home)
        return Poly(self.home, np.atleast_1d(self.home.mul(c, np.asarray(self.coeffs))).tolist())

    def __mul__(self, other: "Poly") -> "Poly":
        self._same(other)
        if not self.coeffs or not other.coeffs:
            return Poly.zero(self.home)
        sparse, dense = (self, other) if len(self.terms()) <= len(other.terms()) else (other, self)
        dense_arr = np.asarray(dense.coeffs, dtype=np.int64)
        out = np.zeros(len(self.coeffs) + len(other.coeffs) - 1, dtype=np.int64)
        for e, c in sparse.terms():
            window = slice(e, e + len(dense_arr))
            out[window] = self.home.add(out[window], self.home.mul(c, dense_arr))
        return Poly(self.home, out.tolist())

    def shift(self, k: int) -> "Poly":
        """self * x**k."""
        if not self.coeffs:
            return self
        return Poly(self.home, (0,) * k + self.coeffs)

    def divmod(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        self._same(other)
        if other.is_zero():
            raise PreconditionViolated("divisor is nonzero")
        home = self.home
        rem = list(self.coeffs)
        d = other.degree
        lead_inv = home.inv(other.leading_coefficient)
        quot = [0] * max(len(rem) - d, 0)
        for k in range(len(rem) - 1, d - 1, -1):
            top = rem[k]
            if top == 0:
                continue
            t = home.mul(top, lead_inv)
            quot[k - d] = t
            for j, c in enumerate(other.coeffs):
                if c:
                    rem[k - d + j] = home.sub(rem[k - d + j], home.mul(t, c))
        return Poly(home, quot), Poly(home, rem[:d] if d > 0 else [])

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.home.inv(self.leading_coefficient))

    @staticmethod
    def gcd(a: "Poly", b: "Poly") -> "Poly":
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def powmod(self, e: int, modulus: "Poly") -> "Poly":
        result = Poly.constant(self.home, 1) % modulus
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            e >>= 1
            if e:
                base = (base * base) % modulus
        return result

    def power(self, e: int) -> "Poly":
        result = Poly.constant(self.home, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- composition ------------------------------------------------------------

    def compose_monomial(self, m: int) -> "Poly":
        """self(x**m)."""
        return Poly.from_terms(self.home, {e * m: c for e, c in self.terms()})

    def substitute(self, inner: "Poly") -> "Poly":
        """self(inner(x)) by Horner; coefficients of self embed into inner's field."""
        outer = self if self.home == inner.home else self.embed(inner.home)
        result = Poly.zero(inner.home)
        for c in reversed(outer.coeffs):
            result = result * inner + Poly.constant(inner.home, c) if c else result * inner
        return result

    def embed(self, tower: "TowerDesc") -> "Poly":
        if getattr(tower, "base", None) != self.home:
            raise FieldMismatch(f"{self.home.describe()} is not the base of {tower.describe()}")
        return Poly(tower, self.coeffs)

    # -- evaluation --------------------------------------------------------------

    def eval_code(self, x: int) -> int:
        """Horner evaluation at one code."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = self.home.add(self.home.mul(acc, x), c)
        return int(acc)

    def evaluate_codes(self, xs) -> np.ndarray:
        """Horner evaluation over an array of codes."""
        xs = np.asarray(xs, dtype=np.int64)
        acc = np.zeros(xs.shape, dtype=np.int64)
        for c in reversed(self.coeffs):
            acc = np.asarray(self.home.add(self.home.mul(acc, xs), c))
        return acc

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in reversed(self.terms()):
            mono = "" if e == 0 else ("x" if e == 1 else f"x^{e}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

