# Copyright 2026 cppforge contributors.
# This Software is subject to the terms of the XMOS Public Licence: Version 1.
"""
Prime fields, extension fields and two-level towers F_p -> F_q -> F_{q^n}.

Elements are identified with their canonical integer code: the base-q
positional code of the coefficient tuple over the level below (prime
residues at the bottom). Every descriptor exposes its arithmetic both on
scalars and on numpy arrays of codes; the exhaustive kernels elsewhere in
the package work on whole code arrays at once.
"""

from __future__ import annotations

import functools
import json
import logging
import re
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
import sympy

from . import (DivisionByZero, FieldMismatch, NotIrreducible, NotPrime,
               OrderCapExceeded, OutOfRange, ParseError, PreconditionViolated)
from .config import get_settings
from .polynomial import Poly

logger = logging.getLogger(__name__)

# Fields up to this order cache full addition and multiplication tables.
TABLE_LIMIT = 2**10


def _out(x):
    if np.ndim(x) == 0:
        return int(x)
    return x


def _codes(x):
    if isinstance(x, FieldElement):
        return x.code
    if isinstance(x, (int, np.integer)):
        return int(x)
    return np.asarray(x, dtype=np.int64)


class _Field:
    """Arithmetic shared by FieldDesc and TowerDesc.

    Subclasses provide degree, sub_order, modulus and the _sadd/_sneg/_smul
    operations of the level below.
    """

    # -- digits ------------------------------------------------------------

    @functools.cached_property
    def _weights(self) -> Tuple[int, ...]:
        return tuple(self.sub_order ** i for i in range(self.degree))

    def _digits(self, codes) -> List[np.ndarray]:
        codes = np.asarray(codes, dtype=np.int64)
        return [(codes // w) % self.sub_order for w in self._weights]

    def _from_digits(self, digits) -> np.ndarray:
        total = np.zeros(np.shape(digits[0]), dtype=np.int64)
        for d, w in zip(digits, self._weights):
            total = total + np.asarray(d, dtype=np.int64) * w
        return total

    def _ssub(self, x, y):
        return self._sadd(x, self._sneg(y))

    def _add_digits(self, a, b):
        return self._from_digits([self._sadd(x, y) for x, y in zip(self._digits(a), self._digits(b))])

    def _neg_digits(self, a):
        return self._from_digits([self._sneg(x) for x in self._digits(a)])

    def _mul_digits(self, a, b):
        d = self.degree
        da, db = self._digits(a), self._digits(b)
        zero = np.zeros(np.broadcast(np.asarray(a), np.asarray(b)).shape, dtype=np.int64)
        prod = [zero] * (2 * d - 1)
        for i in range(d):
            for j in range(d):
                prod[i + j] = self._sadd(prod[i + j], self._smul(da[i], db[j]))
        m = self.modulus
        for k in range(2 * d - 2, d - 1, -1):
            top = prod[k]
            for j in range(d):
                if m[j]:
                    prod[k - d + j] = self._ssub(prod[k - d + j], self._smul(top, m[j]))
        return self._from_digits(prod[:d])

    @functools.cached_property
    def _tables(self):
        if self.order > TABLE_LIMIT or self.degree == 1:
            return None
        a, b = np.meshgrid(np.arange(self.order), np.arange(self.order), indexing="ij")
        logger.debug("building arithmetic tables for %s", self.describe())
        return self._add_digits(a, b), self._mul_digits(a, b), self._neg_digits(np.arange(self.order))

    # -- public arithmetic on codes ----------------------------------------

    def add(self, a, b):
        a, b = _codes(a), _codes(b)
        if self._tables is not None:
            return _out(self._tables[0][a, b])
        return _out(self._add_digits(a, b))

    def neg(self, a):
        a = _codes(a)
        if self._tables is not None:
            return _out(self._tables[2][a])
        return _out(self._neg_digits(a))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a, b = _codes(a), _codes(b)
        if self._tables is not None:
            return _out(self._tables[1][a, b])
        return _out(self._mul_digits(a, b))

    def power(self, a, e: int):
        """a**e by square-and-multiply; x**0 is 1 for every x, 0 included."""
        if e < 0:
            return self.power(self.inv(a), -e)
        a = _codes(a)
        result = np.ones(np.shape(a), dtype=np.int64)
        base = np.asarray(a, dtype=np.int64)
        while e:
            if e & 1:
                result = np.asarray(self.mul(result, base))
            e >>= 1
            if e:
                base = np.asarray(self.mul(base, base))
        return _out(result)

    def inv(self, a):
        a = _codes(a)
        if np.any(np.asarray(a) == 0):
            raise DivisionByZero(f"0 has no inverse in {self.describe()}")
        return self.power(a, self.order - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def frobenius_codes(self, a, i: int = 1):
        """a**(p**i) by repeated p-th powering."""
        a = _codes(a)
        for _ in range(i % self.total_degree):
            a = self.power(a, self.char)
        return _out(a)

    # -- elements ------------------------------------------------------------

    def element(self, k: int) -> "FieldElement":
        k = int(k)
        if not 0 <= k < self.order:
            raise OutOfRange(k, self.order)
        return FieldElement(self, k)

    def codes(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def elements(self) -> Iterator["FieldElement"]:
        for k in range(self.order):
            yield FieldElement(self, k)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def minus_one(self) -> int:
        return self.neg(1)

    def coerce(self, x) -> int:
        """Code of x in this field; base-field elements of a tower embed."""
        if isinstance(x, FieldElement):
            if x.home == self:
                return x.code
            if isinstance(self, TowerDesc) and x.home == self.base:
                return x.code
            raise FieldMismatch(f"element of {x.home.describe()} used in {self.describe()}")
        k = int(x)
        if not 0 <= k < self.order:
            raise OutOfRange(k, self.order)
        return k


@dataclass(frozen=True)
class FieldDesc(_Field):
    """F_{p^r} = F_p[y]/(modulus); r = 1 is the prime field with formal modulus y - 0."""
    p: int
    r: int
    modulus: Tuple[int, ...]
    q: int = field(init=False, compare=False)

    def __post_init__(self):
        if not sympy.isprime(self.p):
            raise NotPrime(self.p)
        object.__setattr__(self, "modulus", tuple(int(c) for c in self.modulus))
        object.__setattr__(self, "q", self.p ** self.r)
        if self.q > get_settings().arith_cap:
            raise OrderCapExceeded(self.q, get_settings().arith_cap)
        if len(self.modulus) != self.r + 1 or self.modulus[-1] != 1:
            raise PreconditionViolated("modulus is monic of degree r", f"r={self.r}, modulus={list(self.modulus)}")
        if any(not 0 <= c < self.p for c in self.modulus):
            raise PreconditionViolated("modulus coefficients are residues mod p", str(list(self.modulus)))
        if self.r > 1 and not is_irreducible(Poly(_prime(self.p), self.modulus)):
            raise NotIrreducible(self.modulus)

    @property
    def order(self) -> int:
        return self.q

    @property
    def char(self) -> int:
        return self.p

    @property
    def degree(self) -> int:
        return self.r

    @property
    def total_degree(self) -> int:
        return self.r

    @property
    def sub_order(self) -> int:
        return self.p

    @property
    def is_prime_field(self) -> bool:
        return self.r == 1

    def _sadd(self, x, y):
        return (x + y) % self.p

    def _sneg(self, x):
        return (-x) % self.p

    def _smul(self, x, y):
        return (x * y) % self.p

    def add(self, a, b):
        if self.r == 1:
            return _out((_codes(a) + _codes(b)) % self.p)
        return super().add(a, b)

    def neg(self, a):
        if self.r == 1:
            return _out((-_codes(a)) % self.p)
        return super().neg(a)

    def mul(self, a, b):
        if self.r == 1:
            return _out((_codes(a) * _codes(b)) % self.p)
        return super().mul(a, b)

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.r or any(not 0 <= int(c) < self.p for c in coeffs):
            raise OutOfRange(coeffs, self.q)
        return sum(int(c) * self.p ** i for i, c in enumerate(coeffs))

    def coeffs_of(self, k: int) -> Tuple[int, ...]:
        return tuple(int(d) for d in self._digits(k))

    def describe(self) -> str:
        return f"p={self.p};r={self.r};mod=[{','.join(str(c) for c in self.modulus)}]"

    def __str__(self):
        return f"F_{self.q}"


@dataclass(frozen=True)
class TowerDesc(_Field):
    """F_{q^n} = F_q[z]/(modulus) with modulus coefficients given as F_q codes."""
    base: FieldDesc
    n: int
    modulus: Tuple[int, ...]
    order: int = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "modulus", tuple(int(c) for c in self.modulus))
        object.__setattr__(self, "order", self.base.q ** self.n)
        if self.order > get_settings().arith_cap:
            raise OrderCapExceeded(self.order, get_settings().arith_cap)
        if self.n < 1 or len(self.modulus) != self.n + 1 or self.modulus[-1] != 1:
            raise PreconditionViolated("tower modulus is monic of degree n", f"n={self.n}, modulus={list(self.modulus)}")
        if any(not 0 <= c < self.base.q for c in self.modulus):
            raise PreconditionViolated("tower modulus coefficients lie in F_q", str(list(self.modulus)))
        if not is_irreducible(Poly(self.base, self.modulus)):
            raise NotIrreducible(self.modulus)

    @property
    def q(self) -> int:
        return self.base.q

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def r(self) -> int:
        return self.base.r

    @property
    def char(self) -> int:
        return self.base.p

    @property
    def degree(self) -> int:
        return self.n

    @property
    def total_degree(self) -> int:
        return self.base.r * self.n

    @property
    def sub_order(self) -> int:
        return self.base.q

    def _sadd(self, x, y):
        return np.asarray(self.base.add(x, y))

    def _sneg(self, x):
        return np.asarray(self.base.neg(x))

    def _smul(self, x, y):
        return np.asarray(self.base.mul(x, y))

    def from_coeffs(self, coeffs: Sequence) -> int:
        coeffs = [self.base.coerce(c) for c in coeffs]
        if len(coeffs) > self.n:
            raise OutOfRange(coeffs, self.order)
        return sum(c * self.base.q ** i for i, c in enumerate(coeffs))

    def coeffs_of(self, k: int) -> Tuple[int, ...]:
        return tuple(int(d) for d in self._digits(k))

    def is_base_code(self, k) -> bool:
        return bool(np.all(np.asarray(k) < self.base.q))

    def describe(self) -> str:
        tmod = ",".join("[" + ",".join(str(d) for d in _padded(self.base.coeffs_of(c), self.base.r)) + "]"
                        for c in self.modulus)
        return f"{self.base.describe()};n={self.n};tmod=[{tmod}]"

    def __str__(self):
        return f"F_{self.order}/F_{self.q}"


Field = Union[FieldDesc, TowerDesc]


def _padded(digits, length):
    digits = list(digits)
    return digits + [0] * (length - len(digits))


@dataclass(frozen=True)
class FieldElement:
    home: Field
    code: int

    @property
    def coeffs(self) -> tuple:
        """Coefficients over the level below: residues, or base-field elements in a tower."""
        digits = self.home.coeffs_of(self.code)
        if isinstance(self.home, TowerDesc):
            return tuple(FieldElement(self.home.base, d) for d in digits)
        return digits

    def is_zero(self) -> bool:
        return self.code == 0

    def _pair(self, other):
        if not isinstance(other, FieldElement):
            raise FieldMismatch(f"cannot combine a field element with {type(other).__name__}")
        if other.home == self.home:
            return self.home, self.code, other.code
        if isinstance(self.home, TowerDesc) and other.home == self.home.base:
            return self.home, self.code, other.code
        if isinstance(other.home, TowerDesc) and self.home == other.home.base:
            return other.home, self.code, other.code
        raise FieldMismatch(f"{self.home.describe()} vs {other.home.describe()}")

    def __add__(self, other):
        home, a, b = self._pair(other)
        return FieldElement(home, home.add(a, b))

    def __sub__(self, other):
        home, a, b = self._pair(other)
        return FieldElement(home, home.sub(a, b))

    def __mul__(self, other):
        home, a, b = self._pair(other)
        return FieldElement(home, home.mul(a, b))

    def __truediv__(self, other):
        home, a, b = self._pair(other)
        return FieldElement(home, home.div(a, b))

    def __neg__(self):
        return FieldElement(self.home, self.home.neg(self.code))

    def __pow__(self, e: int):
        return FieldElement(self.home, self.home.power(self.code, int(e)))

    def inverse(self):
        return FieldElement(self.home, self.home.inv(self.code))

    def __int__(self):
        return self.code

    def __str__(self):
        return str(self.code)

    def __repr__(self):
        return f"FieldElement({self.code} in {self.home})"


# -- operations ---------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _prime(p: int) -> FieldDesc:
    return FieldDesc(p, 1, (0, 1))


def make_prime_field(p: int) -> FieldDesc:
    p = int(p)
    if p < 2 or not sympy.isprime(p):
        raise NotPrime(p)
    return _prime(p)


def add(x: FieldElement, y: FieldElement) -> FieldElement:
    return x + y


def sub(x: FieldElement, y: FieldElement) -> FieldElement:
    return x - y


def mul(x: FieldElement, y: FieldElement) -> FieldElement:
    return x * y


def neg(x: FieldElement) -> FieldElement:
    return -x


def inv(x: FieldElement) -> FieldElement:
    return x.inverse()


def pow(x: FieldElement, e: int) -> FieldElement:  # noqa: A001
    if e < 0:
        raise PreconditionViolated("exponent is non-negative", str(e))
    return x ** e


def frobenius(x: FieldElement, i: int = 1) -> FieldElement:
    if i < 0:
        raise PreconditionViolated("frobenius index is non-negative", str(i))
    return FieldElement(x.home, x.home.frobenius_codes(x.code, i))


def encode(x: FieldElement) -> int:
    return x.code


def decode(home: Field, k: int) -> FieldElement:
    return home.element(k)


def enumerate_field(home: Field) -> Iterator[FieldElement]:
    return home.elements()


def embed(x: FieldElement, tower: TowerDesc) -> FieldElement:
    """Constant-coefficient image of a base-field element; the code is unchanged."""
    if not isinstance(tower, TowerDesc) or x.home != tower.base:
        raise FieldMismatch(f"{x.home.describe()} is not the base of {tower.describe()}")
    return FieldElement(tower, x.code)


def is_irreducible(f: Poly) -> bool:
    """Roots test for degree <= 3, Ben-Or gcd(x^(Q^i) - x, f) test above."""
    d = f.degree
    if d <= 0:
        return False
    if d == 1:
        return True
    K = f.home
    if d <= 3:
        values = f.evaluate_codes(K.codes())
        return not bool(np.any(np.asarray(values) == 0))
    x = Poly(K, (0, 1))
    b = x
    for _ in range(d // 2):
        b = b.powmod(K.order, f)
        if Poly.gcd(b - x, f).degree != 0:
            return False
    return True


@functools.lru_cache(maxsize=None)
def canonical_modulus(base: FieldDesc, degree: int) -> Tuple[int, ...]:
    """Smallest monic irreducible, scanning (c_{d-1}, ..., c_0) with c_0 fastest."""
    q = base.order
    for k in range(q ** degree):
        coeffs = tuple((k // q ** i) % q for i in range(degree)) + (1,)
        if is_irreducible(Poly(base, coeffs)):
            logger.debug("canonical degree %d modulus over %s: %s", degree, base.describe(), list(coeffs))
            return coeffs
    raise NotIrreducible(())  # unreachable: irreducibles exist in every degree


def make_extension(base: FieldDesc, degree: int, modulus=None, as_tower: bool = False) -> Field:
    """Extension of base of the given degree.

    Over a prime field the result is a FieldDesc unless as_tower is set;
    over a proper extension it is always a TowerDesc.
    """
    if not isinstance(base, FieldDesc):
        raise FieldMismatch("towers are two levels deep; the base must be a FieldDesc")
    if degree < 1:
        raise PreconditionViolated("extension degree >= 1", str(degree))
    if modulus is None:
        coeffs = canonical_modulus(base, degree)
    else:
        coeffs = tuple(modulus.coeffs) if isinstance(modulus, Poly) else tuple(int(c) for c in modulus)
        if len(coeffs) != degree + 1 or coeffs[-1] != 1:
            raise PreconditionViolated("modulus is monic of the stated degree", f"degree={degree}, modulus={list(coeffs)}")
    if base.is_prime_field and not as_tower:
        return FieldDesc(base.p, degree, coeffs)
    return TowerDesc(base, degree, coeffs)


def _checked_prime(prime: FieldDesc, mod) -> FieldDesc:
    if mod is not None and tuple(int(c) for c in mod) != prime.modulus:
        raise PreconditionViolated("a prime field has the formal modulus [0, 1]", f"mod={list(mod)}")
    return prime


def make_tower(p: int, r: int, n: int, mod: Optional[Sequence[int]] = None,
               tmod: Optional[Sequence[Sequence[int]]] = None) -> TowerDesc:
    """F_{p^r} with its n-th degree extension, canonical moduli unless given."""
    prime = make_prime_field(p)
    base = make_extension(prime, r, mod) if r > 1 else _checked_prime(prime, mod)
    tcoeffs = None
    if tmod is not None:
        tcoeffs = [base.from_coeffs(c if isinstance(c, (list, tuple)) else [c]) for c in tmod]
    return make_extension(base, n, tcoeffs, as_tower=True)


def make_field(p: int, r: int = 1, mod: Optional[Sequence[int]] = None) -> FieldDesc:
    prime = make_prime_field(p)
    if r == 1:
        return _checked_prime(prime, mod)
    return make_extension(prime, r, mod)


_DESCRIPTOR_KEYS = ("p", "r", "mod", "n", "tmod")


def parse_field(text: str) -> Field:
    """Inverse of describe(): 'p=..;r=..;mod=[..]' with optional ';n=..;tmod=[[..],..]'."""
    values = {}
    offset = 0
    for part in text.split(";"):
        match = re.fullmatch(r"\s*(\w+)\s*=\s*(.+?)\s*", part)
        if not match or match.group(1) not in _DESCRIPTOR_KEYS:
            raise ParseError("field descriptor", text, offset, f"bad item {part!r}")
        try:
            values[match.group(1)] = json.loads(match.group(2))
        except json.JSONDecodeError as err:
            raise ParseError("field descriptor", text, offset + match.start(2) + err.pos, err.msg)
        offset += len(part) + 1
    if "p" not in values:
        raise ParseError("field descriptor", text, 0, "missing p")
    r = values.get("r", 1)
    if "n" in values:
        return make_tower(values["p"], r, values["n"], values.get("mod"), values.get("tmod"))
    return make_field(values["p"], r, values.get("mod"))
