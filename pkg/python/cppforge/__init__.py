# Copyright 2026 cppforge contributors.
# This Software is subject to the terms of the XMOS Public Licence: Version 1.
""" Complete permutation polynomials of F_{q^n} lifted from F_q """

__version__ = "0.1.0"


class CppForgeException(Exception):
    """ Exception class for cppforge errors """
    pass


class NotPrime(CppForgeException):
    def __init__(self, p):
        super().__init__(f"{p} is not prime")
        self.p = p


class NotIrreducible(CppForgeException):
    def __init__(self, modulus):
        super().__init__(f"modulus {list(modulus)} is reducible")
        self.modulus = modulus


class DivisionByZero(CppForgeException, ZeroDivisionError):
    pass


class FieldMismatch(CppForgeException):
    pass


class OutOfRange(CppForgeException):
    def __init__(self, k, order):
        super().__init__(f"code {k} outside [0, {order})")
        self.k = k
        self.order = order


class MapEscapesKernel(CppForgeException):
    def __init__(self, x, image):
        super().__init__(f"image of kernel element {x} is {image}, which has nonzero trace")
        self.x = x
        self.image = image


class PreconditionViolated(CppForgeException):
    def __init__(self, condition, detail=""):
        message = f"precondition violated: {condition}"
        if detail:
            message += f" ({detail})"
        super().__init__(message)
        self.condition = condition
        self.detail = detail


class HypothesisFails(CppForgeException):
    def __init__(self, b, which, theta):
        super().__init__(f"shifted map {which} with theta={theta} does not permute ker(tr) at b={b}")
        self.b = b
        self.which = which
        self.theta = theta


class OrderCapExceeded(CppForgeException):
    def __init__(self, order, cap):
        super().__init__(f"field order {order} exceeds cap {cap}")
        self.order = order
        self.cap = cap


class SearchCapExceeded(CppForgeException):
    def __init__(self, q, cap):
        super().__init__(f"search over F_{q} exceeds cap q <= {cap}")
        self.q = q
        self.cap = cap


class BadTableLength(CppForgeException):
    def __init__(self, length, order):
        super().__init__(f"table has {length} entries, field has {order} elements")
        self.length = length
        self.order = order


class ReconstructionMismatch(CppForgeException):
    pass


class ParseError(CppForgeException):
    def __init__(self, what, text, position=None, reason=""):
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"cannot parse {what} {text!r}{where}: {reason}")
        self.what = what
        self.text = text
        self.position = position
        self.reason = reason
