"""Exact eigenvalue scalars and their text syntax.

Two closed families cover every concrete eigenvalue the decision theory
needs: Gaussian rationals for the additive problem (closed under sums) and
positive-rational moduli times rational-argument roots of unity for the
multiplicative one (closed under products and inverses).

Text syntax (used in the CLI input schema):
    additive        "a/b"  or  "a/b+c/d i"   (either sign, integer shorthand)
    multiplicative  "{mod: a/b, arg: p/q}"
"""

from __future__ import annotations

import cmath
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import InvalidInputError

__all__ = [
    "AdditiveScalar",
    "MultiplicativeScalar",
    "Scalar",
    "parse_scalar",
    "format_scalar",
]


@dataclass(frozen=True)
class AdditiveScalar:
    """Gaussian rational re + im*i with exact components."""

    re: Fraction
    im: Fraction

    def __init__(self, re, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __add__(self, other: "AdditiveScalar") -> "AdditiveScalar":
        return AdditiveScalar(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "AdditiveScalar") -> "AdditiveScalar":
        return AdditiveScalar(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "AdditiveScalar":
        return AdditiveScalar(-self.re, -self.im)

    def scale(self, factor) -> "AdditiveScalar":
        f = Fraction(factor)
        return AdditiveScalar(self.re * f, self.im * f)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def sort_key(self):
        return (self.re, self.im)

    @staticmethod
    def zero() -> "AdditiveScalar":
        return AdditiveScalar(0, 0)


@dataclass(frozen=True)
class MultiplicativeScalar:
    """modulus * exp(2*pi*i*arg) with positive rational modulus, arg in [0,1)."""

    modulus: Fraction
    arg: Fraction

    def __init__(self, modulus, arg):
        m = Fraction(modulus)
        if m <= 0:
            raise InvalidInputError(f"modulus must be positive, got {m}")
        object.__setattr__(self, "modulus", m)
        object.__setattr__(self, "arg", Fraction(arg) % 1)

    def __mul__(self, other: "MultiplicativeScalar") -> "MultiplicativeScalar":
        return MultiplicativeScalar(self.modulus * other.modulus, self.arg + other.arg)

    def inverse(self) -> "MultiplicativeScalar":
        return MultiplicativeScalar(1 / self.modulus, -self.arg)

    def __pow__(self, k: int) -> "MultiplicativeScalar":
        if k == 0:
            return MultiplicativeScalar.one()
        if k < 0:
            return self.inverse() ** (-k)
        return MultiplicativeScalar(self.modulus**k, self.arg * k)

    def is_one(self) -> bool:
        return self.modulus == 1 and self.arg == 0

    def is_primitive_root(self, order: int) -> bool:
        """True iff the value is a primitive `order`-th root of unity."""
        return self.modulus == 1 and self.arg.denominator == order

    def to_complex(self) -> complex:
        return complex(self.modulus) * cmath.exp(2j * cmath.pi * float(self.arg))

    def sort_key(self):
        return (self.modulus, self.arg)

    @staticmethod
    def one() -> "MultiplicativeScalar":
        return MultiplicativeScalar(1, 0)


Scalar = Union[AdditiveScalar, MultiplicativeScalar]

_FRACTION = r"[+-]?\d+(?:/\d+)?"
_ADDITIVE_RE = re.compile(
    rf"^\s*(?P<re>{_FRACTION})\s*(?:(?P<sign>[+-])\s*(?P<im>\d+(?:/\d+)?)\s*i\s*)?$"
)
_PURE_IM_RE = re.compile(rf"^\s*(?P<im>{_FRACTION})\s*i\s*$")
_MULT_RE = re.compile(
    rf"^\s*\{{\s*mod\s*:\s*(?P<mod>{_FRACTION})\s*,\s*arg\s*:\s*(?P<arg>{_FRACTION})\s*\}}\s*$"
)


def parse_scalar(text: str, mode: str) -> Scalar:
    """Parse the scalar text syntax for the given mode."""
    if mode == "additive":
        m = _PURE_IM_RE.match(text)
        if m:
            return AdditiveScalar(0, Fraction(m.group("im")))
        m = _ADDITIVE_RE.match(text)
        if not m:
            raise InvalidInputError(f"cannot parse additive scalar {text!r}")
        re_part = Fraction(m.group("re"))
        im_part = Fraction(0)
        if m.group("im"):
            im_part = Fraction(m.group("im"))
            if m.group("sign") == "-":
                im_part = -im_part
        return AdditiveScalar(re_part, im_part)
    if mode == "multiplicative":
        m = _MULT_RE.match(text)
        if not m:
            raise InvalidInputError(f"cannot parse multiplicative scalar {text!r}")
        return MultiplicativeScalar(Fraction(m.group("mod")), Fraction(m.group("arg")))
    raise InvalidInputError(f"unknown mode {mode!r}")


def format_scalar(value: Scalar) -> str:
    """Canonical text form; round-trips through parse_scalar."""
    if isinstance(value, AdditiveScalar):
        if value.im == 0:
            return str(value.re)
        sign = "+" if value.im >= 0 else "-"
        return f"{value.re}{sign}{abs(value.im)} i"
    if isinstance(value, MultiplicativeScalar):
        return f"{{mod: {value.modulus}, arg: {value.arg}}}"
    raise InvalidInputError(f"not a scalar: {value!r}")
