"""The field Q(i) of Gaussian rationals.

Plain ``int`` and ``gmpy2.mpq`` values double as scalars wherever the
imaginary part stays zero; the hot rational-only code paths keep working
on bare ``mpq`` and only promote to :class:`Scalar` when a genuinely
complex value shows up.  Mixed arithmetic (``mpq * Scalar`` etc.) lands
here through the reflected operators.
"""

from __future__ import annotations

from gmpy2 import mpq

_Q0 = mpq(0)


def _as_mpq(x):
    if isinstance(x, type(_Q0)):
        return x
    return mpq(x)


class Scalar:
    """A Gaussian rational re + im*i with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _as_mpq(re)
        self.im = _as_mpq(im)

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Scalar):
            return Scalar(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, type(_Q0))):
            return Scalar(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Scalar):
            return Scalar(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, type(_Q0))):
            return Scalar(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, type(_Q0))):
            return Scalar(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return Scalar(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, (int, type(_Q0))):
            return Scalar(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Scalar):
            d = other.re * other.re + other.im * other.im
            if not d:
                raise ZeroDivisionError("division by zero scalar")
            return Scalar(
                (self.re * other.re + self.im * other.im) / d,
                (self.im * other.re - self.re * other.im) / d,
            )
        if isinstance(other, (int, type(_Q0))):
            return Scalar(self.re / other, self.im / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, type(_Q0))):
            return Scalar(other) / self
        return NotImplemented

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __pos__(self):
        return self

    # -- predicates and hashing ------------------------------------------

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, type(_Q0))):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def is_rational(self) -> bool:
        return not self.im

    def __repr__(self):
        return f"Scalar({self.re!r}, {self.im!r})"

    def __str__(self):
        return scalar_to_str(self)


I = Scalar(0, 1)


def _frac_str(q) -> str:
    # lowest terms with positive denominator come for free from mpq
    return f"{q.numerator}/{q.denominator}"


def scalar_to_str(x) -> str:
    """Canonical string form: "p/q" for rational values, "p/q+r/s*i"
    (or "p/q-r/s*i") otherwise, always in lowest terms."""
    if isinstance(x, (int, type(_Q0))):
        return _frac_str(mpq(x))
    if not isinstance(x, Scalar):
        raise TypeError(f"not a scalar: {x!r}")
    if not x.im:
        return _frac_str(x.re)
    sign = "+" if x.im > 0 else "-"
    return f"{_frac_str(x.re)}{sign}{_frac_str(abs(x.im))}*i"


def scalar_from_str(s: str):
    """Parse the canonical form back.  Rational inputs come back as mpq,
    complex ones as Scalar, so round-trips stay in the fast lane."""
    s = s.strip().replace(" ", "")
    if not s:
        raise ValueError("empty scalar string")
    if s.endswith("*i"):
        body = s[:-2]
        # split at the sign of the imaginary part: last +/- not at pos 0
        # and not inside the real fraction's numerator sign
        for k in range(len(body) - 1, 0, -1):
            if body[k] in "+-" and body[k - 1] not in "+-/":
                re_part, im_part = body[:k], body[k:]
                break
        else:
            # pure imaginary written without explicit real part
            re_part, im_part = "0", body
        if im_part[0] == "+":
            im = mpq(im_part[1:])
        elif im_part[0] == "-":
            im = -mpq(im_part[1:])
        else:
            im = mpq(im_part)
        return Scalar(mpq(re_part), im)
    return mpq(s)


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    return Scalar(x)


def conj(x):
    """Complex conjugation that tolerates bare rationals."""
    if isinstance(x, Scalar):
        return x.conjugate()
    return x
