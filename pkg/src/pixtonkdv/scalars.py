"""Exact scalars: rationals and Gaussian rationals (i with i*i = -1).

The rational type ``QQ`` is ``gmpy2.mpq`` when available (it is several
times faster on the interpolation-heavy workloads) and
``fractions.Fraction`` otherwise.  Both are always reduced, hash-compatible,
and print as ``p/q`` (just ``p`` for integers), which is also the wire
format used throughout the package.

Set ``PIXTONKDV_PURE_PYTHON=1`` to force the ``fractions`` backend.
"""

from __future__ import annotations

import os

if os.environ.get("PIXTONKDV_PURE_PYTHON"):
    from fractions import Fraction as QQ

    _BACKEND = "fractions"
else:
    try:
        from gmpy2 import mpq as QQ

        _BACKEND = "gmpy2"
    except ImportError:  # pragma: no cover
        from fractions import Fraction as QQ

        _BACKEND = "fractions"

QQ0 = QQ(0)
QQ1 = QQ(1)


def rational_backend() -> str:
    return _BACKEND


def qq_str(x) -> str:
    """Serialize a rational as ``p/q`` (``p`` when the denominator is 1)."""
    x = QQ(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def qq_parse(s: str):
    """Parse the ``p/q`` wire format back into a rational."""
    s = s.strip()
    if "/" in s:
        p, q = s.split("/")
        return QQ(int(p), int(q))
    return QQ(int(s))


class GaussianRational:
    """A Gaussian rational re + im*i, both parts exact rationals.

    Multiplication implements i*i = -1; conjugation flips the sign of the
    imaginary part and is an involutive ring automorphism.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = QQ(re)
        self.im = QQ(im)

    def __add__(self, other):
        other = _coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        other = _coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return GaussianRational(1) / self ** (-n)
        out = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __eq__(self, other):
        other = _coerce(other)
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __str__(self):
        if self.im == 0:
            return qq_str(self.re)
        im = qq_str(self.im)
        if self.im < 0:
            return "%s-%si" % (qq_str(self.re), im[1:])
        return "%s+%si" % (qq_str(self.re), im)

    __repr__ = __str__


I = GaussianRational(0, 1)


def _coerce(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    return GaussianRational(x)


def gaussian_str(x) -> str:
    return str(_coerce(x))


def gaussian_parse(s: str) -> GaussianRational:
    """Parse ``p/q+p'/q'i`` (or plain ``p/q``, or ``p/qi``)."""
    s = s.strip().replace(" ", "")
    if not s.endswith("i"):
        return GaussianRational(qq_parse(s))
    body = s[:-1]
    # split at the sign separating real and imaginary parts, if any
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-" and body[k - 1] not in "+-/":
            return GaussianRational(qq_parse(body[:k]), qq_parse(body[k:]))
    return GaussianRational(0, qq_parse(body))
