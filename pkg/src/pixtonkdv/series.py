"""Truncated power series in one variable over exact rationals.

A :class:`TruncatedSeries` stores coefficients up to and including its
cutoff order; arithmetic never reads or writes beyond it, and mixing two
cutoffs takes the minimum so precision loss is always explicit.
"""

from __future__ import annotations

from .scalars import QQ, QQ0, QQ1, qq_str


class TruncatedSeries:
    __slots__ = ("cutoff", "coeffs")

    def __init__(self, coeffs, cutoff=None):
        coeffs = [QQ(c) for c in coeffs]
        if cutoff is None:
            cutoff = len(coeffs) - 1
        if cutoff < 0:
            raise ValueError("cutoff must be >= 0")
        coeffs = coeffs[: cutoff + 1]
        coeffs += [QQ0] * (cutoff + 1 - len(coeffs))
        self.cutoff = cutoff
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, cutoff):
        return cls([], cutoff)

    @classmethod
    def one(cls, cutoff):
        return cls([QQ1], cutoff)

    @classmethod
    def x(cls, cutoff):
        return cls([QQ0, QQ1], cutoff)

    def __getitem__(self, k):
        if k < 0 or k > self.cutoff:
            raise IndexError("coefficient beyond cutoff")
        return self.coeffs[k]

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries([other], self.cutoff)
        n = min(self.cutoff, other.cutoff)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    def __hash__(self):
        return hash((self.cutoff, self.coeffs))

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries([other], self.cutoff)
        n = min(self.cutoff, other.cutoff)
        return TruncatedSeries(
            [self.coeffs[k] + other.coeffs[k] for k in range(n + 1)], n
        )

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.cutoff)

    def __sub__(self, other):
        return self + (-other if isinstance(other, TruncatedSeries) else TruncatedSeries([-QQ(other)], self.cutoff))

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            c = QQ(other)
            return TruncatedSeries([a * c for a in self.coeffs], self.cutoff)
        n = min(self.cutoff, other.cutoff)
        out = [QQ0] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] += a * b
        return TruncatedSeries(out, n)

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse; requires a nonzero constant term."""
        a0 = self.coeffs[0]
        if a0 == 0:
            raise ZeroDivisionError("series with zero constant term has no inverse")
        inv0 = QQ1 / a0
        out = [inv0] + [QQ0] * self.cutoff
        for n in range(1, self.cutoff + 1):
            s = QQ0
            for k in range(1, n + 1):
                if self.coeffs[k] != 0:
                    s += self.coeffs[k] * out[n - k]
            out[n] = -inv0 * s
        return TruncatedSeries(out, self.cutoff)

    def exp(self):
        """Exponential; requires a zero constant term."""
        if self.coeffs[0] != 0:
            raise ValueError("exp of a series requires zero constant term")
        out = [QQ1] + [QQ0] * self.cutoff
        for n in range(1, self.cutoff + 1):
            s = QQ0
            for k in range(1, n + 1):
                if self.coeffs[k] != 0:
                    s += k * self.coeffs[k] * out[n - k]
            out[n] = s / n
        return TruncatedSeries(out, self.cutoff)

    def derive(self):
        """d/dz; the cutoff drops by one (zero-cutoff input gives 0)."""
        if self.cutoff == 0:
            return TruncatedSeries.zero(0)
        return TruncatedSeries(
            [k * self.coeffs[k] for k in range(1, self.cutoff + 1)], self.cutoff - 1
        )

    def compose_linear(self, c):
        """Return f(c*z)."""
        c = QQ(c)
        out, p = [], QQ1
        for a in self.coeffs:
            out.append(a * p)
            p *= c
        return TruncatedSeries(out, self.cutoff)

    def is_even(self) -> bool:
        return all(self.coeffs[k] == 0 for k in range(1, self.cutoff + 1, 2))

    def truncate(self, cutoff):
        return TruncatedSeries(self.coeffs[: cutoff + 1], min(cutoff, self.cutoff))

    def to_json(self) -> dict:
        return {str(k): qq_str(c) for k, c in enumerate(self.coeffs) if c != 0}

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(qq_str(c))
            elif k == 1:
                parts.append("%s*z" % qq_str(c))
            else:
                parts.append("%s*z^%d" % (qq_str(c), k))
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


def series_mul(f, g):
    return f * g


def series_inv(f):
    return f.inverse()


def series_exp(f):
    return f.exp()


def series_derive(f):
    return f.derive()


def series_compose_linear(f, c):
    return f.compose_linear(c)


def series_S(cutoff: int) -> TruncatedSeries:
    """S(z) = (e^{z/2} - e^{-z/2}) / z = sum_k z^{2k} / (4^k (2k+1)!)."""
    out = [QQ0] * (cutoff + 1)
    fact = 1
    for k in range(0, cutoff // 2 + 1):
        # (2k+1)! incrementally
        if k > 0:
            fact *= (2 * k) * (2 * k + 1)
        out[2 * k] = QQ(1, 4**k * fact)
    return TruncatedSeries(out, cutoff)


def series_zetabar(cutoff: int) -> TruncatedSeries:
    """zetabar(z) = e^{z/2} + e^{-z/2} = sum_k 2 z^{2k} / (4^k (2k)!)."""
    out = [QQ0] * (cutoff + 1)
    fact = 1
    for k in range(0, cutoff // 2 + 1):
        if k > 0:
            fact *= (2 * k - 1) * (2 * k)
        out[2 * k] = QQ(2, 4**k * fact)
    return TruncatedSeries(out, cutoff)


def series_T(a: int, cutoff: int) -> TruncatedSeries:
    """T_a(z) = S(z) / S(a z); an even series with constant term 1."""
    s = series_S(cutoff)
    return s * s.compose_linear(a).inverse()
