"""Differential polynomials in two space variables, and the Moyal product.

Elements are finite sums  c * eps^e mu^m * u_{k1,k2} u_{k1',k2'} ...  with
Gaussian-rational c; the jet variables satisfy u_{k1,k2} = dx^{k1} dy^{k2} u.
The grading is deg u_{k1,k2} = (k1,k2), deg eps = (-1,0), deg mu = (0,-1).
Negative eps exponents are allowed (they arise inside pseudo-differential
operators); mu exponents are never negative.

All arithmetic is truncated by an explicit :class:`Window` (caps on the
eps power, the mu power, and the total differential degree); combining two
windows takes the componentwise minimum, so precision is never silently
extended.  Coefficients are stored internally as (re, im) rational pairs
for speed and surface as :class:`~pixtonkdv.scalars.GaussianRational`.
"""

from __future__ import annotations

from math import factorial

from .scalars import QQ, QQ0, QQ1, GaussianRational, qq_str


class Window:
    """Truncation caps: eps power <= emax, mu power <= mmax, total
    differential degree <= ddmax."""

    __slots__ = ("emax", "mmax", "ddmax")

    def __init__(self, emax, mmax, ddmax):
        self.emax = emax
        self.mmax = mmax
        self.ddmax = ddmax

    def __and__(self, other):
        return Window(
            min(self.emax, other.emax),
            min(self.mmax, other.mmax),
            min(self.ddmax, other.ddmax),
        )

    def admits(self, mono, e, m) -> bool:
        if e > self.emax or m > self.mmax or m < 0:
            return False
        return sum(k1 + k2 for k1, k2 in mono) <= self.ddmax

    def __eq__(self, other):
        return (
            isinstance(other, Window)
            and (self.emax, self.mmax, self.ddmax)
            == (other.emax, other.mmax, other.ddmax)
        )

    def __repr__(self):
        return "Window(emax=%d, mmax=%d, ddmax=%d)" % (self.emax, self.mmax, self.ddmax)


_CZERO = (QQ0, QQ0)


def _cadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


def _cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _ipow(k):
    """(re, im) of i^k."""
    k %= 4
    if k == 0:
        return (QQ1, QQ0)
    if k == 1:
        return (QQ0, QQ1)
    if k == 2:
        return (-QQ1, QQ0)
    return (QQ0, -QQ1)


class DiffPoly2:
    """Truncated differential polynomial; immutable in spirit.

    terms: dict[(mono, e, m)] -> (re, im), mono a sorted tuple of (k1,k2).
    """

    __slots__ = ("window", "terms")

    def __init__(self, window: Window, terms=None):
        self.window = window
        self.terms = {}
        if terms:
            for key, c in terms.items():
                if not isinstance(c, tuple):
                    c = (QQ(c.re), QQ(c.im)) if isinstance(c, GaussianRational) else (QQ(c), QQ0)
                if (c[0] != 0 or c[1] != 0) and window.admits(*key):
                    self.terms[key] = c

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, window):
        return cls(window)

    @classmethod
    def const(cls, window, c):
        return cls(window, {((), 0, 0): c})

    @classmethod
    def jet(cls, window, k1, k2):
        return cls(window, {(((k1, k2),), 0, 0): QQ1})

    @classmethod
    def u(cls, window):
        return cls.jet(window, 0, 0)

    # -- ring structure ----------------------------------------------------

    def _new(self, terms):
        p = DiffPoly2.__new__(DiffPoly2)
        p.window = self.window
        p.terms = terms
        return p

    def retruncate(self, window):
        win = self.window & window
        out = DiffPoly2.__new__(DiffPoly2)
        out.window = win
        out.terms = {k: c for k, c in self.terms.items() if win.admits(*k)}
        return out

    def __add__(self, other):
        if not isinstance(other, DiffPoly2):
            other = DiffPoly2.const(self.window, other)
        win = self.window & other.window
        out = {}
        for src in (self.terms, other.terms):
            for k, c in src.items():
                if not win.admits(*k):
                    continue
                s = _cadd(out.get(k, _CZERO), c)
                if s[0] == 0 and s[1] == 0:
                    out.pop(k, None)
                else:
                    out[k] = s
        p = DiffPoly2.__new__(DiffPoly2)
        p.window = win
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: (-c[0], -c[1]) for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, DiffPoly2):
            other = DiffPoly2.const(self.window, other)
        return self + (-other)

    def scale(self, c):
        """Multiply by a scalar (rational, GaussianRational, or pair)."""
        if isinstance(c, GaussianRational):
            c = (QQ(c.re), QQ(c.im))
        elif not isinstance(c, tuple):
            c = (QQ(c), QQ0)
        if c[0] == 0 and c[1] == 0:
            return self._new({})
        return self._new({k: _cmul(v, c) for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, DiffPoly2):
            return self.scale(other)
        win = self.window & other.window
        out = {}
        for (m1, e1, mu1), c1 in self.terms.items():
            for (m2, e2, mu2), c2 in other.terms.items():
                key = (tuple(sorted(m1 + m2)), e1 + e2, mu1 + mu2)
                if not win.admits(*key):
                    continue
                s = _cadd(out.get(key, _CZERO), _cmul(c1, c2))
                if s[0] == 0 and s[1] == 0:
                    out.pop(key, None)
                else:
                    out[key] = s
        p = DiffPoly2.__new__(DiffPoly2)
        p.window = win
        p.terms = out
        return p

    __rmul__ = scale

    def shift_eps(self, k: int):
        """Multiply by eps^k (k may be negative)."""
        out = {}
        for (mono, e, m), c in self.terms.items():
            key = (mono, e + k, m)
            if self.window.admits(*key):
                out[key] = c
        return self._new(out)

    def shift_epsmu(self, k: int):
        """Multiply by (eps*mu)^k, k >= 0."""
        out = {}
        for (mono, e, m), c in self.terms.items():
            key = (mono, e + k, m + k)
            if self.window.admits(*key):
                out[key] = c
        return self._new(out)

    # -- calculus ----------------------------------------------------------

    def _derive(self, dk1, dk2):
        out = {}
        for (mono, e, m), c in self.terms.items():
            seen = set()
            for idx, (k1, k2) in enumerate(mono):
                if (k1, k2) in seen:
                    continue
                seen.add((k1, k2))
                mult = mono.count((k1, k2))
                new = list(mono)
                new[idx] = (k1 + dk1, k2 + dk2)
                key = (tuple(sorted(new)), e, m)
                if not self.window.admits(*key):
                    continue
                s = _cadd(out.get(key, _CZERO), (c[0] * mult, c[1] * mult))
                if s[0] == 0 and s[1] == 0:
                    out.pop(key, None)
                else:
                    out[key] = s
        return self._new(out)

    def dx(self, k: int = 1):
        p = self
        for _ in range(k):
            p = p._derive(1, 0)
        return p

    def dy(self, k: int = 1):
        p = self
        for _ in range(k):
            p = p._derive(0, 1)
        return p

    def partial_jet(self, k1, k2):
        """d/d u_{k1,k2}."""
        out = {}
        for (mono, e, m), c in self.terms.items():
            if (k1, k2) not in mono:
                continue
            mult = mono.count((k1, k2))
            new = list(mono)
            new.remove((k1, k2))
            key = (tuple(new), e, m)
            s = _cadd(out.get(key, _CZERO), (c[0] * mult, c[1] * mult))
            if s[0] == 0 and s[1] == 0:
                out.pop(key, None)
            else:
                out[key] = s
        return self._new(out)

    def jets_present(self):
        out = set()
        for (mono, _e, _m) in self.terms:
            out.update(mono)
        return sorted(out)

    # -- structure checks --------------------------------------------------

    def at_mu0(self):
        return self._new({k: c for k, c in self.terms.items() if k[2] == 0})

    def is_zero(self) -> bool:
        return not self.terms

    def is_real(self) -> bool:
        return all(c[1] == 0 for c in self.terms.values())

    def is_eps_regular(self) -> bool:
        return all(e >= 0 for (_, e, _m) in self.terms)

    def bidegrees(self):
        """Set of (d1, d2) bidegrees present (deg eps = (-1,0) etc.)."""
        out = set()
        for (mono, e, m) in self.terms:
            out.add((sum(k1 for k1, _ in mono) - e, sum(k2 for _, k2 in mono) - m))
        return out

    def coefficient(self, mono, e, m) -> GaussianRational:
        c = self.terms.get((tuple(sorted(mono)), e, m), _CZERO)
        return GaussianRational(c[0], c[1])

    def __eq__(self, other):
        if not isinstance(other, DiffPoly2):
            other = DiffPoly2.const(self.window, other)
        win = self.window & other.window
        for k in set(self.terms) | set(other.terms):
            if not win.admits(*k):
                continue
            if self.terms.get(k, _CZERO) != other.terms.get(k, _CZERO):
                return False
        return True

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- serialization -----------------------------------------------------

    def sorted_terms(self):
        def keyfun(item):
            (mono, e, m), _ = item
            return (sum(a + b for a, b in mono), len(mono), mono, e, m)

        return sorted(self.terms.items(), key=keyfun)

    def to_json(self) -> list:
        out = []
        for (mono, e, m), c in self.sorted_terms():
            out.append(
                {
                    "jets": [list(j) for j in mono],
                    "eps": e,
                    "mu": m,
                    "coeff": str(GaussianRational(c[0], c[1])),
                }
            )
        return out

    def __str__(self):
        parts = []
        for (mono, e, m), c in self.sorted_terms():
            bits = [str(GaussianRational(c[0], c[1]))]
            if e:
                bits.append("eps^%d" % e)
            if m:
                bits.append("mu^%d" % m)
            bits += ["u[%d,%d]" % j for j in mono]
            parts.append("*".join(bits))
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


def moyal(f: DiffPoly2, g: DiffPoly2) -> DiffPoly2:
    """Moyal star product

        f*g = sum (-1)^{k2} (i eps mu)^{k1+k2} / (2^{k1+k2} k1! k2!)
                  (dx^{k1} dy^{k2} f)(dx^{k2} dy^{k1} g)

    truncated to the common window (each order consumes one mu power, so
    the sum is finite there).
    """
    win = f.window & g.window
    out = DiffPoly2.zero(win)
    fd: dict = {(0, 0): f.retruncate(win)}
    gd: dict = {(0, 0): g.retruncate(win)}

    def dxy(table, k1, k2):
        if (k1, k2) not in table:
            if k2 > 0:
                table[(k1, k2)] = dxy(table, k1, k2 - 1).dy()
            else:
                table[(k1, k2)] = dxy(table, k1 - 1, 0).dx()
        return table[(k1, k2)]

    for total in range(0, win.mmax + 1):
        for k1 in range(total + 1):
            k2 = total - k1
            re, im = _ipow(total)
            sign = -1 if k2 % 2 else 1
            denom = QQ(sign, 2**total * factorial(k1) * factorial(k2))
            coef = (re * denom, im * denom)
            term = (dxy(fd, k1, k2) * dxy(gd, k2, k1)).scale(coef)
            out = out + term.shift_epsmu(total)
    return out
