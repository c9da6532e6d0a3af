"""Fourier-mode form of the flows: substitute u = sum_a u^a e^{iay}.

Jets map by u_{k1,k2} -> sum_b (ib)^{k2} u^b_{k1} e^{iby}; collecting
e^{iay} turns a two-space-variable flow into a system of evolutionary
PDEs in one space variable with dependent variables u^a.  All imaginary
parts must cancel in the collected equations, and the equation for u^a is
homogeneous of mode weight a; both are asserted.
"""

from __future__ import annotations

from math import factorial

from .diffpoly import DiffPoly2, Window
from .scalars import QQ, QQ0, QQ1, qq_str


class FPoly:
    """Polynomial in mode jets u^b_k with rational coefficients and
    explicit eps/mu powers; terms: dict[(mono, e, m)] -> QQ with mono a
    sorted tuple of (b, k)."""

    __slots__ = ("window", "terms")

    def __init__(self, window: Window, terms=None):
        self.window = window
        self.terms = {}
        if terms:
            for key, c in terms.items():
                c = QQ(c)
                if c != 0 and self._admits(window, key):
                    self.terms[key] = c

    @staticmethod
    def _admits(window, key):
        mono, e, m = key
        return e <= window.emax and 0 <= m <= window.mmax and sum(
            k for _b, k in mono
        ) <= window.ddmax

    @classmethod
    def zero(cls, window):
        return cls(window)

    @classmethod
    def jet(cls, window, b, k):
        return cls(window, {(((b, k),), 0, 0): QQ1})

    def _new(self, terms):
        p = FPoly.__new__(FPoly)
        p.window = self.window
        p.terms = terms
        return p

    def __add__(self, other):
        win = self.window & other.window
        out = {}
        for src in (self.terms, other.terms):
            for k, c in src.items():
                if not self._admits(win, k):
                    continue
                s = out.get(k, QQ0) + c
                if s == 0:
                    out.pop(k, None)
                else:
                    out[k] = s
        p = FPoly.__new__(FPoly)
        p.window = win
        p.terms = out
        return p

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = QQ(c)
        if c == 0:
            return self._new({})
        return self._new({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, FPoly):
            return self.scale(other)
        win = self.window & other.window
        out = {}
        for (m1, e1, mu1), c1 in self.terms.items():
            for (m2, e2, mu2), c2 in other.terms.items():
                key = (tuple(sorted(m1 + m2)), e1 + e2, mu1 + mu2)
                if not self._admits(win, key):
                    continue
                s = out.get(key, QQ0) + c1 * c2
                if s == 0:
                    out.pop(key, None)
                else:
                    out[key] = s
        p = FPoly.__new__(FPoly)
        p.window = win
        p.terms = out
        return p

    def dx(self, times: int = 1):
        p = self
        for _ in range(times):
            out = {}
            for (mono, e, m), c in p.terms.items():
                seen = set()
                for idx, (b, k) in enumerate(mono):
                    if (b, k) in seen:
                        continue
                    seen.add((b, k))
                    mult = mono.count((b, k))
                    new = list(mono)
                    new[idx] = (b, k + 1)
                    key = (tuple(sorted(new)), e, m)
                    if not self._admits(self.window, key):
                        continue
                    s = out.get(key, QQ0) + c * mult
                    if s == 0:
                        out.pop(key, None)
                    else:
                        out[key] = s
            p = self._new(out)
        return p

    def shift_epsmu(self, k: int):
        out = {}
        for (mono, e, m), c in self.terms.items():
            key = (mono, e + k, m + k)
            if self._admits(self.window, key):
                out[key] = c
        return self._new(out)

    def apply_shift_operator(self, c):
        """e^{c eps mu dx} applied termwise, expanded to the mu cap."""
        c = QQ(c)
        out = FPoly.zero(self.window)
        power = self
        j = 0
        while j <= self.window.mmax:
            out = out + power.scale(QQ(c**j, factorial(j))).shift_epsmu(j)
            power = power.dx()
            j += 1
        return out

    def mode_weight_ok(self, a: int) -> bool:
        return all(sum(b for b, _k in mono) == a for (mono, _e, _m) in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        win = self.window & other.window
        keys = set(self.terms) | set(other.terms)
        return all(
            not self._admits(win, k)
            or self.terms.get(k, QQ0) == other.terms.get(k, QQ0)
            for k in keys
        )

    def sorted_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda item: (len(item[0][0]), item[0][0], item[0][1], item[0][2]),
        )

    def to_json(self) -> list:
        return [
            {
                "jets": [list(j) for j in mono],
                "eps": e,
                "mu": m,
                "coeff": qq_str(c),
            }
            for (mono, e, m), c in self.sorted_terms()
        ]

    def __repr__(self):
        parts = []
        for (mono, e, m), c in self.sorted_terms():
            bits = [qq_str(c)]
            if e:
                bits.append("eps^%d" % e)
            if m:
                bits.append("mu^%d" % m)
            bits += ["u[%d]_%d" % (b, k) for b, k in mono]
            parts.append("*".join(bits))
        return " + ".join(parts) if parts else "0"


class FourierFlow:
    """Evolutionary equations du^a/dt = equations[a], |a| <= mode_bound."""

    __slots__ = ("mode_bound", "equations", "window")

    def __init__(self, mode_bound: int, equations: dict, window: Window):
        self.mode_bound = mode_bound
        self.equations = equations
        self.window = window
        for a, eq in equations.items():
            if not eq.mode_weight_ok(a):
                raise AssertionError("equation for mode %d not homogeneous" % a)

    def to_json(self) -> dict:
        return {str(a): self.equations[a].to_json() for a in sorted(self.equations)}


def to_fourier(rhs: DiffPoly2, amax: int, window: Window | None = None) -> FourierFlow:
    """Collect the e^{iay} modes of a two-variable flow right-hand side.

    Residual imaginary parts after collection signal an internal error.
    ``window`` bounds the emitted FPolys; by default the input window is
    reused, but note its ddmax counts x- and y-jets jointly, so a flow
    truncated at ddmax D is only faithful in Fourier jets up to total
    x-order D - (mu cap).  Use :func:`flow_fourier` for correctly sized
    windows.
    """
    if amax < 0:
        raise ValueError("amax must be >= 0")
    win = window or rhs.window
    modes = range(-amax, amax + 1)
    raw: dict = {a: {} for a in modes}
    for (mono, e, m), (cre, cim) in rhs.terms.items():
        p = len(mono)
        if p == 0:
            if 0 in raw:
                key = ((), e, m)
                cur = raw[0].get(key, (QQ0, QQ0))
                raw[0][key] = (cur[0] + cre, cur[1] + cim)
            continue
        stack = [((), 0, (QQ1, QQ0))]
        for (k1, k2) in mono:
            nxt = []
            for jets, asum, phase in stack:
                for b in modes:
                    if b == 0 and k2 > 0:
                        continue
                    # (i b)^{k2} factor
                    ph = phase
                    if k2:
                        ib = b**k2
                        r = k2 % 4
                        if r == 0:
                            f = (QQ(ib), QQ0)
                        elif r == 1:
                            f = (QQ0, QQ(ib))
                        elif r == 2:
                            f = (QQ(-ib), QQ0)
                        else:
                            f = (QQ0, QQ(-ib))
                        ph = (
                            ph[0] * f[0] - ph[1] * f[1],
                            ph[0] * f[1] + ph[1] * f[0],
                        )
                    nxt.append((jets + ((b, k1),), asum + b, ph))
            stack = nxt
        for jets, asum, phase in stack:
            if abs(asum) > amax:
                continue
            coef = (
                cre * phase[0] - cim * phase[1],
                cre * phase[1] + cim * phase[0],
            )
            key = (tuple(sorted(jets)), e, m)
            cur = raw[asum].get(key, (QQ0, QQ0))
            raw[asum][key] = (cur[0] + coef[0], cur[1] + coef[1])
    equations = {}
    for a in modes:
        terms = {}
        for key, (re, im) in raw[a].items():
            if im != 0:
                raise AssertionError(
                    "imaginary residue in Fourier mode %d at %r: %s" % (a, key, im)
                )
            if re != 0:
                terms[key] = re
        equations[a] = FPoly(win, terms)
    return FourierFlow(amax, equations, win)


def flow_fourier(n: int, amax: int, mu_max: int, dd_max: int) -> FourierFlow:
    """Fourier form of Lax flow n, exact in x-jets up to order dd_max.

    The underlying two-variable flow is computed with its joint
    differential degree enlarged by the mu cap, since each mu power can
    hide one y-jet that the substitution converts into a mode factor.
    """
    from .pdo import lax_flow_rhs

    work = Window(emax=2 * n + 2 + mu_max, mmax=mu_max, ddmax=dd_max + mu_max)
    rhs = lax_flow_rhs(n, work)
    return to_fourier(rhs, amax, Window(work.emax, mu_max, dd_max))
