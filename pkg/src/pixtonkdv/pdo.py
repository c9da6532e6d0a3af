"""Pseudo-differential operators with Moyal-star coefficients, and the
noncommutative KdV Lax flows.

An operator is a finite sum  sum_{i <= top} a_i * dx^i  with DiffPoly2
coefficients (negative eps powers allowed) and composition

    (a * dx^i) o (b * dx^j) = sum_{k>=0} binom(i,k) (a * dx^k b) * dx^{i+j-k},

with the generalized binomial for i < 0; the k-sum stops once the output
order drops below the retained tail.  A monic operator dx^2 + lower has a
unique square root dx + (orders < 1), found order by order.

The n-th flow is

    dL/dt_n = eps^{2n} / (2n+1)!!  [ (L^{n+1/2})_+ , L ],   L = dx^2 + 2 eps^-2 u,

so du/dt_n is eps^{2n+2}/(2 (2n+1)!!) times the commutator, which is
checked to be a pure multiplication operator.  An independent route via
the residue, du/dt_n = eps^{2n+2}/(2n+1)!! dx res(L^{n+1/2}), is exposed
for cross-validation and yields the flow with the outer dx removed.
"""

from __future__ import annotations

from math import factorial

from .diffpoly import DiffPoly2, Window, moyal
from .scalars import QQ, QQ1


def dbl_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def _binom_gen(i: int, k: int):
    """binom(i, k) for integer i (possibly negative), k >= 0."""
    num = 1
    for t in range(k):
        num *= i - t
    return QQ(num, factorial(k))


class PseudoDiffOp:
    """coeffs: dict order -> DiffPoly2; orders below -neg_tail are dropped."""

    __slots__ = ("window", "neg_tail", "coeffs")

    def __init__(self, window: Window, neg_tail: int, coeffs=None):
        self.window = window
        self.neg_tail = neg_tail
        self.coeffs = {}
        if coeffs:
            for i, p in coeffs.items():
                if i < -neg_tail or p.is_zero():
                    continue
                self.coeffs[i] = p

    @classmethod
    def dx_power(cls, window, neg_tail, i):
        return cls(window, neg_tail, {i: DiffPoly2.const(window, 1)})

    @classmethod
    def from_poly(cls, window, neg_tail, p, order=0):
        return cls(window, neg_tail, {order: p})

    def top_order(self):
        return max(self.coeffs, default=None)

    def coefficient(self, i) -> DiffPoly2:
        return self.coeffs.get(i, DiffPoly2.zero(self.window))

    def __add__(self, other):
        out = dict(self.coeffs)
        for i, p in other.coeffs.items():
            q = out.get(i)
            out[i] = p if q is None else q + p
        return PseudoDiffOp(self.window, min(self.neg_tail, other.neg_tail), out)

    def __neg__(self):
        return PseudoDiffOp(
            self.window, self.neg_tail, {i: -p for i, p in self.coeffs.items()}
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return PseudoDiffOp(
            self.window, self.neg_tail, {i: p.scale(c) for i, p in self.coeffs.items()}
        )

    def positive_part(self):
        return PseudoDiffOp(
            self.window, self.neg_tail, {i: p for i, p in self.coeffs.items() if i >= 0}
        )

    def negative_part(self):
        return PseudoDiffOp(
            self.window, self.neg_tail, {i: p for i, p in self.coeffs.items() if i < 0}
        )

    def residue(self) -> DiffPoly2:
        return self.coefficient(-1)

    def compose(self, other: "PseudoDiffOp") -> "PseudoDiffOp":
        tail = min(self.neg_tail, other.neg_tail)
        win = self.window & other.window
        out: dict = {}
        for j, b in other.coeffs.items():
            dxb = {0: b}
            for i, a in self.coeffs.items():
                k = 0
                while True:
                    if i >= 0 and k > i:
                        break
                    order = i + j - k
                    if order < -tail:
                        break
                    if k not in dxb:
                        dxb[k] = dxb[k - 1].dx()
                    if not dxb[k].is_zero():
                        term = moyal(a, dxb[k]).scale(_binom_gen(i, k))
                        if not term.is_zero():
                            q = out.get(order)
                            out[order] = term if q is None else q + term
                    k += 1
        return PseudoDiffOp(win, tail, out)

    def __eq__(self, other):
        orders = set(self.coeffs) | set(other.coeffs)
        tail = min(self.neg_tail, other.neg_tail)
        return all(
            self.coefficient(i) == other.coefficient(i)
            for i in orders
            if i >= -tail
        )

    def __repr__(self):
        parts = [
            "(%s)*dx^%d" % (p, i) for i, p in sorted(self.coeffs.items(), reverse=True)
        ]
        return " + ".join(parts) if parts else "0"


def pdo_compose(A: PseudoDiffOp, B: PseudoDiffOp) -> PseudoDiffOp:
    return A.compose(B)


def commutator(A: PseudoDiffOp, B: PseudoDiffOp) -> PseudoDiffOp:
    return A.compose(B) - B.compose(A)


def pdo_sqrt(L: PseudoDiffOp) -> PseudoDiffOp:
    """Square root dx + (orders < 1) of a monic dx^2 + lower operator.

    Matching the order-m coefficient of R o R determines b_{m-1}; solving
    from m = 1 down to 1 - neg_tail fills the retained tail.
    """
    if L.top_order() != 2 or not L.coefficient(2) == DiffPoly2.const(L.window, 1):
        raise ValueError("square root requires a monic dx^2 leading term")
    win, tail = L.window, L.neg_tail
    R = PseudoDiffOp.dx_power(win, tail, 1)
    for m in range(1, -tail, -1):
        S = R.compose(R)
        diff = L.coefficient(m) - S.coefficient(m)
        if diff.is_zero():
            continue
        R = R + PseudoDiffOp.from_poly(win, tail, diff.scale(QQ(1, 2)), m - 1)
    return R


def lax_operator(window: Window, neg_tail: int) -> PseudoDiffOp:
    """L = dx^2 + 2 eps^-2 u."""
    u = DiffPoly2.u(window)
    return PseudoDiffOp(
        window,
        neg_tail,
        {2: DiffPoly2.const(window, 1), 0: u.scale(2).shift_eps(-2)},
    )


def _half_power(n: int, window: Window, neg_tail: int) -> PseudoDiffOp:
    L = lax_operator(window, neg_tail)
    R = pdo_sqrt(L)
    P = R
    for _ in range(n):
        P = L.compose(P)
    return P


def default_window(n: int) -> Window:
    # wide enough to print flow n exactly through its (eps mu)^2 corrections
    return Window(emax=2 * n + 4, mmax=4, ddmax=2 * n + 6)


def lax_flow_rhs(n: int, window: Window | None = None, neg_tail: int | None = None) -> DiffPoly2:
    """du/dt_n as a differential polynomial, via the Lax commutator.

    The commutator [(L^{n+1/2})_+, L] must be a multiplication operator;
    any other surviving order means the tail was too short, which raises.
    """
    if n < 1:
        raise ValueError("flow index must be >= 1")
    if window is None:
        window = default_window(n)
    if neg_tail is None:
        neg_tail = 2 * n + 3
    # internal eps cap must not clip Laurent-in-eps intermediates
    work = Window(emax=window.emax + 2 * n + 2, mmax=window.mmax, ddmax=window.ddmax)
    A = _half_power(n, work, neg_tail).positive_part()
    L = lax_operator(work, neg_tail)
    C = commutator(A, L)
    for i, p in C.coeffs.items():
        if i != 0 and not p.is_zero():
            raise ArithmeticError(
                "commutator not a multiplication operator at order %d "
                "(insufficient window or tail)" % i
            )
    rhs = C.coefficient(0).scale(QQ(1, 2 * dbl_factorial(2 * n + 1))).shift_eps(2 * n + 2)
    rhs = rhs.retruncate(window)
    if not rhs.is_eps_regular():
        raise ArithmeticError("flow has negative eps powers")
    return rhs


def lax_flow_p(n: int, window: Window | None = None, neg_tail: int | None = None) -> DiffPoly2:
    """P_n with du/dt_n = dx P_n, via the residue of L^{n+1/2}."""
    if window is None:
        window = default_window(n)
    if neg_tail is None:
        neg_tail = 2 * n + 3
    work = Window(emax=window.emax + 2 * n + 2, mmax=window.mmax, ddmax=window.ddmax)
    res = _half_power(n, work, neg_tail).residue()
    return res.scale(QQ(1, dbl_factorial(2 * n + 1))).shift_eps(2 * n + 2).retruncate(window)


def flows_commute(m: int, n: int, window: Window) -> bool:
    """Check the evolutionary vector fields of flows m and n commute.

    The bracket sum_{jets} (dQ/du_J dx^{j1} dy^{j2} P - dP/du_J ... Q) is
    evaluated within the window; both flows are computed in the same
    window, which is closed for this bracket since differential degrees
    and eps/mu powers only add.
    """
    P = lax_flow_rhs(m, window)
    Q = lax_flow_rhs(n, window)
    return _bracket(P, Q).is_zero()


def _directional(P: DiffPoly2, Q: DiffPoly2) -> DiffPoly2:
    """Derivative of Q along the flow du/dt = P."""
    acc = DiffPoly2.zero(P.window & Q.window)
    for (k1, k2) in Q.jets_present():
        acc = acc + Q.partial_jet(k1, k2) * P.dx(k1).dy(k2)
    return acc


def _bracket(P: DiffPoly2, Q: DiffPoly2) -> DiffPoly2:
    return _directional(P, Q) - _directional(Q, P)
