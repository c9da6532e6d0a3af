"""Star-factored normal form of the flows.

Each flow's integrand P_n is a combination of star monomials
eps^{2g} u_{d_1} * ... * u_{d_{n+1-g}} with sum d_i = 2g (x-jets only),
and star products are order-sensitive, so serialization keeps the
factorization as an ordered list.  The coefficients are recovered by
solving the exact linear system matching the expanded truncation.
"""

from __future__ import annotations

from itertools import product

from .diffpoly import DiffPoly2, Window, moyal
from .scalars import QQ, QQ0, QQ1, qq_str


def star_monomial(window: Window, orders, eps_power: int = 0) -> DiffPoly2:
    """u_{d_1} * u_{d_2} * ... * u_{d_k} (left-nested star product)."""
    out = DiffPoly2.jet(window, orders[0], 0)
    for d in orders[1:]:
        out = moyal(out, DiffPoly2.jet(window, d, 0))
    return out.shift_eps(eps_power) if eps_power else out


def star_basis(n: int):
    """(eps power, jet order tuple) basis for flow n's integrand."""
    out = []
    for g in range(0, n + 1):
        length = n + 1 - g
        for orders in product(range(2 * g + 1), repeat=length):
            if sum(orders) == 2 * g:
                out.append((2 * g, orders))
    return out


def _solve_exact(rows, rhs):
    """Gaussian elimination over QQ; returns solution or raises."""
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    aug = [list(r) + [v] for r, v in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = QQ1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][ncols] != 0:
            raise ArithmeticError("inconsistent system: flow not in star span")
    if len(piv_cols) < ncols:
        raise ArithmeticError("star basis not independent in this window")
    sol = [QQ0] * ncols
    for i, c in enumerate(piv_cols):
        sol[c] = aug[i][ncols]
    return sol


def star_factorization(p: DiffPoly2, n: int) -> dict:
    """Write P_n in the star-monomial basis; keys (eps power, orders).

    Raises if the expansion does not lie in the span (window too small or
    wrong flow index) or if the basis is degenerate in the window.
    """
    basis = star_basis(n)
    expansions = [star_monomial(p.window, orders, e) for e, orders in basis]
    keys = set(p.terms)
    for q in expansions:
        keys |= set(q.terms)
    keys = sorted(keys)
    rows, rhs = [], []
    for key in keys:
        for part in (0, 1):
            rows.append([q.terms.get(key, (QQ0, QQ0))[part] for q in expansions])
            rhs.append(p.terms.get(key, (QQ0, QQ0))[part])
    sol = _solve_exact(rows, rhs)
    return {
        basis[i]: sol[i] for i in range(len(basis)) if sol[i] != 0
    }


def flow_star_json(p: DiffPoly2, n: int) -> list:
    """Serialized star form: ordered star factors as a nested list."""
    fac = star_factorization(p, n)
    out = []
    for (e, orders), c in sorted(fac.items()):
        out.append(
            {
                "eps": e,
                "star": [[d, 0] for d in orders],
                "coeff": qq_str(c),
            }
        )
    return out
