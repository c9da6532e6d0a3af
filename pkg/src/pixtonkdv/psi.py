"""Psi-class intersection numbers <tau_{d_1} ... tau_{d_n}>_g.

Computed by the Dijkgraaf-Verlinde-Verlinde recursion on the largest
exponent, with the two closed seeds

    <tau_0^3>_0 = 1        (a point),
    <tau_1>_1   = 1/24     (the genus-one one-point integral, forced by
                            the constant term of the L_0 Virasoro
                            constraint; cross-checked downstream against
                            the DR-cycle identities).

Values are memoized in-process and optionally persisted to an append-only
text cache ``g;d_1,...,d_n;p/q`` that is re-read at startup.  The memo
supports concurrent readers with exclusive insertion; recomputation races
are benign because values are deterministic.
"""

from __future__ import annotations

import os
import threading
from functools import lru_cache
from itertools import combinations

from .scalars import QQ, QQ0, QQ1, qq_parse, qq_str


@lru_cache(maxsize=None)
def double_factorial(n: int):
    """(2k+1)!! style double factorial; (-1)!! = 1 by convention."""
    if n <= 0:
        return 1
    return n * double_factorial(n - 2)


def is_stable(g: int, n: int) -> bool:
    return 2 * g - 2 + n > 0


class PsiTable:
    """Memoized psi correlators with an optional append-only disk cache."""

    def __init__(self, path: str | None = None):
        self._memo: dict[tuple, object] = {}
        self._lock = threading.Lock()
        self._path = None
        if path:
            self.attach_file(path)

    def attach_file(self, path: str):
        self._path = path
        if os.path.exists(path):
            with open(path) as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    gs, ds, val = line.split(";")
                    d = tuple(int(x) for x in ds.split(",")) if ds else ()
                    self._memo[(int(gs), d)] = qq_parse(val)

    def __len__(self):
        return len(self._memo)

    def value(self, g: int, exponents):
        """Exact <tau_{d_1}...tau_{d_n}>_g; 0 off the dimension constraint."""
        d = tuple(sorted(exponents, reverse=True))
        n = len(d)
        if g < 0 or any(x < 0 for x in d):
            raise ValueError("genus and exponents must be nonnegative")
        if not is_stable(g, n):
            raise ValueError("unstable moduli space (g=%d, n=%d)" % (g, n))
        if sum(d) != 3 * g - 3 + n:
            return QQ0
        key = (g, d)
        got = self._memo.get(key)
        if got is not None:
            return got
        val = self._compute(g, d)
        with self._lock:
            if key not in self._memo:
                self._memo[key] = val
                if self._path:
                    with open(self._path, "a") as fh:
                        fh.write(
                            "%d;%s;%s\n" % (g, ",".join(map(str, d)), qq_str(val))
                        )
        return val

    def _stable_value(self, g, exponents):
        # helper for recursion terms: 0 for unstable or off-dimension pieces
        n = len(exponents)
        if not is_stable(g, n):
            return QQ0
        if sum(exponents) != 3 * g - 3 + n:
            return QQ0
        return self.value(g, exponents)

    def _compute(self, g, d):
        if g == 0 and d == (0, 0, 0):
            return QQ1
        if g == 1 and d == (1,):
            return QQ(1, 24)
        # DVV on the largest exponent d[0] = k+1 >= 1
        k = d[0] - 1
        rest = d[1:]
        if k < 0:
            # all exponents zero: dimension forces (0,3) or nothing
            return QQ0
        acc = QQ0
        for j, dj in enumerate(rest):
            others = rest[:j] + rest[j + 1 :]
            term = self._stable_value(g, (k + dj,) + others)
            if term != 0:
                acc += (
                    QQ(double_factorial(2 * (k + dj) + 1), double_factorial(2 * dj - 1))
                    * term
                )
        quad = QQ0
        for a in range(0, k):
            b = k - 1 - a
            w = double_factorial(2 * a + 1) * double_factorial(2 * b + 1)
            if g >= 1:
                t = self._stable_value(g - 1, (a, b) + rest)
                if t != 0:
                    quad += w * t
            m = len(rest)
            idx = range(m)
            for g1 in range(0, g + 1):
                g2 = g - g1
                for size in range(0, m + 1):
                    for I in combinations(idx, size):
                        Iset = set(I)
                        dI = tuple(rest[i] for i in I)
                        dJ = tuple(rest[i] for i in idx if i not in Iset)
                        t1 = self._stable_value(g1, (a,) + dI)
                        if t1 == 0:
                            continue
                        t2 = self._stable_value(g2, (b,) + dJ)
                        if t2 == 0:
                            continue
                        quad += w * t1 * t2
        acc += quad / 2
        return acc / double_factorial(2 * k + 3)


_GLOBAL_TABLE = PsiTable()


def global_table() -> PsiTable:
    return _GLOBAL_TABLE


def psi_correlator(g: int, exponents, table: PsiTable | None = None):
    """Exact integral of psi_1^{d_1}...psi_n^{d_n} over Mbar_{g,n}."""
    return (table or _GLOBAL_TABLE).value(g, exponents)


def check_string_dilaton(g: int, exponents, table: PsiTable | None = None) -> bool:
    """Check the string and dilaton equations on top of (g, exponents).

    string:  <tau_0 prod tau_{d_i}> = sum_j <... tau_{d_j - 1} ...>
    dilaton: <tau_1 prod tau_{d_i}> = (2g-2+n) <prod tau_{d_i}>
    """
    t = table or _GLOBAL_TABLE
    d = tuple(sorted(exponents, reverse=True))
    n = len(d)
    if not is_stable(g, n):
        raise ValueError("unstable moduli space")
    lhs_s = t._stable_value(g, d + (0,))
    rhs_s = QQ0
    for j in range(n):
        if d[j] >= 1:
            rhs_s += t._stable_value(g, d[:j] + (d[j] - 1,) + d[j + 1 :])
    lhs_d = t._stable_value(g, d + (1,))
    rhs_d = (2 * g - 2 + n) * t._stable_value(g, d)
    return lhs_s == rhs_s and lhs_d == rhs_d
