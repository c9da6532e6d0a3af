"""Sparse multivariate polynomials over exact rationals.

Terms live in a dict from exponent tuples to nonzero coefficients.  The
variable list is fixed per polynomial; printing and serialization order
terms graded-lexicographically so output is deterministic.
"""

from __future__ import annotations

from .scalars import QQ, QQ0, QQ1, qq_parse, qq_str


class SparsePoly:
    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms=None):
        self.variables = tuple(variables)
        self.terms = {}
        if terms:
            w = len(self.variables)
            for exps, c in terms.items():
                exps = tuple(int(e) for e in exps)
                if len(exps) != w:
                    raise ValueError("exponent arity mismatch")
                c = QQ(c)
                if c != 0:
                    self.terms[exps] = self.terms.get(exps, QQ0) + c
            self.terms = {e: c for e, c in self.terms.items() if c != 0}

    @classmethod
    def constant(cls, variables, c):
        return cls(variables, {(0,) * len(tuple(variables)): QQ(c)})

    @classmethod
    def variable(cls, variables, name):
        variables = tuple(variables)
        exps = [0] * len(variables)
        exps[variables.index(name)] = 1
        return cls(variables, {tuple(exps): QQ1})

    def _check(self, other):
        if self.variables != other.variables:
            raise ValueError("mixed variable lists")

    def __add__(self, other):
        if not isinstance(other, SparsePoly):
            other = SparsePoly.constant(self.variables, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, QQ0) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return SparsePoly(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SparsePoly):
            other = SparsePoly.constant(self.variables, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, SparsePoly):
            c = QQ(other)
            if c == 0:
                return SparsePoly(self.variables)
            return SparsePoly(self.variables, {e: a * c for e, a in self.terms.items()})
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, QQ0) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return SparsePoly(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = SparsePoly.constant(self.variables, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            other = SparsePoly.constant(self.variables, other)
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), QQ0)

    def evaluate(self, values):
        """Evaluate at a mapping from variable name to rational."""
        out = QQ0
        for e, c in self.terms.items():
            t = c
            for name, k in zip(self.variables, e):
                if k:
                    t *= QQ(values[name]) ** k
            out += t
        return out

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def truncate_total_degree(self, bound):
        return SparsePoly(
            self.variables, {e: c for e, c in self.terms.items() if sum(e) <= bound}
        )

    def sorted_terms(self):
        # graded lex on the fixed variable order
        return sorted(self.terms.items(), key=lambda ec: (sum(ec[0]), ec[0]))

    def to_json(self) -> dict:
        return {",".join(map(str, e)): qq_str(c) for e, c in self.sorted_terms()}

    @classmethod
    def from_json(cls, variables, data: dict):
        return cls(
            variables,
            {tuple(int(x) for x in k.split(",")): qq_parse(v) for k, v in data.items()},
        )

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                "%s^%d" % (v, k) if k > 1 else v
                for v, k in zip(self.variables, e)
                if k
            )
            parts.append("%s*%s" % (qq_str(c), mono) if mono else qq_str(c))
        return " + ".join(parts)

    __repr__ = __str__


def lagrange_interpolate(points, variable="r") -> SparsePoly:
    """Exact Lagrange interpolation through (x, value) samples.

    Returns the unique polynomial of degree < len(points) in ``variable``.
    Duplicate abscissae raise ValueError.
    """
    points = [(int(x), QQ(y)) for x, y in points]
    if not points:
        raise ValueError("need at least one sample")
    xs = [x for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("duplicate abscissae")
    var = (variable,)
    out = SparsePoly(var)
    for i, (xi, yi) in enumerate(points):
        # numerator polynomial prod_{j != i} (r - x_j), as a coefficient list
        num = [QQ1]
        denom = QQ1
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            num = [QQ0] + num
            for k in range(len(num) - 1):
                num[k] -= xj * num[k + 1]
            denom *= xi - xj
        scale = yi / denom
        out = out + SparsePoly(var, {(k,): c * scale for k, c in enumerate(num)})
    return out
