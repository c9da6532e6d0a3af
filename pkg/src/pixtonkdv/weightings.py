"""Mod-r weightings of a stable graph and their moment sums.

A weighting assigns residues in {0..r-1} to half-edges so that legs carry
a_i mod r, the two halves of an edge sum to 0 mod r, and every vertex
conserves flow mod r.  Exactly r^{h1} weightings exist: fixing arbitrary
residues on h1 edges outside a spanning tree forces the tree edges.

The sums needed by the Pixton class are, for one exponent k_e >= 1 per
edge,

    sum over weightings of  prod_e (w(h_e) * w(h_e'))^{k_e}

which this module evaluates by iterating the cycle residues and reading
tree-edge residues off precomputed integer linear forms.  The inner loop
is pure machine-integer work; a compiled kernel (``_wsumc``) is used when
importable and safely within int64 range, with a pure-Python fallback.

``PIXTONKDV_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import os
from itertools import product

from .graphs import StableGraph

try:  # compiled kernel is optional; see setup.py
    if os.environ.get("PIXTONKDV_PURE_PYTHON"):
        raise ImportError
    from ._wsumc import weight_sum_int64 as _c_kernel
except ImportError:  # pragma: no cover - depends on build environment
    _c_kernel = None


def kernel_name() -> str:
    return "cython" if _c_kernel is not None else "python"


class WeightPlan:
    """Per-graph solving plan for weightings.

    For every edge we store the residue of its first half as an integer
    linear form  const(legs) + sum_c coef_c * w_c  in the free cycle
    residues w_c; the second half is the mod-r negation.
    """

    __slots__ = ("graph", "h1", "leg_coeffs", "cycle_coeffs")

    def __init__(self, graph: StableGraph):
        self.graph = graph
        V, E = graph.n_vertices, graph.n_edges
        self.h1 = graph.h1

        # spanning tree by BFS over non-loop edges
        parent_edge = [-1] * V
        depth = [-1] * V
        depth[0] = 0
        frontier = [0]
        tree = set()
        while frontier:
            nxt = []
            for v in frontier:
                for k, (a, b) in enumerate(graph.edges):
                    if k in tree or a == b:
                        continue
                    w = b if a == v else a if b == v else None
                    if w is not None and depth[w] < 0:
                        depth[w] = depth[v] + 1
                        parent_edge[w] = k
                        tree.add(k)
                        nxt.append(w)
            frontier = nxt
        if any(d < 0 for d in depth):
            raise ValueError("graph not connected")

        cycle = [k for k in range(E) if k not in tree]
        assert len(cycle) == self.h1

        n = graph.n_legs
        # forms[k] = (leg vector, cycle vector) for the residue of half0
        # (the half at edges[k][0]); half1 carries the negation.
        forms: list = [None] * E
        for c, k in enumerate(cycle):
            forms[k] = ((0,) * n, tuple(int(c == j) for j in range(self.h1)))

        # solve tree edges at the deeper endpoint first; every other edge
        # incident to that vertex already carries a form
        for v in sorted(range(1, V), key=lambda v: -depth[v]):
            k = parent_edge[v]
            leg = [0] * n
            cyc = [0] * self.h1
            for i, lv in enumerate(graph.legs):
                if lv == v:
                    leg[i] += 1
            for j, (a, b) in enumerate(graph.edges):
                if j == k:
                    continue
                for end, half_sign in ((a, 1), (b, -1)):
                    if end != v:
                        continue
                    jl, jc = forms[j]
                    for i in range(n):
                        leg[i] += half_sign * jl[i]
                    for c in range(self.h1):
                        cyc[c] += half_sign * jc[c]
            # conservation at v: the parent half at v carries -(the rest)
            a, _b = graph.edges[k]
            sign = 1 if a == v else -1  # stored form is for half0 (at a)
            forms[k] = (
                tuple(-sign * x for x in leg),
                tuple(-sign * x for x in cyc),
            )
        self.leg_coeffs = tuple(f[0] for f in forms)
        self.cycle_coeffs = tuple(f[1] for f in forms)

    def half_residues(self, A, cycle_values, r: int):
        """Residues (w(h0), w(h1)) per edge for given cycle values."""
        out = []
        for leg, cyc in zip(self.leg_coeffs, self.cycle_coeffs):
            w0 = (
                sum(c * a for c, a in zip(leg, A))
                + sum(c * w for c, w in zip(cyc, cycle_values))
            ) % r
            out.append((w0, (r - w0) % r))
        return out


def _python_kernel(consts, cyccoefs, exps, h1, r):
    total = 0
    E = len(consts)
    for ws in product(range(r), repeat=h1):
        p = 1
        for e in range(E):
            w0 = consts[e]
            for c in range(h1):
                w0 += cyccoefs[e][c] * ws[c]
            w0 %= r
            if w0 == 0:
                p = 0
                break
            p *= (w0 * (r - w0)) ** exps[e]
        total += p
    return total


def weight_moment_sum(plan: WeightPlan, exps, A, r: int) -> int:
    """sum over all r^{h1} weightings of prod_e (w(h)w(h'))^{exps[e]}.

    Returns the integer sum (the 1/r^{h1} normalization is the caller's).
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    E = plan.graph.n_edges
    if E == 0:
        return 1
    exps = tuple(int(k) for k in exps)
    if len(exps) != E or any(k < 1 for k in exps):
        raise ValueError("need one exponent >= 1 per edge")
    consts = tuple(
        sum(c * a for c, a in zip(leg, A)) % r for leg in plan.leg_coeffs
    )
    if _c_kernel is not None:
        # keep within int64: bound each term and the full sum
        bound = 1
        q = (r * r) // 4 if r > 1 else 1
        for k in exps:
            bound *= max(q, 1) ** k
        if bound * (r**plan.h1) < 2**62:
            return _c_kernel(consts, plan.cycle_coeffs, exps, plan.h1, r)
    return _python_kernel(consts, plan.cycle_coeffs, exps, plan.h1, r)


def weight_moment_sum_bruteforce(graph: StableGraph, exps, A, r: int) -> int:
    """Direct enumeration over all residue assignments (test oracle).

    Iterates r^E assignments of a residue to the first half of every edge
    (legs are forced), keeps those conserving flow at every vertex, and
    accumulates the moment product.  Checks |W_{Gamma,r}| = r^{h1} on the
    way.
    """
    V, E = graph.n_vertices, graph.n_edges
    exps = tuple(int(k) for k in exps)
    total = 0
    count = 0
    for ws in product(range(r), repeat=E):
        sums = [0] * V
        for i, lv in enumerate(graph.legs):
            sums[lv] += A[i] % r
        for (a, b), w in zip(graph.edges, ws):
            sums[a] += w
            sums[b] += (r - w) % r
        if any(s % r for s in sums):
            continue
        count += 1
        p = 1
        for w, k in zip(ws, exps):
            p *= (w * ((r - w) % r)) ** k
        total += p
    assert count == r**graph.h1, "weighting count is not r^h1"
    return total
