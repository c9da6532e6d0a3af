"""Exact pairings of Pixton's class with psi monomials.

The degree-d part of the class attached to ramification data A is a sum
over stable graphs with at most d edges: legs carry exp(a_i^2 psi) factors,
each edge carries

    (1 - exp(-w(h)w(h') (psi_h + psi_{h'}))) / (psi_h + psi_{h'})
      = sum_{m>=0} (-1)^m (w(h)w(h'))^{m+1} (psi_h+psi_{h'})^m / (m+1)!

averaged over the r^{h1} weightings mod r, weighted by 1/|Aut|.  For each
sample r the pairing against a psi monomial collapses to per-vertex psi
correlators; the sample values are polynomial in r once r is large enough,
and the pairing is the constant term of that polynomial.

The sample window is r0, ..., r0 + 2d + 1 with r0 = max(sum|a_i|, 2d) + 2;
the last sample must lie on the interpolant through the others, which
turns the "sufficiently large r" of the construction into a checked
certificate.  ``r_offset`` shifts the window (window stability is one of
the acceptance checks).
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from math import comb, factorial

from .graphs import StableGraph, enumerate_stable_graphs
from .psi import PsiTable, global_table, is_stable
from .scalars import QQ, QQ0, QQ1, qq_str
from .sparsepoly import lagrange_interpolate
from .weightings import WeightPlan, weight_moment_sum


class RWindowError(ArithmeticError):
    """The r sample window was below the polynomiality threshold."""


_plan_cache: dict = {}
_wsum_cache: dict = {}
_pairing_cache: dict = {}


def _plan(graph: StableGraph) -> WeightPlan:
    plan = _plan_cache.get(graph)
    if plan is None:
        plan = _plan_cache[graph] = WeightPlan(graph)
    return plan


def weighting_sum_at_r(graph: StableGraph, edge_orders, A, r: int):
    """Average over weightings mod r of prod_e (w(h)w(h'))^{m_e + 1}.

    ``edge_orders`` lists the expansion order m_e >= 0 of each edge factor,
    in the order of ``graph.edges``; the result carries the 1/r^{h1}
    normalization.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    exps = tuple(m + 1 for m in edge_orders)
    total = weight_moment_sum(_plan(graph), exps, tuple(A), r)
    return QQ(total, r**graph.h1)


def _wsum(graph: StableGraph, exps, A, r: int) -> int:
    key = (graph, exps, A, r)
    got = _wsum_cache.get(key)
    if got is None:
        got = _wsum_cache[key] = weight_moment_sum(_plan(graph), exps, A, r)
    return got


def r_constant_term(samples, degree_bound: int):
    """Constant coefficient of the degree <= degree_bound polynomial
    through the samples (mapping or pairs r -> value).

    Needs at least degree_bound + 2 samples; all samples beyond the first
    degree_bound + 1 must lie on the interpolant, otherwise the window is
    declared unstable.
    """
    if hasattr(samples, "items"):
        pts = sorted(samples.items())
    else:
        pts = sorted(samples)
    if len(pts) < degree_bound + 2:
        raise ValueError("need at least degree_bound + 2 samples")
    poly = lagrange_interpolate(pts[: degree_bound + 1])
    for r, v in pts[degree_bound + 1 :]:
        if poly.evaluate({"r": r}) != QQ(v):
            raise RWindowError(
                "sample at r=%d off the degree-%d interpolant; window %s"
                % (r, degree_bound, [p[0] for p in pts])
            )
    return poly.coefficient((0,))


def _graph_terms(g, d, A, psi_exp, table: PsiTable):
    """Collect (coefficient, graph, edge exponent tuple) summands.

    The coefficient multiplies the weighting moment sum divided by r^{h1};
    it already contains 1/|Aut|, the leg exponential coefficients, the
    edge factor signs/factorials/binomials, and the per-vertex psi
    correlators.
    """
    n = len(A)
    terms: dict = {}
    for rec in enumerate_stable_graphs(g, n, max_edges=d):
        graph = rec.graph
        E = graph.n_edges
        delta = d - E
        if delta < 0:
            continue
        nv = graph.n_vertices
        dims = [3 * graph.genera[v] - 3 + graph.valence(v) for v in range(nv)]
        base = [sum(psi_exp[i] for i in graph.legs_at(v)) for v in range(nv)]
        if any(b > dim for b, dim in zip(base, dims)):
            continue
        aut = QQ(1, rec.aut_count)
        # distribute delta among leg exponential orders and edge orders
        for comp in _compositions(delta, n + E):
            e_leg = comp[:n]
            m_edge = comp[n:]
            if any(A[i] == 0 and e_leg[i] > 0 for i in range(n)):
                continue  # a_i = 0 kills positive exponential orders
            coef = aut
            for i in range(n):
                if e_leg[i]:
                    coef *= QQ(A[i] ** (2 * e_leg[i]), factorial(e_leg[i]))
            for m in m_edge:
                coef *= QQ((-1) ** m, factorial(m + 1))
            # split each (psi_h + psi_{h'})^{m_e} into half exponents
            for splits in _edge_splits(m_edge):
                vert_exp = [[] for _ in range(nv)]
                for i in range(n):
                    vert_exp[graph.legs[i]].append(psi_exp[i] + e_leg[i])
                ok = True
                binom = 1
                for (a, b), m, (p, q) in zip(graph.edges, m_edge, splits):
                    binom *= comb(m, p)
                    vert_exp[a].append(p)
                    vert_exp[b].append(q)
                corr = QQ1
                for v in range(nv):
                    if sum(vert_exp[v]) != dims[v]:
                        ok = False
                        break
                    c = table.value(graph.genera[v], vert_exp[v])
                    if c == 0:
                        ok = False
                        break
                    corr *= c
                if not ok:
                    continue
                key = (graph, tuple(m + 1 for m in m_edge))
                terms[key] = terms.get(key, QQ0) + coef * binom * corr
    return [(c, graph, exps) for (graph, exps), c in terms.items() if c != 0]


def _compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _edge_splits(m_edge):
    if not m_edge:
        yield ()
        return
    m = m_edge[0]
    for rest in _edge_splits(m_edge[1:]):
        for p in range(m + 1):
            yield ((p, m - p),) + rest


def pixton_pairing(
    g: int,
    d: int,
    A,
    psi_exp,
    *,
    r_offset: int = 0,
    table: PsiTable | None = None,
):
    """Exact value of the degree-d Pixton class against a psi monomial.

    Returns 0 off the dimension constraint d + sum(psi) = 3g - 3 + n.
    Raises ValueError when sum(A) != 0 and RWindowError when the sample
    window fails its polynomiality certificate.
    """
    A = tuple(int(a) for a in A)
    psi_exp = tuple(int(x) for x in psi_exp)
    n = len(A)
    if len(psi_exp) != n:
        raise ValueError("A and psi exponents must have equal length")
    if sum(A) != 0:
        raise ValueError("ramification data must sum to zero")
    if d < 0 or any(x < 0 for x in psi_exp):
        raise ValueError("negative degree")
    if not is_stable(g, n):
        raise ValueError("unstable moduli space (g=%d, n=%d)" % (g, n))
    table = table or global_table()
    if d + sum(psi_exp) != 3 * g - 3 + n:
        return QQ0
    if d == 0:
        return table.value(g, psi_exp)

    pairs = tuple(sorted(zip(A, psi_exp)))
    neg = tuple(sorted(zip((-a for a in A), psi_exp)))
    key = (g, d, min(pairs, neg), r_offset)
    got = _pairing_cache.get(key)
    if got is not None:
        return got

    terms = _graph_terms(g, d, A, psi_exp, table)
    degree_bound = 2 * d
    r0 = max(sum(abs(a) for a in A), 2 * d) + 2 + r_offset
    samples = {}
    for r in range(r0, r0 + degree_bound + 2):
        val = QQ0
        for coef, graph, exps in terms:
            val += coef * QQ(_wsum(graph, exps, A, r), r**graph.h1)
        samples[r] = val
    out = r_constant_term(samples, degree_bound)
    _pairing_cache[key] = out
    return out


def pixton_pairing_record(g, d, A, psi_exp, *, r_offset=0, table=None) -> dict:
    """CLI-facing record: value plus the window and graph count used."""
    value = pixton_pairing(g, d, A, psi_exp, r_offset=r_offset, table=table)
    degree_bound = 2 * d
    r0 = max(sum(abs(a) for a in A), 2 * d) + 2 + r_offset
    return {
        "g": g,
        "d": d,
        "A": list(A),
        "psiExp": list(psi_exp),
        "value": qq_str(value),
        "rWindow": [r0, r0 + degree_bound + 1] if d > 0 else [],
        "graphCount": len(enumerate_stable_graphs(g, len(A), max_edges=d)),
    }


def dr_pairing(g: int, A, psi_exp, *, r_offset: int = 0, table: PsiTable | None = None):
    """DR-cycle pairing: 2^{-g} times the degree-g Pixton pairing."""
    return pixton_pairing(g, g, A, psi_exp, r_offset=r_offset, table=table) / QQ(2**g)
