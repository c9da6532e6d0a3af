"""Stable graphs of genus g with n labeled legs.

A graph is stored as vertex genera, a leg->vertex map, and a multiset of
edges given as sorted vertex pairs (loops allowed).  Legs are labeled by
markings 1..n and are fixed by automorphisms.  Enumeration proceeds by
breadth-first one-edge degenerations of the smooth graph (split a vertex,
or trade a unit of genus for a loop), deduplicating by canonical form;
every stable graph arises this way because contracting any edge of a
stable graph is again stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from math import factorial


class StableGraph:
    __slots__ = ("genera", "legs", "edges")

    def __init__(self, genera, legs, edges):
        self.genera = tuple(int(g) for g in genera)
        self.legs = tuple(int(v) for v in legs)
        edges = [tuple(sorted((int(a), int(b)))) for a, b in edges]
        self.edges = tuple(sorted(edges))

    # -- basic data -------------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.genera)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_legs(self) -> int:
        return len(self.legs)

    @property
    def h1(self) -> int:
        return self.n_edges - self.n_vertices + 1

    @property
    def genus(self) -> int:
        return sum(self.genera) + self.h1

    def legs_at(self, v):
        return tuple(i for i, w in enumerate(self.legs) if w == v)

    def valence(self, v) -> int:
        n = sum(1 for w in self.legs if w == v)
        for a, b in self.edges:
            if a == v:
                n += 1
            if b == v:
                n += 1
        return n

    def is_connected(self) -> bool:
        if self.n_vertices == 0:
            return False
        seen = {0}
        frontier = [0]
        adj = {v: set() for v in range(self.n_vertices)}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        while frontier:
            v = frontier.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        return len(seen) == self.n_vertices

    def is_stable(self) -> bool:
        return all(2 * g - 2 + self.valence(v) > 0 for v, g in enumerate(self.genera))

    def validate(self):
        if any(g < 0 for g in self.genera):
            raise ValueError("negative vertex genus")
        if any(not 0 <= v < self.n_vertices for v in self.legs):
            raise ValueError("leg attached to missing vertex")
        if any(not 0 <= a < self.n_vertices or not 0 <= b < self.n_vertices for a, b in self.edges):
            raise ValueError("edge attached to missing vertex")
        if not self.is_connected():
            raise ValueError("graph not connected")
        if not self.is_stable():
            raise ValueError("unstable vertex")

    # -- canonical form and automorphisms ---------------------------------

    def _invariants(self):
        return [
            (self.genera[v], self.legs_at(v), self.valence(v))
            for v in range(self.n_vertices)
        ]

    def _relabel(self, perm):
        """perm[v] = new label of vertex v."""
        inv = [0] * self.n_vertices
        for v, w in enumerate(perm):
            inv[w] = v
        genera = tuple(self.genera[inv[w]] for w in range(self.n_vertices))
        legs = tuple(perm[v] for v in self.legs)
        edges = tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in self.edges))
        return genera, legs, edges

    def _groups(self):
        inv = self._invariants()
        groups: dict = {}
        for v, key in enumerate(inv):
            groups.setdefault(key, []).append(v)
        return [groups[k] for k in sorted(groups)]

    def _canonical_perms(self):
        """Relabelings sending invariant classes to sorted label blocks."""
        members = self._groups()
        blocks = []
        pos = 0
        for m in members:
            blocks.append(range(pos, pos + len(m)))
            pos += len(m)
        for parts in product(*(permutations(b) for b in blocks)):
            perm = [0] * self.n_vertices
            for orig, img in zip(members, parts):
                for v, w in zip(orig, img):
                    perm[v] = w
            yield perm

    def _candidate_perms(self):
        """Vertex permutations preserving (genus, legs, valence) classes."""
        for parts in product(*(permutations(m) for m in self._groups())):
            perm = [0] * self.n_vertices
            for orig, img in zip(self._groups(), parts):
                for v, w in zip(orig, img):
                    perm[v] = w
            yield perm

    def canonical_key(self):
        """Two graphs have equal keys iff isomorphic (legs labeled)."""
        return min(self._relabel(p) for p in self._canonical_perms())

    def canonical(self) -> "StableGraph":
        return StableGraph(*self.canonical_key())

    def automorphism_count(self) -> int:
        """|Aut|: vertex symmetries times parallel-edge and loop swaps.

        For every compatible vertex permutation the half-edge freedom is
        m! per parallel class and m! 2^m per loop class, so the total is
        (#compatible vertex permutations) * that product.
        """
        base = self._relabel(list(range(self.n_vertices)))
        nperm = sum(1 for p in self._candidate_perms() if self._relabel(p) == base)
        mult: dict = {}
        for e in self.edges:
            mult[e] = mult.get(e, 0) + 1
        count = nperm
        for (a, b), m in mult.items():
            count *= factorial(m)
            if a == b:
                count *= 2**m
        return count

    def automorphism_count_bruteforce(self) -> int:
        """Count automorphisms by explicit half-edge permutation search.

        Half-edges of edge k are (2k, 2k+1); legs are fixed pointwise.
        Only feasible for small graphs (<= 8 non-leg half-edges).
        """
        E = self.n_edges
        halves = list(range(2 * E))
        at = {}
        for k, (a, b) in enumerate(self.edges):
            at[2 * k] = a
            at[2 * k + 1] = b
        mate = {2 * k: 2 * k + 1 for k in range(E)}
        mate.update({2 * k + 1: 2 * k for k in range(E)})
        count = 0
        for pi in permutations(halves):
            ok = True
            for h in halves:
                if pi[mate[h]] != mate[pi[h]]:
                    ok = False
                    break
            if not ok:
                continue
            sigma = {}
            for h in halves:
                v, w = at[h], at[pi[h]]
                if sigma.setdefault(v, w) != w:
                    ok = False
                    break
            if not ok:
                continue
            for v in range(self.n_vertices):
                sigma.setdefault(v, v)
            if sorted(sigma.values()) != list(range(self.n_vertices)):
                continue
            if any(self.genera[v] != self.genera[sigma[v]] for v in range(self.n_vertices)):
                continue
            if any(sigma[self.legs[i]] != self.legs[i] for i in range(self.n_legs)):
                continue
            count += 1
        return count

    # -- degeneration moves ------------------------------------------------

    def degenerations(self):
        """All one-edge degenerations (not deduplicated)."""
        for v in range(self.n_vertices):
            gv = self.genera[v]
            if gv >= 1:
                genera = list(self.genera)
                genera[v] = gv - 1
                yield StableGraph(genera, self.legs, self.edges + ((v, v),))
            # split v into v (side 0) and a new vertex (side 1)
            legs_here = [i for i, w in enumerate(self.legs) if w == v]
            plain, loops, others = [], [], []
            for k, (a, b) in enumerate(self.edges):
                if a == v and b == v:
                    loops.append(k)
                elif a == v or b == v:
                    plain.append(k)
                else:
                    others.append(k)
            new = self.n_vertices
            for g1 in range(gv + 1):
                g2 = gv - g1
                for leg_sides in product((0, 1), repeat=len(legs_here)):
                    for plain_sides in product((0, 1), repeat=len(plain)):
                        for loop_sides in product((0, 1, 2), repeat=len(loops)):
                            genera = list(self.genera) + [g2]
                            genera[v] = g1
                            legs = list(self.legs)
                            for i, s in zip(legs_here, leg_sides):
                                legs[i] = v if s == 0 else new
                            edges = [self.edges[k] for k in others]
                            for k, s in zip(plain, plain_sides):
                                a, b = self.edges[k]
                                other = b if a == v else a
                                edges.append((other, v if s == 0 else new))
                            for k, s in zip(loops, loop_sides):
                                if s == 0:
                                    edges.append((v, v))
                                elif s == 2:
                                    edges.append((new, new))
                                else:
                                    edges.append((v, new))
                            edges.append((v, new))
                            g = StableGraph(genera, legs, edges)
                            if g.is_stable():
                                yield g

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "genera": list(self.genera),
            "legs": {str(i + 1): v for i, v in enumerate(self.legs)},
            "edges": [list(e) for e in self.edges],
        }

    @classmethod
    def from_json(cls, data: dict) -> "StableGraph":
        legs = [0] * len(data["legs"])
        for mark, v in data["legs"].items():
            legs[int(mark) - 1] = v
        return cls(data["genera"], legs, [tuple(e) for e in data["edges"]])

    def __eq__(self, other):
        return (
            isinstance(other, StableGraph)
            and self.genera == other.genera
            and self.legs == other.legs
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.genera, self.legs, self.edges))

    def __repr__(self):
        return "StableGraph(genera=%r, legs=%r, edges=%r)" % (
            self.genera,
            self.legs,
            self.edges,
        )


@dataclass(frozen=True)
class GraphRecord:
    graph: StableGraph
    aut_count: int
    h1: int


def smooth_graph(g: int, n: int) -> StableGraph:
    return StableGraph((g,), (0,) * n, ())


@lru_cache(maxsize=None)
def _enumerate_keys(g: int, n: int, max_edges: int):
    if 2 * g - 2 + n <= 0:
        raise ValueError("unstable (g, n)")
    level = {smooth_graph(g, n).canonical_key()}
    seen = set(level)
    for _ in range(max_edges):
        nxt = set()
        for key in level:
            for h in StableGraph(*key).degenerations():
                k = h.canonical_key()
                if k not in seen:
                    seen.add(k)
                    nxt.add(k)
        level = nxt
        if not level:
            break
    return tuple(sorted(seen))


def enumerate_stable_graphs(g: int, n: int, max_edges: int | None = None):
    """One GraphRecord per isomorphism class, with |Aut| and h^1.

    ``max_edges`` truncates the enumeration at that many edges (the full
    range is 3g-3+n); the Pixton degree-d sum only ever needs d edges.
    """
    cap = 3 * g - 3 + n
    if max_edges is None or max_edges > cap:
        max_edges = cap
    max_edges = max(max_edges, 0)
    records = []
    for key in _enumerate_keys(g, n, max_edges):
        graph = StableGraph(*key)
        records.append(
            GraphRecord(graph=graph, aut_count=graph.automorphism_count(), h1=graph.h1)
        )
    return records


def canonical_form(graph: StableGraph):
    return graph.canonical_key()


def automorphism_count(graph: StableGraph) -> int:
    return graph.automorphism_count()
