"""Exact solvers: circuits, covers, matchings, colourings, connectivity search.

Everything here is exhaustive or branch-and-bound with proofs by search
completion; node limits abort a search (``NodeLimitExceeded``) and are never
conflated with a proven negative answer.  All searches use fixed variable and
value orders, so results are deterministic for a given graph.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .covers import Circuit, CycleCover, KCdc, decompose_even_subgraph, trace_circuit
from .errors import (
    Bridged,
    NodeLimitExceeded,
    NoThreePaths,
    NoTwoFactor,
    Unsupported,
)
from .graphs import CubicGraph, Multigraph, bridges, is_connected


# --------------------------------------------------------------------------
# circuit enumeration
# --------------------------------------------------------------------------

class _CircuitSpace:
    """All simple circuits of a graph, as parallel arrays of bitmasks.

    Order: increasing (length, sorted edge tuple); this is also the canonical
    candidate order of the cover engines, where trying short circuits first
    keeps the lower bound tight.  ``by_edge[e]`` lists the circuits through
    edge ``e`` in that order.
    """

    __slots__ = ("g", "masks", "vmasks", "elists", "vlists", "lengths", "by_edge")

    def __init__(self, g: Multigraph):
        self.g = g
        raw = _raw_circuits(g)
        raw.sort(key=lambda t: (len(t[0]), t[0]))
        self.elists = [t[0] for t in raw]
        self.vlists = [t[1] for t in raw]
        self.lengths = [len(t[0]) for t in raw]
        self.masks = [_mask(t[0]) for t in raw]
        self.vmasks = [_mask(t[1]) for t in raw]
        by_edge = [[] for _ in range(g.m)]
        for i, edges in enumerate(self.elists):
            for e in edges:
                by_edge[e].append(i)
        self.by_edge = [tuple(lst) for lst in by_edge]

    def circuit(self, i: int) -> Circuit:
        return trace_circuit(self.g, self.elists[i])

    def __len__(self):
        return len(self.masks)


def _mask(ids):
    x = 0
    for i in ids:
        x |= 1 << i
    return x


def _raw_circuits(g: Multigraph):
    """Each simple circuit once, as (sorted edge tuple, vertex tuple)."""
    adj = [[] for _ in range(g.n)]
    for e, (u, v) in enumerate(g.edges):
        if u == v:
            continue  # loops are never part of a circuit
        adj[u].append((e, v))
        adj[v].append((e, u))
    for lst in adj:
        lst.sort()
    out = []

    def dfs(cur, e0, u0, onpath_mask, path_edges, path_verts):
        for e, w in adj[cur]:
            if e <= e0:
                continue
            if w == u0:
                out.append((tuple(sorted(path_edges + [e])), tuple(path_verts)))
                continue
            if onpath_mask >> w & 1:
                continue
            path_edges.append(e)
            path_verts.append(w)
            dfs(w, e0, u0, onpath_mask | (1 << w), path_edges, path_verts)
            path_edges.pop()
            path_verts.pop()

    for e0, (u0, v0) in enumerate(g.edges):
        if u0 == v0:
            continue
        dfs(v0, e0, u0, (1 << u0) | (1 << v0), [e0], [u0, v0])
    return out


def enumerate_circuits(g: Multigraph):
    """All circuits in canonical form, sorted by (length, edge ids)."""
    space = _CircuitSpace(g)
    return [space.circuit(i) for i in range(len(space))]


# --------------------------------------------------------------------------
# the cover search engine (shortest covers, CDCs, enumeration)
# --------------------------------------------------------------------------

class _SearchStop(Exception):
    pass


class _CoverEngine:
    """Branch and bound over circuit multisets.

    ``coverage`` is the per-edge target (1 for covers, 2 for double covers),
    ``cap`` the per-edge maximum.  Branches on the most-weighted deficient
    edge; candidate circuits are tried longest first; a tried candidate is
    banned for the rest of the node so every multiset is visited once.
    The lower bound is  (1/2) * sum_v nexteven(max(4, w(v) + deficit(v))).
    """

    def __init__(self, g, space, coverage, cap, node_limit=None, by_edge=None):
        self.g = g
        self.space = space
        self.coverage = coverage
        self.cap = cap
        self.node_limit = node_limit
        self.by_edge = by_edge if by_edge is not None else space.by_edge
        m, n = g.m, g.n
        self.w = [0] * m
        self.wv = [0] * n
        self.deficit = [coverage * g.degree(v) for v in range(n)]
        self.contrib = [self._c(v) for v in range(n)]
        self.total = sum(self.contrib)
        self.short = coverage * m  # sum of remaining edge deficits
        self.length = 0
        self.sat_mask = 0
        self.vfull_mask = 0
        self.banned = [False] * len(space.masks)
        self.chosen = []
        self.nodes = 0

    def _c(self, v):
        x = self.wv[v] + self.deficit[v]
        if x < 4:
            x = 4
        return x + (x & 1)

    def lower_bound(self):
        return self.total // 2

    # -- state updates -----------------------------------------------------

    def _apply(self, ci, sign):
        g = self.g
        coverage, cap = self.coverage, self.cap
        wv, w, deficit, contrib = self.wv, self.w, self.deficit, self.contrib
        for v in self.space.vlists[ci]:
            wv[v] += 2 * sign
        for e in self.space.elists[ci]:
            old = w[e]
            w[e] = new = old + sign
            if sign > 0:
                if old < coverage:
                    u, x = g.edges[e]
                    deficit[u] -= 1
                    deficit[x] -= 1
                    self.short -= 1
                if new == cap:
                    self.sat_mask |= 1 << e
            else:
                if new < coverage:
                    u, x = g.edges[e]
                    deficit[u] += 1
                    deficit[x] += 1
                    self.short += 1
                if old == cap:
                    self.sat_mask &= ~(1 << e)
        lim = 3 * cap - 1
        for v in self.space.vlists[ci]:
            c = self._c(v)
            self.total += c - contrib[v]
            contrib[v] = c
            if sign > 0 and wv[v] >= lim:
                self.vfull_mask |= 1 << v
            elif sign < 0 and wv[v] < lim:
                self.vfull_mask &= ~(1 << v)
        self.length += sign * self.space.lengths[ci]

    def add(self, ci):
        self.chosen.append(ci)
        self._apply(ci, +1)

    def remove(self):
        ci = self.chosen.pop()
        self._apply(ci, -1)

    def seed_feasible(self, ci):
        mask = self.space.masks[ci]
        if mask & self.sat_mask:
            return False
        if self.space.vmasks[ci] & self.vfull_mask:
            return False
        return True

    def _pick_edge(self):
        w, coverage = self.w, self.coverage
        wv = self.wv
        best, key = -1, None
        for e in range(self.g.m):
            if w[e] < coverage:
                u, v = self.g.edges[e]
                k = -(wv[u] + wv[v])
                if key is None or k < key:
                    key, best = k, e
        return best

    def _dead_vertex(self, ci):
        # a saturated vertex must have no deficient edge left
        lim = 3 * self.cap
        for v in self.space.vlists[ci]:
            if self.wv[v] == lim:
                for e in self.g.incident_edges[v]:
                    if self.w[e] < self.coverage:
                        return True
        return False

    # -- search modes --------------------------------------------------------

    def search(self, mode, bound, collect=None):
        """mode 'first': return the first cover of length <= bound in the fixed
        DFS order, or None when none exists (complete proof).

        mode 'all': call ``collect(chosen)`` for every cover of length exactly
        ``bound`` and return None.
        """
        self.bound = bound
        self.best = None
        self._collect = collect
        try:
            self._dfs(mode == "first")
        except _SearchStop:
            pass
        return self.best

    def _dfs(self, first_mode):
        if self.short == 0:
            if first_mode:
                self.best = tuple(self.chosen)
                raise _SearchStop
            if self.length == self.bound:
                self._collect(tuple(self.chosen))
            return
        e = self._pick_edge()
        rem = self.bound - self.length
        unban = []
        lengths = self.space.lengths
        masks = self.space.masks
        vmasks = self.space.vmasks
        banned = self.banned
        try:
            for ci in self.by_edge[e]:
                if lengths[ci] > rem or banned[ci]:
                    continue
                if masks[ci] & self.sat_mask:
                    continue
                if vmasks[ci] & self.vfull_mask:
                    continue
                self.nodes += 1
                if self.node_limit is not None and self.nodes > self.node_limit:
                    raise NodeLimitExceeded(nodes=self.nodes)
                self.add(ci)
                if self.total // 2 <= self.bound and not self._dead_vertex(ci):
                    self._dfs(first_mode)
                self.remove()
                banned[ci] = True
                unban.append(ci)
        finally:
            for ci in unban:
                banned[ci] = False


def _cover_from_indices(g, space, indices):
    return CycleCover.of(trace_circuit(g, space.elists[i]) for i in indices)


@dataclass(frozen=True)
class SccResult:
    length: int
    cover: CycleCover
    optimal: bool
    weight_cap_used: int
    nodes: int


def _check_coverable(g):
    if not is_connected(g):
        raise ValueError("graph must be connected")
    b = bridges(g)
    if b:
        raise Bridged(f"no cycle cover exists: bridge(s) at edges {b}")


def _seeded_cdc(g, space, seed_circuits, node_limit=None):
    """Circuit-form CDC through the given circuits, or None; shares ``space``."""
    eng = _CoverEngine(g, space, coverage=2, cap=2, node_limit=node_limit)
    index_of = {space.elists[i]: i for i in range(len(space))}
    seeds = []
    for c in seed_circuits:
        ci = index_of.get(tuple(sorted(c.edges)))
        if ci is None or not eng.seed_feasible(ci):
            return None, eng.nodes
        eng.add(ci)
        seeds.append(ci)
    found = eng.search("first", bound=2 * g.m)
    return found, eng.nodes


class _LiteSpace:
    """Same interface as _CircuitSpace over an explicit circuit list."""

    __slots__ = ("g", "masks", "vmasks", "elists", "vlists", "lengths", "by_edge")

    def __init__(self, g, walks):
        walks = sorted(walks, key=lambda t: (len(t[0]), tuple(sorted(t[0]))))
        self.g = g
        self.elists = [tuple(sorted(t[0])) for t in walks]
        self.vlists = [tuple(t[1]) for t in walks]
        self.lengths = [len(t[0]) for t in walks]
        self.masks = [_mask(t[0]) for t in walks]
        self.vmasks = [_mask(t[1]) for t in walks]
        by_edge = [[] for _ in range(g.m)]
        for i, edges in enumerate(self.elists):
            for e in edges:
                by_edge[e].append(i)
        self.by_edge = [tuple(lst) for lst in by_edge]


def _alternating_circuits(g, f_edges):
    """All circuits alternating between matching edges and 2-factor edges.

    These are the only circuits that can complete a CDC through the 2-factor
    (each visit of a remaining circuit must use the vertex's matching edge).
    """
    f_adj = [[] for _ in range(g.n)]
    m_edge = [-1] * g.n
    for e, (u, v) in enumerate(g.edges):
        if e in f_edges:
            f_adj[u].append((e, v))
            f_adj[v].append((e, u))
        else:
            m_edge[u] = e
            m_edge[v] = e
    out = {}

    def close_or_extend(cur, e0, u0, visited, path_e, path_v):
        # arrived at cur via its matching edge; continue along a factor edge
        for f, w in f_adj[cur]:
            if w == u0:
                key = frozenset(path_e + [f])
                if key not in out:
                    out[key] = (tuple(path_e + [f]), tuple(path_v))
                continue
            if visited >> w & 1:
                continue
            e2 = m_edge[w]
            if e2 <= e0:
                continue
            x = g.other_end(e2, w)
            if visited >> x & 1 or x == u0:
                continue
            path_e.append(f)
            path_e.append(e2)
            path_v.append(w)
            path_v.append(x)
            close_or_extend(x, e0, u0, visited | 1 << w | 1 << x, path_e, path_v)
            path_v.pop()
            path_v.pop()
            path_e.pop()
            path_e.pop()

    for e0, (u0, v0) in enumerate(g.edges):
        if e0 in f_edges or u0 == v0:
            continue
        close_or_extend(v0, e0, u0, (1 << u0) | (1 << v0), [e0], [u0, v0])
    return list(out.values())


def _two_regular_avoiding(g, x):
    """All 2-regular edge sets covering exactly the vertices other than x."""
    usable = [e for e in range(g.m) if x not in g.edges[e]]
    deg = [0] * g.n
    incident_left = [0] * g.n
    for e in usable:
        u, v = g.edges[e]
        incident_left[u] += 1
        incident_left[v] += 1
    out = []

    def rec(i, chosen):
        if i == len(usable):
            out.append(frozenset(chosen))
            return
        e = usable[i]
        u, v = g.edges[e]
        # include e
        if deg[u] < 2 and deg[v] < 2:
            deg[u] += 1
            deg[v] += 1
            incident_left[u] -= 1
            incident_left[v] -= 1
            if deg[u] + incident_left[u] >= 2 and deg[v] + incident_left[v] >= 2:
                chosen.append(e)
                rec(i + 1, chosen)
                chosen.pop()
            incident_left[u] += 1
            incident_left[v] += 1
            deg[u] -= 1
            deg[v] -= 1
        # exclude e
        incident_left[u] -= 1
        incident_left[v] -= 1
        if deg[u] + incident_left[u] >= 2 and deg[v] + incident_left[v] >= 2:
            rec(i + 1, chosen)
        incident_left[u] += 1
        incident_left[v] += 1

    rec(0, [])
    return out


def _optimal_cover(g, cap, node_limit=None, space_cache=None, seed_order=None):
    """Optimal length with a witness cover, by structure then deepening.

    Length 4m/3 covers are exactly CDCs through a 2-factor minus that factor
    (completed by matching/factor-alternating circuits only), and 4m/3 + 1
    covers come from a 2-regular subgraph missing one vertex; both stages are
    exhaustive, so failure proves the level empty.  Longer optima fall back to
    iterative deepening of the direct branch and bound over all circuits.
    Returns (length, CycleCover, nodes).
    """
    nodes = 0
    base = 2 * g.n  # = ceil(4m/3) for a cubic graph

    def budget():
        return None if node_limit is None else node_limit - nodes

    # 4m/3: some perfect matching complement extends to a CDC
    for pm in enumerate_perfect_matchings(g):
        f = frozenset(range(g.m)) - pm
        comps = decompose_even_subgraph(g, f)
        walks = [(list(c.edges), list(c.vertices)) for c in comps]
        lite = _LiteSpace(g, walks + _alternating_circuits(g, f))
        eng = _CoverEngine(g, lite, coverage=2, cap=2, node_limit=budget())
        seed_keys = {tuple(sorted(c.edges)) for c in comps}
        seeds = [i for i, el in enumerate(lite.elists) if el in seed_keys]
        for i in seeds:
            assert eng.seed_feasible(i)
            eng.add(i)
        found = eng.search("first", bound=2 * g.m)
        nodes += eng.nodes
        if found is not None:
            rest = list(found)
            for i in seeds:
                rest.remove(i)
            cover = CycleCover.of(trace_circuit(g, lite.elists[i]) for i in rest)
            assert cover.length == base
            return base, cover, nodes

    def full_space():
        if space_cache is not None and space_cache:
            return space_cache[0]
        sp = _CircuitSpace(g)
        if space_cache is not None:
            space_cache.append(sp)
        return sp

    # 4m/3 + 1: weight-1 edges form a 2-regular subgraph missing one vertex
    space = full_space()
    for x in range(g.n):
        for c_edges in _two_regular_avoiding(g, x):
            comps = decompose_even_subgraph(g, c_edges)
            found, used = _seeded_cdc(g, space, comps, budget())
            nodes += used
            if found is not None:
                rest = _multiset_minus(space, found, comps)
                cover = CycleCover.of(trace_circuit(g, space.elists[i]) for i in rest)
                assert cover.length == base + 1
                return base + 1, cover, nodes

    # longer optima: direct iterative deepening
    by_edge = None
    if seed_order is not None:
        rng = random.Random(seed_order)
        by_edge = []
        for lst in space.by_edge:
            lst = list(lst)
            rng.shuffle(lst)
            by_edge.append(tuple(lst))
    target = base + 2
    while True:
        eng = _CoverEngine(g, space, coverage=1, cap=cap, node_limit=budget(), by_edge=by_edge)
        found = eng.search("first", bound=target)
        nodes += eng.nodes
        if found is not None:
            if by_edge is not None:
                # witness must not depend on the shuffled exploration order
                eng = _CoverEngine(g, space, coverage=1, cap=cap, node_limit=budget())
                found = eng.search("first", bound=target)
                nodes += eng.nodes
            cover = _cover_from_indices(g, space, found)
            return target, cover, nodes
        if target > 2 * g.m * cap:
            raise AssertionError("no cover found below the trivial bound")
        target += 1


def _multiset_minus(space, cdc_indices, removed_circuits):
    """Indices of ``cdc_indices`` minus one copy of each removed circuit."""
    index_of = {}
    for i in cdc_indices:
        index_of.setdefault(space.elists[i], []).append(i)
    for c in removed_circuits:
        key = tuple(sorted(c.edges))
        lst = index_of.get(key)
        if not lst:
            raise AssertionError("removed circuit missing from the CDC")
        lst.pop()
    return tuple(sorted(i for lst in index_of.values() for i in lst))


def shortest_cycle_cover(g: CubicGraph, cap: int = 2, node_limit=None, seed_order=None) -> SccResult:
    """Minimum-length cycle cover subject to every edge weight <= cap.

    ``seed_order`` shuffles exploration in the deepening fallback only; the
    reported witness is re-derived canonically there, so it never changes
    results.
    """
    if cap < 2:
        raise ValueError("no cycle cover of a cubic graph has all weights below 2")
    _check_coverable(g)
    best_len, cover, nodes = _optimal_cover(g, cap, node_limit, seed_order=seed_order)
    assert cover.length == best_len
    return SccResult(best_len, cover, True, cap, nodes)


@dataclass(frozen=True)
class WeightSpectrum:
    optimal_length: int
    per_edge: tuple
    n_optimal_covers: int


def edge_weight_spectrum(g: CubicGraph, cap: int = 2, node_limit=None) -> WeightSpectrum:
    """Weights attained per edge over all optimal covers (same cap and rules)."""
    if cap < 2:
        raise ValueError("no cycle cover of a cubic graph has all weights below 2")
    _check_coverable(g)
    cache = []
    best_len, _, nodes = _optimal_cover(g, cap, node_limit, space_cache=cache)
    space = cache[0] if cache else _CircuitSpace(g)
    eng2 = _CoverEngine(g, space, coverage=1, cap=cap,
                        node_limit=None if node_limit is None else node_limit - nodes)
    attained = [set() for _ in range(g.m)]
    seen = set()

    def collect(chosen):
        key = tuple(sorted(chosen))
        if key in seen:
            return
        seen.add(key)
        w = [0] * g.m
        for ci in chosen:
            for e in space.elists[ci]:
                w[e] += 1
        for e in range(g.m):
            attained[e].add(w[e])

    eng2.search("all", bound=best_len, collect=collect)
    return WeightSpectrum(best_len, tuple(frozenset(s) for s in attained), len(seen))


# --------------------------------------------------------------------------
# perfect matchings, tau, oddness
# --------------------------------------------------------------------------

def enumerate_perfect_matchings(g: Multigraph):
    """All perfect matchings as frozensets of edge ids, deterministic order."""
    res = []
    matched = [False] * g.n

    def rec(chosen):
        v = -1
        for x in range(g.n):
            if not matched[x]:
                v = x
                break
        if v == -1:
            res.append(frozenset(chosen))
            return
        for e in g.incident_edges[v]:
            u, w = g.edges[e]
            if u == w:
                continue
            other = w if u == v else u
            if other == v or matched[other]:
                continue
            matched[v] = matched[other] = True
            chosen.append(e)
            rec(chosen)
            chosen.pop()
            matched[v] = matched[other] = False

    rec([])
    res.sort(key=lambda s: tuple(sorted(s)))
    return res


@dataclass(frozen=True)
class TauResult:
    """Perfect matching index with a witness; ``tau is None`` means AboveLimit."""

    tau: int | None
    matchings: tuple

    @property
    def above_limit(self) -> bool:
        return self.tau is None


def perfect_matching_index(g: CubicGraph, limit: int = 5) -> TauResult:
    """Smallest k <= limit with k perfect matchings covering E(g)."""
    pms = enumerate_perfect_matchings(g)
    if not pms:
        return TauResult(None, ())
    m = g.m
    masks = [_mask(pm) for pm in pms]
    per_edge = [tuple(i for i, mk in enumerate(masks) if mk >> e & 1) for e in range(m)]
    if any(not lst for lst in per_edge):
        return TauResult(None, ())
    full = (1 << m) - 1
    size = g.n // 2

    def cover_with(k):
        banned = [False] * len(masks)
        out = []

        def rec(covmask, depth):
            if covmask == full:
                return True
            if depth == k:
                return False
            missing = m - bin(covmask).count("1")
            if missing > (k - depth) * size:
                return False
            x = ~covmask & full
            e = (x & -x).bit_length() - 1
            unban = []
            found = False
            for ci in per_edge[e]:
                if banned[ci]:
                    continue
                out.append(ci)
                if rec(covmask | masks[ci], depth + 1):
                    found = True
                    break
                out.pop()
                banned[ci] = True
                unban.append(ci)
            for ci in unban:
                banned[ci] = False
            return found

        return out if rec(0, 0) else None

    for k in range(3, limit + 1):
        sol = cover_with(k)
        if sol is not None:
            return TauResult(k, tuple(pms[i] for i in sol))
    return TauResult(None, ())


def oddness(g: CubicGraph):
    """Minimum odd-component count over all 2-factors, with a witness.

    Among minimisers the witness has the fewest components in total, then is
    first in matching enumeration order.
    """
    pms = enumerate_perfect_matchings(g)
    if not pms:
        raise NoTwoFactor("graph has no perfect matching, hence no 2-factor")
    all_edges = frozenset(range(g.m))
    best = None
    for pm in pms:
        f = all_edges - pm
        comps = decompose_even_subgraph(g, f)
        odd = sum(1 for c in comps if len(c) % 2)
        key = (odd, len(comps))
        if best is None or key < best[0]:
            best = (key, f)
    return best[0][0], best[1]


# --------------------------------------------------------------------------
# circumference
# --------------------------------------------------------------------------

def circumference(g: Multigraph):
    """Exact longest circuit by anchored DFS with a reachability bound."""
    adj = [[] for _ in range(g.n)]
    for e, (u, v) in enumerate(g.edges):
        if u == v:
            continue
        adj[u].append((e, v))
        adj[v].append((e, u))
    for lst in adj:
        lst.sort()
    best = [0, None]

    def dfs(v0, cur, first_edge, visited_mask, path_edges, path_verts):
        for e, w in adj[cur]:
            if w == v0:
                # close only with a larger edge id, so each circuit is seen once
                if e > first_edge and len(path_edges) + 1 > best[0]:
                    best[0] = len(path_edges) + 1
                    best[1] = (tuple(path_edges + [e]), tuple(path_verts))
                continue
            if w < v0 or visited_mask >> w & 1:
                continue
            # extending to w gives a circuit of at most (path vertices + w) + free
            if len(path_edges) + 2 + _count_free(g, visited_mask | 1 << w, v0) <= best[0]:
                continue
            path_edges.append(e)
            path_verts.append(w)
            dfs(v0, w, first_edge, visited_mask | 1 << w, path_edges, path_verts)
            path_edges.pop()
            path_verts.pop()

    for v0 in range(g.n):
        if g.n - v0 <= best[0]:
            break
        for e, w in adj[v0]:
            if w < v0:
                continue
            dfs(v0, w, e, (1 << v0) | (1 << w), [e], [v0, w])
    if best[1] is None:
        return 0, None
    edges, verts = best[1]
    from .covers import circuit_from_walk

    return best[0], circuit_from_walk(edges, verts)


def _count_free(g, visited_mask, v0):
    # unvisited vertices with labels >= v0 (the only ones the path may still use)
    free = 0
    for v in range(v0 + 1, g.n):
        if not visited_mask >> v & 1:
            free += 1
    return free


# --------------------------------------------------------------------------
# cycle double cover search
# --------------------------------------------------------------------------

def find_cdc(g: CubicGraph, must_contain=(), k=None, two_factor_class=False, node_limit=None):
    """Search for a cycle double cover.

    Without ``k``: circuit-form search; ``must_contain`` pre-places circuits
    and the result is a ``CycleCover`` with every edge weight exactly 2, or
    ``None`` when the search space is exhausted (proven infeasible).

    With ``k``: searches for a k-class CDC (``KCdc``); classes may be empty.
    ``two_factor_class`` requires the last class to be a spanning 2-factor.
    """
    if k is None:
        if two_factor_class:
            raise Unsupported("a 2-factor class constraint needs the k-class search")
        space = _CircuitSpace(g)
        eng = _CoverEngine(g, space, coverage=2, cap=2, node_limit=node_limit)
        index_of = {tuple(space.elists[i]): i for i in range(len(space))}
        for c in must_contain:
            key = tuple(sorted(c.edges))
            ci = index_of.get(key)
            if ci is None:
                return None  # circuit not a circuit of g: nothing can contain it
            if not eng.seed_feasible(ci):
                return None
            eng.add(ci)
        found = eng.search("first", bound=2 * g.m)
        if found is None:
            return None
        return _cover_from_indices(g, space, found)
    if must_contain:
        raise Unsupported("must_contain is only available in the circuit-form search")
    return _kcdc_search(g, k, two_factor_class, node_limit)


def _kcdc_search(g: CubicGraph, k: int, two_factor_class: bool, node_limit=None):
    """Backtracking over per-edge class pairs with unit propagation.

    Every edge gets an unordered pair of the k classes; at each vertex every
    class must appear an even number of times among the six slots, and the
    designated 2-factor class (the last one) exactly twice.  Interchangeable
    classes are broken by first-use order.
    """
    if k < 2:
        raise Unsupported("k-CDC search needs k >= 2")
    m, n = g.m, g.n
    tf = k - 1 if two_factor_class else None
    pairs = [(a, b) for a in range(k) for b in range(a + 1, k)]
    pair_id = {p: i for i, p in enumerate(pairs)}
    assign = [None] * m
    counts = [[0] * k for _ in range(n)]
    left = [g.degree(v) for v in range(n)]
    nodes = [0]

    free_classes = [c for c in range(k) if c != tf]

    def vertex_ok(v):
        # all classes truly even once the vertex closed; 2-factor class == 2
        for c in range(k):
            if counts[v][c] % 2:
                return False
        if tf is not None and counts[v][tf] != 2:
            return False
        return True

    def forced_pair(v):
        odd = [c for c in range(k) if counts[v][c] % 2]
        if len(odd) != 2:
            return None
        if tf is not None:
            want_tf = counts[v][tf] % 2 == 1
            if want_tf and tf not in odd:
                return None
            if counts[v][tf] == 2 and tf in odd:
                return None
        return (odd[0], odd[1])

    def do_assign(e, p, trail):
        u, v = g.edges[e]
        a, b = p
        assign[e] = p
        trail.append(e)
        for x in (u, v):
            counts[x][a] += 1
            counts[x][b] += 1
            left[x] -= 1
        for x in (u, v):
            if tf is not None and counts[x][tf] > 2:
                return False
            if left[x] == 0 and not vertex_ok(x):
                return False
            if tf is not None and counts[x][tf] + left[x] < 2:
                return False
        return True

    def undo(trail, upto):
        while len(trail) > upto:
            e = trail.pop()
            a, b = assign[e]
            assign[e] = None
            u, v = g.edges[e]
            for x in (u, v):
                counts[x][a] -= 1
                counts[x][b] -= 1
                left[x] += 1

    def propagate(trail):
        # close every vertex with one open edge and a forced pair
        changed = True
        while changed:
            changed = False
            for v in range(n):
                if left[v] != 1:
                    continue
                e = next(e for e in g.incident_edges[v] if assign[e] is None)
                p = forced_pair(v)
                if p is None:
                    return False
                if not do_assign(e, p, trail):
                    return False
                changed = True
        return True

    def pick_edge():
        best_e, best_key = -1, None
        for e in range(m):
            if assign[e] is not None:
                continue
            u, v = g.edges[e]
            key = (left[u] + left[v], e)
            if best_key is None or key < best_key:
                best_key, best_e = key, e
        return best_e

    def max_used_free():
        mu = -1
        for e in range(m):
            p = assign[e]
            if p is None:
                continue
            for c in p:
                if c != tf and c > mu:
                    mu = c
        return mu

    def rec():
        e = pick_edge()
        if e == -1:
            return True
        mu = max_used_free()
        for p in pairs:
            a, b = p
            fa = [c for c in p if c != tf]
            # first-use order for interchangeable classes
            ok = True
            prev = mu
            for c in sorted(fa):
                if c > prev + 1:
                    ok = False
                    break
                prev = max(prev, c)
            if not ok:
                continue
            nodes[0] += 1
            if node_limit is not None and nodes[0] > node_limit:
                raise NodeLimitExceeded(nodes=nodes[0])
            trail = []
            if do_assign(e, p, trail) and propagate(trail) and rec():
                return True
            undo(trail, 0)
        return False

    if rec():
        classes = []
        for c in range(k):
            classes.append(frozenset(e for e in range(m) if c in assign[e]))
        return KCdc.of(classes)
    return None


# --------------------------------------------------------------------------
# disjoint paths in the contracted multigraph
# --------------------------------------------------------------------------

def three_disjoint_paths(mg: Multigraph, s: int, t: int):
    """Three edge-disjoint s-t paths of minimal total edge count.

    These are the contracted images of vertex-disjoint paths of the parent
    cubic graph: paths may share an intermediate vertex of the multigraph but
    never an edge.  Unit-capacity min-cost flow (successive shortest paths).
    """
    if s == t:
        raise ValueError("endpoints must differ")
    # arcs: (from, to, edge_id); cap 1 each; an optimal flow never uses both
    # directions of one edge (cancelling both lowers the cost).
    arcs = []
    for e, (u, v) in enumerate(mg.edges):
        if u == v:
            continue
        arcs.append([u, v, e, 0])
        arcs.append([v, u, e, 0])
    flow_total = 0
    for _ in range(3):
        # Bellman-Ford on the residual graph, cost +1 forward, -1 to cancel
        dist = {s: 0}
        pred = {}
        for _ in range(mg.n):
            improved = False
            for idx, (u, v, e, f) in enumerate(arcs):
                if f == 0 and u in dist and dist[u] + 1 < dist.get(v, 1 << 30):
                    dist[v] = dist[u] + 1
                    pred[v] = (idx, "use")
                    improved = True
                if f == 1 and v in dist and dist[v] - 1 < dist.get(u, 1 << 30):
                    dist[u] = dist[v] - 1
                    pred[u] = (idx, "cancel")
                    improved = True
            if not improved:
                break
        if t not in dist:
            raise NoThreePaths(f"only {flow_total} disjoint paths exist")
        v = t
        while v != s:
            idx, kind = pred[v]
            if kind == "use":
                arcs[idx][3] = 1
                v = arcs[idx][0]
            else:
                arcs[idx][3] = 0
                v = arcs[idx][1]
        flow_total += 1

    # net flow per edge id
    net = {}
    for u, v, e, f in arcs:
        if f:
            net[e] = (u, v) if e not in net else None
    used = {e: uv for e, uv in net.items() if uv is not None}
    paths = []
    for _ in range(3):
        path = []
        cur = s
        while cur != t:
            e = min(e for e, (u, v) in used.items() if u == cur)
            path.append(e)
            cur = used.pop(e)[1]
        paths.append(tuple(path))
    d = sum(len(p) for p in paths)
    return paths, d


# --------------------------------------------------------------------------
# 3-edge-colouring
# --------------------------------------------------------------------------

def edge_colouring_3(g: Multigraph):
    """Proper 3-edge-colouring as {edge: 1|2|3}, or None (proven impossible).

    Backtracking on the most-constrained edge; the first vertex's edges are
    fixed to colours 1,2,3, which is harmless up to colour permutation.
    """
    if g.loops:
        return None
    m = g.m
    colour = [0] * m
    used = [0] * g.n  # bitmask of colours at each vertex

    def set_colour(e, c):
        colour[e] = c
        u, v = g.edges[e]
        used[u] |= 1 << c
        used[v] |= 1 << c

    def clear_colour(e):
        c = colour[e]
        colour[e] = 0
        u, v = g.edges[e]
        used[u] &= ~(1 << c)
        used[v] &= ~(1 << c)

    def avail(e):
        u, v = g.edges[e]
        free = ~(used[u] | used[v])
        return [c for c in (1, 2, 3) if free >> c & 1]

    start = next((v for v in range(g.n) if g.degree(v) == 3), None)
    seeds = []
    if start is not None:
        for c, e in enumerate(g.incident_edges[start], start=1):
            seeds.append((e, c))

    def rec():
        best_e, best_av = -1, None
        for e in range(m):
            if colour[e]:
                continue
            av = avail(e)
            if not av:
                return False
            if best_av is None or len(av) < len(best_av):
                best_e, best_av = e, av
                if len(av) == 1:
                    break
        if best_e == -1:
            return True
        for c in best_av:
            set_colour(best_e, c)
            if rec():
                return True
            clear_colour(best_e)
        return False

    for e, c in seeds:
        if c not in avail(e):
            return None
        set_colour(e, c)
    if rec():
        return {e: colour[e] for e in range(m)}
    return None
