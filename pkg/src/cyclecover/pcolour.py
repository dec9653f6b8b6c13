"""Petersen colourings: verification, search, balance, and pullback covers.

A Petersen colouring maps every edge of g to an edge of the fixed reference
Petersen graph P (see ``families.petersen`` for the numbering) so that the
three edges at any vertex of g land on the three edges at some vertex of P.
Pulling back a cycle cover of P along such a map gives a cycle cover of g
whose length is the fiber-weighted length of the P-cover.
"""

from __future__ import annotations

from dataclasses import dataclass

from .covers import CycleCover, decompose_even_subgraph, validate
from .constructions import ConstructionResult
from .errors import Aborted, BadLine, HasParallelEdges, PartialAssignment, PreimageNotEven
from .families import petersen
from .graphs import CubicGraph
from .solvers import _CircuitSpace, _CoverEngine

REFERENCE = petersen()

# the three edges at each vertex of P; a valid colouring sends every vertex
# star of g onto one of these
_P_STARS = tuple(frozenset(REFERENCE.incident_edges[v]) for v in range(REFERENCE.n))
_P_STAR_SET = frozenset(_P_STARS)


@dataclass(frozen=True)
class PetersenColouring:
    """Edge map ``assignment[e of g] = edge of P``."""

    assignment: tuple

    def fiber_sizes(self):
        out = [0] * REFERENCE.m
        for p in self.assignment:
            out[p] += 1
        return tuple(out)


def verify_petersen_colouring(g: CubicGraph, colouring: PetersenColouring):
    """(True, None) if valid, else (False, first violating vertex)."""
    assignment = colouring.assignment
    if len(assignment) != g.m or any(a is None for a in assignment):
        raise PartialAssignment("assignment must cover every edge")
    for v in range(g.n):
        images = frozenset(assignment[e] for e in g.incident_edges[v])
        if images not in _P_STAR_SET:
            return False, v
    return True, None


def find_petersen_colouring(g: CubicGraph, node_limit=None):
    """Backtracking search for a Petersen colouring; None if none exists.

    Deterministic: always branches on the edge with the most constrained
    endpoints, trying reference edges in increasing order.
    """
    m = g.m
    assignment = [None] * m
    assigned_at = [0] * g.n  # count of coloured edges at each vertex
    nodes = [0]

    def candidates(e):
        u, v = g.edges[e]
        cands = None
        for x in (u, v):
            done = [assignment[f] for f in g.incident_edges[x] if f != e and assignment[f] is not None]
            if not done:
                continue
            opts = set()
            for star in _P_STARS:
                if all(p in star for p in done):
                    opts.update(star - set(done))
            cands = opts if cands is None else (cands & opts)
        if cands is None:
            cands = set(range(REFERENCE.m))
        return sorted(cands)

    def pick():
        best, key = -1, None
        for e in range(m):
            if assignment[e] is not None:
                continue
            u, v = g.edges[e]
            k = (-(assigned_at[u] + assigned_at[v]), e)
            if key is None or k < key:
                key, best = k, e
        return best

    def rec():
        e = pick()
        if e == -1:
            return True
        u, v = g.edges[e]
        for p in candidates(e):
            nodes[0] += 1
            if node_limit is not None and nodes[0] > node_limit:
                raise Aborted(nodes=nodes[0])
            assignment[e] = p
            assigned_at[u] += 1
            assigned_at[v] += 1
            ok = True
            for x in (u, v):
                if assigned_at[x] == 3:
                    images = frozenset(assignment[f] for f in g.incident_edges[x])
                    if images not in _P_STAR_SET:
                        ok = False
                        break
            if ok and rec():
                return True
            assignment[e] = None
            assigned_at[u] -= 1
            assigned_at[v] -= 1
        return False

    if rec():
        return PetersenColouring(tuple(assignment))
    return None


def is_balanced(colouring: PetersenColouring, m: int) -> bool:
    """True iff all 15 fibers have size m/15."""
    fibers = colouring.fiber_sizes()
    return m % 15 == 0 and all(f == m // 15 for f in fibers)


def pullback_cover(g: CubicGraph, colouring: PetersenColouring,
                   cover_of_p: CycleCover) -> CycleCover:
    """Preimage of each circuit of a P-cover, decomposed into circuits of g."""
    ok, bad = verify_petersen_colouring(g, colouring)
    if not ok:
        raise PreimageNotEven(f"colouring violates the star condition at vertex {bad}")
    report = validate(cover_of_p, REFERENCE)
    if not report.ok:
        raise ValueError(f"not a valid cover of the reference graph: {report.problems}")
    circuits = []
    for circ in cover_of_p.circuits:
        pset = circ.edge_set
        pre = [e for e in range(g.m) if colouring.assignment[e] in pset]
        try:
            circuits.extend(decompose_even_subgraph(g, pre))
        except ValueError as exc:
            raise PreimageNotEven(str(exc)) from exc
    cover = CycleCover.of(circuits)
    fibers = colouring.fiber_sizes()
    w = cover_of_p.edge_weight(REFERENCE.m)
    assert cover.length == sum(w[e] * fibers[e] for e in range(REFERENCE.m))
    return cover


def _optimal_p_covers():
    """All shortest covers of the reference Petersen graph, cached."""
    global _P_COVERS
    if _P_COVERS is None:
        space = _CircuitSpace(REFERENCE)
        eng = _CoverEngine(REFERENCE, space, coverage=1, cap=2)
        seen = {}

        def collect(chosen):
            key = tuple(sorted(chosen))
            if key not in seen:
                from .covers import trace_circuit
                seen[key] = CycleCover.of(trace_circuit(REFERENCE, space.elists[i]) for i in chosen)

        eng.search("all", bound=21, collect=collect)
        _P_COVERS = tuple(sorted(seen.values(), key=lambda c: tuple(x.edges for x in c.circuits)))
    return _P_COVERS


_P_COVERS = None


def best_pullback_cover(g: CubicGraph, colouring: PetersenColouring,
                        node_limit=None) -> ConstructionResult:
    """Minimal pullback over all shortest covers of P.

    Bound: 7m/5 for balanced colourings; strictly below 7m/5, i.e. at most
    ceil(7m/5) - 1, otherwise (a 9-circuit of P carries more than the average
    fiber mass, and every 9-circuit is the weight-1 set of a shortest cover).
    """
    ok, bad = verify_petersen_colouring(g, colouring)
    if not ok:
        raise PreimageNotEven(f"colouring violates the star condition at vertex {bad}")
    fibers = colouring.fiber_sizes()
    best = None
    for cover_p in _optimal_p_covers():
        w = cover_p.edge_weight(REFERENCE.m)
        length = sum(w[e] * fibers[e] for e in range(REFERENCE.m))
        if best is None or length < best[0]:
            best = (length, cover_p)
    length, cover_p = best
    cover = pullback_cover(g, colouring, cover_p)
    assert cover.length == length
    m = g.m
    balanced = is_balanced(colouring, m)
    bound = 7 * m // 5 if balanced else -(-7 * m // 5) - 1
    report = validate(cover, g)
    if not report.ok:
        raise AssertionError(f"pullback is not a valid cover: {report.problems}")
    if cover.length > bound:
        raise AssertionError(f"pullback bound violated: {cover.length} > {bound}")
    return ConstructionResult(cover, bound, "petersen-colouring",
                              {"balanced": balanced, "p_cover": cover_p,
                               "fiber_sizes": fibers})


# --------------------------------------------------------------------------
# colouring file format: one line per edge, "u v -> p q"
# --------------------------------------------------------------------------

def format_colouring(g: CubicGraph, colouring: PetersenColouring) -> str:
    lines = []
    for e in range(g.m):
        u, v = sorted(g.edges[e])
        p, q = sorted(REFERENCE.edges[colouring.assignment[e]])
        lines.append(f"{u} {v} -> {p} {q}")
    return "\n".join(lines) + "\n"


def parse_colouring(g: CubicGraph, text: str) -> PetersenColouring:
    if g.has_parallel_edges:
        raise HasParallelEdges("the colouring file format needs a simple graph")
    edge_id = {tuple(sorted(uv)): e for e, uv in enumerate(g.edges)}
    p_id = {tuple(sorted(uv)): e for e, uv in enumerate(REFERENCE.edges)}
    assignment = [None] * g.m
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace("->", " ").split()
        if len(parts) != 4:
            raise BadLine(f"line {lineno}: expected 'u v -> p q'")
        try:
            u, v, p, q = (int(x) for x in parts)
        except ValueError as exc:
            raise BadLine(f"line {lineno}: non-integer field") from exc
        e = edge_id.get((min(u, v), max(u, v)))
        pe = p_id.get((min(p, q), max(p, q)))
        if e is None:
            raise BadLine(f"line {lineno}: {u} {v} is not an edge of the graph")
        if pe is None:
            raise BadLine(f"line {lineno}: {p} {q} is not an edge of the reference graph")
        assignment[e] = pe
    if any(a is None for a in assignment):
        raise PartialAssignment("file does not colour every edge")
    return PetersenColouring(tuple(assignment))
