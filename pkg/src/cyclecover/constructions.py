"""Constructive pipelines: structural certificates in, short covers out.

Each construction returns a ``ConstructionResult`` whose cover is validated
against the input graph and whose length is checked against the claimed
bound, so a successful return is a machine-checked certificate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .covers import (
    Circuit,
    CycleCover,
    KCdc,
    decompose_even_subgraph,
    lift_cover,
    relabel_cover,
    trace_circuit,
    validate,
)
from .errors import (
    DoubledSetNotMatching,
    HypothesisViolated,
    LinksNotDisjoint,
    NoTwoFactorClass,
    NodeLimitExceeded,
    NotACover,
    NotContained,
    NotHamiltonian,
    NotTwoConnectedReduced,
    SharedMismatch,
    StrongCdcNotFound,
    TauTooLarge,
    TooLong,
)
from .graphs import (
    CubicGraph,
    contract_two_factor,
    cyclic_connectivity_at_least,
    edge_subgraph,
    is_bridgeless,
    is_connected,
    suppress_degree_two,
)
from .solvers import (
    circumference,
    edge_colouring_3,
    find_cdc,
    oddness,
    perfect_matching_index,
    three_disjoint_paths,
)


@dataclass(frozen=True)
class ConstructionResult:
    """A cover with the bound its construction guarantees and the inputs used."""

    cover: CycleCover
    claimed_bound: int
    theorem: str
    certificate: dict

    @property
    def length(self) -> int:
        return self.cover.length


def _as_circuits(g, c):
    if isinstance(c, Circuit):
        return (c,)
    if isinstance(c, (set, frozenset)):
        return decompose_even_subgraph(g, c)
    return tuple(c)


def _check_result(g, cover, bound, theorem, certificate) -> ConstructionResult:
    report = validate(cover, g)
    if not report.ok:
        raise AssertionError(f"{theorem} produced an invalid cover: {report.problems}")
    if cover.length > bound:
        raise AssertionError(f"{theorem} exceeded its bound: {cover.length} > {bound}")
    return ConstructionResult(cover, bound, theorem, certificate)


# --------------------------------------------------------------------------
# covers from CDCs and back
# --------------------------------------------------------------------------

def cover_from_cdc(g: CubicGraph, cdc, c) -> CycleCover:
    """Drop the circuits of the 2-regular subgraph ``c`` from a CDC.

    The remainder is a (1,2)-cover of length exactly 2m - |c|: edges of ``c``
    keep weight 1, all others weight 2.
    """
    if isinstance(cdc, KCdc):
        cdc = cdc.as_cover(g)
    removed = _as_circuits(g, c)
    rest = list(cdc.circuits)
    size = 0
    for circ in removed:
        if circ not in rest:
            raise NotContained(f"circuit {circ.edges} is not in the CDC")
        rest.remove(circ)
        size += len(circ)
    cover = CycleCover.of(rest)
    assert cover.length == 2 * g.m - size
    return cover


def extract_cdc_from_cover(g: CubicGraph, cover: CycleCover):
    """Recover the weight-1 subgraph and the CDC behind a very short cover.

    For covers of length 4m/3 + k with k in {0,1} the weight-1 edges form a
    2-regular subgraph missing exactly k vertices, and adding its circuits to
    the cover yields a CDC.
    """
    base = 2 * g.n  # 4m/3
    k = cover.length - base
    if k not in (0, 1):
        raise TooLong(f"length {cover.length} = 4m/3 + {k}; extraction needs k in {{0,1}}")
    ones = cover.weight_one_edges(g.m)
    circuits = decompose_even_subgraph(g, ones)
    if len(ones) != g.n - k:
        raise AssertionError("weight-1 subgraph has the wrong size")
    cdc = CycleCover.of(list(cover.circuits) + list(circuits))
    report = validate(cdc, g)
    if not report.is_cdc:
        raise AssertionError("weight-1 completion is not a CDC")
    return frozenset(ones), cdc


def hamiltonian_3ec(g: CubicGraph, ham: Circuit, swap: bool = False):
    """Colour a hamiltonian graph: 1/2 alternating on the circuit, 3 on chords.

    ``swap`` exchanges colours 1 and 2 (the other alternation phase).
    """
    if len(ham) != g.n or len(set(ham.vertices)) != g.n:
        raise NotHamiltonian("circuit does not span all vertices")
    colour = {}
    a, b = (2, 1) if swap else (1, 2)
    for i, e in enumerate(ham.edges):
        colour[e] = a if i % 2 == 0 else b
    for e in range(g.m):
        if e not in colour:
            colour[e] = 3
    return colour


def _pair_class(g, colour, pair):
    return frozenset(e for e in range(g.m) if colour[e] in pair)


def _colouring_cdc(g, colour) -> CycleCover:
    circuits = []
    for pair in ((1, 2), (1, 3), (2, 3)):
        circuits.extend(decompose_even_subgraph(g, _pair_class(g, colour, pair)))
    return CycleCover.of(circuits)


def merge_cdcs(g: CubicGraph, cdc1: CycleCover, cdc2: CycleCover, shared) -> CycleCover:
    """Union of two CDCs minus both copies of the shared circuits.

    ``cdc1`` and ``cdc2`` are CDCs of edge-disjoint subgraphs whose union is
    g, except that both contain the shared circuits; the result is a CDC of g.
    """
    shared = _as_circuits(g, shared)
    circuits = []
    for cdc in (cdc1, cdc2):
        rest = list(cdc.circuits)
        for circ in shared:
            if circ not in rest:
                raise SharedMismatch(f"circuit {circ.edges} missing from a merged CDC")
            rest.remove(circ)
        circuits.extend(rest)
    merged = CycleCover.of(circuits)
    report = validate(merged, g)
    if not report.is_cdc:
        raise SharedMismatch(f"merge result is not a CDC: {report.problems}")
    return merged


# --------------------------------------------------------------------------
# circumference construction
# --------------------------------------------------------------------------

def _lift_colour_class(g, colour, pair, rmap, emap):
    edges = set()
    for e_red in range(rmap.reduced.m):
        if colour[e_red] in pair:
            for e_sub in rmap.edge_path[e_red]:
                edges.add(emap[e_sub])
    return frozenset(edges)


def cover_via_circumference(g: CubicGraph, longest: Circuit | None = None,
                            node_limit=None) -> ConstructionResult:
    """Short cover from a long circuit, bound 4m/3 + 4k for k = n - circ(G).

    Splits g into the chordless part (searched for a CDC through the circuit)
    and the circuit-plus-chords part (3-edge-coloured), merges the two CDCs,
    and applies the CDC-minus-subgraph step to the lifted (1,3) colour class.
    """
    if not is_connected(g) or not is_bridgeless(g):
        raise NotTwoConnectedReduced("graph must be 2-connected")
    if longest is None:
        _, longest = circumference(g)
    k = g.n - len(longest)
    base = 2 * g.n
    cert = {"circuit": longest, "k": k}

    if k == 0:
        colour = hamiltonian_3ec(g, longest)
        circuits = []
        for pair in ((1, 3), (2, 3)):
            circuits.extend(decompose_even_subgraph(g, _pair_class(g, colour, pair)))
        cover = CycleCover.of(circuits)
        return _check_result(g, cover, base, "circumference", cert)

    c_set = longest.edge_set
    on_c = set(longest.vertices)
    chords = [e for e in range(g.m) if e not in c_set and
              g.edges[e][0] in on_c and g.edges[e][1] in on_c]

    if not chords:
        # the chordless part is g itself: one CDC through the circuit suffices
        try:
            cdc = find_cdc(g, must_contain=[longest], node_limit=node_limit)
        except NodeLimitExceeded as exc:
            raise StrongCdcNotFound("CDC search aborted", aborted=True) from exc
        if cdc is None:
            raise StrongCdcNotFound("no CDC through the given circuit")
        cover = cover_from_cdc(g, cdc, [longest])
        return _check_result(g, cover, base + 4 * k, "circumference", cert)

    # chordless side: delete chords, suppress, search a CDC through the circuit
    keep = [e for e in range(g.m) if e not in chords]
    sub1, emap1 = edge_subgraph(g, keep)
    g1, rmap1 = suppress_degree_two(sub1)
    if not is_connected(g1) or not is_bridgeless(g1):
        raise NotTwoConnectedReduced("chord-free reduction is not 2-connected")
    sub_c = {emap1.index(e) for e in c_set}  # circuit edges in sub1 ids
    d1_edges = [e for e in range(g1.m) if set(rmap1.edge_path[e]) <= sub_c]
    d1 = trace_circuit(g1, d1_edges)
    try:
        cdc1_red = find_cdc(g1, must_contain=[d1], node_limit=node_limit)
    except NodeLimitExceeded as exc:
        raise StrongCdcNotFound("CDC search aborted", aborted=True) from exc
    if cdc1_red is None:
        raise StrongCdcNotFound("no CDC of the reduced graph through the circuit")
    cdc1 = relabel_cover(lift_cover(cdc1_red, rmap1), emap1, g)

    # circuit-plus-chords side: suppress and 3-edge-colour along the circuit
    sub2, emap2 = edge_subgraph(g, sorted(c_set | set(chords)))
    g2, rmap2 = suppress_degree_two(sub2)
    sub2_c = {emap2.index(e) for e in c_set}
    d2_edges = [e for e in range(g2.m) if set(rmap2.edge_path[e]) <= sub2_c]
    d2 = trace_circuit(g2, d2_edges)

    best = None
    for swap in (False, True):
        colour = hamiltonian_3ec(g2, d2, swap=swap)
        lifted_13 = _lift_colour_class(g, colour, (1, 3), rmap2, emap2)
        if best is None or len(lifted_13) > len(best[1]):
            best = (colour, lifted_13)
    colour, c13 = best
    cdc2 = relabel_cover(lift_cover(_colouring_cdc(g2, colour), rmap2), emap2, g)

    merged = merge_cdcs(g, cdc1, cdc2, [longest])
    cover = cover_from_cdc(g, merged, c13)
    return _check_result(g, cover, base + 4 * k, "circumference", cert)


# --------------------------------------------------------------------------
# oddness-2 construction
# --------------------------------------------------------------------------

def _phase_colouring(g_red, rmap, emap, components, suppressed_goal):
    """3-edge-colour a reduced graph whose 2-factor image is all even circuits.

    Picks the 1/2 alternation phase per component that puts the most vertices
    of ``suppressed_goal`` on colour-1 paths.
    """
    colour = {}
    factor_edges = set()
    for comp in components:
        phases = []
        for phase in (0, 1):
            local = {}
            for i, e in enumerate(comp.edges):
                local[e] = 1 if (i + phase) % 2 == 0 else 2
            phases.append(local)
        # score: suppressed vertices lying inside colour-1 paths
        scores = []
        for local in phases:
            hit = set()
            for e, col in local.items():
                if col != 1:
                    continue
                path = rmap.edge_path[e]
                for e_sub in path:
                    for v in rmap.original.edges[e_sub]:
                        lab = rmap.original.vertex_labels[v]
                        if lab in suppressed_goal:
                            hit.add(lab)
            scores.append(len(hit))
        local = phases[0] if scores[0] >= scores[1] else phases[1]
        colour.update(local)
        factor_edges.update(comp.edges)
    for e in range(g_red.m):
        if e not in factor_edges:
            colour[e] = 3
    return colour


def cover_via_oddness2(g: CubicGraph, two_factor=None, links=None,
                       force_base: bool = False, node_limit=None) -> ConstructionResult:
    """Short cover from a 2-factor with exactly two odd components.

    With exactly two components in total, three connecting edges give bound
    4m/3 + 2, improved to 4m/3 + 1 when three consecutive vertices of one
    circuit all have their matching edges going to the other (auto-detected
    unless ``force_base``).  With even components as well, three disjoint
    paths of total length d in the contracted multigraph give 4m/3 + 2d.
    """
    if not cyclic_connectivity_at_least(g, 4):
        raise HypothesisViolated("graph is not cyclically 4-edge-connected")
    if two_factor is None:
        odd, two_factor = oddness(g)
        if odd != 2:
            raise HypothesisViolated(f"oddness is {odd}, not 2")
    f = frozenset(two_factor)
    comps = decompose_even_subgraph(g, f)
    odd_comps = [c for c in comps if len(c) % 2]
    if len(odd_comps) != 2:
        raise HypothesisViolated(f"2-factor has {len(odd_comps)} odd components, need 2")

    if len(comps) == 2:
        return _oddness2_edges(g, f, comps, links, force_base, node_limit)
    return _oddness2_paths(g, f, comps, odd_comps, links, node_limit)


def _consecutive_cross_links(g, c1, c2):
    """Matching edges at three consecutive vertices of one circuit, all going
    to the other circuit; None if the pattern does not occur."""
    for circ, other in ((c1, c2), (c2, c1)):
        other_set = set(other.vertices)
        L = len(circ)
        match_edge = {}
        for v in circ.vertices:
            e = next(e for e in g.incident_edges[v] if e not in circ.edge_set)
            match_edge[v] = e
        for i in range(L):
            window = [circ.vertices[(i + j) % L] for j in range(3)]
            edges = [match_edge[v] for v in window]
            if all(g.other_end(e, v) in other_set for e, v in zip(edges, window)):
                return edges
    return None


def _oddness2_edges(g, f, comps, links, force_base, node_limit):
    c1, c2 = comps
    base = 2 * g.n
    c1_verts, c2_verts = set(c1.vertices), set(c2.vertices)
    cross = [e for e in range(g.m) if e not in f and
             ((g.edges[e][0] in c1_verts) != (g.edges[e][1] in c1_verts))]
    refined = False
    if links is None:
        if not force_base:
            links = _consecutive_cross_links(g, c1, c2)
            refined = links is not None
        if links is None:
            if len(cross) < 3:
                raise HypothesisViolated("fewer than three edges join the two circuits")
            links = cross[:3]
    links = list(links)
    if len(links) != 3 or len(set(links)) != 3:
        raise LinksNotDisjoint("need three distinct connecting edges")
    for e in links:
        if e not in cross:
            raise HypothesisViolated(f"edge {e} does not join the two circuits")
    ends = [v for e in links for v in g.edges[e]]
    if len(set(ends)) != 6:
        raise LinksNotDisjoint("connecting edges share an endpoint")

    bound = base + (1 if refined else 2)
    cert = {"two_factor": f, "links": tuple(links), "refined": refined}
    cover = _oddness2_pipeline(g, f, comps, links, node_limit)
    return _check_result(g, cover, bound, "oddness2", cert)


def _oddness2_paths(g, f, comps, odd_comps, links, node_limit):
    base = 2 * g.n
    contracted, cmap = contract_two_factor(g, f)
    s_c = cmap.vertex_map[odd_comps[0].vertices[0]]
    t_c = cmap.vertex_map[odd_comps[1].vertices[0]]
    if links is None:
        paths_c, d = three_disjoint_paths(contracted, s_c, t_c)
        paths = [tuple(cmap.edge_origin[e] for e in p) for p in paths_c]
    else:
        paths = [tuple(p) for p in links]
        d = sum(len(p) for p in paths)
    all_link_edges = [e for p in paths for e in p]
    if len(set(all_link_edges)) != d:
        raise LinksNotDisjoint("paths share a matching edge")
    for e in all_link_edges:
        if e in f:
            raise HypothesisViolated("path edges must be matching edges")

    cert = {"two_factor": f, "paths": tuple(paths), "d": d}
    cover = _oddness2_pipeline(g, f, comps, all_link_edges, node_limit)
    return _check_result(g, cover, base + 2 * d, "oddness2", cert)


def _oddness2_pipeline(g, f, comps, link_edges, node_limit):
    """Common part: delete links, colour the reduction, build and merge CDCs."""
    link_set = set(link_edges)
    ends = sorted({g.vertex_labels[v] for e in link_edges for v in g.edges[e]})

    keep = [e for e in range(g.m) if e not in link_set]
    sub1, emap1 = edge_subgraph(g, keep)
    g1, rmap1 = suppress_degree_two(sub1)

    # images of the 2-factor components (all even after suppression)
    sub_f = {emap1.index(e) for e in f}
    f1_edges = [e for e in range(g1.m) if set(rmap1.edge_path[e]) <= sub_f]
    f_images = decompose_even_subgraph(g1, f1_edges)
    if any(len(c) % 2 for c in f_images):
        raise AssertionError("2-factor image has an odd component")

    colour = _phase_colouring(g1, rmap1, emap1, f_images, set(ends))
    cdc1 = relabel_cover(lift_cover(_colouring_cdc(g1, colour), rmap1), emap1, g)
    c13 = _lift_colour_class(g, colour, (1, 3), rmap1, emap1)

    # the touched components plus the links, suppressed, with a CDC through
    # the component images
    touched = [c for c in comps if any(v in {x for e in link_edges for x in g.edges[e]}
                                       for v in c.vertices)]
    h_edges = sorted(set().union(*[c.edge_set for c in touched]) | link_set)
    sub2, emap2 = edge_subgraph(g, h_edges)
    g2, rmap2 = suppress_degree_two(sub2)
    images = []
    for c in touched:
        sub_cset = {emap2.index(e) for e in c.edges}
        ce = [e for e in range(g2.m) if set(rmap2.edge_path[e]) <= sub_cset]
        images.append(trace_circuit(g2, ce))
    try:
        cdc2_red = find_cdc(g2, must_contain=images, node_limit=node_limit)
    except NodeLimitExceeded as exc:
        raise StrongCdcNotFound("CDC search aborted", aborted=True) from exc
    if cdc2_red is None:
        raise StrongCdcNotFound("no CDC of the link graph through the circuit images")
    cdc2 = relabel_cover(lift_cover(cdc2_red, rmap2), emap2, g)

    shared = list(touched)
    merged = merge_cdcs(g, cdc1, cdc2, shared)
    return cover_from_cdc(g, merged, c13)


# --------------------------------------------------------------------------
# perfect matching index constructions
# --------------------------------------------------------------------------

def five_cdc_from_pm_cover(g: CubicGraph, matchings) -> KCdc:
    """5-CDC from four perfect matchings covering the edge set.

    The doubly covered edges form a perfect matching M; the classes are the
    symmetric differences with M plus the 2-factor E - M.
    """
    matchings = [frozenset(mm) for mm in matchings]
    if len(matchings) != 4:
        raise NotACover("need exactly four matchings")
    if len(set(matchings)) != 4:
        raise NotACover("matchings must be distinct (3-edge-colourable graphs "
                        "take the 3-CDC branch)")
    for mm in matchings:
        seen = set()
        for e in mm:
            u, v = g.edges[e]
            if u in seen or v in seen:
                raise NotACover("input is not a perfect matching")
            seen.update((u, v))
        if len(seen) != g.n:
            raise NotACover("input is not a perfect matching")
    count = [0] * g.m
    for mm in matchings:
        for e in mm:
            count[e] += 1
    if any(c == 0 for c in count):
        raise NotACover("matchings do not cover every edge")
    doubled = frozenset(e for e in range(g.m) if count[e] >= 2)
    if any(c > 2 for c in count):
        raise DoubledSetNotMatching("an edge is covered more than twice")
    seen = set()
    for e in doubled:
        u, v = g.edges[e]
        if u in seen or v in seen:
            raise DoubledSetNotMatching("doubly covered edges are not a matching")
        seen.update((u, v))
    if len(seen) != g.n:
        raise DoubledSetNotMatching("doubly covered edges are not a perfect matching")
    all_edges = frozenset(range(g.m))
    classes = [doubled ^ mm for mm in matchings] + [all_edges - doubled]
    kcdc = KCdc.of(classes)
    report = validate(kcdc, g)
    if not report.ok:
        raise AssertionError(f"constructed classes are not a 5-CDC: {report.problems}")
    return kcdc


def pm_cover_from_five_cdc(g: CubicGraph, cdc: KCdc, two_factor_index=None):
    """Four perfect matchings covering E(g), from a 5-CDC with a 2-factor class."""
    if cdc.k != 5:
        raise ValueError(f"need a 5-CDC, got {cdc.k} classes")
    if any(not cls for cls in cdc.classes):
        raise ValueError("empty colour classes are not allowed")
    report = validate(cdc, g)
    if not report.ok:
        raise ValueError(f"not a valid 5-CDC: {report.problems}")

    def is_two_factor(cls):
        deg = [0] * g.n
        for e in cls:
            u, v = g.edges[e]
            deg[u] += 1
            deg[v] += 1
        return all(d == 2 for d in deg)

    if two_factor_index is None:
        two_factor_index = next((i for i, cls in enumerate(cdc.classes)
                                 if is_two_factor(cls)), None)
        if two_factor_index is None:
            raise NoTwoFactorClass("no colour class is a 2-factor")
    elif not is_two_factor(cdc.classes[two_factor_index]):
        raise NoTwoFactorClass("designated class is not a 2-factor")

    factor = cdc.classes[two_factor_index]
    rest = frozenset(range(g.m)) - factor
    matchings = []
    for i, cls in enumerate(cdc.classes):
        if i == two_factor_index:
            continue
        matchings.append((factor & cls) | (rest - cls))
    covered = set().union(*matchings)
    if covered != frozenset(range(g.m)):
        raise AssertionError("derived matchings do not cover the edge set")
    for mm in matchings:
        seen = set()
        for e in mm:
            u, v = g.edges[e]
            if u in seen or v in seen:
                raise AssertionError("derived set is not a perfect matching")
            seen.update((u, v))
    return tuple(matchings)


def scc_cover_from_tau4(g: CubicGraph, node_limit=None) -> ConstructionResult:
    """Cover of length exactly 4m/3 for graphs with perfect matching index <= 4."""
    base = 2 * g.n
    result = perfect_matching_index(g, limit=4)
    if result.above_limit:
        raise TauTooLarge("perfect matching index exceeds 4")
    if result.tau == 3:
        colour = edge_colouring_3(g)
        assert colour is not None
        cdc = _colouring_cdc(g, colour)
        factor = _pair_class(g, colour, (1, 2))
        cover = cover_from_cdc(g, cdc, factor)
        cert = {"tau": 3, "matchings": result.matchings}
    else:
        kcdc = five_cdc_from_pm_cover(g, result.matchings)
        factor = kcdc.classes[4]
        cover = cover_from_cdc(g, kcdc, factor)
        cert = {"tau": 4, "matchings": result.matchings}
    res = _check_result(g, cover, base, "tau4", cert)
    assert res.length == base
    return res
