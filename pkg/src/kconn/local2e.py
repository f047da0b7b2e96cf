"""Sparse-graph 2eSCC algorithm: outer bridge-removal loop with depth-bounded
local searches seeded from vertices that recently lost edges."""

import math
from dataclasses import dataclass

from .errors import GraphError, InvariantViolation
from .graph import WorkGraph, constant_degree_transform, project_components
from .hierarchy import Component, ComponentSet, Counters
from .primitives import edge_dominators_raw, k_dominator_raw, scc_raw, top_scc_of

__all__ = [
    "LocalSearchState",
    "two_escc_sparse",
    "two_isolated_set_local",
    "bounded_reverse_bfs",
]


@dataclass
class LocalSearchState:
    """Bookkeeping for one run: the working graph, the J-set of endpoints of
    recently deleted edges, and the log-sized thresholds."""

    working: WorkGraph
    j_set: dict
    q: int
    d: int
    epsilon: float


def _ball(wk, j, d, rev, counters):
    """Vertices with a path of <= d edges to j (rev=False: in the forward
    graph; rev=True: in the reverse graph), BFS over predecessor lists."""
    dist = {j: 0}
    order = [j]
    qi = 0
    scanned = 0
    while qi < len(order):
        v = order[qi]
        qi += 1
        if dist[v] >= d:
            continue
        preds = wk.in_neighbors(v) if not rev else wk.out_neighbors(v)
        scanned += len(preds)
        for u in preds:
            if u not in dist:
                dist[u] = dist[v] + 1
                order.append(u)
    if counters is not None:
        counters.ball(scanned)
    return order


def bounded_reverse_bfs(g, j, d, direction="forward"):
    """Vertices with a path of at most d edges to j in the chosen direction."""
    if not (0 <= j < g.n):
        raise GraphError(f"vertex {j} out of range")
    wk = WorkGraph(g)
    return set(_ball(wk, j, d, direction == "reverse", None))


def _sub_bridges(n, verts, edges):
    """All strong bridges of a strongly connected subgraph."""
    if len(verts) < 2:
        return []
    r = min(verts)
    us = [e[0] for e in edges]
    vs = [e[1] for e in edges]
    out = set()
    for i in edge_dominators_raw(n, r, us, vs):
        out.add(edges[i])
    for i in edge_dominators_raw(n, r, vs, us):
        out.add(edges[i])
    return sorted(out)


def _local_search(wk, j_list, d, counters):
    """One pass of the ball searches; returns an isolated vertex set or None.

    For each seed and direction it looks for, in order: a blue-free top SCC
    of the ball with an outgoing edge; a bridge inside a ball that is both a
    top and a bottom SCC; an edge-dominator of the ball with its blue
    boundary contracted to a root.
    """
    for j in j_list:
        if not wk.alive[j]:
            continue
        for rev in (False, True):
            ball = _ball(wk, j, d, rev, counters)
            x_set = set(ball)
            sub_edges = []
            blue = []
            for v in sorted(x_set):
                preds = wk.in_neighbors(v) if not rev else wk.out_neighbors(v)
                external = False
                for u in preds:
                    if u in x_set:
                        sub_edges.append((u, v))
                    else:
                        external = True
                if external:
                    blue.append(v)
            if counters is not None:
                counters.ball(len(sub_edges))
            verts = sorted(x_set)
            us = [e[0] for e in sub_edges]
            vs = [e[1] for e in sub_edges]
            t = top_scc_of(wk.n, verts, us, vs, exclude=blue)
            if t is not None:
                t_set = set(t)
                has_out = False
                for v in t:
                    succs = wk.out_neighbors(v) if not rev else wk.in_neighbors(v)
                    if any(w not in t_set for w in succs):
                        has_out = True
                        break
                if has_out:
                    return t
                # t is the whole ball and a top+bottom SCC of the graph; only
                # an internal bridge can still isolate something here
                bridges = _sub_bridges(wk.n, verts, sub_edges)
                if bridges:
                    e = bridges[0]
                    us2 = [a for (a, b) in sub_edges if (a, b) != e]
                    vs2 = [b for (a, b) in sub_edges if (a, b) != e]
                    return top_scc_of(wk.n, verts, us2, vs2)
                continue
            # no blue-free top SCC: contract the blue boundary and look for
            # an edge-dominator
            root = wk.n
            blue_set = set(blue)
            fedges = []
            origin = []
            for idx, (u, v) in enumerate(sub_edges):
                bu = u in blue_set
                bv = v in blue_set
                if bu and bv:
                    continue
                fedges.append((root if bu else u, root if bv else v))
                origin.append(idx)
            eidx = k_dominator_raw(wk.n + 1, root, fedges, 2, "edge", counters)
            if eidx is not None:
                e = sub_edges[origin[eidx[0]]]
                us2 = [a for (a, b) in sub_edges if (a, b) != e]
                vs2 = [b for (a, b) in sub_edges if (a, b) != e]
                u2 = top_scc_of(wk.n, verts, us2, vs2, exclude=blue)
                if u2 is None:
                    raise InvariantViolation("ball edge-dominator without a top SCC")
                return u2
    return None


def two_isolated_set_local(g, j_set, d, counters=None):
    """Public ball search over a constant-degree graph."""
    if any(len(a) > 3 for a in g.in_adj) or any(len(a) > 3 for a in g.out_adj):
        raise GraphError("local search requires in/out degree <= 3")
    if any(not 0 <= j < g.n for j in j_set):
        raise GraphError("J-set vertex out of range")
    wk = WorkGraph(g)
    res = _local_search(wk, list(j_set), d, counters)
    return set(res) if res is not None else set()


def _boundary_edges(wk, s):
    s_set = set(s)
    out = []
    for v in s:
        for u in wk.in_neighbors(v):
            if u not in s_set:
                out.append((u, v))
        for w in wk.out_neighbors(v):
            if w not in s_set:
                out.append((v, w))
    return out


def two_escc_sparse(g, epsilon=0.5, validate=False, counters=None, trace=None):
    """2-edge strongly connected components via the local-search algorithm.

    The input is first rewritten to max degree 3; the outer loop strips
    cross-SCC edges and strong bridges, and while few vertices lost edges the
    inner loop peels small isolated sets found by depth-bounded BFS balls
    around them.  The surviving SCCs, projected back through the degree
    transform, are the 2eSCCs.
    """
    if not 0 < epsilon < 1:
        raise GraphError("epsilon must be in (0, 1)")
    counters = counters if counters is not None else Counters()
    gt, mapping = constant_degree_transform(g)
    if gt.n == 0:
        return ComponentSet(mode="edge", k=2, components=[])
    n2 = gt.n
    q = math.ceil(math.log2(n2)) if n2 > 1 else 0
    d = math.ceil(epsilon * math.log2(n2)) if n2 > 1 else 0
    wk = WorkGraph(gt)
    state = LocalSearchState(working=wk, j_set={}, q=q, d=d, epsilon=epsilon)

    outer = 0
    while True:
        outer += 1
        us, vs = wk.all_edges(counters)
        comp_of, comps, _, _ = scc_raw(n2, wk.verts, us, vs)
        cross = [(u, v) for (u, v) in zip(us, vs) if comp_of[u] != comp_of[v]]
        if cross:
            wk.delete_edges(cross)
        grouped = [[] for _ in comps]
        for (u, v) in zip(us, vs):
            cu = comp_of[u]
            if cu == comp_of[v]:
                grouped[cu].append((int(u), int(v)))
        state.j_set = {}
        j_set = state.j_set
        for ci, comp in enumerate(comps):
            if len(comp) < 2:
                continue
            bridges = _sub_bridges(n2, comp, grouped[ci])
            if not bridges:
                continue
            wk.delete_edges(bridges)
            for (u, v) in bridges:
                j_set[u] = None
                j_set[v] = None
            if validate:
                _assert_tsccs_touch_j(n2, comp, grouped[ci], bridges, j_set)
        if trace is not None:
            trace.append({"event": "outer", "iteration": outer, "j": len(j_set),
                          "components": len(comps)})
        if not j_set:
            break
        if len(j_set) < q:
            while True:
                s = _local_search(wk, list(j_set), d, counters)
                if trace is not None:
                    trace.append({"event": "local", "found": 0 if s is None else len(s)})
                if s is None:
                    break
                boundary = _boundary_edges(wk, s)
                if not boundary:
                    raise InvariantViolation("local search returned a set with no boundary")
                wk.delete_edges(boundary)
                for (u, v) in boundary:
                    j_set[u] = None
                    j_set[v] = None
                if len(j_set) >= q:
                    break

    comps_cs = ComponentSet(
        mode="edge",
        k=2,
        components=sorted(
            (Component(vertices=tuple(sorted(c))) for c in comps),
            key=lambda c: c.vertices,
        ),
    )
    return project_components(mapping, comps_cs)


def _assert_tsccs_touch_j(n, comp, comp_edges, deleted, j_set):
    deleted_set = set(deleted)
    rem = [e for e in comp_edges if e not in deleted_set]
    comp_of, comps2, has_in2, _ = scc_raw(n, comp, [e[0] for e in rem], [e[1] for e in rem])
    for ci, c2 in enumerate(comps2):
        if has_in2[ci]:
            continue
        entered = any(v in c2 and u not in c2 for (u, v) in deleted_set)
        if entered and not any(v in j_set for v in c2):
            raise InvariantViolation("top SCC created by deletions misses the J-set")
