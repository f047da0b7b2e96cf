"""Recursive k-connectivity decomposition: level search over hierarchically
sparsified subgraphs, whole-graph search, and the splitting driver."""

import hashlib
import json
import random
from dataclasses import dataclass

from .errors import GraphError, InvariantViolation
from .graph import WorkGraph, degree_gamma
from .primitives import (
    is_strongly_connected,
    k_dominator_raw,
    k_separator_raw,
    pairwise_k_connected_impl,
    top_scc_of,
)

__all__ = [
    "Counters",
    "IsolationResult",
    "Component",
    "ComponentSet",
    "kscc",
    "k_isolated_set_level",
    "k_isolated_set",
    "check_isolation",
]


class Counters:
    """Instrumented work counters for one decomposition run.

    ``level_edges`` counts every adjacency entry touched by level searches
    (construction scans plus per-pass edge work); ``whole_edges`` the same for
    whole-graph searches and validation.  The phase attribute routes the
    working-graph scan counts.
    """

    def __init__(self):
        self.level_edges = 0
        self.whole_edges = 0
        self.flow_augmentations = 0
        self.bfs_ball_edges = 0
        self.splits = 0
        self.phase = "whole"

    def scanned(self, c):
        if self.phase == "level":
            self.level_edges += c
        else:
            self.whole_edges += c

    def level(self, c):
        self.level_edges += c

    def whole(self, c):
        self.whole_edges += c

    def flow(self, c):
        self.flow_augmentations += c

    def ball(self, c):
        self.bfs_ball_edges += c

    def as_dict(self):
        return {
            "level_edges": self.level_edges,
            "whole_edges": self.whole_edges,
            "flow_augmentations": self.flow_augmentations,
            "bfs_ball_edges": self.bfs_ball_edges,
            "splits": self.splits,
        }


@dataclass
class IsolationResult:
    """A detected (k-almost) top/bottom SCC.

    ``s`` is the vertex set, ``z`` the separator elements (vertices, or edges
    reported in the original orientation even for reverse-side finds),
    ``side`` says which direction produced it, and ``provenance`` which branch
    of the search.
    """

    s: list
    z: list
    side: str
    provenance: str

    @classmethod
    def empty(cls):
        return cls([], [], "forward", "none")

    @property
    def is_empty(self):
        return not self.s


@dataclass
class Component:
    vertices: tuple
    edges: tuple = None
    degenerate: bool = None


@dataclass
class ComponentSet:
    """Decomposition result: vertex partition (edge mode) or subgraph list
    with per-component edge sets and degenerate flags (vertex mode)."""

    mode: str
    k: int
    components: list

    def canonical(self):
        comps = []
        for c in self.components:
            entry = {"vertices": list(c.vertices)}
            if self.mode == "vertex":
                entry["edges"] = [list(e) for e in c.edges]
                entry["degenerate"] = bool(c.degenerate)
            comps.append(entry)
        return {"mode": self.mode, "k": self.k, "components": comps}

    def digest(self):
        payload = json.dumps(self.canonical(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode()).hexdigest()

    def vertex_sets(self):
        return [set(c.vertices) for c in self.components]

    def __eq__(self, other):
        if not isinstance(other, ComponentSet):
            return NotImplemented
        return self.canonical() == other.canonical()


# --- searches ----------------------------------------------------------------


def _top_after_removal(n, verts, edges, z_vertices, exclude):
    zset = set(z_vertices)
    verts2 = [v for v in verts if v not in zset]
    us2, vs2 = [], []
    for (u, v) in edges:
        if u in zset or v in zset:
            continue
        us2.append(u)
        vs2.append(v)
    return top_scc_of(n, verts2, us2, vs2, exclude=exclude)


def _search_side(wk, i, k, mode, us, vs, blue, side, counters):
    """One direction of the level search; returns an IsolationResult or None.

    Tries, in order: a blue-free top SCC of the level subgraph; a k-dominator
    in the derived flow graph(s); and for vertex mode with a small blue set,
    the explicit Z >= blue special cases.
    """
    n = wk.n
    verts = wk.verts
    counters.level(len(us))
    flip = side == "reverse"

    S = top_scc_of(n, verts, us, vs, exclude=blue)
    if S is not None:
        return IsolationResult(S, [], side, "tscc")

    blue_set = set(blue)
    edges = list(zip(us, vs))

    def oriented(zedges):
        return sorted((b, a) for (a, b) in zedges) if flip else sorted(zedges)

    if mode == "edge":
        root = n
        fedges = []
        origin = []
        for idx, (u, v) in enumerate(edges):
            bu = u in blue_set
            bv = v in blue_set
            if bu and bv:
                continue
            fedges.append((root if bu else u, root if bv else v))
            origin.append(idx)
        counters.level(2 * len(fedges))
        zidx = k_dominator_raw(n + 1, root, fedges, k, "edge", counters)
        if zidx is None:
            return None
        z_edge_idx = sorted(origin[j] for j in zidx)
        zset = set(z_edge_idx)
        us2 = [u for j, (u, v) in enumerate(edges) if j not in zset]
        vs2 = [v for j, (u, v) in enumerate(edges) if j not in zset]
        counters.level(len(us2))
        S = top_scc_of(n, verts, us2, vs2, exclude=blue)
        if S is None:
            raise InvariantViolation("edge dominator found but no blue-free top SCC")
        return IsolationResult(S, oriented(edges[j] for j in z_edge_idx), side, "dominator")

    if len(blue) >= k:
        root = n
        fedges = edges + [(root, b) for b in blue]
        counters.level(2 * len(fedges))
        z = k_dominator_raw(n + 1, root, fedges, k, "vertex", counters)
        if z is None:
            return None
        counters.level(len(edges))
        S = _top_after_removal(n, verts, edges, z, blue)
        if S is None:
            raise InvariantViolation("vertex dominator found but no blue-free top SCC")
        return IsolationResult(S, sorted(z), side, "dominator")

    # vertex mode, 0 < |blue| < k: one flow graph per blue vertex, then the
    # explicit cases for separators containing the whole blue set.
    for w in blue:
        fedges = edges + [(w, b) for b in blue if b != w]
        counters.level(2 * len(fedges))
        z = k_dominator_raw(n, w, fedges, k, "vertex", counters)
        if z is not None:
            counters.level(len(edges))
            S = _top_after_removal(n, verts, edges, z, blue)
            if S is None:
                raise InvariantViolation("vertex dominator found but no blue-free top SCC")
            return IsolationResult(S, sorted(z), side, "dominator")

    verts2 = [v for v in verts if v not in blue_set]
    edges2 = [(u, v) for (u, v) in edges if u not in blue_set and v not in blue_set]
    if not verts2:
        return None
    counters.level(len(edges2))
    S = top_scc_of(n, verts2, [e[0] for e in edges2], [e[1] for e in edges2])
    if S is not None and len(S) < len(verts2):
        return IsolationResult(S, sorted(blue), side, "blue-singleton-special")
    if len(blue) < k - 1:
        # level graph minus blue is strongly connected here (its only top SCC
        # was everything); look for a separator that extends the blue set
        sep = k_separator_raw(n, verts2, edges2, k - len(blue), "vertex", counters)
        if sep is not None:
            z = sorted(list(sep.members) + list(blue))
            counters.level(len(edges))
            S = _top_after_removal(n, verts, edges, z, ())
            if S is None:
                raise InvariantViolation("separator special case found but no top SCC")
            return IsolationResult(S, z, side, "blue-superset-special")
    return None


def _whole_search(wk, k, mode, counters):
    """Whole-graph search: a proper top SCC, else a k-separator split."""
    counters.phase = "whole"
    us, vs = wk.all_edges(counters)
    counters.whole(len(us))
    S = top_scc_of(wk.n, wk.verts, us, vs)
    if S is not None and len(S) < wk.n_alive:
        return IsolationResult(S, [], "forward", "whole-graph")
    edges = list(zip(us, vs))
    sep = k_separator_raw(wk.n, wk.verts, edges, k, mode, counters)
    if sep is None:
        return None
    counters.whole(len(edges))
    if mode == "vertex":
        S = _top_after_removal(wk.n, wk.verts, edges, sep.members, ())
    else:
        zset = set(sep.members)
        us2 = [u for (u, v) in edges if (u, v) not in zset]
        vs2 = [v for (u, v) in edges if (u, v) not in zset]
        S = top_scc_of(wk.n, wk.verts, us2, vs2)
    if S is None:
        raise InvariantViolation("separator found but no top SCC after removal")
    return IsolationResult(S, sorted(sep.members), "forward", "whole-graph")


def _find_isolated(wk, k, mode, use_levels, counters, trace, validate):
    n_alive = wk.n_alive
    if n_alive <= 1:
        return None
    if mode == "vertex" and k > 2:
        run_levels = use_levels and n_alive >= 14 * k**3
    else:
        run_levels = use_levels and n_alive > 8
    i_star = None
    if run_levels:
        i = 1
        while True:
            counters.phase = "level"
            usF, vsF, blueF = wk.level_edges(i, False, counters)
            if not blueF:
                i_star = i
                break
            usR, vsR, blueR = wk.level_edges(i, True, counters)
            if not blueR:
                i_star = i
                break
            if trace is not None:
                trace.append(
                    {"event": "level", "i": i, "n": n_alive,
                     "blue_fwd": len(blueF), "blue_rev": len(blueR)}
                )
            res = _search_side(wk, i, k, mode, usF, vsF, blueF, "forward", counters)
            if res is None:
                res = _search_side(wk, i, k, mode, usR, vsR, blueR, "reverse", counters)
            if res is not None:
                if validate and i > 1 and not len(res.s) > 2 ** (i - 1) - k + 2:
                    raise InvariantViolation(
                        f"level {i} result of size {len(res.s)} below the "
                        f"first-success bound 2^{i - 1} - {k} + 2"
                    )
                return res
            i += 1
    res = _whole_search(wk, k, mode, counters)
    if (
        res is not None
        and validate
        and run_levels
        and i_star is not None
        and i_star > 1
        and not len(res.s) > 2 ** (i_star - 1) - k + 2
    ):
        raise InvariantViolation(
            f"whole-graph result of size {len(res.s)} below the "
            f"first-success bound 2^{i_star - 1} - {k} + 2"
        )
    return res


# --- isolation validation ------------------------------------------------------


def check_isolation_core(n, verts, edges, s, z, side, k, mode):
    """Does (s, z) satisfy the top/bottom (k-almost) SCC definition here?

    Checks, in the orientation given by ``side``: the complement of s (and z,
    vertex mode) is non-empty; s induces a strongly connected subgraph; every
    incoming edge of s comes from z; and every element of z actually borders
    s (the minimality clause of the almost-SCC definition).
    """
    s_set = set(s)
    if not s_set:
        return False
    if mode == "vertex":
        z_set = set(z)
        if s_set & z_set:
            return False
        if not (set(verts) - s_set - z_set):
            return False
        if len(z_set) >= k:
            return False
    else:
        if not (set(verts) - s_set):
            return False
        if len(z) >= k:
            return False
    inner = [(u, v) for (u, v) in edges if u in s_set and v in s_set]
    if not is_strongly_connected(n, sorted(s_set), [e[0] for e in inner], [e[1] for e in inner]):
        return False
    if side == "forward":
        cross = [(u, v) for (u, v) in edges if v in s_set and u not in s_set]
    else:
        cross = [(v, u) for (u, v) in edges if u in s_set and v not in s_set]
    if mode == "edge":
        zo = set((b, a) for (a, b) in z) if side == "reverse" else set(z)
        return set(cross) == zo
    z_set = set(z)
    sources = set(u for (u, v) in cross)
    return sources == z_set


def check_isolation(g, res, k, mode):
    """Validate an IsolationResult against a Graph (see check_isolation_core)."""
    if res.is_empty:
        raise GraphError("check_isolation requires a non-empty result")
    return check_isolation_core(
        g.n, range(g.n), g.edge_list, res.s, res.z, res.side, k, mode
    )


def _validate_split(wk, res, k, mode, rng, counters):
    s_set = set(res.s)
    if mode == "vertex":
        complement = [v for v in wk.verts if v not in s_set and v not in set(res.z)]
    else:
        complement = [v for v in wk.verts if v not in s_set]
    if not complement:
        raise InvariantViolation("split leaves an empty complement V \\ (S u Z)")
    counters.phase = "whole"
    us, vs = wk.all_edges(counters)
    edges = list(zip(us, vs))
    if not check_isolation_core(wk.n, wk.verts, edges, res.s, res.z, res.side, k, mode):
        raise InvariantViolation(
            f"split failed isolation check (provenance {res.provenance}, side {res.side})"
        )
    if wk.n_alive <= 40:
        sub, old_ids = wk.to_graph()
        to_new = {v: i for i, v in enumerate(old_ids)}
        s_local = [to_new[v] for v in res.s]
        comp_local = [to_new[v] for v in complement]
        for _ in range(20):
            u = rng.choice(comp_local)
            v = rng.choice(s_local)
            if pairwise_k_connected_impl(sub, u, v, k, mode):
                raise InvariantViolation(
                    f"cross pair ({old_ids[u]}, {old_ids[v]}) is {k}-connected across a split"
                )


# --- public operations -----------------------------------------------------------


def k_isolated_set_level(g, i, k, mode, counters=None):
    """Level-i search on a graph (both directions); requires 2^i < gamma."""
    if k < 2:
        raise GraphError("k must be >= 2")
    if i < 1:
        raise GraphError("level must be >= 1")
    if (1 << i) >= max(degree_gamma(g), 1):
        raise GraphError(f"level {i} violates 2^i < gamma")
    counters = counters if counters is not None else Counters()
    counters.phase = "level"
    wk = WorkGraph(g)
    usF, vsF, blueF = wk.level_edges(i, False, counters)
    usR, vsR, blueR = wk.level_edges(i, True, counters)
    if not blueF or not blueR:
        raise GraphError(f"level {i} violates 2^i < gamma")
    res = _search_side(wk, i, k, mode, usF, vsF, blueF, "forward", counters)
    if res is None:
        res = _search_side(wk, i, k, mode, usR, vsR, blueR, "reverse", counters)
    return res if res is not None else IsolationResult.empty()


def k_isolated_set(g, k, mode, counters=None):
    """Whole-graph search: proper top SCC, else k-separator split, else empty."""
    if k < 2:
        raise GraphError("k must be >= 2")
    counters = counters if counters is not None else Counters()
    wk = WorkGraph(g)
    res = _whole_search(wk, k, mode, counters)
    return res if res is not None else IsolationResult.empty()


def _assemble(g, k, mode, pieces, validate):
    if mode == "edge":
        comps = [Component(vertices=tuple(sorted(p))) for p in pieces]
        comps.sort(key=lambda c: c.vertices)
        if validate:
            seen = set()
            for c in comps:
                if seen & set(c.vertices):
                    raise InvariantViolation("edge-mode components overlap")
                seen.update(c.vertices)
            if seen != set(range(g.n)):
                raise InvariantViolation("edge-mode components do not cover the graph")
        return ComponentSet(mode="edge", k=k, components=comps)
    # vertex mode: splits duplicate separator vertices into both branches, so
    # a leftover piece can be a strict subset of a real component; enforcing
    # maximality (and deduplication) here implements the definition.
    uniq = sorted({frozenset(p) for p in pieces}, key=len, reverse=True)
    kept = []
    for p in uniq:
        if not any(p < q for q in kept):
            kept.append(p)
    comps = []
    for p in kept:
        vs = tuple(sorted(p))
        es = tuple(sorted((u, v) for (u, v) in g.edge_list if u in p and v in p))
        comps.append(Component(vertices=vs, edges=es, degenerate=len(vs) < 3))
    comps.sort(key=lambda c: c.vertices)
    if validate and k == 2:
        seen_edges = set()
        for c in comps:
            if seen_edges & set(c.edges):
                raise InvariantViolation("vertex-mode component edge sets overlap")
            seen_edges.update(c.edges)
    return ComponentSet(mode="vertex", k=k, components=comps)


def decompose(g, k, mode, use_levels, validate=True, trace=None, counters=None):
    """Shared driver behind kscc and the naive baseline."""
    if k < 2:
        raise GraphError("k must be >= 2")
    if mode not in ("edge", "vertex"):
        raise GraphError(f"bad mode {mode!r}")
    counters = counters if counters is not None else Counters()
    rng = random.Random(0x5CC)
    pieces = []
    if g.n == 0:
        return ComponentSet(mode=mode, k=k, components=[])
    stack = [WorkGraph(g)]
    while stack:
        wk = stack.pop()
        res = _find_isolated(wk, k, mode, use_levels, counters, trace, validate)
        if res is None:
            if trace is not None:
                trace.append({"event": "component", "n": wk.n_alive})
            pieces.append(list(wk.verts))
            continue
        if validate:
            _validate_split(wk, res, k, mode, rng, counters)
        if trace is not None:
            trace.append(
                {"event": "split", "provenance": res.provenance, "side": res.side,
                 "n": wk.n_alive, "s_size": len(res.s), "z_size": len(res.z)}
            )
        counters.splits += 1
        s_set = set(res.s)
        if mode == "vertex":
            zs = list(res.z)
            child_a = sorted(s_set | set(zs))
            child_b = [v for v in wk.verts if v not in s_set]
            stack.append(wk.restrict(child_a, rebuild=zs))
            stack.append(wk.restrict(child_b, rebuild=zs))
        else:
            child_a = sorted(s_set)
            child_b = [v for v in wk.verts if v not in s_set]
            stack.append(wk.restrict(child_a))
            stack.append(wk.restrict(child_b))
    return _assemble(g, k, mode, pieces, validate)


def kscc(g, k, mode, *, validate=True, trace=None, counters=None):
    """k-edge or k-vertex strongly connected components of a simple digraph.

    Runs the hierarchical level search with whole-graph fallback, recursing on
    the split parts; small parts are finished by the whole-graph-only loop
    (the naive baseline), per the base-case thresholds.
    """
    return decompose(g, k, mode, True, validate=validate, trace=trace, counters=counters)
