"""Flat-array kernels for the hot graph loops.

Everything here operates on CSR-style numpy arrays so that one source
definition can run either JIT-compiled through numba or as plain Python.
The backend is picked at import time -- set ``KCONN_NO_NUMBA=1`` (or
uninstall numba) to force the interpreted path -- and can be switched at
runtime with :func:`set_backend`, which the benchmark harness uses to time
both paths on identical inputs.
"""

import os

import numpy as np

__all__ = [
    "available_backends",
    "backend",
    "set_backend",
    "tarjan_scc",
    "idom_lt",
    "bfs_depth",
    "reach",
    "reach_skip_vertices",
    "reach_skip_edges",
    "maxflow_upto_k",
    "residual_reach",
    "build_csr",
    "build_csr_with_eids",
]

_I = np.int64


def build_csr(n, us, vs):
    """CSR adjacency (indptr, indices) for edges us[i] -> vs[i].

    Stable within each source vertex, so per-vertex edge order follows the
    input order of the edge arrays.
    """
    us = np.asarray(us, dtype=_I)
    vs = np.asarray(vs, dtype=_I)
    counts = np.bincount(us, minlength=n) if len(us) else np.zeros(n, dtype=_I)
    indptr = np.zeros(n + 1, dtype=_I)
    np.cumsum(counts, out=indptr[1:])
    order = np.argsort(us, kind="stable")
    return indptr, vs[order]


def build_csr_with_eids(n, us, vs):
    """Like :func:`build_csr` but also returns the edge id of each CSR slot."""
    us = np.asarray(us, dtype=_I)
    vs = np.asarray(vs, dtype=_I)
    counts = np.bincount(us, minlength=n) if len(us) else np.zeros(n, dtype=_I)
    indptr = np.zeros(n + 1, dtype=_I)
    np.cumsum(counts, out=indptr[1:])
    order = np.argsort(us, kind="stable")
    return indptr, vs[order], order.astype(_I)


# --- kernel bodies ---------------------------------------------------------
# Written in nopython style: arrays, ints and while-loops only.


def _tarjan_scc(n, verts, indptr, indices):
    """Iterative Tarjan over the given active vertices.

    Returns (comp, ncomp); comp[v] == -1 for vertices not in ``verts``.
    Component ids are assigned in completion order (not canonical).
    """
    index = np.full(n, -1, dtype=_I)
    low = np.zeros(n, dtype=_I)
    on = np.zeros(n, dtype=np.uint8)
    comp = np.full(n, -1, dtype=_I)
    stack = np.empty(n, dtype=_I)
    cs_v = np.empty(n, dtype=_I)
    cs_e = np.empty(n, dtype=_I)
    sp = 0
    counter = 0
    ncomp = 0
    for ii in range(len(verts)):
        s = verts[ii]
        if index[s] >= 0:
            continue
        top = 0
        cs_v[0] = s
        cs_e[0] = indptr[s]
        index[s] = counter
        low[s] = counter
        counter += 1
        stack[sp] = s
        sp += 1
        on[s] = 1
        while top >= 0:
            v = cs_v[top]
            e = cs_e[top]
            if e < indptr[v + 1]:
                cs_e[top] = e + 1
                w = indices[e]
                if index[w] < 0:
                    index[w] = counter
                    low[w] = counter
                    counter += 1
                    stack[sp] = w
                    sp += 1
                    on[w] = 1
                    top += 1
                    cs_v[top] = w
                    cs_e[top] = indptr[w]
                elif on[w] == 1:
                    if index[w] < low[v]:
                        low[v] = index[w]
            else:
                if low[v] == index[v]:
                    while True:
                        w = stack[sp - 1]
                        sp -= 1
                        on[w] = 0
                        comp[w] = ncomp
                        if w == v:
                            break
                    ncomp += 1
                top -= 1
                if top >= 0:
                    pv = cs_v[top]
                    if low[v] < low[pv]:
                        low[pv] = low[v]
    return comp, ncomp


def _idom_lt(n, root, out_indptr, out_indices, pred_indptr, pred_indices):
    """Immediate dominators via Lengauer-Tarjan with path compression.

    idom[root] == root; idom[v] == -1 for vertices unreachable from root.
    """
    dfnum = np.full(n, -1, dtype=_I)
    vertex = np.empty(n, dtype=_I)
    parent = np.full(n, -1, dtype=_I)
    cs_v = np.empty(n, dtype=_I)
    cs_e = np.empty(n, dtype=_I)
    top = 0
    cs_v[0] = root
    cs_e[0] = out_indptr[root]
    dfnum[root] = 0
    vertex[0] = root
    cnt = 1
    while top >= 0:
        v = cs_v[top]
        e = cs_e[top]
        if e < out_indptr[v + 1]:
            cs_e[top] = e + 1
            w = out_indices[e]
            if dfnum[w] < 0:
                dfnum[w] = cnt
                vertex[cnt] = w
                cnt += 1
                parent[w] = v
                top += 1
                cs_v[top] = w
                cs_e[top] = out_indptr[w]
        else:
            top -= 1

    semi = dfnum.copy()
    ancestor = np.full(n, -1, dtype=_I)
    best = np.arange(n, dtype=_I)
    idom = np.full(n, -1, dtype=_I)
    samedom = np.full(n, -1, dtype=_I)
    bhead = np.full(n, -1, dtype=_I)
    bnext = np.full(n, -1, dtype=_I)
    cstack = np.empty(n, dtype=_I)

    for i in range(cnt - 1, 0, -1):
        w = vertex[i]
        p = parent[w]
        s = semi[w]
        for pe in range(pred_indptr[w], pred_indptr[w + 1]):
            v = pred_indices[pe]
            if dfnum[v] < 0:
                continue
            if dfnum[v] <= dfnum[w]:
                s2 = dfnum[v]
            else:
                # eval(v): ancestor with lowest semi, compressing the path
                x = v
                csp = 0
                while ancestor[x] >= 0 and ancestor[ancestor[x]] >= 0:
                    cstack[csp] = x
                    csp += 1
                    x = ancestor[x]
                while csp > 0:
                    csp -= 1
                    y = cstack[csp]
                    a = ancestor[y]
                    if semi[best[a]] < semi[best[y]]:
                        best[y] = best[a]
                    ancestor[y] = ancestor[a]
                s2 = semi[best[v]]
            if s2 < s:
                s = s2
        semi[w] = s
        sv = vertex[s]
        bnext[w] = bhead[sv]
        bhead[sv] = w
        ancestor[w] = p
        v = bhead[p]
        while v >= 0:
            x = v
            csp = 0
            while ancestor[x] >= 0 and ancestor[ancestor[x]] >= 0:
                cstack[csp] = x
                csp += 1
                x = ancestor[x]
            while csp > 0:
                csp -= 1
                y = cstack[csp]
                a = ancestor[y]
                if semi[best[a]] < semi[best[y]]:
                    best[y] = best[a]
                ancestor[y] = ancestor[a]
            u = best[v]
            if semi[u] < semi[v]:
                samedom[v] = u
            else:
                idom[v] = p
            v = bnext[v]
        bhead[p] = -1

    for i in range(1, cnt):
        w = vertex[i]
        if samedom[w] >= 0:
            idom[w] = idom[samedom[w]]
    idom[root] = root
    return idom


def _bfs_depth(n, src, limit, indptr, indices):
    """BFS from src up to the given edge-distance; returns (dist, edges_scanned)."""
    dist = np.full(n, -1, dtype=_I)
    q = np.empty(n, dtype=_I)
    dist[src] = 0
    q[0] = src
    qh = 0
    qt = 1
    scanned = 0
    while qh < qt:
        v = q[qh]
        qh += 1
        dv = dist[v]
        if dv >= limit:
            continue
        for e in range(indptr[v], indptr[v + 1]):
            scanned += 1
            w = indices[e]
            if dist[w] < 0:
                dist[w] = dv + 1
                q[qt] = w
                qt += 1
    return dist, scanned


def _reach(n, src, indptr, indices):
    vis = np.zeros(n, dtype=np.uint8)
    q = np.empty(n, dtype=_I)
    vis[src] = 1
    q[0] = src
    qh = 0
    qt = 1
    while qh < qt:
        v = q[qh]
        qh += 1
        for e in range(indptr[v], indptr[v + 1]):
            w = indices[e]
            if vis[w] == 0:
                vis[w] = 1
                q[qt] = w
                qt += 1
    return vis


def _reach_skip_vertices(n, src, indptr, indices, blocked):
    vis = np.zeros(n, dtype=np.uint8)
    if blocked[src] == 1:
        return vis
    q = np.empty(n, dtype=_I)
    vis[src] = 1
    q[0] = src
    qh = 0
    qt = 1
    while qh < qt:
        v = q[qh]
        qh += 1
        for e in range(indptr[v], indptr[v + 1]):
            w = indices[e]
            if vis[w] == 0 and blocked[w] == 0:
                vis[w] = 1
                q[qt] = w
                qt += 1
    return vis


def _reach_skip_edges(n, src, indptr, indices, eids, blocked_edges):
    vis = np.zeros(n, dtype=np.uint8)
    q = np.empty(n, dtype=_I)
    vis[src] = 1
    q[0] = src
    qh = 0
    qt = 1
    while qh < qt:
        v = q[qh]
        qh += 1
        for e in range(indptr[v], indptr[v + 1]):
            if blocked_edges[eids[e]] == 1:
                continue
            w = indices[e]
            if vis[w] == 0:
                vis[w] = 1
                q[qt] = w
                qt += 1
    return vis


def _maxflow_upto_k(nn, s, t, k, f_indptr, f_arcs, head, cap, flow):
    """Shortest-augmenting-path max-flow, stopping once the value reaches k.

    Arcs are paired: arc a and a^1 are each other's reverse.  Returns
    (value, augmentations).
    """
    q = np.empty(nn, dtype=_I)
    parc = np.empty(nn, dtype=_I)
    value = 0
    augs = 0
    while value < k:
        for i in range(nn):
            parc[i] = -1
        parc[s] = -2
        q[0] = s
        qh = 0
        qt = 1
        found = False
        while qh < qt and not found:
            u = q[qh]
            qh += 1
            for ai in range(f_indptr[u], f_indptr[u + 1]):
                a = f_arcs[ai]
                if cap[a] - flow[a] > 0:
                    w = head[a]
                    if parc[w] == -1:
                        parc[w] = a
                        if w == t:
                            found = True
                            break
                        q[qt] = w
                        qt += 1
        if not found:
            break
        b = k - value
        u = t
        while u != s:
            a = parc[u]
            r = cap[a] - flow[a]
            if r < b:
                b = r
            u = head[a ^ 1]
        u = t
        while u != s:
            a = parc[u]
            flow[a] += b
            flow[a ^ 1] -= b
            u = head[a ^ 1]
        value += b
        augs += 1
    return value, augs


def _residual_reach(nn, s, f_indptr, f_arcs, head, cap, flow):
    vis = np.zeros(nn, dtype=np.uint8)
    q = np.empty(nn, dtype=_I)
    vis[s] = 1
    q[0] = s
    qh = 0
    qt = 1
    while qh < qt:
        u = q[qh]
        qh += 1
        for ai in range(f_indptr[u], f_indptr[u + 1]):
            a = f_arcs[ai]
            if cap[a] - flow[a] > 0:
                w = head[a]
                if vis[w] == 0:
                    vis[w] = 1
                    q[qt] = w
                    qt += 1
    return vis


# --- backend selection -----------------------------------------------------

_KERNELS = (
    "tarjan_scc",
    "idom_lt",
    "bfs_depth",
    "reach",
    "reach_skip_vertices",
    "reach_skip_edges",
    "maxflow_upto_k",
    "residual_reach",
)

_PY = {
    "tarjan_scc": _tarjan_scc,
    "idom_lt": _idom_lt,
    "bfs_depth": _bfs_depth,
    "reach": _reach,
    "reach_skip_vertices": _reach_skip_vertices,
    "reach_skip_edges": _reach_skip_edges,
    "maxflow_upto_k": _maxflow_upto_k,
    "residual_reach": _residual_reach,
}

if os.environ.get("KCONN_NO_NUMBA", "").strip() in {"1", "true", "yes"}:
    _NB = None
else:
    try:
        import numba

        _NB = {name: numba.njit(cache=True)(fn) for name, fn in _PY.items()}
    except ImportError:
        _NB = None

_ACTIVE = _NB if _NB is not None else _PY
_ACTIVE_NAME = "numba" if _NB is not None else "python"


def available_backends():
    return ("numba", "python") if _NB is not None else ("python",)


def backend():
    return _ACTIVE_NAME


def set_backend(name):
    """Switch kernels between 'numba' and 'python' at runtime."""
    global _ACTIVE, _ACTIVE_NAME
    if name == "python":
        _ACTIVE, _ACTIVE_NAME = _PY, "python"
    elif name == "numba":
        if _NB is None:
            raise RuntimeError("numba backend unavailable (disabled or not installed)")
        _ACTIVE, _ACTIVE_NAME = _NB, "numba"
    else:
        raise ValueError(f"unknown backend {name!r}")


def tarjan_scc(n, verts, indptr, indices):
    return _ACTIVE["tarjan_scc"](n, verts, indptr, indices)


def idom_lt(n, root, out_indptr, out_indices, pred_indptr, pred_indices):
    return _ACTIVE["idom_lt"](n, root, out_indptr, out_indices, pred_indptr, pred_indices)


def bfs_depth(n, src, limit, indptr, indices):
    return _ACTIVE["bfs_depth"](n, src, limit, indptr, indices)


def reach(n, src, indptr, indices):
    return _ACTIVE["reach"](n, src, indptr, indices)


def reach_skip_vertices(n, src, indptr, indices, blocked):
    return _ACTIVE["reach_skip_vertices"](n, src, indptr, indices, blocked)


def reach_skip_edges(n, src, indptr, indices, eids, blocked_edges):
    return _ACTIVE["reach_skip_edges"](n, src, indptr, indices, eids, blocked_edges)


def maxflow_upto_k(nn, s, t, k, f_indptr, f_arcs, head, cap, flow):
    return _ACTIVE["maxflow_upto_k"](nn, s, t, k, f_indptr, f_arcs, head, cap, flow)


def residual_reach(nn, s, f_indptr, f_arcs, head, cap, flow):
    return _ACTIVE["residual_reach"](nn, s, f_indptr, f_arcs, head, cap, flow)
