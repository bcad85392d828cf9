# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled flow kernels.

Mirrors flow_py exactly: same network layouts, same edge insertion
order, same Dinic traversal order, so both backends produce identical
flows and witnesses.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memset

BACKEND = "compiled"


cdef struct Net:
    int n            # node count
    int ecnt         # directed entries (2 per edge)
    int emax
    int *eto         # entry -> head node; tail(e) == eto[e ^ 1]
    long long *ecap
    int *adj         # CSR adjacency of entry ids
    int *adj_off
    int *level
    int *cursor
    int *path
    int *queue


cdef int net_alloc(Net *net, int n, int emax) except -1:
    net.n = n
    net.ecnt = 0
    net.emax = emax
    net.eto = <int *> malloc(emax * sizeof(int))
    net.ecap = <long long *> malloc(emax * sizeof(long long))
    net.adj = <int *> malloc(emax * sizeof(int))
    net.adj_off = <int *> malloc((n + 1) * sizeof(int))
    net.level = <int *> malloc(n * sizeof(int))
    net.cursor = <int *> malloc(n * sizeof(int))
    net.path = <int *> malloc(n * sizeof(int))
    net.queue = <int *> malloc(n * sizeof(int))
    if (net.eto == NULL or net.ecap == NULL or net.adj == NULL
            or net.adj_off == NULL or net.level == NULL or net.cursor == NULL
            or net.path == NULL or net.queue == NULL):
        raise MemoryError()
    return 0


cdef void net_free(Net *net):
    free(net.eto)
    free(net.ecap)
    free(net.adj)
    free(net.adj_off)
    free(net.level)
    free(net.cursor)
    free(net.path)
    free(net.queue)


cdef inline void net_reset(Net *net):
    net.ecnt = 0


cdef inline void net_add_edge(Net *net, int u, int v, long long c):
    net.eto[net.ecnt] = v
    net.ecap[net.ecnt] = c
    net.ecnt += 1
    net.eto[net.ecnt] = u
    net.ecap[net.ecnt] = 0
    net.ecnt += 1


cdef void net_build_adj(Net *net):
    # net.cursor doubles as the fill pointer; max_flow resets it anyway
    cdef int i, e, tail
    memset(net.adj_off, 0, (net.n + 1) * sizeof(int))
    for e in range(net.ecnt):
        tail = net.eto[e ^ 1]
        net.adj_off[tail + 1] += 1
    for i in range(net.n):
        net.adj_off[i + 1] += net.adj_off[i]
    for i in range(net.n):
        net.cursor[i] = net.adj_off[i]
    for e in range(net.ecnt):
        tail = net.eto[e ^ 1]
        net.adj[net.cursor[tail]] = e
        net.cursor[tail] += 1


cdef long long net_max_flow(Net *net, int s, int t):
    cdef long long flow = 0, push
    cdef int i, u, v, e, qh, qt, plen, cut, advanced
    cdef int *eto = net.eto
    cdef long long *ecap = net.ecap
    while True:
        for i in range(net.n):
            net.level[i] = -1
        net.level[s] = 0
        net.queue[0] = s
        qh = 0
        qt = 1
        while qh < qt:
            u = net.queue[qh]
            qh += 1
            for i in range(net.adj_off[u], net.adj_off[u + 1]):
                e = net.adj[i]
                v = eto[e]
                if ecap[e] > 0 and net.level[v] < 0:
                    net.level[v] = net.level[u] + 1
                    net.queue[qt] = v
                    qt += 1
        if net.level[t] < 0:
            return flow
        for i in range(net.n):
            net.cursor[i] = net.adj_off[i]
        plen = 0
        u = s
        while True:
            if u == t:
                push = ecap[net.path[0]]
                for i in range(1, plen):
                    if ecap[net.path[i]] < push:
                        push = ecap[net.path[i]]
                flow += push
                for i in range(plen):
                    e = net.path[i]
                    ecap[e] -= push
                    ecap[e ^ 1] += push
                cut = 0
                while ecap[net.path[cut]] != 0:
                    cut += 1
                u = eto[net.path[cut] ^ 1]
                plen = cut
                continue
            advanced = 0
            while net.cursor[u] < net.adj_off[u + 1]:
                e = net.adj[net.cursor[u]]
                v = eto[e]
                if ecap[e] > 0 and net.level[v] == net.level[u] + 1:
                    net.path[plen] = e
                    plen += 1
                    u = v
                    advanced = 1
                    break
                net.cursor[u] += 1
            if not advanced:
                if u == s:
                    break
                net.level[u] = -1
                plen -= 1
                u = eto[net.path[plen] ^ 1]


cdef void net_reachable(Net *net, int s, char *seen):
    cdef int qh = 0, qt = 1, u, v, i, e
    memset(seen, 0, net.n * sizeof(char))
    seen[s] = 1
    net.queue[0] = s
    while qh < qt:
        u = net.queue[qh]
        qh += 1
        for i in range(net.adj_off[u], net.adj_off[u + 1]):
            e = net.adj[i]
            v = net.eto[e]
            if net.ecap[e] > 0 and not seen[v]:
                seen[v] = 1
                net.queue[qt] = v
                qt += 1


cdef long long _run_slot_net(Net *net, int n, long long *p, long long *r,
                             long long *d, long long g, long long *slots, int k):
    """Build source -> jobs -> slots -> sink and return the max flow."""
    cdef int j, idx, s = 0, t = n + k + 1
    net_reset(net)
    for j in range(n):
        net_add_edge(net, s, 1 + j, p[j])
    for j in range(n):
        for idx in range(k):
            if r[j] <= slots[idx] < d[j]:
                net_add_edge(net, 1 + j, 1 + n + idx, 1)
    for idx in range(k):
        net_add_edge(net, 1 + n + idx, t, g)
    net_build_adj(net)
    return net_max_flow(net, s, t)


cdef int _fill_longs(object seq, long long *out) except -1:
    cdef int i = 0
    for v in seq:
        out[i] = v
        i += 1
    return i


def check_slots_flow(p, r, d, g, slots):
    """True iff the open slot set can host every job (max flow meets demand)."""
    cdef int n = len(p), k = len(slots)
    cdef long long total = 0, gg = g, value
    cdef int j
    cdef long long *buf = <long long *> malloc((3 * n + k + 1) * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    cdef Net net
    net.eto = NULL
    try:
        _fill_longs(p, buf)
        _fill_longs(r, buf + n)
        _fill_longs(d, buf + 2 * n)
        _fill_longs(slots, buf + 3 * n)
        for j in range(n):
            total += buf[j]
        if gg * k < total:
            return False
        net_alloc(&net, n + k + 2, 2 * (n + n * k + k))
        value = _run_slot_net(&net, n, buf, buf + n, buf + 2 * n, gg, buf + 3 * n, k)
        return value == total
    finally:
        if net.eto != NULL:
            net_free(&net)
        free(buf)


def search_extra(p, r, d, g, forced, free_slots, extra, iv_a, iv_b, iv_need):
    """First feasible slot set ``forced + combo`` over lexicographic combos.

    Same contract as flow_py.search_extra.
    """
    cdef int n = len(p), nf = len(forced), nc = len(free_slots), ni = len(iv_a)
    cdef int ext = extra
    cdef long long gg = g, total = 0
    cdef int i, j, w, pos, a_i, b_i, ok, k = nf + ext
    if ext < 0 or ext > nc:
        return None

    cdef long long *jp = <long long *> malloc((3 * n + 1) * sizeof(long long))
    cdef long long *fslot = <long long *> malloc((nf + nc + k + 1) * sizeof(long long))
    cdef long long *ia = <long long *> malloc((3 * ni + 1) * sizeof(long long))
    cdef int *base = <int *> malloc((2 * ni + 1) * sizeof(int))
    cdef int *slot_iv_off = <int *> malloc((nc + 1) * sizeof(int))
    cdef int *slot_iv = <int *> malloc((nc * ni + 1) * sizeof(int))
    cdef int *comb = <int *> malloc((ext + 1) * sizeof(int))
    if (jp == NULL or fslot == NULL or ia == NULL or base == NULL
            or slot_iv_off == NULL or slot_iv == NULL or comb == NULL):
        raise MemoryError()
    cdef long long *fr = fslot
    cdef long long *fc = fslot + nf
    cdef long long *merged = fslot + nf + nc
    cdef long long *iva = ia
    cdef long long *ivb = ia + ni
    cdef long long *ivneed = ia + 2 * ni
    cdef int *counts = base + ni
    cdef Net net
    net.eto = NULL
    try:
        _fill_longs(p, jp)
        _fill_longs(r, jp + n)
        _fill_longs(d, jp + 2 * n)
        for j in range(n):
            total += jp[j]
        _fill_longs(forced, fr)
        _fill_longs(free_slots, fc)
        _fill_longs(iv_a, iva)
        _fill_longs(iv_b, ivb)
        _fill_longs(iv_need, ivneed)

        for i in range(ni):
            base[i] = 0
        for j in range(nf):
            for i in range(ni):
                if iva[i] <= fr[j] < ivb[i]:
                    base[i] += 1
        pos = 0
        for j in range(nc):
            slot_iv_off[j] = pos
            for i in range(ni):
                if iva[i] <= fc[j] < ivb[i]:
                    slot_iv[pos] = i
                    pos += 1
        slot_iv_off[nc] = pos

        net_alloc(&net, n + k + 2, 2 * (n + n * k + k))
        for i in range(ext):
            comb[i] = i

        while True:
            for i in range(ni):
                counts[i] = base[i]
            for i in range(ext):
                j = comb[i]
                for w in range(slot_iv_off[j], slot_iv_off[j + 1]):
                    counts[slot_iv[w]] += 1
            ok = 1
            for i in range(ni):
                if counts[i] < ivneed[i]:
                    ok = 0
                    break
            if ok and gg * k >= total:
                # merge forced and combo (both ascending) into one sorted set
                a_i = 0
                b_i = 0
                pos = 0
                while a_i < nf or b_i < ext:
                    if b_i >= ext or (a_i < nf and fr[a_i] < fc[comb[b_i]]):
                        merged[pos] = fr[a_i]
                        a_i += 1
                    else:
                        merged[pos] = fc[comb[b_i]]
                        b_i += 1
                    pos += 1
                if _run_slot_net(&net, n, jp, jp + n, jp + 2 * n, gg, merged, k) == total:
                    return tuple(merged[i] for i in range(k))
            # next lexicographic combination
            if ext == 0:
                return None
            i = ext - 1
            while i >= 0 and comb[i] == nc - ext + i:
                i -= 1
            if i < 0:
                return None
            comb[i] += 1
            for j in range(i + 1, ext):
                comb[j] = comb[j - 1] + 1
    finally:
        if net.eto != NULL:
            net_free(&net)
        free(jp)
        free(fslot)
        free(ia)
        free(base)
        free(slot_iv_off)
        free(slot_iv)
        free(comb)


def node_opening_flow(p, adj, cap, g):
    """Max flow on the 4-layer job/node network of an integral opening.

    Same contract as flow_py.node_opening_flow.
    """
    cdef int n = len(p), m = len(cap)
    cdef long long gg = g, value
    cdef int j, i, pos, s = 0, t = n + m + 1
    cdef int n_mid = 0
    for j in range(n):
        n_mid += len(adj[j])

    cdef long long *jp = <long long *> malloc((n + m) * sizeof(long long))
    cdef int *adj_flat = <int *> malloc((n_mid + 1) * sizeof(int))
    cdef int *adj_offj = <int *> malloc((n + 1) * sizeof(int))
    cdef int *mid_entry = <int *> malloc((n_mid + 1) * sizeof(int))
    cdef char *seen = <char *> malloc(n + m + 2)
    if jp == NULL or adj_flat == NULL or adj_offj == NULL or mid_entry == NULL or seen == NULL:
        raise MemoryError()
    cdef long long *xc = jp + n
    cdef Net net
    net.eto = NULL
    try:
        _fill_longs(p, jp)
        _fill_longs(cap, xc)
        pos = 0
        for j in range(n):
            adj_offj[j] = pos
            for i in adj[j]:
                adj_flat[pos] = i
                pos += 1
        adj_offj[n] = pos

        net_alloc(&net, n + m + 2, 2 * (n + n_mid + m))
        for j in range(n):
            net_add_edge(&net, s, 1 + j, jp[j])
        # middle arcs ordered by node index, then job order
        for i in range(m):
            for j in range(n):
                for pos in range(adj_offj[j], adj_offj[j + 1]):
                    if adj_flat[pos] == i:
                        mid_entry[pos] = net.ecnt
                        net_add_edge(&net, 1 + j, 1 + n + i, xc[i])
        for i in range(m):
            net_add_edge(&net, 1 + n + i, t, gg * xc[i])
        net_build_adj(&net)
        value = net_max_flow(&net, s, t)

        flows = []
        for j in range(n):
            flows.append(
                [xc[adj_flat[pos]] - net.ecap[mid_entry[pos]]
                 for pos in range(adj_offj[j], adj_offj[j + 1])]
            )
        net_reachable(&net, s, seen)
        cut_jobs = [1 if seen[1 + j] else 0 for j in range(n)]
        return value, flows, cut_jobs
    finally:
        if net.eto != NULL:
            net_free(&net)
        free(jp)
        free(adj_flat)
        free(adj_offj)
        free(mid_entry)
        free(seen)
