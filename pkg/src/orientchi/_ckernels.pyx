# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_kernels_py``.

Rows are 64-bit words, so callers must route digraphs with more than 64
vertices to the Python kernels (``kernels.py`` does this).  Every function
reproduces the Python version's search order exactly, including tie-breaks.
"""

from libc.stdint cimport uint64_t

from .budget import BudgetExceeded


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int popcount(uint64_t x) nogil:
    return __builtin_popcountll(x)


cdef inline int lowbit(uint64_t x) nogil:
    return __builtin_ctzll(x)


cdef enum:
    MAXN = 64


cdef struct CliqueState:
    uint64_t adj[MAXN]
    uint64_t best
    int best_size
    long long nodes
    long long budget


cdef int _expand(CliqueState* st, uint64_t R, int size, uint64_t P) except -1:
    cdef int order[MAXN]
    cdef int bounds[MAXN]
    cdef int cnt = 0
    cdef int colour = 0
    cdef uint64_t U = P
    cdef uint64_t Q, low, newP
    cdef int v, i
    while U:
        colour += 1
        Q = U
        while Q:
            v = lowbit(Q)
            low = (<uint64_t>1) << v
            Q &= ~st.adj[v] & ~low
            U &= ~low
            order[cnt] = v
            bounds[cnt] = colour
            cnt += 1
    i = cnt - 1
    while i >= 0:
        if size + bounds[i] <= st.best_size:
            return 0
        st.nodes += 1
        if st.nodes > st.budget:
            raise BudgetExceeded(f"clique search exceeded {st.budget} nodes")
        v = order[i]
        newP = P & st.adj[v]
        if newP:
            _expand(st, R | ((<uint64_t>1) << v), size + 1, newP)
        elif size + 1 > st.best_size:
            st.best = R | ((<uint64_t>1) << v)
            st.best_size = size + 1
        P &= ~((<uint64_t>1) << v)
        i -= 1
    return 0


def max_clique(adj, cand, long long budget):
    cdef CliqueState st
    cdef int n = len(adj)
    cdef int v
    if n > MAXN:
        raise ValueError("compiled kernels support at most 64 vertices")
    for v in range(n):
        st.adj[v] = <uint64_t>adj[v]
    st.best = 0
    st.best_size = 0
    st.nodes = 0
    st.budget = budget
    cdef uint64_t c = <uint64_t>cand
    if c:
        _expand(&st, 0, 0, c)
    return int(st.best), st.nodes


cdef struct ColourState:
    uint64_t adj[MAXN]
    uint64_t classes[MAXN]
    int colour[MAXN]
    int k
    long long nodes
    long long budget


cdef int _pick(ColourState* st, uint64_t U, int used) nogil:
    cdef int best_v = -1
    cdef int best_sat = -1
    cdef int best_deg = -1
    cdef uint64_t W = U
    cdef uint64_t a
    cdef int v, c, sat, deg
    while W:
        v = lowbit(W)
        W &= W - 1
        a = st.adj[v]
        sat = 0
        for c in range(used):
            if st.classes[c] & a:
                sat += 1
        deg = popcount(a & U)
        if sat > best_sat or (sat == best_sat and deg > best_deg):
            best_sat = sat
            best_deg = deg
            best_v = v
    return best_v


cdef int _search(ColourState* st, uint64_t U, int used) except -1:
    if not U:
        return 1
    st.nodes += 1
    if st.nodes > st.budget:
        raise BudgetExceeded(f"colouring search exceeded {st.budget} nodes")
    cdef int v = _pick(st, U, used)
    cdef uint64_t a = st.adj[v]
    cdef uint64_t bit = (<uint64_t>1) << v
    cdef int c
    for c in range(used):
        if not (st.classes[c] & a):
            st.classes[c] |= bit
            st.colour[v] = c
            if _search(st, U & ~bit, used):
                return 1
            st.classes[c] &= ~bit
    if used < st.k:
        st.classes[used] |= bit
        st.colour[v] = used
        if _search(st, U & ~bit, used + 1):
            return 1
        st.classes[used] &= ~bit
    st.colour[v] = -1
    return 0


cdef int _colour_into(ColourState* st, uint64_t sub, int k, long long budget) except -1:
    # assumes st.adj filled; no seed
    cdef int c
    st.k = k
    st.nodes = 0
    st.budget = budget
    for c in range(k):
        st.classes[c] = 0
    return _search(st, sub, 0)


def k_coloring(adj, verts, int k, seed, long long budget):
    cdef ColourState st
    cdef int n = len(adj)
    cdef int v, c
    cdef uint64_t sub = 0
    verts = list(verts)
    if not verts:
        return []
    if k <= 0 or len(seed) > k:
        return None
    if n > MAXN:
        raise ValueError("compiled kernels support at most 64 vertices")
    k = min(k, len(verts))
    for v in range(n):
        st.adj[v] = <uint64_t>adj[v]
        st.colour[v] = -1
    for v in verts:
        sub |= (<uint64_t>1) << v
    st.k = k
    st.nodes = 0
    st.budget = budget
    for c in range(k):
        st.classes[c] = 0
    c = 0
    for v in seed:
        st.classes[c] |= (<uint64_t>1) << v
        st.colour[v] = c
        sub &= ~((<uint64_t>1) << v)
        c += 1
    if _search(&st, sub, len(seed)):
        return [st.colour[v] for v in verts]
    return None


def robust_violation(out_adj, in_adj, adj, int n, int h, int k, long long budget):
    cdef uint64_t outs[MAXN]
    cdef uint64_t ins[MAXN]
    cdef ColourState st
    cdef int idx[MAXN]
    cdef int size, i, j, v
    cdef uint64_t Z, outside
    cdef uint64_t full
    cdef long long nodes = 0
    cdef bint ok
    if n > MAXN:
        raise ValueError("compiled kernels support at most 64 vertices")
    full = ((<uint64_t>1) << n) - 1 if n < 64 else ~(<uint64_t>0)
    for v in range(n):
        outs[v] = <uint64_t>out_adj[v]
        ins[v] = <uint64_t>in_adj[v]
        st.adj[v] = <uint64_t>adj[v]
    for size in range(1, n + 1):
        for i in range(size):
            idx[i] = i
        while True:
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"robustness sweep exceeded {budget} nodes")
            Z = 0
            for i in range(size):
                Z |= (<uint64_t>1) << idx[i]
            outside = full & ~Z
            ok = True
            for i in range(size):
                v = idx[i]
                if popcount(outs[v] & outside) >= k and popcount(ins[v] & outside) >= k:
                    ok = False
                    break
            if ok:
                if size <= h:
                    return int(Z)
                if h >= 1 and h <= MAXN and _colour_into(&st, Z, h, budget):
                    return int(Z)
            # next combination in lexicographic order
            i = size - 1
            while i >= 0 and idx[i] == n - size + i:
                i -= 1
            if i < 0:
                break
            idx[i] += 1
            for j in range(i + 1, size):
                idx[j] = idx[j - 1] + 1
    return -1
