"""Pure-Python search kernels.

These define the reference semantics of the hot loops; ``_ckernels.pyx``
implements the same functions over 64-bit rows and must return identical
results.  Adjacency is passed as a sequence of int bitmasks.
"""

from itertools import combinations

from .budget import BudgetExceeded


def _colour_sort(adj, P):
    # greedy sequential colouring of P; returns vertices with colour bounds
    order = []
    bounds = []
    colour = 0
    U = P
    while U:
        colour += 1
        Q = U
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            Q &= ~adj[v] & ~low
            U &= ~low
            order.append(v)
            bounds.append(colour)
    return order, bounds


def max_clique(adj, cand, budget):
    """Maximum clique inside the vertex mask ``cand``; returns (mask, nodes)."""
    best = [0, 0]
    nodes = [0]

    def expand(R, size, P):
        order, bounds = _colour_sort(adj, P)
        for i in range(len(order) - 1, -1, -1):
            if size + bounds[i] <= best[1]:
                return
            nodes[0] += 1
            if nodes[0] > budget:
                raise BudgetExceeded(f"clique search exceeded {budget} nodes")
            v = order[i]
            newP = P & adj[v]
            if newP:
                expand(R | (1 << v), size + 1, newP)
            elif size + 1 > best[1]:
                best[0] = R | (1 << v)
                best[1] = size + 1
            P &= ~(1 << v)

    if cand:
        expand(0, 0, cand)
    return best[0], nodes[0]


def k_coloring(adj, verts, k, seed, budget):
    """Proper colouring of the subgraph on ``verts`` with at most ``k`` colours.

    ``seed`` (a clique) is precoloured ``0..len(seed)-1``.  Returns the colour of
    each entry of ``verts`` or ``None`` if no such colouring exists.
    """
    verts = list(verts)
    if not verts:
        return []
    if k <= 0 or len(seed) > k:
        return None
    k = min(k, len(verts))
    sub = 0
    for v in verts:
        sub |= 1 << v
    classes = [0] * k
    colour = {}
    for c, v in enumerate(seed):
        classes[c] |= 1 << v
        colour[v] = c
    uncoloured = sub
    for v in seed:
        uncoloured &= ~(1 << v)
    nodes = [0]

    def pick(U, used):
        best_v = -1
        best_key = None
        W = U
        while W:
            low = W & -W
            v = low.bit_length() - 1
            W ^= low
            a = adj[v]
            sat = 0
            for c in range(used):
                if classes[c] & a:
                    sat += 1
            key = (sat, (a & U).bit_count())
            if best_key is None or key > best_key:
                best_key = key
                best_v = v
        return best_v

    def search(U, used):
        if not U:
            return True
        nodes[0] += 1
        if nodes[0] > budget:
            raise BudgetExceeded(f"colouring search exceeded {budget} nodes")
        v = pick(U, used)
        a = adj[v]
        bit = 1 << v
        for c in range(used):
            if not classes[c] & a:
                classes[c] |= bit
                colour[v] = c
                if search(U & ~bit, used):
                    return True
                classes[c] &= ~bit
        if used < k:
            classes[used] |= bit
            colour[v] = used
            if search(U & ~bit, used + 1):
                return True
            classes[used] &= ~bit
        colour.pop(v, None)
        return False

    if search(uncoloured, len(seed)):
        return [colour[v] for v in verts]
    return None


def robust_violation(out_adj, in_adj, adj, n, h, k, budget):
    """First nonempty Z (size, then lexicographic) witnessing non-robustness.

    Z violates when chi(Z) <= h and every vertex of Z has fewer than ``k``
    out-neighbours or fewer than ``k`` in-neighbours outside Z.  Returns the
    mask of Z, or -1 if the digraph is (h, k)-robust.
    """
    full = (1 << n) - 1
    nodes = 0
    for size in range(1, n + 1):
        for combo in combinations(range(n), size):
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"robustness sweep exceeded {budget} nodes")
            Z = 0
            for v in combo:
                Z |= 1 << v
            outside = full & ~Z
            ok = True
            for v in combo:
                if (out_adj[v] & outside).bit_count() >= k and (in_adj[v] & outside).bit_count() >= k:
                    ok = False
                    break
            if not ok:
                continue
            if size <= h:
                return Z
            if h >= 1 and k_coloring(adj, combo, h, (), budget) is not None:
                return Z
    return -1
