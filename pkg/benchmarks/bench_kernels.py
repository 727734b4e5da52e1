"""Compare the compiled and pure-Python search kernels on identical inputs.

Run with ``python benchmarks/bench_kernels.py [--repeat N]``.  Both backends
must return the same answers; the script exits nonzero if they disagree.
"""

import argparse
import sys
import time

from orientchi.constructions import cyclic_tournament, random_oriented, shift_digraph
from orientchi.kernels import available_backends, backend_module

BUDGET = 10**9


def cases():
    for n, p, seed in ((30, 0.5, 1), (40, 0.6, 2), (60, 0.5, 3)):
        G = random_oriented(n, p, seed)
        yield f"clique random n={n} p={p}", "clique", G, None
    G = random_oriented(22, 0.5, 4)
    yield "4-colouring random n=22", "colour", G, 4
    G = shift_digraph(9)
    yield "3-colouring shift n=9 (36 vertices)", "colour", G, 3
    # regular tournaments are robust here, so the whole subset lattice is swept
    yield "robust sweep cyclic tournament n=13 (h=2,k=5)", "robust", cyclic_tournament(6), (2, 5)
    yield "robust sweep cyclic tournament n=15 (h=2,k=6)", "robust", cyclic_tournament(7), (2, 6)


def run(mod, kind, G, arg):
    if kind == "clique":
        return mod.max_clique(G.adj_masks, G.all_mask, BUDGET)[0]
    if kind == "colour":
        res = mod.k_coloring(G.adj_masks, list(G.vertices), arg, (), BUDGET)
        return None if res is None else tuple(res)
    h, k = arg
    return mod.robust_violation(G.out_masks, G.in_masks, G.adj_masks, G.vertex_count, h, k, BUDGET)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; only the Python backend is timed")
    print(f"{'case':42s}" + "".join(f"{b:>12s}" for b in backends) + "     speedup")
    mismatch = False
    for label, kind, G, arg in cases():
        times, answers = [], []
        for b in backends:
            mod = backend_module(b)
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                ans = run(mod, kind, G, arg)
                best = min(best, time.perf_counter() - t0)
            times.append(best)
            answers.append(ans)
        same = all(a == answers[0] for a in answers)
        mismatch |= not same
        speed = f"{times[0] / times[-1]:10.1f}x" if len(times) > 1 else ""
        flag = "" if same else "  MISMATCH"
        print(f"{label:42s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times) + speed + flag)
    return 1 if mismatch else 0


if __name__ == "__main__":
    sys.exit(main())
