import os
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import digraphs
from orientchi import kernels
from orientchi.budget import BudgetExceeded
from orientchi.constructions import random_oriented, shift_digraph
from orientchi.core import bits
from orientchi.solvers import chromatic_number, clique_number

BACKENDS = kernels.available_backends()


def test_compiled_backend_is_built():
    # the compiled extension is part of the shipped build
    assert "cython" in BACKENDS
    assert kernels.BACKEND == "cython"


@pytest.mark.parametrize("name", BACKENDS)
def test_clique_kernel_matches_oracle(name):
    mod = kernels.backend_module(name)
    for seed in range(40):
        G = random_oriented(9, 0.55, seed)
        mask, _ = mod.max_clique(G.adj_masks, G.all_mask, 10**6)
        assert len(bits(mask)) == oracles.clique_number(G)


@pytest.mark.parametrize("name", BACKENDS)
def test_colouring_kernel(name):
    mod = kernels.backend_module(name)
    for seed in range(30):
        G = random_oriented(7, 0.5, seed)
        chi = oracles.chromatic_number(G)
        verts = list(G.vertices)
        assert mod.k_coloring(G.adj_masks, verts, chi - 1, (), 10**6) is None if chi > 1 else True
        col = mod.k_coloring(G.adj_masks, verts, chi, (), 10**6)
        assert col is not None and max(col) < chi
        assert all(col[u] != col[v] for u, v in G.edges)


@given(digraphs(max_n=9), st.integers(0, 3), st.integers(0, 3))
def test_backends_agree_exactly(G, h, k):
    if len(BACKENDS) < 2:
        pytest.skip("compiled kernels not built")
    py, cy = kernels.backend_module("python"), kernels.backend_module("cython")
    budget = 10**6
    assert py.max_clique(G.adj_masks, G.all_mask, budget) == cy.max_clique(G.adj_masks, G.all_mask, budget)
    verts = list(G.vertices)
    for kk in range(0, 4):
        assert py.k_coloring(G.adj_masks, verts, kk, (), budget) == cy.k_coloring(G.adj_masks, verts, kk, (), budget)
    args = (G.out_masks, G.in_masks, G.adj_masks, G.vertex_count, h, k, budget)
    assert py.robust_violation(*args) == cy.robust_violation(*args)


@pytest.mark.parametrize("name", BACKENDS)
def test_budget_is_enforced(name):
    mod = kernels.backend_module(name)
    G = shift_digraph(8)
    with pytest.raises(BudgetExceeded):
        mod.k_coloring(G.adj_masks, list(G.vertices), 2, (), 1)
    with pytest.raises(BudgetExceeded):
        mod.max_clique(G.adj_masks, G.all_mask, 1)


def test_large_instances_fall_back_to_python():
    G = random_oriented(70, 0.1, 3)
    size, witness = clique_number(G)
    assert all(G.adjacent(u, v) for u in witness.vertices for v in witness.vertices if u != v)
    assert size >= 2
    chi, col = chromatic_number(G)
    assert col.is_proper(G) and chi >= size


def test_pure_python_switch():
    env = dict(os.environ, ORIENTCHI_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import orientchi.kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.backend_module("fortran")


def test_benchmark_backends_agree():
    import runpy
    from pathlib import Path

    bench = runpy.run_path(str(Path(__file__).parents[1] / "benchmarks" / "bench_kernels.py"))
    assert bench["main"](["--repeat", "1"]) == 0
