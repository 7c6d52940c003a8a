import math

import networkx as nx
import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from xatlas.graph import LabeledGraph, complete_graph, cycle_graph, delta_y, relator_triangles
from xatlas.spectral import (
    EigenFunction,
    Spectrum,
    bareiss_rank,
    cluster_eigenvalues,
    correspondence_check,
    exact_multiplicity,
    extreme_eigs,
    full_spectrum,
    integer_annihilator_check,
    kernel_lift_check,
    largest_nontrivial,
    lift_eigenfunction,
    poly_matrix,
    ramanujan_check,
    snap,
    spectrum_inclusion,
    sqrt_pairing_check,
    transform_spectrum_check,
)


def test_snap():
    assert snap(2.0000000001)[1:] == ("int", "2")
    assert snap(-math.sqrt(8) + 1e-10)[1:] == ("sqrt", "-sqrt(8)")
    assert snap(math.sqrt(13))[1:] == ("sqrt", "sqrt(13)")
    assert snap(math.pi)[1] == "other"


def test_cluster_multiplicities():
    w = np.array([-1.0, -1.0 + 1e-12, 0.5, 2.0])
    cl = cluster_eigenvalues(w, np.zeros(4))
    assert sorted((c.value, c.mult) for c in cl) == [(-1.0, 2), (0.5, 1), (2.0, 1)]
    with pytest.raises(ValueError):
        Spectrum(cl, 5)


def test_complete_and_cycle_spectra():
    assert full_spectrum(complete_graph(5)).by_symbol() == {"4": 1, "-1": 4}
    s = full_spectrum(cycle_graph(8))
    assert s.by_symbol() == {"2": 1, "sqrt(2)": 2, "0": 2, "-sqrt(2)": 2, "-2": 1}


def test_x2_spectrum(ctx):
    s = ctx.spectrum("x", 2)
    assert s.by_symbol() == {"6": 1, "sqrt(8)": 6, "2": 6, "0": 4, "-2": 9, "-sqrt(8)": 6}
    assert all(c.residual < 1e-9 for c in s.clusters)
    js = s.to_json()
    assert js["n"] == 32 and {"value", "label", "mult", "residual"} <= set(js["clusters"][0])


@pytest.mark.parametrize("k,lam", [(2, 2.828427124746190), (3, 4.340172973252067), (4, 4.475244292138809)])
def test_largest_nontrivial(ctx, k, lam):
    assert abs(largest_nontrivial(ctx.spectrum("x", k), 6.0) - lam) <= 1e-9


@given(st.integers(3, 8), st.integers(0, 1000))
def test_lanczos_agrees_with_dense(d, seed):
    n = 40
    h = nx.random_regular_graph(d, n, seed=seed)
    if not nx.is_connected(h):
        return
    g = LabeledGraph(n, list(h.edges))
    dense = np.linalg.eigvalsh(g.dense())
    assert abs(extreme_eigs(g, tol=1e-10) - dense[-2]) <= 1e-8
    assert abs(extreme_eigs(g, which="smallest", tol=1e-10) - dense[0]) <= 1e-8


def test_lanczos_bipartite_deflation(ctx):
    t = ctx.t(3)
    dense = np.linalg.eigvalsh(t.dense())
    assert abs(extreme_eigs(t, tol=1e-10, deflate_bipartite=True) - dense[-2]) <= 1e-8
    with pytest.raises(ValueError):
        extreme_eigs(ctx.x(2), deflate_bipartite=True)


def test_full_spectrum_rejects_multigraph(ctx):
    with pytest.raises(ValueError):
        full_spectrum(ctx.x(1))
    assert full_spectrum(ctx.x(1), allow_multi=True).n == 4


@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 6), st.integers(0, 10**6))
def test_bareiss_rank_matches_sympy(rows, cols, r, seed):
    rng = np.random.default_rng(seed)
    r = min(r, rows, cols)
    m = rng.integers(-4, 5, (rows, r)) @ rng.integers(-4, 5, (r, cols)) if r else np.zeros((rows, cols), int)
    assert bareiss_rank(m) == sympy.Matrix(m.tolist()).rank()


def test_poly_matrix_exact():
    a = cycle_graph(5).dense(np.int64).astype(object)
    m = poly_matrix(a, [-2, 0, 1])
    assert np.array_equal(np.asarray(m, dtype=np.int64), a.dot(a).astype(np.int64) - 2 * np.eye(5, dtype=np.int64))


def test_annihilator_and_exact_multiplicity():
    g = complete_graph(6)
    assert integer_annihilator_check(g, [[-5, 1], [1, 1]])
    assert not integer_annihilator_check(g, [[1, 1]])
    assert exact_multiplicity(g, [1, 1]) == 5
    assert exact_multiplicity(g, [-5, 1]) == 1


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_correspondence(ctx, k):
    assert correspondence_check(ctx.x(k), ctx.t(k))
    assert not correspondence_check(ctx.x(k), ctx.t(k), diagonal=2)
    assert transform_spectrum_check(ctx.spectrum("x", k), ctx.spectrum("t", k))


def test_lifted_eigenfunctions(ctx, tables):
    x, tri = ctx.x(2), relator_triangles(tables[2])
    t = delta_y(x, tri)
    w, q = np.linalg.eigh(x.dense())
    for j in range(x.n):
        f = EigenFunction(q[:, j], float(w[j]))
        if abs(w[j] + 3) < 1e-9:
            continue
        for sign in (1, -1):
            assert lift_eigenfunction(f, x, tri, sign).verify(t)
    zero = EigenFunction(np.zeros(x.n), 0.0)
    assert kernel_lift_check(zero, x, tri)
    assert not kernel_lift_check(EigenFunction(np.ones(x.n), 6.0), x, tri)


def test_ramanujan(ctx):
    assert ramanujan_check(ctx.spectrum("x", 2), 6).is_ramanujan
    r4 = ramanujan_check(ctx.spectrum("x", 4), 6)
    assert not r4.is_ramanujan and r4.margin < 0
    assert ramanujan_check(complete_graph(5), 4).is_ramanujan


def test_tower_and_pairing(ctx):
    assert spectrum_inclusion(ctx.spectrum("x", 2), ctx.spectrum("x", 3))
    assert not spectrum_inclusion(ctx.spectrum("x", 3), ctx.spectrum("x", 2))
    assert sqrt_pairing_check(ctx.spectrum("x", 2), 8)
