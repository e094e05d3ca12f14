import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from helpers import fixture_graphs, graph, random_graph
from unirank.errors import DimensionError, DomainError
from unirank.gmatrix import BLOCK_ROWS, GoogleOperator, apply, column_sums_check
from unirank.graph import DirectedGraph, reverse


def test_single_node_fixed_point():
    op = GoogleOperator.from_graph(graph([], 1))
    assert apply(op, [1.0]).tolist() == [1.0]


def test_all_dangling_is_uniform():
    op = GoogleOperator.from_graph(graph([], 2), 0.85)
    assert apply(op, [1.0, 0.0]).tolist() == [0.5, 0.5]


def test_errors():
    op = GoogleOperator.from_graph(graph([(0, 1)]))
    with pytest.raises(DimensionError):
        apply(op, [1.0])
    with pytest.raises(DomainError):
        apply(op, [1.5, -0.5])
    with pytest.raises(DomainError):
        apply(op, [0.7, 0.7])
    with pytest.raises(DomainError):
        GoogleOperator.from_graph(graph([(0, 1)]), alpha=1.0)


@pytest.mark.parametrize("alpha", [0.5, 0.85, 0.95])
def test_matches_dense_operator(alpha):
    rng = np.random.default_rng(7)
    n = 200
    edges = oracles.random_edge_set(rng, n, 0.03)
    g = graph(edges, n)
    dense = oracles.dense_google(edges, n, alpha)
    op = GoogleOperator.from_graph(g, alpha)
    for _ in range(10):
        p = rng.random(n)
        p /= p.sum()
        assert np.abs(apply(op, p) - dense @ p).max() <= 1e-12


def test_reversed_operator_is_transposed_adjacency():
    rng = np.random.default_rng(3)
    n = 60
    edges = oracles.random_edge_set(rng, n, 0.05)
    dense = oracles.dense_google([(b, a) for a, b in edges], n, 0.85)
    op = GoogleOperator.from_graph(graph(edges, n), reversed=True)
    p = np.full(n, 1.0 / n)
    assert np.abs(apply(op, p) - dense @ p).max() <= 1e-12
    assert np.array_equal(apply(op, p),
                          apply(GoogleOperator.from_graph(reverse(graph(edges, n))), p))


@pytest.mark.parametrize("binary", [False, True])
def test_weighted_operator_matches_dense(binary):
    rng = np.random.default_rng(5)
    w = rng.integers(0, 4, size=(25, 25)) * (rng.random((25, 25)) < 0.3)
    w[:, 3] = 0  # a dangling column
    dense = oracles.dense_google_weighted(w, 0.85, binary)
    op = GoogleOperator.from_weights(w, 0.85, binary=binary)
    p = rng.random(25)
    p /= p.sum()
    assert np.abs(apply(op, p) - dense @ p).max() <= 1e-12


def test_column_sums_check_examples():
    assert column_sums_check(GoogleOperator.from_graph(graph([(0, 1), (1, 0)])), 5)
    assert column_sums_check(GoogleOperator.from_graph(graph([(0, 1), (1, 2), (2, 0), (0, 3)])), 5)
    assert column_sums_check(GoogleOperator.from_graph(random_graph(500, 0.01, 9)), 20)
    with pytest.raises(ValueError):
        column_sums_check(GoogleOperator.from_graph(graph([(0, 1)])), 0)


@pytest.mark.parametrize("name,g", list(fixture_graphs().items()))
def test_mass_conservation_on_fixtures(name, g):
    op = GoogleOperator.from_graph(g)
    rng = np.random.default_rng(len(name))
    for _ in range(5):
        p = rng.random(g.node_count)
        q = apply(op, p / p.sum())
        assert abs(math.fsum(q) - 1.0) <= 1e-12
        assert (q >= 0).all()


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 40), st.floats(0.0, 0.3), st.floats(0.05, 0.95),
       st.floats(0.0, 1.0), st.integers(0, 2 ** 32 - 1))
def test_linearity_on_simplex(n, density, alpha, lam, seed):
    rng = np.random.default_rng(seed)
    g = graph(oracles.random_edge_set(rng, n, density), n)
    op = GoogleOperator.from_graph(g, alpha)
    p, q = rng.random(n), rng.random(n)
    p /= p.sum()
    q /= q.sum()
    mix = lam * p + (1 - lam) * q
    mix /= mix.sum()
    lhs = apply(op, mix)
    rhs = lam * apply(op, p) + (1 - lam) * apply(op, q)
    assert np.abs(lhs - rhs).max() <= 1e-12


def test_block_parallel_product_is_bitwise_identical():
    n = BLOCK_ROWS + 5000
    rng = np.random.default_rng(11)
    src = rng.integers(0, n, 4 * n)
    dst = rng.integers(0, n, 4 * n)
    g = DirectedGraph.from_edges(src, dst, n)[0]
    p = rng.random(n)
    p /= p.sum()
    ref = GoogleOperator.from_graph(g, workers=1).step(p)
    for workers in (2, 4, 8):
        assert np.array_equal(GoogleOperator.from_graph(g, workers=workers).step(p), ref)
