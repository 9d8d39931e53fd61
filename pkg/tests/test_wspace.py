import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from twistspace.errors import NotACycle, UnknownLabel
from twistspace.gf2 import in_span, subspace_equal
from twistspace.graph import cycle_basis
from twistspace.randgraph import random_real_graph
from twistspace.wspace import (
    direction_basis,
    h10_dimension,
    mu,
    relative_action,
    same_action,
    w_kernel,
    w_structural,
)


def basis_sets(w):
    return sorted(sorted(v.support()) for v in w.basis())


def brute_w(g, t):
    """W by definition: every twist vector that is orthogonal to mu on all cycle pairs."""
    basis = direction_basis(g, t)
    cb = cycle_basis(g)
    vals = []
    for i in range(cb.genus):
        for j in range(cb.genus):
            vals.append(mu(g, t, cb.cycles[i], cb.cycles[j]).bits)
    return {m for m in range(1 << basis.k) if all(bin(m & v).count("1") % 2 == 0 for v in vals)}


def test_direction_basis_examples(graphs):
    assert direction_basis(*graphs["theta"]).k == 3
    assert direction_basis(*graphs["fig2b"]).k == 4
    g, t = graphs["free"]
    b = direction_basis(g, t)
    assert b.k * 2 == g.n_edges and all(b.is_swapped(i) for i in range(b.k))


def test_mu_examples(graphs):
    g, t = graphs["theta"]
    a = {"e1", "e3"}
    assert sorted(mu(g, t, a, a).support()) == ["e1", "e3"]
    g, t = graphs["dumbbell"]
    assert not mu(g, t, {"lu"}, {"lv"})
    with pytest.raises(NotACycle):
        mu(g, t, {"b"}, {"lu"})


def test_mu_cancels_swapped_pairs(graphs):
    g, t = graphs["free"]
    # a-b-a'-b'-a uses ab with its image ab' and x1 with its image x2
    cyc = {"ab", "x2", "ab'", "x1"}
    assert not mu(g, t, cyc, cyc)


@pytest.mark.parametrize("name,dim", [("theta", 0), ("dumbbell", 1), ("k4", 0), ("doubled4", 1), ("fig2b", 1), ("petersen", 0)])
def test_w_dimension(graphs, name, dim):
    g, t = graphs[name]
    assert w_kernel(g, t).dim == dim
    assert subspace_equal(w_kernel(g, t), w_structural(g, t))


def test_w_bases(graphs):
    assert basis_sets(w_kernel(*graphs["dumbbell"])) == [["b"]]
    assert basis_sets(w_structural(*graphs["doubled4"])) == [["bc", "da"]]
    assert basis_sets(w_kernel(*graphs["fig2b"])) == [["e1", "e2"]]


@pytest.mark.parametrize("name", ["theta", "dumbbell", "k4", "doubled4", "fig2a", "fig2b"])
def test_w_kernel_matches_definition(graphs, name):
    g, t = graphs[name]
    w = w_kernel(g, t)
    assert {v.bits for v in w.elements()} == brute_w(g, t)


def test_relative_action_examples(graphs):
    g, t = graphs["theta"]
    b = direction_basis(g, t)
    assert not relative_action(g, t, b.zero()).any()
    (tree_edge,) = cycle_basis(g).tree_edges
    d = relative_action(g, t, b.twist([g.edge_ids[tree_edge]]))
    assert d.tolist() == [[1, 1], [1, 1]]
    g, t = graphs["dumbbell"]
    assert not relative_action(g, t, direction_basis(g, t).twist(["b"])).any()
    with pytest.raises(UnknownLabel):
        direction_basis(g, t).twist(["nope"])


def test_same_action_examples(graphs):
    g, t = graphs["dumbbell"]
    b = direction_basis(g, t)
    assert same_action(g, t, b.twist(["lu"]), b.twist(["lu"]))
    assert same_action(g, t, b.zero(), b.twist(["b"]))
    g, t = graphs["theta"]
    assert not same_action(g, t, direction_basis(g, t).zero(), direction_basis(g, t).twist(["e3"]))


def test_h10_dimension(graphs):
    for name, (g, t) in graphs.items():
        assert h10_dimension(g) == cycle_basis(g).genus


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10**6))
def test_w_equality_and_action_on_random_graphs(seed):
    rng = random.Random(seed)
    g, t = random_real_graph(rng, 20)
    wk = w_kernel(g, t)
    assert subspace_equal(wk, w_structural(g, t))
    basis = direction_basis(g, t)
    masks = [rng.getrandbits(basis.k) if basis.k else 0 for _ in range(6)]
    for m1 in masks:
        v1 = basis.from_mask(m1)
        d1 = relative_action(g, t, v1)
        assert np.array_equal(d1, d1.T)
        assert (not d1.any()) == in_span(wk, v1)
        for m2 in masks[:2]:
            v2 = basis.from_mask(m2)
            assert np.array_equal(relative_action(g, t, v1 + v2), d1 ^ relative_action(g, t, v2))
