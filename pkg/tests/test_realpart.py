import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from twistspace.errors import CapExceeded, MissingRotation
from twistspace.gf2 import in_span
from twistspace.graph import HalfEdgeGraph, genus
from twistspace.randgraph import random_identity_graph, random_real_graph
from twistspace.realpart import (
    is_maximal,
    maximal_coset,
    ribbon_boundary_count,
    trace_counts,
    trace_real_part,
    type_classification,
)
from twistspace.wspace import direction_basis, w_kernel


def twist(graphs, name, labels=()):
    g, t = graphs[name]
    return g, t, direction_basis(g, t).twist(labels)


def test_trace_examples(graphs):
    r = trace_real_part(*twist(graphs, "theta"))
    assert (r.count, r.maximal) == (3, True)
    assert trace_real_part(*twist(graphs, "dumbbell")).count == 3
    r = trace_real_part(*graphs["free"])
    assert r.count == 0 and not r.nonempty and not r.maximal


def test_theta_with_input_order_rotation(graphs):
    g, t = graphs["theta"]
    plain = g.with_rotation(None)
    assert trace_real_part(plain, t).count == ribbon_boundary_count(plain, rotation=plain.rotation)


def test_report_serialization(graphs):
    d = trace_real_part(*twist(graphs, "theta")).to_dict()
    assert set(d) == {"genus", "count", "maximal", "nonempty", "components"}
    assert sum(len(c) for c in d["components"]) == 2 * 6


def test_ribbon_examples(graphs):
    g, _ = graphs["theta"]
    assert ribbon_boundary_count(g) == 3 == g.n_edges - g.n_vertices + 2
    assert ribbon_boundary_count(graphs["k4"][0]) == 4
    # one half-twisted edge merges its two faces in the planar embedding
    assert ribbon_boundary_count(g, signs=["e1"]) == 2
    # the input-order rotation of theta is the one-face embedding
    plain = g.with_rotation(None)
    assert ribbon_boundary_count(plain, rotation=plain.rotation) == 1
    assert ribbon_boundary_count(plain, rotation=plain.rotation, signs=["e1"]) == 1
    with pytest.raises(MissingRotation):
        ribbon_boundary_count(HalfEdgeGraph.from_edges([("a", "b")] * 3))


def test_is_maximal_examples(graphs):
    assert is_maximal(*twist(graphs, "theta"))
    assert trace_real_part(*twist(graphs, "theta", ["e3"])).count < 3
    assert not is_maximal(*twist(graphs, "theta", ["e3"]))
    assert not is_maximal(*graphs["free"])


def test_maximal_coset_examples(graphs):
    assert [v.support() for v in maximal_coset(*graphs["theta"]).maximal] == [[]]
    assert sorted(v.support() for v in maximal_coset(*graphs["dumbbell"]).maximal) == [[], ["b"]]
    assert len(maximal_coset(*graphs["k4"]).maximal) == 1
    assert maximal_coset(*graphs["fig2b"]).empty
    with pytest.raises(CapExceeded):
        maximal_coset(*graphs["petersen"], cap=10)


def test_parallel_matches_serial(graphs):
    g, t = graphs["petersen"]
    masks = np.arange(1 << 12)
    assert np.array_equal(trace_counts(g, t, masks, jobs=1), trace_counts(g, t, masks, jobs=4))


def test_type_classification(graphs):
    g, _ = graphs["theta"]
    assert type_classification(g) == "I"
    assert type_classification(g, signs=["e1"]) == "II"
    d, _ = graphs["dumbbell"]
    assert type_classification(d, signs=["b"]) == "I"


@pytest.mark.parametrize("name", ["theta", "dumbbell", "k4", "doubled4", "petersen", "tripod"])
def test_tracer_equals_ribbon_walk(graphs, name):
    g, t = graphs[name]
    basis = direction_basis(g, t)
    k = min(basis.k, 10)
    counts = trace_counts(g, t, np.arange(1 << k))
    for m in range(1 << k):
        signs = [lab for i, lab in enumerate(basis.labels) if (m >> i) & 1]
        assert counts[m] == ribbon_boundary_count(g, signs=signs)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_coset_law_on_random_graphs(seed):
    g, t = random_real_graph(random.Random(seed), 14)
    if direction_basis(g, t).k > 12:
        return
    mc = maximal_coset(g, t)
    assert max(mc.counts) <= genus(g) + 1
    if not mc.empty:
        rep = mc.representative
        w = w_kernel(g, t)
        basis = direction_basis(g, t)
        for m in range(1 << basis.k):
            v = basis.from_mask(m)
            assert (mc.counts[m] == genus(g) + 1) == in_span(w, v + rep)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_random_ribbon_cross_check(seed):
    rng = random.Random(seed)
    g, t = random_identity_graph(rng, 12)
    basis = direction_basis(g, t)
    for _ in range(8):
        m = rng.getrandbits(basis.k) if basis.k else 0
        v = basis.from_mask(m)
        assert trace_real_part(g, t, v).count == ribbon_boundary_count(g, signs=v.support())
