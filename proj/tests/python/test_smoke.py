import pytest

import tightham as th


def test_complete_hypergraph_has_a_cycle():
    h = th.complete_hypergraph(8)
    assert h.edge_count() == 56
    cycle = th.find_tight_ham_cycle(h)
    assert cycle is not None and len(cycle) == 8
    assert th.is_tight(h, cycle, cycle=True)
    assert th.certify_cycle(h, cycle)


def test_extremal_examples():
    h = th.extremal_example("i", 9)
    assert h.edge_count() == 54
    assert th.min_degrees(h) == (13, 2)
    assert th.find_tight_ham_cycle(h) is None
    assert th.max_matching_size(th.extremal_example("iii", 9)) == 2


def test_h3_round_trip():
    h = th.random_hypergraph(12, 0.5, 3)
    g = th.Hypergraph3.from_h3(h.to_h3())
    assert g.n == 12 and g.edges() == h.edges()


def test_bad_input_raises():
    with pytest.raises(ValueError):
        th.Hypergraph3(4, [(0, 1, 7)])
    with pytest.raises(ValueError):
        th.Hypergraph3.from_h3("h3 4 1\n2 1 0\n")
    with pytest.raises(KeyError):
        th.solve(th.complete_hypergraph(60), bogus=1)


def test_solve_complete_and_extremal():
    r = th.solve(th.complete_hypergraph(60), seed=7)
    assert r["outcome"] == "cycle"
    assert th.certify_cycle(th.complete_hypergraph(60), r["cycle"])
    bad = th.solve(th.extremal_example("i", 60))
    assert bad["outcome"] == "stage_failure"
    assert "cycle" not in bad


def test_solve_is_deterministic():
    h = th.random_hypergraph(60, 0.85, 2)
    assert th.solve(h, seed=3) == th.solve(h, seed=3)
