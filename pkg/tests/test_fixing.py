from __future__ import annotations

import json
from itertools import combinations
from math import comb

import pytest

from symfix.fixing import (
    analyze,
    fixed_number,
    fixed_vertices,
    fixing_number,
    fixing_polynomial,
    format_polynomial,
    is_fixing_set,
    is_k_fixed,
    metric_dimension,
)
from symfix.graph import (
    DisconnectedGraphError,
    Graph,
    complete_graph,
    cycle_graph,
    path_graph,
    petersen_graph,
    star_graph,
    twin_pairs,
)
from symfix.oracles import automorphisms_by_filter, fixed_number_by_subsets, fixing_number_by_subsets
from symfix.permgroup import CapExceeded, automorphism_group

# smallest asymmetric graph family member: 6 vertices
RIGID = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (3, 5)])


def test_rigid_fixture_is_rigid():
    assert automorphism_group(RIGID).is_trivial()


def test_is_fixing_set_examples():
    assert is_fixing_set(automorphism_group(cycle_graph(5)), {0, 1})
    assert not is_fixing_set(automorphism_group(cycle_graph(4)), {0, 2})
    g = petersen_graph()
    assert is_fixing_set(automorphism_group(g), range(g.n))


@pytest.mark.parametrize("n", range(3, 7))
def test_fixing_number_complete(n):
    assert fixing_number(complete_graph(n))[0] == n - 1


def test_fixing_number_examples():
    assert fixing_number(path_graph(4)) == (1, (0,))
    k, witness = fixing_number(petersen_graph())
    assert k == 3
    assert is_fixing_set(automorphism_group(petersen_graph()), witness)
    assert fixing_number(RIGID) == (0, ())


def test_fixing_number_witness_is_lexicographically_first():
    g = cycle_graph(6)
    group = automorphism_group(g)
    k, witness = fixing_number(g)
    first = next(c for c in combinations(range(g.n), k) if is_fixing_set(group, c))
    assert witness == first


def test_fixing_number_without_enumeration():
    g = complete_graph(7)
    assert fixing_number(g, aut_cap=10) == fixing_number(g)


def test_fixed_number_examples():
    assert fixed_number(cycle_graph(5))[0] == 2
    assert fixed_number(cycle_graph(4)) == (3, (0, 2))
    assert fixed_number(star_graph(4))[0] == 4
    assert fixed_number(RIGID) == (0, None)
    with pytest.raises(CapExceeded):
        fixed_number(complete_graph(7), aut_cap=100)


def test_fixed_vertices_examples():
    assert fixed_vertices(automorphism_group(star_graph(4))) == {0}
    assert fixed_vertices(automorphism_group(cycle_graph(6))) == frozenset()
    assert fixed_vertices(automorphism_group(path_graph(5))) == {2}


def test_fixing_polynomial_examples():
    assert fixing_polynomial(cycle_graph(3)) == [0, 0, 3, 1]
    assert format_polynomial([0, 0, 3, 1]) == "x^3 + 3x^2"
    # values from a direct subset sweep over the 10 automorphisms of C_5
    assert fixing_polynomial(cycle_graph(5)) == [0, 0, 10, 10, 5, 1]
    with pytest.raises(CapExceeded):
        fixing_polynomial(path_graph(8), max_n=6)


def test_fixing_polynomial_without_enumeration():
    g = complete_graph(5)
    assert fixing_polynomial(g, aut_cap=10) == fixing_polynomial(g)


def test_fixing_polynomial_matches_sweep(catalog5):
    for g in catalog5:
        nontrivial = [p for p in automorphisms_by_filter(g) if p != tuple(range(g.n))]
        expected = [
            sum(1 for c in combinations(range(g.n), i) if not any(all(p[v] == v for v in c) for p in nontrivial))
            for i in range(g.n + 1)
        ]
        assert fixing_polynomial(g) == expected


def test_is_k_fixed_examples():
    assert is_k_fixed(path_graph(4)) == 1
    assert is_k_fixed(cycle_graph(4)) is None
    assert is_k_fixed(complete_graph(4)) == 3
    assert is_k_fixed(RIGID) is None


def test_metric_dimension_examples():
    assert metric_dimension(path_graph(4))[0] == 1
    assert metric_dimension(cycle_graph(5))[0] == 2
    assert metric_dimension(complete_graph(4))[0] == 3
    with pytest.raises(DisconnectedGraphError):
        metric_dimension(Graph.from_edges(3, [(0, 1)]))


def test_catalog_fixing_and_fixed_numbers_match_oracles(catalog6):
    for g in catalog6:
        auts = automorphisms_by_filter(g)
        fix, _ = fixing_number(g)
        fxd, _ = fixed_number(g)
        if len(auts) == 1:
            assert fix == fxd == 0
            continue
        assert fix == fixing_number_by_subsets(g, auts), str(g)
        assert fxd == fixed_number_by_subsets(g, auts), str(g)


def test_catalog_inequalities(catalog6):
    for g in catalog6:
        group = automorphism_group(g)
        r = analyze(g, group=group, beta=True)
        assert r.fix <= r.beta
        if group.is_trivial():
            continue
        assert 0 <= r.fix <= r.fxd <= g.n - 1
        assert is_fixing_set(group, r.fix_witness)
        assert len(r.nonfixing_witness) == r.fxd - 1
        assert not is_fixing_set(group, r.nonfixing_witness)
        assert set(r.fixed_vertices) <= set(r.nonfixing_witness)


def test_catalog_twin_characterization(catalog6):
    for g in catalog6:
        group = automorphism_group(g)
        if group.is_trivial():
            continue
        twins = twin_pairs(g)
        assert bool(twins) == (fixed_number(g, group)[0] == g.n - 1)
        for u, v in twins:
            # the complement of a twin pair is never fixing
            assert not is_fixing_set(group, set(range(g.n)) - {u, v})


def test_catalog_fxd_one(catalog6):
    for g in catalog6:
        group = automorphism_group(g)
        if not group.is_trivial() and fixed_number(g, group)[0] == 1:
            assert all(len(b) == group.order for b in group.orbits())
            assert not fixed_vertices(group)


def test_catalog_k_fixed_polynomial(catalog6):
    for g in catalog6:
        k = is_k_fixed(g)
        if k is not None:
            alpha = fixing_polynomial(g)
            assert alpha == [comb(g.n, i) if i >= k else 0 for i in range(g.n + 1)]
            if k == g.n - 1 and twin_pairs(g):
                assert g.is_complete()


def test_report_json_fields():
    report = analyze(cycle_graph(5), beta=True, polynomial=True)
    data = report.to_json()
    assert set(data) == {
        "n", "aut_order", "fix", "fix_witness", "fxd", "nonfixing_witness",
        "fixed_vertices", "k_fixed", "polynomial", "beta",
    }
    assert data["polynomial"] == [0, 0, 10, 10, 5, 1]
    assert data["beta"]["value"] == 2
    assert (data["fix"], data["fxd"], data["k_fixed"]) == (2, 2, 2)
    json.dumps(data)


def test_report_optional_fields_are_null():
    data = analyze(path_graph(3)).to_json()
    assert data["polynomial"] is None and data["beta"] is None
