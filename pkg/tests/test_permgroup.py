from __future__ import annotations

import random
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symfix.graph import complete_graph, cycle_graph, path_graph, petersen_graph, star_graph
from symfix.oracles import automorphisms_by_backtracking, automorphisms_by_filter
from symfix.permgroup import (
    AutGroup,
    CapExceeded,
    Permutation,
    automorphism_group,
    elements,
    fixed_points,
    is_automorphism,
    orbits,
    pointwise_stabilizer,
)

perms = st.integers(1, 8).flatmap(lambda n: st.permutations(range(n)).map(Permutation))


def closure(n, gens):
    """Every product of generators, by breadth-first multiplication."""
    ident = Permutation.identity(n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for s in gens:
                q = s.compose(p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


class TestPermutation:
    def test_rejects_non_bijection(self):
        with pytest.raises(ValueError):
            Permutation([0, 0, 1])

    @given(perms)
    def test_inverse(self, p):
        assert p.compose(p.inverse()).is_identity()
        assert p.inverse().compose(p).is_identity()

    @given(st.integers(1, 7).flatmap(lambda n: st.tuples(*[st.permutations(range(n)).map(Permutation)] * 3)))
    def test_associative(self, triple):
        a, b, c = triple
        assert a.compose(b).compose(c) == a.compose(b.compose(c))

    def test_compose_applies_right_first(self):
        p = Permutation([1, 2, 0])
        q = Permutation([0, 2, 1])
        assert p.compose(q) == Permutation([p[q[v]] for v in range(3)])

    def test_cycle_notation(self):
        p = Permutation([1, 0, 3, 2, 4])
        assert str(p) == "(0 1)(2 3)"
        assert str(Permutation.identity(3)) == "()"
        assert Permutation.parse("(0 1)(2 3)", 5) == p
        assert Permutation.parse("()", 4).is_identity()
        with pytest.raises(ValueError):
            Permutation.parse("0 1", 3)

    @given(perms)
    def test_cycle_round_trip(self, p):
        assert Permutation.parse(str(p), len(p)) == p

    def test_fixed_points(self):
        assert fixed_points(Permutation.identity(5)) == frozenset(range(5))
        assert fixed_points(Permutation([3, 2, 1, 0])) == frozenset()
        assert fixed_points(Permutation([4, 3, 2, 1, 0])) == {2}


class TestAutomorphismGroup:
    def test_orders(self):
        assert automorphism_group(path_graph(4)).order == 2
        assert automorphism_group(complete_graph(5)).order == 120
        # 120 confirmed by the exhaustive backtracking oracle
        assert automorphism_group(petersen_graph()).order == 120

    def test_petersen_matches_oracle(self):
        auts = automorphisms_by_backtracking(petersen_graph())
        group = automorphism_group(petersen_graph())
        assert len(auts) == group.order
        assert set(map(tuple, group.elements())) == set(auts)

    def test_search_cap(self):
        with pytest.raises(CapExceeded):
            automorphism_group(path_graph(5), max_n=4)

    def test_orbits(self):
        assert orbits(automorphism_group(star_graph(4))) == [frozenset({0}), frozenset({1, 2, 3, 4})]
        assert orbits(automorphism_group(cycle_graph(6))) == [frozenset(range(6))]
        assert orbits(automorphism_group(path_graph(5))) == [
            frozenset({0, 4}), frozenset({1, 3}), frozenset({2})
        ]

    def test_pointwise_stabilizer(self):
        c4 = automorphism_group(cycle_graph(4))
        stab = pointwise_stabilizer(c4, {0})
        assert stab.order == 2
        assert [tuple(p) for p in stab.elements()] == [(0, 1, 2, 3), (0, 3, 2, 1)]
        assert pointwise_stabilizer(automorphism_group(cycle_graph(5)), {0, 1}).order == 1
        assert pointwise_stabilizer(c4, range(4)).is_trivial()

    def test_elements(self):
        assert len(elements(automorphism_group(complete_graph(3)))) == 6
        assert set(elements(automorphism_group(path_graph(4)))) == {
            Permutation([0, 1, 2, 3]), Permutation([3, 2, 1, 0])
        }
        assert len(elements(automorphism_group(petersen_graph()), cap=10**6)) == 120
        with pytest.raises(CapExceeded):
            elements(automorphism_group(complete_graph(6)), cap=100)

    def test_deterministic_generators(self):
        a = automorphism_group(petersen_graph()).generators
        b = automorphism_group(petersen_graph()).generators
        assert a == b

    def test_catalog_against_n_factorial_filter(self, catalog6):
        for g in catalog6:
            group = automorphism_group(g)
            brute = automorphisms_by_filter(g)
            assert group.order == len(brute), str(g)
            assert set(map(tuple, group.elements())) == set(brute)

    def test_catalog_generators_are_automorphisms(self, catalog6):
        for g in catalog6:
            group = automorphism_group(g)
            assert all(is_automorphism(g, s) for s in group.generators)
            assert all(is_automorphism(g, s) for s in group.strong_generators)

    def test_orbit_stabilizer(self, catalog6):
        for g in catalog6:
            group = automorphism_group(g)
            for v in range(g.n):
                assert group.order == len(group.orbit(v)) * group.pointwise_stabilizer({v}).order

    def test_order_is_product_of_fundamental_orbits(self, catalog6):
        for g in catalog6:
            group = automorphism_group(g)
            prod = 1
            for size in group.fundamental_orbit_sizes():
                prod *= size
            assert prod == group.order

    def test_stabilizer_order_divides(self, catalog6):
        rng = random.Random(7)
        for g in catalog6:
            group = automorphism_group(g)
            for _ in range(4):
                S = {v for v in range(g.n) if rng.random() < 0.4}
                T = {v for v in range(g.n) if rng.random() < 0.4}
                assert group.pointwise_stabilizer(S).order % group.pointwise_stabilizer(S | T).order == 0

    def test_stabilizer_matches_filter(self, catalog5):
        for g in catalog5:
            group = automorphism_group(g)
            brute = automorphisms_by_filter(g)
            for mask in range(1 << g.n):
                S = [v for v in range(g.n) if mask >> v & 1]
                expected = {p for p in brute if all(p[v] == v for v in S)}
                stab = group.pointwise_stabilizer(S)
                assert set(map(tuple, stab.elements())) == expected


class TestSchreierSims:
    @settings(max_examples=60, deadline=None)
    @given(st.integers(2, 6).flatmap(
        lambda n: st.lists(st.permutations(range(n)).map(Permutation), min_size=1, max_size=3)
    ))
    def test_order_matches_closure(self, gens):
        n = len(gens[0])
        group = AutGroup(n, gens)
        members = closure(n, gens)
        assert group.order == len(members)
        assert set(group.elements()) == members
        for p in permutations(range(n)):
            assert group.contains(p) == (Permutation(p) in members)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 6).flatmap(
        lambda n: st.tuples(
            st.lists(st.permutations(range(n)).map(Permutation), min_size=1, max_size=3),
            st.sets(st.integers(0, n - 1)),
        )
    ))
    def test_pointwise_stabilizer_matches_closure(self, data):
        gens, points = data
        n = len(gens[0])
        members = closure(n, gens)
        expected = {p for p in members if all(p[v] == v for v in points)}
        stab = AutGroup(n, gens).pointwise_stabilizer(points)
        assert set(stab.elements()) == expected
        assert stab.order == len(expected)
