import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from facetforest import oracles
from facetforest.complex import SimplicialComplex, VertexSet, from_masks, from_names
from facetforest.covers import (
    classify_cover,
    cover_complement_duality,
    covering_number,
    dim_quotient,
    height,
    is_unmixed,
    minimal_primes,
    minimal_transversals,
    minimal_vertex_covers,
    monomial_primes_containing,
    mu_inequality,
    primary_decomposition_expand,
    satisfies_f1,
)
from facetforest.exceptions import DomainError
from facetforest.ideal import MonomialIdeal, facet_complex, facet_ideal


def _names(sets):
    return {tuple(s.names) for s in sets}


def random_complexes(max_vertices: int):
    def build(n):
        names = tuple(f"x{i}" for i in range(n))
        masks = st.lists(st.integers(1, (1 << n) - 1), min_size=1, max_size=8)
        return masks.map(lambda found: from_masks(names, found))

    return st.integers(1, max_vertices).flatmap(build)


class TestCovers:
    def test_stanley_covers(self, stanley: SimplicialComplex):
        assert _names(minimal_vertex_covers(stanley)) == {
            ("x", "w"),
            ("y", "w"),
            ("x", "v"),
            ("x", "u"),
        }
        assert covering_number(stanley) == 2
        assert is_unmixed(stanley)

    def test_classify_cover(self, stanley: SimplicialComplex):
        assert classify_cover(stanley, stanley.vertex_set("xu")).minimal
        assert not classify_cover(stanley, stanley.vertex_set("xuw")).minimal
        assert classify_cover(stanley, stanley.vertex_set("u")) is None

    def test_transversal_edge_cases(self):
        assert minimal_transversals([]) == [0]
        assert minimal_transversals([0, 1]) == []
        assert covering_number(from_names([], ["x"])) == 0
        with pytest.raises(DomainError):
            covering_number(from_names([[]], ["x"]))

    def test_mixed_covers(self, xy_xz: MonomialIdeal):
        assert not is_unmixed(facet_complex(xy_xz))

    @given(random_complexes(8))
    @settings(max_examples=50, deadline=None)
    def test_covers_match_oracle(self, delta: SimplicialComplex):
        assert {frozenset(c.names) for c in minimal_vertex_covers(delta)} == (
            oracles.minimal_vertex_covers(delta)
        )

    @pytest.mark.exhaustive
    @given(random_complexes(12))
    @settings(max_examples=500, deadline=None)
    def test_covers_match_oracle_up_to_twelve_vertices(self, delta: SimplicialComplex):
        assert {frozenset(c.names) for c in minimal_vertex_covers(delta)} == (
            oracles.minimal_vertex_covers(delta)
        )


class TestPrimes:
    def test_minimal_primes_of_xy_xz(self, xy_xz: MonomialIdeal):
        assert [prime.names for prime in minimal_primes(xy_xz)] == [("x",), ("y", "z")]
        assert height(xy_xz) == 1
        assert dim_quotient(xy_xz) == 2

    def test_zero_ideal(self):
        zero = MonomialIdeal(("x", "y"), ())
        assert minimal_primes(zero) == []
        assert height(zero) == 0
        assert dim_quotient(zero) == 2

    def test_primary_decomposition_expand(self, stanley: SimplicialComplex, xy_xz: MonomialIdeal):
        assert primary_decomposition_expand(facet_ideal(stanley)) == facet_ideal(stanley)
        assert primary_decomposition_expand(xy_xz) == xy_xz

    def test_cover_complement_duality(self, stanley: SimplicialComplex, xy_xz: MonomialIdeal):
        assert cover_complement_duality(facet_ideal(stanley))
        assert cover_complement_duality(xy_xz)

    def test_primes_containing(self, xy_xz: MonomialIdeal):
        assert [p.names for p in monomial_primes_containing(xy_xz)] == [
            ("x",),
            ("x", "y"),
            ("x", "z"),
            ("y", "z"),
            ("x", "y", "z"),
        ]

    def test_f1_and_mu(self, xy_xz: MonomialIdeal):
        assert satisfies_f1(xy_xz).holds
        check = mu_inequality(xy_xz)
        assert not check.holds
        assert check.prime == VertexSet.from_names(xy_xz.universe, "yz")
        assert (check.generators, check.bound) == (2, 1)

    def test_f1_on_stanley(self, stanley: SimplicialComplex):
        ideal = facet_ideal(stanley)
        assert satisfies_f1(ideal).holds
        assert mu_inequality(ideal).holds
