from itertools import combinations

import pytest

from facetforest.complex import SimplicialComplex, VertexSet, from_names
from facetforest.exceptions import MalformedInputError, UnitIdealError
from facetforest.ideal import (
    MonomialIdeal,
    contains,
    extend_universe,
    facet_complex,
    facet_ideal,
    localization_components,
    localize,
    nonface_complex,
    nonface_ideal,
    prime_ideal,
    zero_ideal,
)


def subsets(names):
    return [list(chosen) for r in range(len(names) + 1) for chosen in combinations(names, r)]


def localized(ideal: MonomialIdeal, variables):
    try:
        return localize(ideal, variables)
    except UnitIdealError:
        return None


class TestMonomialIdeal:
    def test_generators_are_minimalized(self):
        ideal = MonomialIdeal.from_names([["x", "y"], ["x"], ["y", "z"]], ["x", "y", "z"])
        assert ideal.generator_names() == [["x"], ["y", "z"]]
        assert str(ideal) == "(x, y*z)"

    def test_unit_ideal_is_rejected(self):
        with pytest.raises(UnitIdealError):
            MonomialIdeal.from_masks(("x",), [0, 1])

    def test_constructor_requires_minimal_generators(self):
        universe = ("x", "y")
        with pytest.raises(MalformedInputError):
            MonomialIdeal(
                universe,
                (VertexSet.from_names(universe, "x"), VertexSet.from_names(universe, "xy")),
            )

    def test_zero_ideal(self):
        zero = zero_ideal(["x", "y"])
        assert zero.is_zero and zero.nvars == 2
        assert str(zero) == "(0)"


class TestTranslations:
    def test_stanley_facet_and_nonface_ideals(self, stanley: SimplicialComplex):
        assert facet_ideal(stanley).generator_names() == [["x", "w"], ["x", "y"], ["u", "v", "w"]]
        assert nonface_ideal(stanley).generator_names() == [
            ["x", "u"],
            ["x", "v"],
            ["y", "u"],
            ["y", "v"],
            ["y", "w"],
        ]

    def test_complexes_of_xy_xz(self, xy_xz: MonomialIdeal):
        assert facet_complex(xy_xz).facet_names() == [["x", "y"], ["x", "z"]]
        assert nonface_complex(xy_xz).facet_names() == [["x"], ["y", "z"]]

    def test_round_trips(self, stanley: SimplicialComplex, xy_xz: MonomialIdeal):
        assert facet_complex(facet_ideal(stanley)) == stanley
        assert nonface_complex(nonface_ideal(stanley)) == stanley
        assert facet_ideal(facet_complex(xy_xz)) == xy_xz
        assert nonface_ideal(nonface_complex(xy_xz)) == xy_xz

    def test_void_complex_has_unit_nonface_ideal(self):
        with pytest.raises(UnitIdealError):
            nonface_ideal(from_names([], ["x"]))

    def test_empty_face_complex(self):
        empty = from_names([[]], ["x", "y"])
        assert nonface_ideal(empty).generator_names() == [["x"], ["y"]]

    def test_unused_variable_is_a_nonface(self):
        delta = from_names([["a"]], ["a", "b"])
        assert nonface_ideal(delta).generator_names() == [["b"]]

    def test_nonface_complex_of_zero_ideal_is_the_simplex(self):
        assert nonface_complex(zero_ideal(["x", "y"])).facet_names() == [["x", "y"]]

    def test_contains(self, xy_xz: MonomialIdeal):
        assert contains(xy_xz, VertexSet.from_names(xy_xz.universe, "xyz"))
        assert not contains(xy_xz, VertexSet.from_names(xy_xz.universe, "yz"))


class TestLocalization:
    def test_localize(self, xy_xz: MonomialIdeal):
        at_x = localize(xy_xz, ["x"])
        assert at_x.universe == ("x",)
        assert at_x.generator_names() == [["x"]]
        at_yz = localize(xy_xz, ["y", "z"])
        assert at_yz.generator_names() == [["y"], ["z"]]
        assert at_yz == prime_ideal(["y", "z"], ["y", "z"])

    def test_localize_at_prime_not_containing_ideal(self, xy_xz: MonomialIdeal):
        with pytest.raises(UnitIdealError):
            localize(xy_xz, ["y"])

    def test_localization_components(self, stanley: SimplicialComplex):
        ideals, isolated = localization_components(facet_ideal(stanley), ["x", "u", "w"])
        assert isolated == ["x"]
        assert [ideal.generator_names() for ideal in ideals] == [[["u", "w"]]]

    def test_extend_universe(self, xy_xz: MonomialIdeal):
        extended = extend_universe(xy_xz, ["w"])
        assert extended.universe == ("x", "y", "z", "w")
        assert extended.generator_names() == xy_xz.generator_names()
        with pytest.raises(MalformedInputError):
            extend_universe(xy_xz, ["x"])

    def test_prime_ideal(self):
        prime = prime_ideal(["x", "y", "z"], ["z", "x"])
        assert prime.generator_names() == [["x"], ["z"]]
        assert prime.universe == ("x", "y", "z")

    def test_localizing_twice(self, stanley: SimplicialComplex, xy_xz: MonomialIdeal):
        for ideal in (facet_ideal(stanley), xy_xz):
            for outer in subsets(ideal.universe):
                once = localized(ideal, outer)
                for inner in subsets(outer):
                    direct = localized(ideal, inner)
                    if once is None:
                        assert direct is None
                    else:
                        assert localized(once, inner) == direct

    def test_localizing_never_adds_generators(self, stanley: SimplicialComplex):
        ideal = facet_ideal(stanley)
        for variables in subsets(ideal.universe):
            local = localized(ideal, variables)
            assert local is None or len(local.generators) <= len(ideal.generators)

    def test_component_split_counts_generators(self, nontree: SimplicialComplex):
        ideal = facet_ideal(nontree)
        for variables in subsets(ideal.universe):
            local = localized(ideal, variables)
            if local is None:
                continue
            parts, isolated = localization_components(ideal, variables)
            assert len(isolated) + sum(len(p.generators) for p in parts) == len(local.generators)
