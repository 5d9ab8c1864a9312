import pytest

from facetforest.complex import SimplicialComplex
from facetforest.exceptions import BoxStabilityError, DomainError, ResourceLimitError
from facetforest.graded.base import Relation
from facetforest.graded.presented import PresentedModule
from facetforest.homology import depth_sr
from facetforest.ideal import MonomialIdeal, facet_ideal
from facetforest.koszul import (
    betti_table,
    depth_module,
    koszul_component,
    koszul_descriptor,
    koszul_homology_module,
    koszul_homology_presentation,
    quotient_presentation,
    sliding_depth_check,
    strongly_cm_check,
    tor_betti,
)
from facetforest.linalg import RATIONAL, FieldSpec


class Undersized(PresentedModule):
    """k[x]/(x) with a stable degree that is too small."""

    def stable_degree(self):
        return (0,)


def undersized() -> Undersized:
    relation = Relation((1,), ((0, 1, (1,)),))
    return Undersized(1, [(0,)], [relation], RATIONAL)


class TestKoszulComplex:
    def test_descriptor(self, xy_xz: MonomialIdeal):
        descriptor = koszul_descriptor(xy_xz)
        assert descriptor.q == 2
        assert descriptor.basis_degrees[1] == [((0,), (1, 1, 0)), ((1,), (1, 0, 1))]
        assert descriptor.basis_degrees[2] == [((0, 1), (2, 1, 1))]

    def test_component_shapes(self, xy_xz: MonomialIdeal):
        incoming, outgoing = koszul_component(xy_xz, 1, (1, 1, 1))
        assert incoming.shape == (2, 0)
        assert outgoing.shape == (1, 2)
        incoming, outgoing = koszul_component(xy_xz, 1, (2, 1, 1))
        assert incoming.shape == (2, 1)
        assert (outgoing * incoming).is_zero_matrix

    def test_component_arguments(self, xy_xz: MonomialIdeal):
        with pytest.raises(DomainError):
            koszul_component(xy_xz, -1, (0, 0, 0))
        with pytest.raises(DomainError):
            koszul_component(xy_xz, 0, (0, 0))

    def test_caps(self, xy_xz: MonomialIdeal):
        with pytest.raises(ResourceLimitError):
            koszul_homology_module(xy_xz, 0, max_vars=2)
        with pytest.raises(ResourceLimitError):
            sliding_depth_check(xy_xz, max_gens=1)


class TestModules:
    def test_first_homology_of_xy_xz(self, xy_xz: MonomialIdeal):
        presentation = koszul_homology_presentation(xy_xz, 1)
        assert presentation.generator_degrees == ((1, 1, 1),)
        assert [relation.degree for relation in presentation.relations] == [(2, 1, 1)]
        assert presentation.is_homogeneous()
        assert depth_module(presentation) == 2

    def test_quotient_betti_numbers(self, xy_xz: MonomialIdeal):
        rows = betti_table(quotient_presentation(xy_xz))
        assert rows == [
            {"index": 0, "degree": [0, 0, 0], "rank": 1},
            {"index": 1, "degree": [1, 0, 1], "rank": 1},
            {"index": 1, "degree": [1, 1, 0], "rank": 1},
            {"index": 2, "degree": [1, 1, 1], "rank": 1},
        ]
        table = tor_betti(quotient_presentation(xy_xz))
        assert table.projective_dimension == 2
        assert table.totals() == [1, 2, 1, 0]

    def test_zero_module_has_no_depth(self, xy_xz: MonomialIdeal):
        with pytest.raises(DomainError):
            depth_module(koszul_homology_module(xy_xz, 2))

    def test_h0_agrees_with_stanley_reisner_depth(self, xy_xz: MonomialIdeal):
        assert depth_module(koszul_homology_presentation(xy_xz, 0)) == 1

    def test_h0_relations_are_the_generators(self, xy_xz: MonomialIdeal):
        presentation = koszul_homology_presentation(xy_xz, 0)
        assert presentation.generator_degrees == ((0, 0, 0),)
        assert sorted(relation.degree for relation in presentation.relations) == [
            (1, 0, 1),
            (1, 1, 0),
        ]

    def test_box_stability(self):
        assert tor_betti(undersized(), rounds=2).as_dict() == {(0, (0,)): 1, (1, (1,)): 1}
        with pytest.raises(BoxStabilityError) as info:
            tor_betti(undersized(), rounds=1)
        assert info.value.boxes == ((0,), (1,))


class TestDepthChecks:
    def test_sliding_depth_of_xy_xz(self, xy_xz: MonomialIdeal):
        report = sliding_depth_check(xy_xz)
        assert (report.n, report.q) == (3, 2)
        assert [row.depth for row in report.per_i] == [1, 2, None]
        assert [row.bound for row in report.per_i] == [1, 2, 3]
        assert [row.nonzero for row in report.per_i] == [True, True, False]
        assert report.sliding_depth
        assert report.strongly_cm is None

    def test_strongly_cm_fails_off_cm(self, xy_xz: MonomialIdeal):
        report = strongly_cm_check(xy_xz)
        assert not report.strongly_cm
        assert [row.passed for row in report.per_i] == [False, True, True]

    def test_regular_sequence(self):
        ideal = MonomialIdeal.from_names([["x"], ["y"]])
        report = strongly_cm_check(ideal)
        assert [row.depth for row in report.per_i] == [0, None, None]
        assert report.sliding_depth and report.strongly_cm

    def test_prime_field(self, xy_xz: MonomialIdeal):
        report = sliding_depth_check(xy_xz, FieldSpec("prime", 2))
        assert [row.depth for row in report.per_i] == [1, 2, None]

    @pytest.mark.koszul
    def test_stanley_tree(self, stanley: SimplicialComplex):
        ideal = facet_ideal(stanley)
        assert sliding_depth_check(ideal).sliding_depth
        assert strongly_cm_check(ideal).strongly_cm
        h0 = koszul_homology_presentation(ideal, 0)
        assert len(h0.relations) == len(ideal.generators) == 3
        assert depth_module(h0) == depth_sr(stanley)
