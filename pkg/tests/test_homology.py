import pytest

from facetforest.complex import SimplicialComplex, f_vector, from_names
from facetforest.covers import dim_quotient
from facetforest.harness import enumerate_complexes
from facetforest.homology import (
    chain_complex,
    cm_report,
    depth_of_quotient,
    depth_sr,
    is_cm,
    is_cm_stanley_reisner,
    reduced_homology_ranks,
    reisner_witness,
    witness_names,
)
from facetforest.ideal import MonomialIdeal, facet_ideal, nonface_ideal, zero_ideal
from facetforest.linalg import RATIONAL, FieldSpec

GF2 = FieldSpec("prime", 2)


def alternating_sum(values) -> int:
    return sum(value if j % 2 == 0 else -value for j, value in enumerate(values))


class TestReducedHomology:
    def test_degenerate_complexes(self):
        assert reduced_homology_ranks(from_names([], ["a"])) == [0]
        assert reduced_homology_ranks(from_names([[]], ["a"])) == [1]

    def test_points_and_circle(self):
        assert reduced_homology_ranks(from_names([["a"], ["b"], ["c"]])) == [0, 2]
        circle = from_names([["a", "b"], ["b", "c"], ["a", "c"]])
        assert reduced_homology_ranks(circle) == [0, 0, 1]

    def test_projective_plane_depends_on_the_field(self, rp2: SimplicialComplex):
        assert reduced_homology_ranks(rp2, RATIONAL) == [0, 0, 0, 0]
        assert reduced_homology_ranks(rp2, GF2) == [0, 0, 1, 1]

    @pytest.mark.parametrize("field", [RATIONAL, GF2, FieldSpec("prime", 3)])
    def test_boundary_squares_to_zero(self, rp2: SimplicialComplex, field: FieldSpec):
        assert chain_complex(rp2, field).check()

    @pytest.mark.parametrize("field", [RATIONAL, GF2])
    def test_euler_characteristic(self, rp2: SimplicialComplex, field: FieldSpec):
        for delta in [rp2, *enumerate_complexes(4)]:
            ranks = reduced_homology_ranks(delta, field)
            assert alternating_sum(f_vector(delta)) == alternating_sum(ranks)


class TestCohenMacaulay:
    def test_stanley_is_cm(self, stanley: SimplicialComplex):
        report = is_cm(stanley)
        assert report.cm
        assert report.depth == report.dim == 3
        assert depth_sr(stanley) == 3

    def test_xy_xz_is_not_cm(self, xy_xz: MonomialIdeal):
        report = cm_report(xy_xz)
        assert not report.cm
        assert report.dim == 2
        assert report.depth == 1
        assert depth_of_quotient(xy_xz) == 1
        face, index = witness_names(report.witness)
        assert (face, index) == ([], 0)

    def test_characteristic_two_witness(self, rp2: SimplicialComplex):
        ideal = nonface_ideal(rp2)
        assert cm_report(ideal, RATIONAL).cm
        report = cm_report(ideal, GF2)
        assert not report.cm
        assert witness_names(report.witness) == ([], 1)
        assert (report.depth, report.dim) == (2, 3)

    def test_reisner_on_gamma(self, rp2: SimplicialComplex):
        assert is_cm_stanley_reisner(rp2, RATIONAL)
        assert reisner_witness(rp2, RATIONAL) is None
        assert not is_cm_stanley_reisner(rp2, GF2)

    def test_zero_ideal_is_cm(self):
        report = cm_report(zero_ideal(["x", "y"]))
        assert report.cm and report.depth == 2

    def test_disjoint_edges(self):
        # k[a,b,c,d]/(ab, cd) is a complete intersection
        assert is_cm(from_names([["a", "b"], ["c", "d"]])).cm

    def test_depth_is_bounded_by_dimension(self):
        for delta in enumerate_complexes(4):
            krull = dim_quotient(facet_ideal(delta))
            if krull < 1:
                continue
            depth = depth_sr(delta)
            assert 1 <= depth <= krull
            assert (depth == krull) == is_cm(delta).cm
