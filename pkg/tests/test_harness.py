import pytest

from facetforest import forest, oracles
from facetforest.complex import SimplicialComplex, from_names
from facetforest.exceptions import DomainError, NotFoundError, ResourceLimitError
from facetforest.formats import dump_complex, load_complex
from facetforest.harness import (
    FAIL,
    PASS,
    PROPERTIES,
    SKIPPED,
    Exhaustive,
    Property,
    RandomScope,
    VerificationRunner,
    enumerate_complexes,
    random_complex,
    run_property,
    verify,
)
from facetforest.ideal import MonomialIdeal, facet_complex


@pytest.fixture()
async def runner():
    r = VerificationRunner()
    await r.initialize(workers=2)
    yield r
    await r.shutdown(now=True)


def boom(delta):
    raise RuntimeError("boom")


def over_cap(delta):
    raise ResourceLimitError("too big")


class TestEnumeration:
    @pytest.mark.parametrize("v_max, expected", [(1, 1), (2, 3), (3, 8)])
    def test_counts(self, v_max: int, expected: int):
        assert len(list(enumerate_complexes(v_max))) == expected

    def test_classes_are_distinct(self):
        found = list(enumerate_complexes(4))
        assert len({oracles.canonical_form(delta) for delta in found}) == len(found)
        assert all(delta.vertices.names == delta.universe for delta in found)

    def test_facet_bound(self):
        assert [d.facet_names() for d in enumerate_complexes(3, 1)] == [
            [["x0"]],
            [["x0", "x1"]],
            [["x0", "x1", "x2"]],
        ]

    def test_cap(self):
        with pytest.raises(ResourceLimitError):
            list(enumerate_complexes(7))

    def test_random_complexes_are_reproducible(self):
        assert random_complex(5, 4, 11) == random_complex(5, 4, 11)


class TestProperties:
    def test_dimension_on_xy_xz(self, xy_xz: MonomialIdeal):
        [case] = run_property("P-DIM", facet_complex(xy_xz))
        assert case.outcome == PASS
        assert "dim=2" in case.detail

    def test_minimal_primes_of_single_generator(self):
        cases = run_property("P-MINPRIME", from_names([["a", "b", "c"]]))
        assert {case.outcome for case in cases} == {PASS}

    def test_sample_complexes(self, stanley: SimplicialComplex, nontree: SimplicialComplex):
        for property_id in ("P-ROUNDTRIP", "P-FREEVERTEX", "P-GREEDY", "P-TREEDEF", "P-F1"):
            for delta in (stanley, nontree):
                assert all(c.outcome == PASS for c in run_property(property_id, delta))

    def test_forest_properties_skip_non_forests(self, nontree: SimplicialComplex):
        assert run_property("P-LOCFOREST", nontree) == []

    def test_cap_overruns_are_skipped(self, mocker, stanley: SimplicialComplex):
        mocker.patch.dict(PROPERTIES, {"P-CAP": Property("P-CAP", "", "any", over_cap)})
        [case] = run_property("P-CAP", stanley)
        assert case.outcome == SKIPPED

    def test_failures_carry_a_reproducer(self, mocker):
        mocker.patch(
            "facetforest.forest._is_leaf_mask",
            lambda masks, position: bool(forest._universal_positions(masks, position)),
        )
        report = verify(["P-FREEVERTEX"], Exhaustive(2))
        assert not report.all_passed
        failures = report.properties["P-FREEVERTEX"].failures
        assert failures[0].instance == "vertices: x0\nx0\n"
        assert load_complex(failures[0].instance).facet_names() == [["x0"]]


class TestVerify:
    def test_small_exhaustive_run(self):
        report = verify(["P-DIM", "P-MINPRIME"], Exhaustive(3))
        assert report.all_passed
        assert report.properties["P-DIM"].cases == 8
        payload = report.to_json()
        assert payload["scope"] == {"kind": "exhaustive", "vertices": 3, "max_facets": None}
        assert payload["P-DIM"]["failed"] == 0

    def test_random_runs_are_deterministic(self):
        scope = RandomScope(count=5, seed=7, vertices=5, max_facets=4)
        first = verify(["P-GREEDY", "P-LOCFOREST"], scope, threads=2)
        second = verify(["P-GREEDY", "P-LOCFOREST"], scope, threads=1)
        assert first.to_json() == second.to_json()
        assert first.all_passed

    def test_process_pool_matches_threads(self):
        scope = Exhaustive(3)
        threaded = verify(["P-DIM", "P-ROUNDTRIP"], scope, threads=2)
        forked = verify(["P-DIM", "P-ROUNDTRIP"], scope, threads=2, processes=True)
        assert forked.to_json() == threaded.to_json()

    def test_report_lists_properties_next_to_the_scope(self):
        payload = verify(["P-DIM"], Exhaustive(2)).to_json()
        assert set(payload) == {"scope", "P-DIM"}
        assert set(payload["P-DIM"]) == {"cases", "passed", "failed", "skipped", "failures"}

    def test_unknown_property(self):
        with pytest.raises(NotFoundError):
            verify(["P-NOPE"], Exhaustive(1))


class TestVerificationRunner:
    async def test_results_follow_submission_order(self, runner: VerificationRunner, mocker):
        hook = mocker.MagicMock()
        runner.result_hook = hook
        instances = list(enumerate_complexes(3))
        for delta in instances:
            await runner.submit("P-DIM", delta)
        await runner.drain()
        cases = runner.cases()
        assert [case.instance for case in cases] == [dump_complex(delta) for delta in instances]
        assert hook.call_count == len(instances)

    async def test_raising_checker_becomes_a_failure(self, runner: VerificationRunner, mocker):
        mocker.patch.dict(PROPERTIES, {"P-BOOM": Property("P-BOOM", "", "any", boom)})
        await runner.submit("P-BOOM", from_names([["a"]]))
        await runner.submit("P-DIM", from_names([["a"]]))
        await runner.drain()
        first, second = runner.cases()
        assert first.outcome == FAIL and first.detail == "RuntimeError: boom"
        assert second.outcome == PASS

    async def test_unknown_property(self, runner: VerificationRunner):
        with pytest.raises(NotFoundError):
            await runner.submit("P-NOPE", from_names([["a"]]))

    async def test_needs_a_worker(self):
        with pytest.raises(DomainError):
            await VerificationRunner().initialize(workers=0)


@pytest.mark.exhaustive
class TestExhaustiveSuite:
    def test_dualities_up_to_five_vertices(self):
        properties = ["P-PUREUNMIXED", "P-MINPRIME", "P-DIM", "P-FREEVERTEX", "P-ROUNDTRIP"]
        assert verify(properties, Exhaustive(5)).all_passed

    def test_forest_structure_up_to_five_vertices(self):
        properties = ["P-LOCFOREST", "P-GREEDY", "P-TREEDEF", "P-LEAFJOIN", "P-GRAPHTREE"]
        assert verify(properties, Exhaustive(5)).all_passed

    def test_cm_complexes_are_unmixed(self):
        assert verify(["P-CMUNMIXED"], Exhaustive(5)).all_passed

    def test_f1_and_mu(self):
        assert verify(["P-F1", "P-MU"], Exhaustive(5)).all_passed
        scope = RandomScope(count=200, seed=0, vertices=6, max_facets=5)
        assert verify(["P-F1", "P-MU"], scope).all_passed

    def test_f1_and_mu_up_to_six_vertices(self):
        for scope in (Exhaustive(6, 4), RandomScope(count=300, seed=2, vertices=6, max_facets=6)):
            assert verify(["P-F1", "P-MU"], scope, threads=4, processes=True).all_passed


@pytest.mark.koszul
class TestKoszulSuite:
    def test_trees_have_sliding_depth(self):
        assert verify(["P-SLIDE", "P-SCM", "P-FLATEXT"], Exhaustive(4)).all_passed

    def test_random_trees(self):
        scope = RandomScope(count=10, seed=1, vertices=6, max_facets=4)
        assert verify(["P-SLIDE", "P-SCM"], scope).all_passed

    def test_trees_up_to_six_vertices(self):
        properties = ["P-SLIDE", "P-SCM", "P-FLATEXT"]
        report = verify(properties, Exhaustive(6, 4), threads=4, processes=True)
        assert report.all_passed
        assert report.properties["P-SLIDE"].passed > 0
