"""The executable property suite.

Each property is a checker that takes one complex and returns outcomes; checkers
only call public operations and compare them with the brute-force oracles. The
``VerificationRunner`` fans the (property, instance) cases out to worker tasks
that run checkers in a thread pool, and aggregates results in submission order.
"""
import asyncio
import random
from collections import namedtuple
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from . import forest
from . import oracles
from .complex import (
    SimplicialComplex,
    connected_components,
    dim,
    from_masks,
    is_pure,
    remove_facet,
    restrict,
)
from .config import get_settings
from .covers import (
    cover_complement_duality,
    dim_quotient,
    height,
    is_unmixed,
    minimal_primes,
    minimal_vertex_covers,
    monomial_primes_containing,
    mu_inequality,
    satisfies_f1,
)
from .exceptions import DomainError, NotFoundError, ResourceLimitError
from .formats import dump_complex
from .homology import depth_sr, is_cm
from .ideal import (
    contains,
    extend_universe,
    facet_complex,
    facet_ideal,
    localize,
    nonface_complex,
    nonface_ideal,
    prime_ideal,
)
from .koszul import (
    depth_module,
    koszul_homology_presentation,
    sliding_depth_check,
    strongly_cm_check,
)
from .linalg import RATIONAL, FieldSpec
from .logging import logger
from .util import ensure_async, maximal_masks, popcount

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"

Outcome = namedtuple("Outcome", ["status", "target", "detail"])
Property = namedtuple("Property", ["id", "description", "condition", "check"])
QueuedCheck = namedtuple("QueuedCheck", ["index", "property_id", "instance"])

KOSZUL_MAX_VARS = 6
KOSZUL_MAX_GENS = 4
GF2 = FieldSpec("prime", 2)


@dataclass(frozen=True)
class PropertyCase:
    property_id: str
    instance: str
    target: Optional[str]
    outcome: str
    detail: str = ""


def _outcome(ok: bool, target: Optional[str] = None, detail: str = "") -> Outcome:
    return Outcome(PASS if ok else FAIL, target, detail)


def _names(vertices) -> str:
    return "{" + ",".join(vertices.names) + "}"


def _is_tree(delta: SimplicialComplex) -> bool:
    if not delta.facets or 0 in delta.masks:
        return False
    return len(connected_components(delta)) == 1 and forest.is_tree(delta)


def _is_forest(delta: SimplicialComplex) -> bool:
    return bool(delta.facets) and 0 not in delta.masks and forest.is_forest(delta)


def _koszul_sized(delta: SimplicialComplex) -> bool:
    return len(delta.universe) <= KOSZUL_MAX_VARS and len(delta.facets) <= KOSZUL_MAX_GENS


# Checkers. Each returns a list of outcomes; an empty list means "not applicable".


def check_minimal_primes(delta: SimplicialComplex) -> List[Outcome]:
    ideal = facet_ideal(delta)
    found = {frozenset(prime.names) for prime in minimal_primes(ideal)}
    expected = oracles.minimal_primes(ideal)
    covers = {frozenset(cover.names) for cover in minimal_vertex_covers(delta)}
    return [
        _outcome(found == expected, None, f"primes {sorted(map(sorted, found))}"),
        _outcome(covers == oracles.minimal_vertex_covers(delta), "covers"),
    ]


def check_pure_unmixed(delta: SimplicialComplex) -> List[Outcome]:
    ideal = facet_ideal(delta)
    unmixed = is_unmixed(facet_complex(ideal))
    pure = is_pure(nonface_complex(ideal))
    return [_outcome(unmixed == pure, None, f"unmixed={unmixed} pure={pure}")]


def check_cm_unmixed(delta: SimplicialComplex) -> List[Outcome]:
    outcomes = []
    unmixed = is_unmixed(delta)
    for field_spec in (RATIONAL, GF2):
        report = is_cm(delta, field_spec)
        outcomes.append(
            _outcome(not report.cm or unmixed, str(field_spec), f"cm={report.cm} unmixed={unmixed}")
        )
    return outcomes


def check_localization_forest(delta: SimplicialComplex) -> List[Outcome]:
    if not _is_forest(delta):
        return []
    ideal = facet_ideal(delta)
    outcomes = []
    for prime in monomial_primes_containing(ideal):
        local = facet_complex(localize(ideal, prime))
        outcomes.append(_outcome(forest.is_forest(local), _names(prime), str(local)))
    return outcomes


def _prime_outcomes(ideal, bound_for) -> List[Outcome]:
    minimal = {frozenset(prime.names) for prime in minimal_primes(ideal)}
    outcomes = []
    for prime in monomial_primes_containing(ideal):
        local = localize(ideal, prime)
        mu = len(local.generators)
        bound = bound_for(prime)
        ok = mu <= bound
        if frozenset(prime.names) in minimal:
            ok = ok and local == prime_ideal(prime.names, prime.names)
        outcomes.append(_outcome(ok, _names(prime), f"mu={mu} bound={bound}"))
    return outcomes


def check_mu(delta: SimplicialComplex) -> List[Outcome]:
    if not _is_tree(delta) or not is_cm(delta, RATIONAL).cm:
        return []
    ideal = facet_ideal(delta)
    ideal_height = height(ideal)
    outcomes = _prime_outcomes(ideal, lambda prime: max(ideal_height, len(prime) - 1))
    verdict = mu_inequality(ideal).holds
    outcomes.append(_outcome(verdict == all(o.status == PASS for o in outcomes), "summary"))
    return outcomes


def check_f1(delta: SimplicialComplex) -> List[Outcome]:
    if not _is_tree(delta):
        return []
    ideal = facet_ideal(delta)
    outcomes = _prime_outcomes(ideal, len)
    verdict = satisfies_f1(ideal).holds
    outcomes.append(_outcome(verdict == all(o.status == PASS for o in outcomes), "summary"))
    return outcomes


def check_sliding_depth(delta: SimplicialComplex) -> List[Outcome]:
    if not _is_tree(delta):
        return []
    if not _koszul_sized(delta):
        return [Outcome(SKIPPED, None, "outside the Koszul property caps")]
    ideal = facet_ideal(delta)
    report = sliding_depth_check(ideal)
    depths = [row.depth for row in report.per_i]
    h0 = depth_module(koszul_homology_presentation(ideal, 0))
    sr = depth_sr(delta)
    return [
        _outcome(report.sliding_depth, None, f"depths {depths}, n={report.n}, q={report.q}"),
        _outcome(h0 == sr, "H_0", f"depth_module={h0} depth_sr={sr}"),
    ]


def check_strongly_cm(delta: SimplicialComplex) -> List[Outcome]:
    if not _is_tree(delta) or not is_cm(delta, RATIONAL).cm:
        return []
    if not _koszul_sized(delta):
        return [Outcome(SKIPPED, None, "outside the Koszul property caps")]
    report = strongly_cm_check(facet_ideal(delta))
    depths = [row.depth for row in report.per_i]
    return [_outcome(report.strongly_cm, None, f"depths {depths}, dim={report.per_i[0].bound}")]


def check_dimension(delta: SimplicialComplex) -> List[Outcome]:
    ideal = facet_ideal(delta)
    h, d = height(ideal), dim_quotient(ideal)
    gamma_dim = dim(nonface_complex(ideal))
    brute = oracles.covering_number(delta)
    detail = f"height={h} dim={d} dim(nonface)={gamma_dim} covering={brute}"
    return [_outcome(h + d == ideal.nvars and d == gamma_dim + 1 and h == brute, None, detail)]


def check_free_vertex(delta: SimplicialComplex) -> List[Outcome]:
    outcomes = []
    for facet in delta.facets:
        leaf = forest.is_leaf(delta, facet)
        expected = oracles.is_leaf(delta, facet)
        ok = leaf == expected
        detail = f"is_leaf={leaf} definition={expected}"
        if expected and facet.mask:
            free = oracles.free_vertices(delta, facet)
            ok = ok and bool(free)
            witness = forest.leaf_witness(delta, facet)
            if witness is not None:
                ok = ok and set(witness.free_vertices.names) == free
            detail += f" free={sorted(free)}"
        outcomes.append(_outcome(ok, _names(facet), detail))
    return outcomes


def check_round_trips(delta: SimplicialComplex) -> List[Outcome]:
    if not delta.facets or 0 in delta.masks:
        return []
    failures = []
    ideal = facet_ideal(delta)
    if facet_complex(ideal) != delta:
        failures.append("facet round trip")
    nonfaces = nonface_ideal(delta)
    if nonface_complex(nonfaces) != delta:
        failures.append("non-face round trip")
    if {frozenset(g.names) for g in nonfaces.generators} != oracles.minimal_nonfaces(delta):
        failures.append("non-face generators")
    if {frozenset(f.names) for f in nonface_complex(ideal).facets} != oracles.nonface_facets(
        ideal
    ):
        failures.append("non-face complex")
    if not cover_complement_duality(ideal):
        failures.append("cover/complement duality")
    if any(contains(nonfaces, facet) for facet in delta.facets):
        failures.append("a non-face divides a facet")
    return [_outcome(not failures, None, ", ".join(failures))]


def check_greedy(delta: SimplicialComplex) -> List[Outcome]:
    greedy = forest.greedy_leaf_order(delta) is not None
    is_forest = forest.is_forest(delta)
    ok = greedy or not is_forest
    return [_outcome(ok, None, f"greedy={greedy} forest={is_forest}")]


def check_tree_definitions(delta: SimplicialComplex) -> List[Outcome]:
    if not delta.facets or len(connected_components(delta)) != 1:
        return []
    connected = forest.is_tree(delta, connected_only=True)
    every = forest.is_tree(delta, connected_only=False)
    brute = oracles.is_tree(delta)
    ok = connected == every == brute
    outcomes = [_outcome(ok, None, f"connected={connected} all={every} definition={brute}")]
    if connected:
        outcomes.extend(
            _outcome(forest.is_forest(remove_facet(delta, facet)), _names(facet))
            for facet in delta.facets
        )
    return outcomes


def check_leaf_join(delta: SimplicialComplex) -> List[Outcome]:
    if not _is_tree(delta) or len(delta.facets) < 2:
        return []
    outcomes = []
    for facet in delta.facets:
        if not forest.is_leaf(delta, facet):
            continue
        joined = forest.leaf_join(delta, facet)
        ok = forest.is_forest(joined) and len(joined.facets) <= len(delta.facets) - 1
        outcomes.append(_outcome(ok, _names(facet), str(joined)))
    return outcomes


def check_graph_tree(delta: SimplicialComplex) -> List[Outcome]:
    if not delta.facets or any(popcount(mask) != 2 for mask in delta.masks):
        return []
    if len(connected_components(delta)) != 1:
        return []
    tree = forest.is_tree(delta)
    edges, vertices = len(delta.facets), len(delta.vertices)
    return [_outcome(tree == (edges == vertices - 1), None, f"tree={tree} E={edges} V={vertices}")]


def _fresh_name(universe: Sequence[str]) -> str:
    name = "z"
    while name in universe:
        name += "_"
    return name


def check_flat_extension(delta: SimplicialComplex) -> List[Outcome]:
    if not _is_tree(delta):
        return []
    if len(delta.universe) + 1 > KOSZUL_MAX_VARS or len(delta.facets) > KOSZUL_MAX_GENS - 1:
        return [Outcome(SKIPPED, None, "outside the Koszul property caps")]
    ideal = facet_ideal(delta)
    extended = extend_universe(ideal, [_fresh_name(ideal.universe)])
    before = sliding_depth_check(ideal).per_i
    after = sliding_depth_check(extended).per_i
    outcomes = []
    for old, new in zip(before, after):
        expected = None if old.depth is None else old.depth + 1
        outcomes.append(
            _outcome(new.depth == expected, f"H_{old.i}", f"depth {old.depth} -> {new.depth}")
        )
    return outcomes


PROPERTIES: Dict[str, Property] = {
    prop.id: prop
    for prop in (
        Property("P-MINPRIME", "minimal primes are the minimal vertex covers", "any",
                 check_minimal_primes),
        Property("P-PUREUNMIXED", "facet complex unmixed iff non-face complex pure", "any",
                 check_pure_unmixed),
        Property("P-CMUNMIXED", "Cohen-Macaulay complexes are unmixed", "any",
                 check_cm_unmixed),
        Property("P-LOCFOREST", "localizations of forests are forests", "forest",
                 check_localization_forest),
        Property("P-MU", "mu(I_p) <= max(ht I, ht p - 1) for CM trees", "forest", check_mu),
        Property("P-F1", "trees satisfy condition F1", "forest", check_f1),
        Property("P-SLIDE", "trees have sliding depth", "forest", check_sliding_depth),
        Property("P-SCM", "CM trees are strongly Cohen-Macaulay", "forest", check_strongly_cm),
        Property("P-DIM", "height, dimension and covering number agree", "any",
                 check_dimension),
        Property("P-FREEVERTEX", "leaves agree with the definition and have free vertices",
                 "any", check_free_vertex),
        Property("P-ROUNDTRIP", "ideal/complex translations round trip", "any",
                 check_round_trips),
        Property("P-GREEDY", "forests always strip greedily", "any", check_greedy),
        Property("P-TREEDEF", "tree checks agree and trees are closed under facet removal",
                 "any", check_tree_definitions),
        Property("P-LEAFJOIN", "joining a leaf into its neighbours keeps a forest", "forest",
                 check_leaf_join),
        Property("P-GRAPHTREE", "graph trees have one edge fewer than vertices", "any",
                 check_graph_tree),
        Property("P-FLATEXT", "a fresh variable raises every Koszul depth by one", "forest",
                 check_flat_extension),
    )
}

DEFAULT_PROPERTIES = tuple(PROPERTIES)


def run_property(property_id: str, delta: SimplicialComplex) -> List[PropertyCase]:
    """Run one checker on one instance; cap overruns become skipped cases."""
    prop = PROPERTIES[property_id]
    instance = dump_complex(delta)
    try:
        outcomes = prop.check(delta)
    except ResourceLimitError as e:
        outcomes = [Outcome(SKIPPED, None, str(e))]
    return [
        PropertyCase(property_id, instance, outcome.target, outcome.status, outcome.detail)
        for outcome in outcomes
    ]


# Instances


def _antichains(masks: Sequence[int], limit: Optional[int]) -> Iterator[List[int]]:
    def extend(start: int, chosen: List[int]) -> Iterator[List[int]]:
        if chosen:
            yield chosen
        if limit is not None and len(chosen) >= limit:
            return
        for position in range(start, len(masks)):
            mask = masks[position]
            if all(mask & other not in (mask, other) for other in chosen):
                yield from extend(position + 1, chosen + [mask])

    return extend(0, [])


def _relabelings(n: int) -> List[List[int]]:
    tables = []
    for order in permutations(range(n)):
        table = []
        for mask in range(1 << n):
            image = 0
            for vertex in range(n):
                if mask >> vertex & 1:
                    image |= 1 << order[vertex]
            table.append(image)
        tables.append(table)
    return tables


def enumerate_complexes(
    v_max: int, q_max: Optional[int] = None, *, limit: Optional[int] = None
) -> Iterator[SimplicialComplex]:
    """One complex per isomorphism class, on exactly 1..v_max vertices, ≤ q_max facets.

    Complexes use the vertices x0, x1, ... and classes are told apart by the
    lexicographically least relabeled facet list.
    """
    cap = get_settings().max_enumeration_vertices if limit is None else limit
    if v_max > cap:
        raise ResourceLimitError(f"Enumeration is capped at {cap} vertices, got {v_max}")
    for n in range(1, v_max + 1):
        names = tuple(f"x{i}" for i in range(n))
        full = (1 << n) - 1
        tables = _relabelings(n)
        seen = set()
        for antichain in _antichains(range(1, 1 << n), q_max):
            union = 0
            for mask in antichain:
                union |= mask
            if union != full:
                continue
            key = min(tuple(sorted(table[mask] for mask in antichain)) for table in tables)
            if key in seen:
                continue
            seen.add(key)
            yield from_masks(names, antichain)


def random_complex(vertices: int, max_facets: int, seed: int) -> SimplicialComplex:
    """Uniformly sampled nonempty facets, normalized, over the vertices actually used."""
    rng = random.Random(seed)
    names = tuple(f"x{i}" for i in range(vertices))
    count = rng.randint(1, max_facets)
    masks = maximal_masks(rng.randint(1, (1 << vertices) - 1) for _ in range(count))
    delta = from_masks(names, masks)
    return restrict(delta, delta.vertices.names)


@dataclass(frozen=True)
class Exhaustive:
    vertices: int
    max_facets: Optional[int] = None

    def instances(self, condition: str) -> List[SimplicialComplex]:
        return _exhaustive_instances(self.vertices, self.max_facets)

    def describe(self) -> Dict:
        return {"kind": "exhaustive", "vertices": self.vertices, "max_facets": self.max_facets}


_ENUMERATED: Dict[Tuple[int, Optional[int]], List[SimplicialComplex]] = {}


def _exhaustive_instances(vertices: int, max_facets: Optional[int]) -> List[SimplicialComplex]:
    key = (vertices, max_facets)
    if key not in _ENUMERATED:
        _ENUMERATED[key] = list(enumerate_complexes(vertices, max_facets))
    return _ENUMERATED[key]


@dataclass(frozen=True)
class RandomScope:
    count: int
    seed: int
    vertices: int
    max_facets: int

    def instances(self, condition: str) -> List[SimplicialComplex]:
        if condition == "forest":
            return [
                forest.random_forest(self.vertices, self.max_facets, self.seed + k)
                for k in range(self.count)
            ]
        return [
            random_complex(self.vertices, self.max_facets, self.seed + k)
            for k in range(self.count)
        ]

    def describe(self) -> Dict:
        return {
            "kind": "random",
            "count": self.count,
            "seed": self.seed,
            "vertices": self.vertices,
            "max_facets": self.max_facets,
        }


Scope = Union[Exhaustive, RandomScope]


# Reports


@dataclass
class PropertySummary:
    cases: int = 0
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    failures: List[PropertyCase] = field(default_factory=list)

    def add(self, case: PropertyCase):
        self.cases += 1
        if case.outcome == PASS:
            self.passed += 1
        elif case.outcome == SKIPPED:
            self.skipped += 1
        else:
            self.failed += 1
            self.failures.append(case)


@dataclass
class VerificationReport:
    scope: Dict
    properties: Dict[str, PropertySummary]

    @property
    def all_passed(self) -> bool:
        return all(summary.failed == 0 for summary in self.properties.values())

    def to_json(self) -> Dict:
        """``{"scope": ..., <property id>: {cases, passed, failed, skipped, failures}}``."""
        payload: Dict = {"scope": self.scope}
        for property_id, summary in self.properties.items():
            payload[property_id] = {
                "cases": summary.cases,
                "passed": summary.passed,
                "failed": summary.failed,
                "skipped": summary.skipped,
                "failures": [
                    {"instance": case.instance, "target": case.target, "detail": case.detail}
                    for case in summary.failures
                ],
            }
        return payload


class VerificationRunner:
    """
    Runs property checks on a pool of asyncio workers.

    Cases are queued with an index; workers hand each checker to a thread pool,
    or to a process pool when ``processes=True``, and store its cases under that
    index, so the collected results do not depend on which worker finished first.
    A checker that raises is logged and recorded as a failed case rather than
    stopping the worker.
    """

    def __init__(self):
        self.queue: asyncio.Queue[QueuedCheck] = None
        self.workers: List[asyncio.Task] = []
        self.executor: Executor = None
        self.results: Dict[int, List[PropertyCase]] = {}
        self.result_hook: Callable = None
        self._submitted = 0

    async def initialize(self, *, workers: int = 1, queue_size: int = 0, processes: bool = False):
        if workers < 1:
            raise DomainError(f"Need at least one worker, got {workers}")
        self.queue = asyncio.Queue(queue_size)
        pool = ProcessPoolExecutor if processes else ThreadPoolExecutor
        self.executor = pool(max_workers=workers)
        for _ in range(workers):
            self.workers.append(asyncio.create_task(self._worker()))

    async def submit(self, property_id: str, instance: SimplicialComplex) -> int:
        if property_id not in PROPERTIES:
            raise NotFoundError(f"Unknown property {property_id!r}")
        index = self._submitted
        self._submitted += 1
        await self.queue.put(QueuedCheck(index, property_id, instance))
        return index

    async def drain(self):
        await self.queue.join()

    async def shutdown(self, now: bool = False):
        if not now:
            await self.drain()

        for worker in self.workers:
            worker.cancel()
        await asyncio.gather(*self.workers, return_exceptions=True)
        self.workers = []
        self.queue = None

        if self.executor is not None:
            self.executor.shutdown(wait=True)
            self.executor = None

    async def _worker(self):
        loop = asyncio.get_running_loop()
        while True:
            check = await self.queue.get()
            try:
                cases = await loop.run_in_executor(
                    self.executor, run_property, check.property_id, check.instance
                )
            except Exception as e:
                logger.exception(f"Uncaught exception while checking {check.property_id}")
                cases = [
                    PropertyCase(
                        check.property_id,
                        dump_complex(check.instance),
                        None,
                        FAIL,
                        f"{type(e).__name__}: {e}",
                    )
                ]
            try:
                self.results[check.index] = cases
                if self.result_hook is not None:
                    await ensure_async(self.result_hook)(cases)
            except Exception:
                logger.exception("Uncaught exception found while running result hook")
            finally:
                self.queue.task_done()

    def cases(self) -> List[PropertyCase]:
        return [case for index in sorted(self.results) for case in self.results[index]]


def _summarize(
    property_ids: Iterable[str], scope: Scope, cases: Iterable[PropertyCase]
) -> VerificationReport:
    summaries = {property_id: PropertySummary() for property_id in property_ids}
    for case in cases:
        summaries[case.property_id].add(case)
    return VerificationReport(scope.describe(), summaries)


async def verify_async(
    property_ids: Sequence[str],
    scope: Scope,
    *,
    threads: Optional[int] = None,
    processes: bool = False,
    result_hook: Optional[Callable] = None,
) -> VerificationReport:
    unknown = [property_id for property_id in property_ids if property_id not in PROPERTIES]
    if unknown:
        raise NotFoundError(f"Unknown properties {unknown}; known: {list(PROPERTIES)}")
    threads = threads or get_settings().threads
    logger.info(f"Verifying {list(property_ids)} over {scope.describe()} with {threads} workers")
    runner = VerificationRunner()
    runner.result_hook = result_hook
    await runner.initialize(workers=threads, processes=processes)
    try:
        for property_id in property_ids:
            for instance in scope.instances(PROPERTIES[property_id].condition):
                await runner.submit(property_id, instance)
    finally:
        await runner.shutdown()
    return _summarize(property_ids, scope, runner.cases())


def verify(
    property_ids: Sequence[str],
    scope: Scope,
    *,
    threads: Optional[int] = None,
    processes: bool = False,
) -> VerificationReport:
    """Run the named properties over every instance of ``scope``."""
    return asyncio.run(verify_async(property_ids, scope, threads=threads, processes=processes))
