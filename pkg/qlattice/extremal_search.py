"""Exact maximum family search and extremal constructions.

The search is a canonical order set extension backtracking over a ground
family: members are added in increasing canonical index only, so every
candidate family is visited at most once and, the properties being hereditary,
infeasible prefixes are cut right away. Nodes are bounded by

- a greedy coloring of the pairwise compatibility graph (at most one member
  per color class),
- capacity partitions of the property (e.g. chains for k-Sperner),
- an optional theorem bound hint.

The tree is split into root subtrees (one per first member) which are searched
independently, either in sequence or in worker processes. Every subtree starts
from the same greedy lower bound, therefore the merged result does not depend
on the number of workers.
"""
import concurrent.futures
import multiprocessing
import warnings
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

from qlattice.bitmagic import bit_mask, iter_bits, popcount
from qlattice.configuration import CONFIG
from qlattice.constants import SUBSETS, SUBSPACES
from qlattice.error import (
    AmbientMismatch, CapExceeded, CenterTooBig, NotOptimal, RangeError,
    ResourceExhausted, SideConditionViolated,
)
from qlattice.family_properties import (
    MatchingAtMost, NoDSimplex, PropertySpec, matching_number_naive,
)
from qlattice.finite_field import make_field
from qlattice.logging import get_logger
from qlattice.matrix import MatrixGF
from qlattice.qcombinatorics import (
    BoundResult, level_count, middle_levels, resolve_theorem_id, sum_largest,
    theorem_bound,
)
from qlattice.subspace_lattice import (
    Family, Handle, SubsetHandle, SubspaceHandle, canonicalize, enumerate_levels,
    enumerate_subsets, enumerate_subspaces, intersection, span,
)
from qlattice.utils import grid_points


__all__ = [
    'SearchProblem', 'SearchResult', 'level_ground', 'max_family',
    'build_star', 'build_full_levels', 'Classification', 'classify_family',
    'EqualityReport', 'check_equality_characterization', 'ConjectureRow',
    'explore_conjecture', 'CONJECTURES', 'resolve_conjecture_id',
]


LOGGER = get_logger(__name__)

Number = Union[int, Fraction]


class SearchProblem(NamedTuple):

    """Maximum family search problem.

    Args:
        ground: Candidate members.
        spec: Hereditary property.
        bound_hint: Theorem bound used for pruning. Only used when its side
            conditions hold and it is not an asymptotic statement.
        weights: Member weight per level. Plain cardinality if None.
        node_cap: Search nodes per root subtree.
        witness_cap: Maximum number of reported maximum families.
        threads: Worker processes.
        symmetry: Fix the first member up to the transitive ambient symmetry.
            Only applies to full single level grounds.
    """

    ground: Family
    spec: PropertySpec
    bound_hint: Optional[BoundResult] = None
    weights: Optional[Tuple[Number, ...]] = None
    node_cap: Optional[int] = None
    witness_cap: Optional[int] = None
    threads: Optional[int] = None
    symmetry: bool = False


class SearchResult(NamedTuple):

    """Outcome of a maximum family search."""

    max_size: int
    """Size of the first maximum family."""

    witnesses: Tuple[Family, ...]
    """Maximum families in canonical order. At most witness cap many."""

    nodes_explored: int
    proven_optimal: bool
    max_weight: Optional[Number] = None
    """Optimum weight for weighted searches."""

    symmetry_reduced: bool = False
    """Witnesses all contain the first ground member."""

    witnesses_complete: bool = True
    """Witness list was not truncated by the witness cap."""


def level_ground(kind: str, n: int, dims: Iterable[int], q: Optional[int] = None,
                 cap: Optional[int] = None) -> Family:
    """Ground family of full levels.

    Example:
        >>> len(level_ground(SUBSPACES, 4, dims=[1, 2], q=2))
        50
    """
    return enumerate_levels(kind, n, dims, q=q, cap=cap)


class _SearchContext(NamedTuple):

    elements: Tuple[Handle, ...]
    spec: Optional[PropertySpec]
    compat: Tuple[int, ...]
    allowed: int
    weights: Tuple[Number, ...]
    max_weight: Number
    partitions: Tuple[Tuple[Tuple[int, ...], int], ...]
    hint: Optional[Number]
    initial: Number
    node_cap: int
    witness_cap: int


class _SubtreeOutcome(NamedTuple):

    root: int
    best: Optional[Number]
    witnesses: Tuple[Tuple[int, ...], ...]
    nodes: int
    exhausted: bool


class _NodeCapReached(Exception):
    pass


class _SubtreeSearch:

    """Backtracking below one root member."""

    def __init__(self, ctx: _SearchContext):
        self.ctx = ctx
        self.best = ctx.initial
        self.witnesses: List[Tuple[int, ...]] = []
        self.nodes = 0

    def run(self, root: int) -> _SubtreeOutcome:
        ctx = self.ctx
        candidates = (ctx.compat[root] >> (root + 1)) << (root + 1)
        try:
            self._expand([root], ctx.weights[root], candidates)
            exhausted = False
        except _NodeCapReached:
            exhausted = True

        best = self.best if self.witnesses else None
        return _SubtreeOutcome(root, best, tuple(self.witnesses), self.nodes, exhausted)

    def _worth(self, bound: Number) -> bool:
        if self.ctx.hint is not None:
            bound = min(bound, self.ctx.hint)

        if bound > self.best:
            return True

        return bound == self.best and len(self.witnesses) < self.ctx.witness_cap

    def _record(self, chosen: List[int], value: Number):
        if value > self.best:
            self.best = value
            self.witnesses = [tuple(chosen)]
        elif value == self.best and len(self.witnesses) < self.ctx.witness_cap:
            self.witnesses.append(tuple(chosen))

    def _coloring_bound(self, candidates: int) -> Number:
        compat, weights = self.ctx.compat, self.ctx.weights
        total = 0
        uncolored = candidates
        while uncolored:
            heaviest = 0
            klass = uncolored
            while klass:
                low = klass & -klass
                v = low.bit_length() - 1
                klass &= ~compat[v]
                klass ^= low
                uncolored ^= low
                if weights[v] > heaviest:
                    heaviest = weights[v]

            total += heaviest

        return total

    def _capacity_bound(self, chosen_mask: int, candidates: int) -> Number:
        bound = None
        for groups, capacity in self.ctx.partitions:
            count = 0
            for group in groups:
                inside = popcount(candidates & group)
                if inside:
                    count += min(inside, max(0, capacity - popcount(chosen_mask & group)))

            if bound is None or count < bound:
                bound = count

        return bound * self.ctx.max_weight

    def _expand(self, chosen: List[int], value: Number, candidates: int):
        ctx = self.ctx
        self.nodes += 1
        if self.nodes > ctx.node_cap:
            raise _NodeCapReached()

        self._record(chosen, value)
        if not candidates:
            return

        if not self._worth(value + ctx.max_weight * popcount(candidates)):
            return

        if ctx.spec is not None and ctx.spec.has_pairs:
            bound = self._coloring_bound(candidates)
        else:
            bound = ctx.max_weight * popcount(candidates)

        if ctx.partitions:
            chosen_mask = sum(1 << i for i in chosen)
            bound = min(bound, self._capacity_bound(chosen_mask, candidates))

        if not self._worth(value + bound):
            return

        members = None
        remaining = candidates
        while remaining:
            if not self._worth(value + ctx.max_weight * popcount(remaining)):
                break

            low = remaining & -remaining
            v = low.bit_length() - 1
            remaining ^= low
            if ctx.spec is not None and not ctx.spec.is_pairwise:
                if members is None:
                    members = [ctx.elements[i] for i in chosen]

                if not ctx.spec.extends(members, ctx.elements[v]):
                    continue

            chosen.append(v)
            self._expand(chosen, value + ctx.weights[v], remaining & ctx.compat[v])
            chosen.pop()


def _search_root(ctx: _SearchContext, root: int) -> _SubtreeOutcome:
    outcome = _SubtreeSearch(ctx).run(root)
    LOGGER.debug(
        'Subtree %d: best %s, %d witnesses, %d nodes%s',
        root, outcome.best, len(outcome.witnesses), outcome.nodes,
        ' (node cap reached)' if outcome.exhausted else '',
    )
    return outcome


_WORKER_CONTEXT: Optional[_SearchContext] = None


def _init_worker(ctx: _SearchContext):
    global _WORKER_CONTEXT
    _WORKER_CONTEXT = ctx


def _search_root_in_worker(root: int) -> _SubtreeOutcome:
    return _search_root(_WORKER_CONTEXT, root)


def _make_executor(threads: int, ctx: _SearchContext) -> concurrent.futures.Executor:
    """Process pool with fork start method where available."""
    try:
        mp_context = multiprocessing.get_context('fork')
    except ValueError:
        mp_context = None

    return concurrent.futures.ProcessPoolExecutor(
        max_workers=threads,
        mp_context=mp_context,
        initializer=_init_worker,
        initargs=(ctx,),
    )


def _usable_hint(hint: Optional[BoundResult]) -> Optional[Number]:
    if hint is None:
        return None

    if not hint.side_conditions_hold or hint.asymptotic:
        LOGGER.warning('Ignoring bound hint %s: side conditions do not hold or bound is asymptotic', hint.theorem_id)
        return None

    return hint.value


def _element_weights(ground: Family, weights: Optional[Sequence[Number]]) -> Tuple[Number, ...]:
    if weights is None:
        return (1,) * len(ground)

    if len(weights) <= max(ground.level_set, default=0):
        raise RangeError(f'Weight vector of length {len(weights)} does not cover level {max(ground.level_set)}')

    if any(w < 0 for w in weights):
        raise RangeError('Weights have to be non-negative')

    return tuple(Fraction(weights[e.level]) for e in ground)


def _build_context(problem: SearchProblem, spec: Optional[PropertySpec], weights: Tuple[Number, ...],
                   node_cap: int, witness_cap: int) -> _SearchContext:
    elements = problem.ground.elements
    size = len(elements)
    if spec is None:
        allowed = bit_mask(size)
    else:
        allowed = sum(1 << i for i, e in enumerate(elements) if spec.allows(e) and spec.extends([], e))

    compat = []
    for i, a in enumerate(elements):
        if not allowed >> i & 1:
            compat.append(0)
            continue

        mask = allowed & ~(1 << i)
        if spec is not None and spec.has_pairs:
            for j in iter_bits(mask):
                if not spec.pair_ok(a, elements[j]):
                    mask &= ~(1 << j)

        compat.append(mask)

    partitions = ()
    if spec is not None:
        partitions = tuple((p.groups, p.capacity) for p in spec.capacity_partitions(elements))

    return _SearchContext(
        elements=elements,
        spec=spec,
        compat=tuple(compat),
        allowed=allowed,
        weights=weights,
        max_weight=max(weights, default=1),
        partitions=partitions,
        hint=_usable_hint(problem.bound_hint),
        initial=0,
        node_cap=node_cap,
        witness_cap=witness_cap,
    )


def _greedy(ctx: _SearchContext) -> Tuple[Number, Tuple[int, ...]]:
    """Deterministic greedy lower bound in canonical order."""
    chosen: List[int] = []
    common = ctx.allowed
    value = 0
    for v in iter_bits(ctx.allowed):
        if not common >> v & 1:
            continue

        if ctx.spec is not None and not ctx.spec.is_pairwise:
            if not ctx.spec.extends([ctx.elements[i] for i in chosen], ctx.elements[v]):
                continue

        chosen.append(v)
        value += ctx.weights[v]
        common &= ctx.compat[v]

    return value, tuple(chosen)


def _symmetric_root(problem: SearchProblem) -> bool:
    ground = problem.ground
    if not problem.symmetry or len(ground) == 0:
        return False

    k = ground.uniform_level
    if k is None:
        LOGGER.info('Symmetry reduction needs a single level ground, searching without')
        return False

    full = len(ground) == level_count(ground.n, k, ground.q)
    if not full:
        LOGGER.info('Symmetry reduction needs a full level ground, searching without')

    return full


def _run(problem: SearchProblem, symmetric: bool) -> Tuple[SearchResult, bool]:
    ground = problem.ground
    node_cap = problem.node_cap or CONFIG['Caps']['NODE_CAP']
    witness_cap = max(1, problem.witness_cap or CONFIG['Caps']['WITNESS_CAP'])
    threads = max(1, problem.threads or CONFIG['General']['THREADS'])
    weights = _element_weights(ground, problem.weights)
    spec = problem.spec.restricted(ground.level_set)

    ctx = _build_context(problem, spec, weights, node_cap, witness_cap)
    initial, greedy = _greedy(ctx)
    ctx = ctx._replace(initial=initial)

    roots = list(iter_bits(ctx.allowed))
    if symmetric and roots:
        roots = roots[:1]

    LOGGER.info(
        'Searching %s over %d members (%d roots, greedy lower bound %s, %d worker(s))',
        problem.spec, len(ground), len(roots), initial, threads,
    )

    if threads > 1 and len(roots) > 1:
        with _make_executor(threads, ctx) as executor:
            chunksize = max(1, len(roots) // (4 * threads))
            outcomes = list(executor.map(_search_root_in_worker, roots, chunksize=chunksize))
    else:
        outcomes = [_search_root(ctx, root) for root in roots]

    best: Number = initial
    found: List[Tuple[int, ...]] = []
    for outcome in outcomes:
        if outcome.best is None:
            continue

        if outcome.best > best:
            best = outcome.best
            found = list(outcome.witnesses)
        elif outcome.best == best:
            found.extend(outcome.witnesses)

    if not found:
        # Subtrees only record families at least as good as the greedy one.
        # The empty family is admissible for every hereditary property.
        found = [greedy]

    complete = len(found) < witness_cap
    found = found[:witness_cap]
    exhausted = any(outcome.exhausted for outcome in outcomes)
    witnesses = tuple(ground.subfamily(indices) for indices in found)
    result = SearchResult(
        max_size=len(found[0]),
        witnesses=witnesses,
        nodes_explored=1 + sum(outcome.nodes for outcome in outcomes),
        proven_optimal=not exhausted,
        max_weight=best if problem.weights is not None else None,
        symmetry_reduced=symmetric and len(roots) == 1,
        witnesses_complete=complete,
    )
    return result, exhausted


def max_family(problem: SearchProblem) -> SearchResult:
    """Exact maximum family with the given property.

    Args:
        problem: Search problem.

    Returns:
        Search result. Witnesses are in canonical order (lexicographic on
        member indices of the ground).

    Raises:
        ResourceExhausted: Some subtree ran out of nodes. Carries the best
            found result with proven_optimal=False.

    Example:
        >>> ground = level_ground(SUBSETS, 4, [2])
        ... max_family(SearchProblem(ground, Intersecting())).max_size
        3
    """
    symmetric = _symmetric_root(problem)
    result, exhausted = _run(problem, symmetric)
    if exhausted:
        raise ResourceExhausted(
            f'Node cap reached, best found {result.max_weight or result.max_size} is a lower bound',
            partial=result,
        )

    if symmetric and len(problem.ground) <= CONFIG['Caps']['SYMMETRY_CROSS_CHECK']:
        full, exhausted = _run(problem, symmetric=False)
        if not exhausted:
            if (full.max_size, full.max_weight) != (result.max_size, result.max_weight):
                LOGGER.error(
                    'Symmetry reduction gave %d, full search %d. Using full search',
                    result.max_size, full.max_size,
                )
                return full

            LOGGER.debug('Symmetry cross-check passed (%d)', full.max_size)

    return result


def _center_subspace(center: Handle, kind: str, n: int, q: Optional[int]):
    if kind == SUBSPACES:
        if not isinstance(center, SubspaceHandle) or center.ambient_dim != n or center.q != q:
            raise AmbientMismatch(f'Center {center!r} is not a subspace of F_{q}^{n}')
    elif not isinstance(center, SubsetHandle) or center.n != n:
        raise AmbientMismatch(f'Center {center!r} is not a subset of [{n}]')


def build_star(kind: str, n: int, k: int, q: Optional[int], center: Handle) -> Family:
    """All level k members containing the center: L_{n,k}[R] for subspaces,
    the k-sets through a fixed set for subsets.

    Subspaces through R correspond to subspaces of the coordinate complement
    spanned by the non-pivot columns of R.

    Args:
        kind: 'subsets' or 'subspaces'.
        n: Ambient dimension / ground set size.
        k: Level.
        q: Field order for subspaces.
        center: Center R.

    Returns:
        Star family of size [n - r, k - r]_q (resp. C(n - r, k - r)).

    Raises:
        CenterTooBig: If the center has level > k.
        AmbientMismatch: Center of another ambient.
    """
    _center_subspace(center, kind, n, q)
    r = center.level
    if not 0 <= k <= n:
        raise RangeError(f'Level {k} outside [0, {n}]')

    if r > k:
        raise CenterTooBig(f'Center of level {r} does not fit into level {k}')

    if kind == SUBSETS:
        others = [i for i in range(n) if not center.members >> i & 1]
        elements = []
        for combo in enumerate_subsets(n - r, k - r):
            lifted = center.members
            for i in iter_bits(combo.members):
                lifted |= 1 << others[i]

            elements.append(SubsetHandle(n, lifted))
    else:
        field = make_field(q)
        free = [c for c in range(n) if c not in center.pivots]
        elements = []
        for sub in enumerate_subspaces(field, n - r, k - r):
            lifted = MatrixGF.zeros(field, sub.dim, n).entries.copy()
            if sub.dim:
                lifted[:, free] = sub.rref.entries

            elements.append(span(center, canonicalize(field, MatrixGF(field, lifted), n)))

    star = Family(kind, n, q, elements)
    expected = level_count(n - r, k - r, q if kind == SUBSPACES else None)
    assert len(star) == expected, f'Star has {len(star)} members, expected {expected}'
    return star


def build_full_levels(kind: str, n: int, k: int, q: Optional[int] = None, side: str = 'upper') -> Family:
    """Union of the k middle levels. For n + k even `side` picks one of the two
    equally large choices.

    Raises:
        RangeError: k outside [1, n].
    """
    if not 1 <= k <= n:
        raise RangeError(f'Number of levels k={k} outside [1, {n}]')

    fam = enumerate_levels(kind, n, middle_levels(n, k, side), q=q)
    expected = sum_largest(n, k, q if kind == SUBSPACES else None)
    assert len(fam) == expected, f'Full levels have {len(fam)} members, expected {expected}'
    return fam


class Classification(NamedTuple):

    """Structure of a family."""

    label: str
    """star, star-levels, full-levels or unclassified."""

    center: Optional[Handle] = None
    levels: Tuple[int, ...] = ()


def _common_meet(fam: Family) -> Handle:
    if fam.kind == SUBSETS:
        common = bit_mask(fam.n)
        for e in fam:
            common &= e.members

        return SubsetHandle(fam.n, common)

    common = fam[0]
    for e in fam[1:]:
        common = intersection(common, e)
        if common.dim == 0:
            break

    return common


def classify_family(fam: Family) -> Classification:
    """Classify a family as a star (all members of one level through a common
    center), union of stars of several levels through one center, union of full
    levels, or unclassified.
    """
    levels = tuple(fam.level_set)
    if len(fam) == 0:
        return Classification('unclassified')

    center = _common_meet(fam)
    if center.level > 0:
        star = []
        for level in levels:
            star.extend(build_star(fam.kind, fam.n, level, fam.q, center))

        if fam == fam.with_elements(star):
            label = 'star' if len(levels) == 1 else 'star-levels'
            return Classification(label, center, levels)

    q = fam.q if fam.is_subspaces else None
    if sum(level_count(fam.n, level, q) for level in levels) == len(fam):
        return Classification('full-levels', None, levels)

    return Classification('unclassified', None, levels)


EXPECTED_EXTREMAL: Dict[str, Tuple[str, ...]] = {
    'ekr': ('star',),
    'ekr-q': ('star',),
    'intersecting-k-sperner-q': ('star', 'star-levels'),
    'erdos-k-sperner': ('full-levels',),
    'sperner-q': ('full-levels',),
    'samotij-q': ('full-levels',),
}
"""Extremal family structure by theorem id."""


class EqualityReport(NamedTuple):

    """Classification of all maximum witnesses against a characterization."""

    theorem_id: str
    bound: Number
    max_size: int
    labels: Tuple[str, ...]
    expected: Tuple[str, ...]
    """Allowed labels. Empty if no characterization is known."""

    unexpected: Tuple[int, ...]
    """Witness indices with a label outside of expected."""

    complete: bool
    """All maximum witnesses were classified."""

    @property
    def holds(self) -> bool:
        return not self.unexpected


def check_equality_characterization(result: SearchResult, theorem_id: str,
                                    parameters: Dict) -> EqualityReport:
    """Classify every maximum witness of an optimal search result.

    Args:
        result: Search result at the theorem parameters.
        theorem_id: Theorem id.
        parameters: Theorem parameters.

    Raises:
        NotOptimal: Result is not proven optimal or misses the bound.
    """
    theorem_id = resolve_theorem_id(theorem_id)
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', SideConditionViolated)
        bound = theorem_bound(theorem_id, parameters)

    if not result.proven_optimal:
        raise NotOptimal('Search result is not proven optimal')

    if result.max_size != bound.value:
        raise NotOptimal(f'Maximum {result.max_size} differs from {theorem_id} bound {bound.value}')

    labels = tuple(classify_family(w).label for w in result.witnesses)
    expected = EXPECTED_EXTREMAL.get(theorem_id, ())
    unexpected = tuple(i for i, label in enumerate(labels) if expected and label not in expected)
    for i in unexpected:
        LOGGER.warning(
            'Unexpected extremal family for %s at %s: witness %d is %s',
            theorem_id, parameters, i, labels[i],
        )

    return EqualityReport(
        theorem_id=theorem_id,
        bound=bound.value,
        max_size=result.max_size,
        labels=labels,
        expected=expected,
        unexpected=unexpected,
        complete=result.witnesses_complete and not result.symmetry_reduced,
    )


class Conjecture(NamedTuple):

    """Conjectured bound together with the property it concerns."""

    theorem_id: str
    kind: str
    make_spec: Callable[[Dict], PropertySpec]


CONJECTURES: Dict[str, Conjecture] = {
    'simplex-q': Conjecture('simplex-q', SUBSPACES, lambda p: NoDSimplex(p['d'])),
    'emc-q': Conjecture('emc-q', SUBSPACES, lambda p: MatchingAtMost(p['s'])),
    'emc': Conjecture('emc', SUBSETS, lambda p: MatchingAtMost(p['s'])),
    'simplex': Conjecture('simplex', SUBSETS, lambda p: NoDSimplex(p['d'])),
}
"""Explorable conjectures by id.

   :meta hide-value:
"""

CONJECTURE_ALIASES: Dict[str, str] = {
    '5.1': 'simplex-q',
    '5.2': 'emc-q',
    '1.15': 'emc',
    '4.1': 'simplex',
    'emc_set': 'emc',
}
"""Numbered and legacy conjecture ids. Numbers also work with a conj prefix
and an underscore instead of the dot.
"""


def resolve_conjecture_id(conjecture_id: str) -> str:
    """Canonical conjecture id.

    Raises:
        RangeError: Unknown conjecture.

    Example:
        >>> resolve_conjecture_id('conj5_2')
        'emc-q'
    """
    key = conjecture_id.lower()
    if key.startswith('conj'):
        key = key[len('conj'):].replace('_', '.')

    key = CONJECTURE_ALIASES.get(key, key)
    if key not in CONJECTURES:
        raise RangeError(f'Unknown conjecture {conjecture_id!r}. Choose from {", ".join(CONJECTURES)}')

    return key


class ConjectureRow(NamedTuple):

    """One grid point of a conjecture exploration."""

    parameters: Dict
    search_max: Optional[int]
    conjectured: Number
    status: str
    """consistent-tight, consistent-slack, VIOLATION or unknown."""

    side_conditions: Tuple[str, ...] = ()
    """Violated side conditions of the conjectured bound."""


def _reverify(spec: PropertySpec, witness: Family) -> bool:
    """Independent pass over a witness. Matching numbers with the naive oracle."""
    if isinstance(spec, MatchingAtMost) and len(witness) <= 16:
        return matching_number_naive(witness) <= spec.s

    return spec.find_violation(witness) is None


def explore_conjecture(conjecture_id: str, grid: Dict[str, List], threads: Optional[int] = None,
                       node_cap: Optional[int] = None, cap: Optional[int] = None) -> List[ConjectureRow]:
    """Compare exhaustive search with a conjectured bound on a parameter grid.

    Args:
        conjecture_id: One of :data:`CONJECTURES` or an alias.
        grid: Parameter name -> values. Needs n, k and s or d (and q for the
            subspace versions).
        threads (optional): Worker processes per search.
        node_cap (optional): Node cap per root subtree.
        cap (optional): Enumeration cap for the ground.

    Returns:
        One row per grid point, in grid order.
    """
    conjecture_id = resolve_conjecture_id(conjecture_id)
    conjecture = CONJECTURES[conjecture_id]
    rows = []
    for params in grid_points(grid):
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', SideConditionViolated)
            bound = theorem_bound(conjecture.theorem_id, params)

        q = params.get('q') if conjecture.kind == SUBSPACES else None
        spec = conjecture.make_spec(params)
        try:
            ground = level_ground(conjecture.kind, params['n'], [params['k']], q=q, cap=cap)
            result = max_family(SearchProblem(
                ground, spec, node_cap=node_cap, witness_cap=1, threads=threads,
            ))
        except (ResourceExhausted, CapExceeded) as err:
            LOGGER.info('Grid point %s: %s', params, err)
            rows.append(ConjectureRow(params, None, bound.value, 'unknown', bound.violations))
            continue

        if result.max_size == bound.value:
            status = 'consistent-tight'
        elif result.max_size < bound.value:
            status = 'consistent-slack'
        elif _reverify(spec, result.witnesses[0]) and len(result.witnesses[0]) == result.max_size:
            status = 'VIOLATION'
            LOGGER.warning(
                '%s VIOLATION at %s: family of size %d exceeds %s',
                conjecture_id, params, result.max_size, bound.value,
            )
        else:
            LOGGER.error('Witness at %s failed re-verification', params)
            status = 'unknown'

        rows.append(ConjectureRow(params, result.max_size, bound.value, status, bound.violations))

    return rows
