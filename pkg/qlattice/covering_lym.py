"""Covering families of Boolean sublattices and LYM type inequalities.

Every basis B of F_q^n generates a sublattice G_B = {span(U) : U subset of B}
isomorphic to the Boolean lattice. The collection of all G_B covers each
i-dimensional subspace exactly t_i times which allows to transfer counting
arguments from subsets to subspaces.

Bases are counted, not sublattices: the number of members equals alpha(q, n)
even if two bases should generate the same sublattice.
"""
import itertools
from fractions import Fraction
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np
import scipy.optimize

from qlattice.configuration import CONFIG
from qlattice.constants import SUBSPACES
from qlattice.error import (
    CapExceeded, HypothesisUnverified, PreconditionFailed, RangeError,
    ResourceExhausted,
)
from qlattice.extremal_search import SearchProblem, classify_family, max_family
from qlattice.family_properties import IntersectingKSperner, PropertySpec, containment_graph
from qlattice.finite_field import FieldSpec
from qlattice.logging import get_logger
from qlattice.matrix import MatrixGF, gf2_rank, rank
from qlattice.qcombinatorics import (
    alpha, binomial, f_value, fq_value, gaussian_binomial, level_count, t_vector,
)
from qlattice.subspace_lattice import Family, canonicalize, contains, enumerate_subspaces, intersection


__all__ = [
    'CoveringFamily', 'build_covering', 'sublattice_members',
    'IsomorphismReport', 'boolean_isomorphism_check', 'LevelAudit',
    'CoveringAudit', 'audit_t_covering', 'WeightVector', 'weight_vector',
    'WeightedBoundReport', 'weighted_bound_check', 'TransferAudit',
    'transfer_audit', 'LymReport', 'lym_check', 'antichain_decompose',
    'ProfileOptimum', 'maximize_profile',
]


LOGGER = get_logger(__name__)

Number = Union[int, Fraction]

WeightVector = Tuple[Fraction, ...]
"""Weights w_0, ..., w_n by level."""


def weight_vector(values: Sequence[Number]) -> WeightVector:
    """Exact weight vector."""
    return tuple(Fraction(v) for v in values)


class CoveringFamily:

    """All sublattices G_B of F_q^n, one per unordered basis B.

    Attributes:
        field: Field.
        n: Ambient dimension.
        vectors: All vectors of F_q^n by vector index.
        bases: Bases as sorted tuples of vector indices, lexicographic order.
        t: Covering multiplicities t_0, ..., t_n.
        alpha: Number of unordered bases.
    """

    def __init__(self, field: FieldSpec, n: int, bases: Sequence[Tuple[int, ...]]):
        self.field = field
        self.n = n
        self.vectors = _all_vectors(field.q, n)
        self.bases: Tuple[Tuple[int, ...], ...] = tuple(bases)
        self.t: Tuple[int, ...] = t_vector(field.q, n)
        self.alpha: int = alpha(field.q, n)

    @property
    def q(self) -> int:
        return self.field.q

    def basis_matrix(self, basis: Sequence[int]) -> MatrixGF:
        rows = self.vectors[list(basis)]
        return MatrixGF(self.field, rows.reshape(len(basis), self.n))

    def __len__(self):
        return len(self.bases)

    def __iter__(self):
        return iter(self.bases)

    def __repr__(self):
        return f'{type(self).__name__}(q={self.q}, n={self.n}, {len(self)} bases)'


def _all_vectors(q: int, n: int) -> np.ndarray:
    """All vectors of F_q^n. Row i has vector index i."""
    grid = np.array(list(itertools.product(range(q), repeat=n)), dtype=np.uint8)
    return grid.reshape(q ** n, n)


def build_covering(field: FieldSpec, n: int, cap: Optional[int] = None) -> CoveringFamily:
    """Enumerate all unordered bases of F_q^n.

    Args:
        field: Field.
        n: Ambient dimension.
        cap (optional): Maximum number of bases. COVERING_CAP by default.

    Returns:
        Covering family with alpha(q, n) members.

    Raises:
        CapExceeded: If alpha(q, n) exceeds the cap.

    Example:
        >>> cov = build_covering(make_field(2), 3)
        ... len(cov), cov.t
        (28, (28, 12, 4, 28))
    """
    if cap is None:
        cap = CONFIG['Caps']['COVERING_CAP']

    if n < 1:
        raise RangeError(f'Ambient dimension {n} has to be positive')

    q = field.q
    count = alpha(q, n)
    if count > cap:
        raise CapExceeded(f'Bases of F_{q}^{n}', count, cap)

    LOGGER.info('Enumerating %d bases of F_%d^%d', count, q, n)
    vectors = _all_vectors(q, n)
    nonzero = range(1, q ** n)
    bases = []
    if q == 2:
        for combo in itertools.combinations(nonzero, n):
            if gf2_rank(combo) == n:
                bases.append(combo)
    else:
        for combo in itertools.combinations(nonzero, n):
            if rank(MatrixGF(field, vectors[list(combo)])) == n:
                bases.append(combo)

    assert len(bases) == count, f'Found {len(bases)} bases, expected {count}'
    return CoveringFamily(field, n, bases)


def _sublattice_handles(cov: CoveringFamily, basis: Sequence[int]) -> Iterator[Tuple[int, object]]:
    """(subset bitmask over basis positions, span handle) pairs."""
    rows = cov.vectors[list(basis)]
    for mask in range(1 << len(basis)):
        picked = [i for i in range(len(basis)) if mask >> i & 1]
        generators = MatrixGF(cov.field, rows[picked].reshape(len(picked), cov.n))
        yield mask, canonicalize(cov.field, generators, cov.n)


def sublattice_members(cov: CoveringFamily, basis: Sequence[int]) -> Family:
    """The 2^n subspaces spanned by subsets of a basis."""
    return Family(SUBSPACES, cov.n, cov.q, (h for _, h in _sublattice_handles(cov, basis)))


class IsomorphismReport(NamedTuple):

    """Checks of the span map 2^B -> G_B."""

    bijective: bool
    rank_preserving: bool
    """dim span(U) = |U|."""

    order_preserving: bool
    """U subset of W iff span(U) subspace of span(W)."""

    meets_preserved: bool
    """span(U and W) = span(U) meet span(W)."""

    @property
    def passed(self) -> bool:
        return all(self)


def boolean_isomorphism_check(cov: CoveringFamily, basis: Sequence[int]) -> IsomorphismReport:
    """Verify that G_B is isomorphic to the Boolean lattice via the span map."""
    spans = dict(_sublattice_handles(cov, basis))
    popcounts = {mask: bin(mask).count('1') for mask in spans}
    bijective = len(set(spans.values())) == len(spans)
    rankPreserving = all(spans[m].dim == popcounts[m] for m in spans)
    orderPreserving = True
    meetsPreserved = True
    for u, w in itertools.product(spans, repeat=2):
        if (u & ~w == 0) != contains(spans[w], spans[u]):
            orderPreserving = False

        if u < w and intersection(spans[u], spans[w]) != spans[u & w]:
            meetsPreserved = False

    return IsomorphismReport(bijective, rankPreserving, orderPreserving, meetsPreserved)


class LevelAudit(NamedTuple):

    """Covering audit of one level."""

    i: int
    subspaces: int
    """[n, i]_q."""

    t: int
    observed_min: int
    observed_max: int
    per_sublattice_min: int
    """Fewest level i members of a single G_B."""

    per_sublattice_max: int
    double_count: bool
    """[n, i]_q t_i = alpha C(n, i)."""

    @property
    def passed(self) -> bool:
        return (
            self.observed_min == self.observed_max == self.t
            and self.double_count
        )


class CoveringAudit(NamedTuple):

    """Exhaustive t-covering audit."""

    q: int
    n: int
    alpha: int
    bases: int
    levels: Tuple[LevelAudit, ...]
    distinct_sublattices: int
    """Number of distinct member sets among all G_B."""

    @property
    def passed(self) -> bool:
        return self.bases == self.alpha and all(
            row.passed and row.per_sublattice_min == row.per_sublattice_max == binomial(self.n, row.i)
            for row in self.levels
        )


def audit_t_covering(cov: CoveringFamily) -> CoveringAudit:
    """Count for every subspace the G_B containing it and compare with t_i.

    Example:
        >>> audit_t_covering(build_covering(make_field(2), 2)).passed
        True
    """
    q, n = cov.q, cov.n
    LOGGER.info('Auditing t-covering of F_%d^%d over %d bases', q, n, len(cov))
    multiplicity: Dict[object, int] = {}
    perLevel: List[List[int]] = [[] for _ in range(n + 1)]
    sublattices = set()
    for basis in cov:
        members = []
        counts = [0] * (n + 1)
        for _, handle in _sublattice_handles(cov, basis):
            multiplicity[handle] = multiplicity.get(handle, 0) + 1
            counts[handle.dim] += 1
            members.append(handle.encoding)

        for i, c in enumerate(counts):
            perLevel[i].append(c)

        sublattices.add(frozenset(members))

    levels = []
    for i in range(n + 1):
        observed = [multiplicity.get(h, 0) for h in enumerate_subspaces(cov.field, n, i)]
        subspaces = gaussian_binomial(n, i, q)
        levels.append(LevelAudit(
            i=i,
            subspaces=subspaces,
            t=cov.t[i],
            observed_min=min(observed),
            observed_max=max(observed),
            per_sublattice_min=min(perLevel[i], default=0),
            per_sublattice_max=max(perLevel[i], default=0),
            double_count=subspaces * cov.t[i] == cov.alpha * binomial(n, i),
        ))

    audit = CoveringAudit(
        q=q,
        n=n,
        alpha=cov.alpha,
        bases=len(cov),
        levels=tuple(levels),
        distinct_sublattices=len(sublattices),
    )
    if not audit.passed:
        LOGGER.warning('t-covering audit of F_%d^%d failed', q, n)

    return audit


class WeightedBoundReport(NamedTuple):

    """Weighted covering bound w(F) <= alpha x."""

    weight: Fraction
    """w(F), sum of w_dim over the members."""

    limit: Fraction
    """alpha x."""

    holds: bool
    hypothesis: str
    """verified or trusted."""

    worst_ratio: Optional[Fraction]
    """Largest (w/t)(G') over property subfamilies G' of any G_B."""

    family_has_property: bool


def weighted_bound_check(cov: CoveringFamily, w: Sequence[Number], spec: PropertySpec, x: Number,
                         fam: Family, trusted: bool = False,
                         node_cap: Optional[int] = None) -> WeightedBoundReport:
    """Check w(F) <= alpha x for a family with the property.

    The hypothesis "every subfamily G' of a G_B with the property has (w/t)(G')
    <= x" is verified by exhaustive weighted search inside every distinct G_B
    unless it is trusted.

    Args:
        cov: Covering family.
        w: Weight vector w_0, ..., w_n.
        spec: Hereditary property.
        x: Hypothesis bound.
        fam: Subspace family.
        trusted (optional): Skip the verification.
        node_cap (optional): Node cap per verification search.

    Raises:
        HypothesisUnverified: Verification failed or ran out of resources.
        RangeError: Weight vector length or family ambient mismatch.
    """
    w = weight_vector(w)
    x = Fraction(x)
    if len(w) != cov.n + 1:
        raise RangeError(f'Weight vector needs {cov.n + 1} entries, not {len(w)}')

    if not fam.is_subspaces or fam.n != cov.n or fam.q != cov.q:
        raise RangeError(f'Family of {fam.ambient_str()} does not match q={cov.q}, n={cov.n}')

    ratio = tuple(wi / ti for wi, ti in zip(w, cov.t))
    worst = None
    if trusted:
        hypothesis = 'trusted'
    else:
        seen = set()
        for basis in cov:
            ground = sublattice_members(cov, basis)
            if ground in seen:
                continue

            seen.add(ground)
            try:
                result = max_family(SearchProblem(ground, spec, weights=ratio, node_cap=node_cap, witness_cap=1))
            except ResourceExhausted as err:
                raise HypothesisUnverified(f'Hypothesis search exhausted on basis {basis}') from err

            if worst is None or result.max_weight > worst:
                worst = result.max_weight

            if result.max_weight > x:
                raise HypothesisUnverified(
                    f'Basis {basis} has a subfamily with (w/t) = {result.max_weight} > {x}'
                )

        hypothesis = 'verified'

    hasProperty = spec.find_violation(fam) is None
    if not hasProperty:
        LOGGER.warning('Family does not have %s, the weighted bound does not apply', spec)

    weight = sum((w[e.level] for e in fam), Fraction(0))
    limit = cov.alpha * x
    return WeightedBoundReport(weight, limit, weight <= limit, hypothesis, worst, hasProperty)


class TransferAudit(NamedTuple):

    """Arithmetic of transferring a set bound f(n, c) to subspaces."""

    n: int
    q: int
    c: Tuple[Fraction, ...]
    f: Fraction
    """f(n, c) = sum c_i C(n, i)."""

    fq: Fraction
    """f_q(n, c) = sum c_i [n, i]_q."""

    alpha_f: Fraction
    """alpha f(n, c)."""

    weighted_fq: Fraction
    """sum c_i t_i [n, i]_q. Equals alpha f(n, c) by double counting."""

    family_weight: Optional[int] = None
    """sum t_dim over the members."""

    family_size: Optional[int] = None

    @property
    def identity_holds(self) -> bool:
        return self.weighted_fq == self.alpha_f

    @property
    def weight_holds(self) -> Optional[bool]:
        if self.family_weight is None:
            return None

        return self.family_weight <= self.alpha_f

    @property
    def size_holds(self) -> Optional[bool]:
        if self.family_size is None:
            return None

        return self.family_size <= self.fq


def transfer_audit(n: int, q: int, c: Sequence[Number], fam: Optional[Family] = None) -> TransferAudit:
    """Evaluate the transfer values and, for a family, compare its t-weight
    with alpha f(n, c) and its size with f_q(n, c).

    Example:
        >>> audit = transfer_audit(3, 2, [0, 1])
        >>> audit.f, audit.fq, audit.identity_holds
        (Fraction(3, 1), Fraction(7, 1), True)
    """
    c = weight_vector(c)
    t = t_vector(q, n)
    weighted = sum((ci * t[i] * gaussian_binomial(n, i, q) for i, ci in enumerate(c)), Fraction(0))
    familyWeight = familySize = None
    if fam is not None:
        if not fam.is_subspaces or fam.n != n or fam.q != q:
            raise RangeError(f'Family of {fam.ambient_str()} does not match q={q}, n={n}')

        familyWeight = sum(t[e.level] for e in fam)
        familySize = len(fam)

    return TransferAudit(
        n=n,
        q=q,
        c=c,
        f=Fraction(f_value(n, c)),
        fq=Fraction(fq_value(n, c, q)),
        alpha_f=alpha(q, n) * Fraction(f_value(n, c)),
        weighted_fq=weighted,
        family_weight=familyWeight,
        family_size=familySize,
    )


class LymReport(NamedTuple):

    """Normalized level sum of an intersecting k-Sperner family."""

    total: Fraction
    """sum_j |V_j| / [n - 1, j - 1]_q."""

    k: int
    holds: bool
    """total <= k."""

    equality: bool
    vacuous: bool
    """Precondition failed, the inequality makes no claim."""

    precondition: Optional[str] = None
    classification: Optional[str] = None
    """Structure of the family at equality."""

    characterization_holds: Optional[bool] = None
    """At equality with k = 1: the family is a full star."""


def lym_check(fam: Family, k: int = 1, strict: bool = False) -> LymReport:
    """Exact LYM sum for intersecting k-Sperner families with members of
    level 1 .. n // 2.

    Args:
        fam: Subspace (or subset) family.
        k: Chain bound.
        strict: Raise on a failed precondition instead of reporting a vacuous
            sum.

    Raises:
        PreconditionFailed: In strict mode.

    Example:
        >>> lym_check(star).total
        Fraction(1, 1)
    """
    if k < 1:
        raise RangeError(f'Chain bound k={k} has to be positive')

    q = fam.q if fam.is_subspaces else None
    half = fam.n // 2
    problems = []
    outside = [level for level in fam.level_set if not 1 <= level <= half]
    if outside:
        problems.append(f'levels {outside} outside [1, {half}]')

    spec = IntersectingKSperner(k)
    if spec.find_violation(fam) is not None:
        problems.append(f'family is not {spec}')

    total = Fraction(0)
    for level, count in enumerate(fam.profile.counts):
        if count and level >= 1:
            total += Fraction(count, level_count(fam.n - 1, level - 1, q))

    precondition = '; '.join(problems) or None
    if precondition:
        if strict:
            raise PreconditionFailed(precondition)

        LOGGER.warning('Vacuous LYM sum: %s', precondition)

    equality = total == k
    classification = characterization = None
    if equality and not precondition:
        classification = classify_family(fam).label
        if k == 1:
            characterization = classification == 'star'
            if not characterization:
                LOGGER.warning('LYM equality without a full star: %s', classification)

    return LymReport(
        total=total,
        k=k,
        holds=total <= k,
        equality=equality,
        vacuous=precondition is not None,
        precondition=precondition,
        classification=classification,
        characterization_holds=characterization,
    )


def antichain_decompose(fam: Family) -> List[Family]:
    """Split into antichains by repeatedly stripping the minimal members.
    Number of parts equals the longest chain length.

    Example:
        >>> [len(part) for part in antichain_decompose(fam)]
        [1, 15]
    """
    graph = containment_graph(fam)
    return [fam.subfamily(sorted(layer)) for layer in nx.topological_generations(graph)]


class ProfileOptimum(NamedTuple):

    """Optimal profile under the normalized level constraint."""

    levels: Tuple[int, ...]
    """Levels j = 1 .. n // 2."""

    caps: Tuple[int, ...]
    """[n - 1, j - 1]_q per level."""

    profile: Tuple[int, ...]
    """Optimal f_j per level."""

    value: int
    exchange_audit: bool
    """No improving exchange exists."""

    lp_value: float
    """Floating point linear program optimum."""


def _exchange_audit(caps: Sequence[int], x: Sequence[Fraction], k: int) -> bool:
    """Optimality of x_j in [0, 1] for max sum c_j x_j subject to sum x_j <= k."""
    if any(not 0 <= xj <= 1 for xj in x) or sum(x) > k:
        return False

    if sum(x) < k and any(xj < 1 for xj in x):
        return False

    for (ci, xi), (cj, xj) in itertools.permutations(zip(caps, x), 2):
        # Shifting mass from i to j must not pay off
        if xi > 0 and xj < 1 and cj > ci:
            return False

    return True


def maximize_profile(n: int, k: int, q: Optional[int] = None) -> ProfileOptimum:
    """Maximize sum f_j subject to sum f_j / [n - 1, j - 1]_q <= k and
    0 <= f_j <= [n - 1, j - 1]_q over the levels j = 1 .. n // 2.

    Saturates the k largest caps, ties broken towards larger j. For subsets
    pass q=None.

    Raises:
        RangeError: k outside [1, n // 2].

    Example:
        >>> maximize_profile(5, 2, q=2).value
        16
    """
    half = n // 2
    if not 1 <= k <= half:
        raise RangeError(f'k={k} outside [1, {half}]')

    levels = tuple(range(1, half + 1))
    caps = tuple(level_count(n - 1, j - 1, q) for j in levels)
    order = sorted(range(len(levels)), key=lambda i: (caps[i], levels[i]), reverse=True)
    saturated = set(order[:k])
    profile = tuple(caps[i] if i in saturated else 0 for i in range(len(levels)))
    x = [Fraction(f, c) for f, c in zip(profile, caps)]

    res = scipy.optimize.linprog(
        c=-np.ones(len(levels)),
        A_ub=np.array([[1.0 / c for c in caps]]),
        b_ub=np.array([float(k)]),
        bounds=[(0, c) for c in caps],
        method='highs',
    )
    lpValue = float(-res.fun) if res.success else float('nan')
    if res.success and abs(lpValue - sum(profile)) > 1e-6 * max(1, sum(profile)):
        LOGGER.warning('LP cross-check %f differs from exchange optimum %d', lpValue, sum(profile))

    return ProfileOptimum(
        levels=levels,
        caps=caps,
        profile=profile,
        value=sum(profile),
        exchange_audit=_exchange_audit(caps, x, k),
        lp_value=lpValue,
    )
