"""Hereditary family properties and decision procedures.

Every property is split into up to three parts which the search engine
consumes separately:

- ``allows(element)``: unary constraint (element level).
- ``pair_ok(a, b)``: pairwise constraint.
- ``extends(chosen, new)``: remaining constraint for adding `new` to an
  admissible family `chosen`, assuming the unary and pairwise parts hold.

Properties have a canonical string syntax, e.g. ``intersecting``,
``l-intersecting:0,1,2``, ``k-sperner:3``, ``no-simplex:d=2``, ``matching<=2``,
joined with ``+`` for conjunctions.

"Disjoint" means empty intersection for subsets and trivial intersection for
subspaces. Both handle types implement the same lattice interface.
"""
import abc
import itertools
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import networkx as nx

from qlattice.bitmagic import popcount
from qlattice.configuration import CONFIG
from qlattice.error import (
    CapExceeded, NotUniform, ParameterMismatch, ParseError,
)
from qlattice.logging import get_logger
from qlattice.subspace_lattice import Family, Handle, SubsetHandle, join_dim, meet_dim


__all__ = [
    'Verdict', 'PropertySpec', 'Intersecting', 'TIntersecting',
    'LIntersecting', 'Sperner', 'KSperner', 'IntersectingKSperner',
    'MatchingAtMost', 'NoDSimplex', 'NoDCluster', 'NoDSimplexCluster',
    'NoNontrivialIntersecting', 'UniformDim', 'Conjunction', 'parse_property',
    'check', 'matching_number', 'matching_number_naive', 'MatchingResult',
    'find_simplex_configuration', 'has_nontrivial_intersecting_subfamily',
    'rainbow_disjoint_transversal', 'rainbow_disjoint_transversal_naive',
    'longest_chain', 'is_antichain', 'containment_graph', 'meet_level',
    'join_level', 'CapacityPartition', 'chain_partition', 'matching_partition',
]


LOGGER = get_logger(__name__)

Witness = Tuple[Handle, ...]


def meet_level(*elements: Handle) -> int:
    """Size / dimension of the common intersection."""
    if isinstance(elements[0], SubsetHandle):
        common = elements[0].members
        for e in elements[1:]:
            elements[0]._check_ambient(e)
            common &= e.members

        return popcount(common)

    return meet_dim(*elements)


def join_level(*elements: Handle) -> int:
    """Size / dimension of the union / span."""
    if isinstance(elements[0], SubsetHandle):
        union = 0
        for e in elements:
            elements[0]._check_ambient(e)
            union |= e.members

        return popcount(union)

    return join_dim(*elements)


def _comparable(a: Handle, b: Handle) -> bool:
    return a.contains(b) or b.contains(a)


def _sorted_witness(elements) -> Witness:
    return tuple(sorted(elements, key=lambda e: e.sort_key))


class CapacityPartition(NamedTuple):

    """Groups of element indices (as bitmasks) with a common capacity."""

    groups: Tuple[int, ...]
    capacity: int


class Verdict(NamedTuple):

    """Outcome of a property check."""

    holds: bool
    witness: Optional[Witness] = None
    """Offending pair / chain / configuration in canonical order."""

    advisory: Optional[str] = None
    """Note on degenerate parameters."""


class PropertySpec(abc.ABC):

    """Hereditary family property."""

    tag: str = ''

    def allows(self, element: Handle) -> bool:
        return True

    def pair_ok(self, a: Handle, b: Handle) -> bool:
        return True

    def extends(self, chosen: Sequence[Handle], new: Handle) -> bool:
        return True

    @property
    def has_pairs(self) -> bool:
        """Pairwise part is not trivial."""
        return True

    @property
    def is_pairwise(self) -> bool:
        """The property is fully decided by unary and pairwise checks."""
        return True

    def compatible(self, a: Handle, b: Handle) -> bool:
        """Both elements allowed and the pair satisfies the pairwise part."""
        return self.allows(a) and self.allows(b) and self.pair_ok(a, b)

    def admits(self, chosen: Sequence[Handle], new: Handle) -> bool:
        """Incremental check. Assumes `chosen` satisfies the property."""
        if not self.allows(new):
            return False

        if not all(self.pair_ok(c, new) for c in chosen):
            return False

        return self.is_pairwise or self.extends(chosen, new)

    def parts(self) -> List['PropertySpec']:
        return [self]

    def restricted(self, levels: Sequence[int]) -> Optional['PropertySpec']:
        """Equivalent property for families with members from `levels` only.
        None if every such family has the property.
        """
        return self

    def capacity_partitions(self, elements: Sequence[Handle]) -> List['CapacityPartition']:
        """Partitions of the element indices where every admissible family
        picks at most `capacity` members per group.
        """
        return []

    def advisory(self, fam: Family) -> Optional[str]:
        return None

    def validate(self, fam: Family):
        """Raise on parameters inconsistent with the family."""

    def find_violation(self, fam: Family) -> Optional[Witness]:
        for e in fam:
            if not self.allows(e):
                return (e,)

        if self.has_pairs:
            for a, b in itertools.combinations(fam, 2):
                if not self.pair_ok(a, b):
                    return (a, b)

        if not self.is_pairwise:
            return self.find_configuration(fam)

        return None

    def find_configuration(self, fam: Family) -> Optional[Witness]:
        """Non pairwise violation witness."""
        return None

    def check(self, fam: Family) -> Verdict:
        """Decide the property on a family.

        Returns:
            Verdict with a violation witness if the property fails.
        """
        self.validate(fam)
        witness = self.find_violation(fam)
        return Verdict(holds=witness is None, witness=witness, advisory=self.advisory(fam))

    @abc.abstractmethod
    def to_string(self) -> str:
        """Canonical string syntax."""

    def __eq__(self, other):
        return type(self) is type(other) and self.to_string() == other.to_string()

    def __hash__(self):
        return hash(self.to_string())

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f'{type(self).__name__}({self.to_string()!r})'


class Intersecting(PropertySpec):

    """Pairwise non-disjoint."""

    tag = 'intersecting'

    def pair_ok(self, a, b):
        return a.meet_level(b) > 0

    def to_string(self):
        return self.tag


class TIntersecting(PropertySpec):

    """Pairwise intersections of size / dimension at least t."""

    tag = 't-intersecting'

    def __init__(self, t: int):
        if t < 0:
            raise ParameterMismatch(f't={t} has to be non-negative')

        self.t = t

    def pair_ok(self, a, b):
        return a.meet_level(b) >= self.t

    def to_string(self):
        return f'{self.tag}:{self.t}'


class LIntersecting(PropertySpec):

    """Pairwise intersection sizes / dimensions from L."""

    tag = 'l-intersecting'

    def __init__(self, L: Sequence[int]):
        L = list(L)
        if any(x < 0 for x in L) or any(b <= a for a, b in zip(L, L[1:])):
            raise ParameterMismatch(f'L={L} has to be strictly increasing and non-negative')

        self.L = tuple(L)
        self._members = frozenset(L)

    def pair_ok(self, a, b):
        return a.meet_level(b) in self._members

    def validate(self, fam):
        k = fam.uniform_level
        if k is not None and len(fam) > 1 and self.L and self.L[-1] >= k:
            raise ParameterMismatch(
                f'L entry {self.L[-1]} >= uniform level {k}. Distinct members never meet in {k} or more'
            )

    def to_string(self):
        return f'{self.tag}:{",".join(map(str, self.L))}'


class Sperner(PropertySpec):

    """Antichain."""

    tag = 'sperner'

    def pair_ok(self, a, b):
        return not _comparable(a, b)

    def to_string(self):
        return self.tag


def _longest_chain_length(elements: Sequence[Handle]) -> int:
    """Number of members of the longest chain (dynamic programming by level)."""
    ordered = sorted(elements, key=lambda e: e.level)
    heights = []
    for i, e in enumerate(ordered):
        below = [heights[j] for j in range(i) if ordered[j].level < e.level and e.contains(ordered[j])]
        heights.append(1 + max(below, default=0))

    return max(heights, default=0)


class KSperner(PropertySpec):

    """No chain with more than k members."""

    tag = 'k-sperner'

    def __init__(self, k: int):
        if k < 1:
            raise ParameterMismatch(f'k={k} has to be positive')

        self.k = k

    @property
    def has_pairs(self):
        return self.k == 1

    @property
    def is_pairwise(self):
        return self.k == 1

    def pair_ok(self, a, b):
        if self.k == 1:
            return not _comparable(a, b)

        return True

    def extends(self, chosen, new):
        below = [c for c in chosen if c.level < new.level and new.contains(c)]
        above = [c for c in chosen if c.level > new.level and c.contains(new)]
        return _longest_chain_length(below) + 1 + _longest_chain_length(above) <= self.k

    def restricted(self, levels):
        # Chains have at most one member per level
        if len(set(levels)) <= self.k:
            return None

        return self

    def capacity_partitions(self, elements):
        if self.k == 1:
            return []

        return [CapacityPartition(chain_partition(elements, self.k), self.k)]

    def find_configuration(self, fam):
        chain = longest_chain(fam)
        if len(chain) > self.k:
            return tuple(chain[:self.k + 1])

        return None

    def to_string(self):
        return f'{self.tag}:{self.k}'


class MatchingAtMost(PropertySpec):

    """Matching number at most s."""

    tag = 'matching'

    def __init__(self, s: int):
        if s < 0:
            raise ParameterMismatch(f's={s} has to be non-negative')

        self.s = s

    @property
    def has_pairs(self):
        return self.s == 1

    @property
    def is_pairwise(self):
        return self.s == 1

    def allows(self, element):
        return self.s > 0

    def pair_ok(self, a, b):
        if self.s == 1:
            return not a.is_disjoint(b)

        return True

    def extends(self, chosen, new):
        # Adding `new` raises the matching number iff the members disjoint
        # from it already hold a matching of size s.
        disjoint = [c for c in chosen if c.is_disjoint(new)]
        return _matching_at_least(disjoint, self.s) is None

    def capacity_partitions(self, elements):
        if self.s < 2:
            return []

        return [CapacityPartition(matching_partition(elements), self.s)]

    def find_configuration(self, fam):
        result = matching_number(fam)
        if result.nu > self.s:
            return result.matching[:self.s + 1]

        return None

    def to_string(self):
        return f'{self.tag}<={self.s}'


def _uniform_level(fam: Family) -> Optional[int]:
    if len(fam) == 0:
        return None

    k = fam.uniform_level
    if k is None:
        raise NotUniform(f'Family with levels {fam.level_set} is not uniform')

    return k


class _ConfigurationSpec(PropertySpec):

    """Forbids some configuration of d + 1 members."""

    def __init__(self, d: int):
        if d < 1:
            raise ParameterMismatch(f'd={d} has to be positive')

        self.d = d

    @property
    def has_pairs(self):
        return False

    @property
    def is_pairwise(self):
        return False

    @property
    def size(self) -> int:
        return self.d + 1

    def prefix_ok(self, members: Sequence[Handle], k: int) -> bool:
        """Pruning test for a partial tuple."""
        return True

    @abc.abstractmethod
    def is_configuration(self, members: Sequence[Handle], k: int) -> bool:
        """Complete tuple test."""

    def extends(self, chosen, new):
        k = new.level
        return _search_tuple(list(chosen), self.size - 1, self, k, fixed=(new,)) is None

    def find_configuration(self, fam):
        k = _uniform_level(fam)
        if k is None:
            return None

        return _search_tuple(list(fam), self.size, self, k)

    def validate(self, fam):
        _uniform_level(fam)

    def advisory(self, fam):
        notes = []
        if len(fam) < self.size:
            notes.append(f'family has fewer than d + 1 = {self.size} members')

        k = fam.uniform_level
        if k is not None and not k >= self.d + 1 >= 3:
            notes.append(f'k >= d + 1 >= 3 does not hold for k={k}, d={self.d}')

        return '; '.join(notes) or None

    def to_string(self):
        return f'{self.tag}:d={self.d}'


def _search_tuple(candidates: List[Handle], size: int, spec: _ConfigurationSpec, k: int,
                  fixed: Tuple[Handle, ...] = ()) -> Optional[Witness]:
    """First configuration (in canonical candidate order) consisting of the
    fixed members plus `size` candidates.
    """
    candidates = [c for c in candidates if c not in fixed]
    if len(candidates) < size:
        return None

    def backtrack(start: int, members: List[Handle]) -> Optional[Witness]:
        if len(members) == len(fixed) + size:
            if spec.is_configuration(members, k):
                return _sorted_witness(members)

            return None

        remaining = len(fixed) + size - len(members)
        for i in range(start, len(candidates) - remaining + 1):
            members.append(candidates[i])
            if spec.prefix_ok(members, k):
                found = backtrack(i + 1, members)
                if found is not None:
                    return found

            members.pop()

        return None

    members = list(fixed)
    if fixed and not spec.prefix_ok(members, k):
        return None

    return backtrack(0, members)


def _pairwise_intersecting(members: Sequence[Handle]) -> bool:
    new = members[-1]
    return all(m.meet_level(new) > 0 for m in members[:-1])


def _is_simplex(members: Sequence[Handle]) -> bool:
    if meet_level(*members) != 0:
        return False

    return all(
        meet_level(*(m for j, m in enumerate(members) if j != i)) > 0
        for i in range(len(members))
    )


def _is_cluster(members: Sequence[Handle], k: int) -> bool:
    return meet_level(*members) == 0 and join_level(*members) <= 2 * k


class NoDSimplex(_ConfigurationSpec):

    """No d + 1 members with empty common intersection where every d of them
    intersect.
    """

    tag = 'no-simplex'

    def prefix_ok(self, members, k):
        # Every pair lies in some d-subset of the tuple
        return self.d < 2 or _pairwise_intersecting(members)

    def is_configuration(self, members, k):
        return _is_simplex(members)


class NoDCluster(_ConfigurationSpec):

    """No d + 1 members with empty common intersection spanning at most 2k."""

    tag = 'no-cluster'

    def prefix_ok(self, members, k):
        return join_level(*members) <= 2 * k

    def is_configuration(self, members, k):
        return _is_cluster(members, k)


class NoDSimplexCluster(_ConfigurationSpec):

    """No d + 1 members that are both a d-simplex and a d-cluster."""

    tag = 'no-simplex-cluster'

    def prefix_ok(self, members, k):
        if self.d >= 2 and not _pairwise_intersecting(members):
            return False

        return join_level(*members) <= 2 * k

    def is_configuration(self, members, k):
        return _is_simplex(members) and _is_cluster(members, k)


class NoNontrivialIntersecting(_ConfigurationSpec):

    """No d + 1 pairwise intersecting members with empty common intersection."""

    tag = 'no-nontrivial-intersecting'

    def prefix_ok(self, members, k):
        return _pairwise_intersecting(members)

    def is_configuration(self, members, k):
        return meet_level(*members) == 0

    def advisory(self, fam):
        if len(fam) < self.size:
            return f'family has fewer than d + 1 = {self.size} members'

        return None


class UniformDim(PropertySpec):

    """All members have a size / dimension from K."""

    tag = 'uniform'

    def __init__(self, K: Sequence[int]):
        if not K or any(k < 0 for k in K):
            raise ParameterMismatch(f'K={list(K)} has to be a non-empty set of non-negative integers')

        self.K = tuple(sorted(set(K)))

    @property
    def has_pairs(self):
        return False

    def allows(self, element):
        return element.level in self.K

    def restricted(self, levels):
        if set(levels) <= set(self.K):
            return None

        return self

    def to_string(self):
        return f'{self.tag}:{",".join(map(str, self.K))}'


class Conjunction(PropertySpec):

    """All of several properties."""

    def __init__(self, specs: Sequence[PropertySpec]):
        flat = []
        for spec in specs:
            flat.extend(spec.parts())

        if not flat:
            raise ParameterMismatch('Empty conjunction')

        self.specs = tuple(flat)

    def parts(self):
        return list(self.specs)

    @property
    def has_pairs(self):
        return any(s.has_pairs for s in self.specs)

    @property
    def is_pairwise(self):
        return all(s.is_pairwise for s in self.specs)

    def allows(self, element):
        return all(s.allows(element) for s in self.specs)

    def pair_ok(self, a, b):
        return all(s.pair_ok(a, b) for s in self.specs if s.has_pairs)

    def extends(self, chosen, new):
        return all(s.extends(chosen, new) for s in self.specs if not s.is_pairwise)

    def restricted(self, levels):
        kept = [r for r in (s.restricted(levels) for s in self.specs) if r is not None]
        if not kept:
            return None

        if len(kept) == 1:
            return kept[0]

        return Conjunction(kept)

    def capacity_partitions(self, elements):
        partitions = []
        for s in self.specs:
            partitions.extend(s.capacity_partitions(elements))

        return partitions

    def validate(self, fam):
        for s in self.specs:
            s.validate(fam)

    def advisory(self, fam):
        notes = [note for note in (s.advisory(fam) for s in self.specs) if note]
        return '; '.join(notes) or None

    def find_violation(self, fam):
        for s in self.specs:
            witness = s.find_violation(fam)
            if witness is not None:
                return witness

        return None

    def to_string(self):
        return '+'.join(s.to_string() for s in self.specs)


class IntersectingKSperner(Conjunction):

    """Intersecting and k-Sperner."""

    tag = 'intersecting-k-sperner'

    def __init__(self, k: int):
        super().__init__([Intersecting(), KSperner(k)])
        self.k = k

    def parts(self):
        return [self]

    def restricted(self, levels):
        if len(set(levels)) <= self.k:
            return self.specs[0]

        return self

    def to_string(self):
        return f'{self.tag}:{self.k}'


def _ints(text: str) -> List[int]:
    return [int(x) for x in text.split(',') if x.strip()]


def _d_argument(text: str) -> int:
    if text.startswith('d='):
        text = text[2:]

    return int(text)


PROPERTY_PARSERS: Dict[str, callable] = {
    'intersecting': lambda arg: Intersecting(),
    'sperner': lambda arg: Sperner(),
    't-intersecting': lambda arg: TIntersecting(int(arg)),
    'l-intersecting': lambda arg: LIntersecting(_ints(arg)),
    'k-sperner': lambda arg: KSperner(int(arg)),
    'intersecting-k-sperner': lambda arg: IntersectingKSperner(int(arg)),
    'matching': lambda arg: MatchingAtMost(int(arg)),
    'no-simplex': lambda arg: NoDSimplex(_d_argument(arg)),
    'no-cluster': lambda arg: NoDCluster(_d_argument(arg)),
    'no-simplex-cluster': lambda arg: NoDSimplexCluster(_d_argument(arg)),
    'no-nontrivial-intersecting': lambda arg: NoNontrivialIntersecting(_d_argument(arg)),
    'uniform': lambda arg: UniformDim(_ints(arg)),
}
"""Property tag -> parser of its argument."""


def _parse_single(text: str) -> PropertySpec:
    text = text.strip().lower()
    if text.startswith('matching<='):
        tag, arg = 'matching', text[len('matching<='):]
    elif ':' in text:
        tag, arg = text.split(':', maxsplit=1)
    else:
        tag, arg = text, ''

    if tag not in PROPERTY_PARSERS:
        raise ParseError(f'Unknown property {tag!r}')

    needsArgument = tag not in {'intersecting', 'sperner'}
    if needsArgument and not arg:
        raise ParseError(f'Property {tag!r} needs an argument')

    try:
        return PROPERTY_PARSERS[tag](arg)
    except ValueError as err:
        raise ParseError(f'Invalid argument {arg!r} for {tag!r}: {err}') from err


def parse_property(text: str) -> PropertySpec:
    """Parse canonical property syntax.

    Example:
        >>> parse_property('intersecting+k-sperner:2')
        Conjunction('intersecting+k-sperner:2')
    """
    pieces = [piece for piece in text.split('+') if piece.strip()]
    if not pieces:
        raise ParseError(f'Empty property string {text!r}')

    specs = [_parse_single(piece) for piece in pieces]
    if len(specs) == 1:
        return specs[0]

    return Conjunction(specs)


def check(spec: PropertySpec, fam: Family) -> Verdict:
    """Decide a property on a family."""
    return spec.check(fam)


def containment_graph(fam: Family) -> nx.DiGraph:
    """Strict containment DAG over member indices. Edge i -> j iff member i is
    a proper subset / subspace of member j.
    """
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(fam)))
    for i, j in itertools.permutations(range(len(fam)), 2):
        a, b = fam[i], fam[j]
        if a.level < b.level and b.contains(a):
            graph.add_edge(i, j)

    return graph


def chain_partition(elements: Sequence[Handle], k: int = 1) -> Tuple[int, ...]:
    """Partition into chains (index bitmasks). Built level by level, matching
    the next level onto the current chain tops. Chains that already have k
    members are preferred so that few chains stay shorter than k.
    """
    chains: List[List[int]] = []
    heavy = 2 * (len(elements) + 1)
    for level in sorted({e.level for e in elements}):
        members = [i for i, e in enumerate(elements) if e.level == level]
        graph = nx.Graph()
        for cid, chain in enumerate(chains):
            top = elements[chain[-1]]
            weight = heavy if len(chain) >= k else 1 + len(chain)
            for i in members:
                if elements[i].contains(top):
                    graph.add_edge(('chain', cid), ('element', i), weight=weight)

        matched = {}
        for u, v in nx.max_weight_matching(graph):
            if u[0] == 'element':
                u, v = v, u

            matched[v[1]] = u[1]

        for i in members:
            if i in matched:
                chains[matched[i]].append(i)
            else:
                chains.append([i])

    return tuple(sum(1 << i for i in chain) for chain in chains)


def matching_partition(elements: Sequence[Handle]) -> Tuple[int, ...]:
    """Greedy partition into groups of pairwise disjoint elements (index
    bitmasks).
    """
    groups: List[List[int]] = []
    for i, e in enumerate(elements):
        for group in groups:
            if all(e.is_disjoint(elements[j]) for j in group):
                group.append(i)
                break
        else:
            groups.append([i])

    return tuple(sum(1 << i for i in group) for group in groups)


def longest_chain(fam: Family) -> List[Handle]:
    """Members of a longest chain, smallest first."""
    if len(fam) == 0:
        return []

    path = nx.dag_longest_path(containment_graph(fam))
    return [fam[i] for i in path]


def is_antichain(fam: Family) -> bool:
    return all(not _comparable(a, b) for a, b in itertools.combinations(fam, 2))


class MatchingResult(NamedTuple):

    """Matching number with a maximum matching."""

    nu: int
    matching: Witness


def _disjointness_graph(elements: Sequence[Handle]) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(len(elements)))
    for i, j in itertools.combinations(range(len(elements)), 2):
        if elements[i].is_disjoint(elements[j]):
            graph.add_edge(i, j)

    return graph


def _matching_at_least(elements: Sequence[Handle], size: int) -> Optional[Witness]:
    """Some pairwise disjoint `size` elements or None. Backtracking with early
    exit.
    """
    if size <= 0:
        return ()

    if len(elements) < size:
        return None

    neighbours = [
        [j for j in range(i + 1, len(elements)) if elements[i].is_disjoint(elements[j])]
        for i in range(len(elements))
    ]

    def backtrack(members: List[int], candidates: List[int]) -> Optional[List[int]]:
        if len(members) == size:
            return members

        if len(members) + len(candidates) < size:
            return None

        for pos, i in enumerate(candidates):
            allowed = set(neighbours[i])
            rest = [j for j in candidates[pos + 1:] if j in allowed]
            found = backtrack(members + [i], rest)
            if found is not None:
                return found

        return None

    found = backtrack([], list(range(len(elements))))
    if found is None:
        return None

    return _sorted_witness(elements[i] for i in found)


def matching_number(fam: Family, cap: Optional[int] = None) -> MatchingResult:
    """Exact matching number via a maximum clique of the disjointness graph.

    Args:
        fam: Family.
        cap (optional): Largest family size. MATCHING_CAP by default.

    Returns:
        Matching number and a maximum matching.

    Raises:
        CapExceeded: For too large families.
    """
    if cap is None:
        cap = CONFIG['Caps']['MATCHING_CAP']

    if len(fam) > cap:
        raise CapExceeded('matching number family size', len(fam), cap)

    if len(fam) == 0:
        return MatchingResult(0, ())

    clique, size = nx.max_weight_clique(_disjointness_graph(fam.elements), weight=None)
    return MatchingResult(int(size), _sorted_witness(fam[i] for i in clique))


def matching_number_naive(fam: Family) -> int:
    """Exponential oracle."""
    for size in range(len(fam), 0, -1):
        for combo in itertools.combinations(fam, size):
            if all(a.is_disjoint(b) for a, b in itertools.combinations(combo, 2)):
                return size

    return 0


_SIMPLEX_KINDS = {
    'simplex': NoDSimplex,
    'cluster': NoDCluster,
    'simplex-cluster': NoDSimplexCluster,
}


def find_simplex_configuration(kind: str, d: int, fam: Family) -> Optional[Witness]:
    """First d-simplex, d-cluster or d-simplex-cluster of a uniform family.

    Args:
        kind: 'simplex', 'cluster' or 'simplex-cluster'.
        d: Configuration parameter. Configurations have d + 1 members.
        fam: Uniform family.

    Returns:
        Witness in canonical order or None.

    Raises:
        NotUniform: Family is not uniform.
    """
    if kind not in _SIMPLEX_KINDS:
        raise ParameterMismatch(f'Unknown configuration kind {kind!r}')

    spec = _SIMPLEX_KINDS[kind](d)
    spec.validate(fam)
    return spec.find_configuration(fam)


def has_nontrivial_intersecting_subfamily(fam: Family, size: int) -> Optional[Witness]:
    """`size` pairwise intersecting members with empty common intersection.

    Raises:
        NotUniform: Family is not uniform.
    """
    if size < 1:
        raise ParameterMismatch(f'Subfamily size {size} has to be positive')

    _uniform_level(fam)
    if size == 1:
        # A single member intersects trivially only if it is empty
        for e in fam:
            if e.level == 0:
                return (e,)

        return None

    return NoNontrivialIntersecting(size - 1).find_configuration(fam)


def _check_families(fams: Sequence[Family]):
    for fam in fams[1:]:
        fams[0].check_same_ambient(fam)


def rainbow_disjoint_transversal(fams: Sequence[Family]) -> Optional[Witness]:
    """Pairwise disjoint representatives, one per family (in input order).
    Backtracking over the families by ascending size.

    Raises:
        AmbientMismatch: Families of different ambients.
    """
    if not fams:
        return ()

    _check_families(fams)
    order = sorted(range(len(fams)), key=lambda i: (len(fams[i]), i))
    chosen: Dict[int, Handle] = {}

    def backtrack(pos: int) -> bool:
        if pos == len(order):
            return True

        index = order[pos]
        for e in fams[index]:
            if all(e.is_disjoint(c) for c in chosen.values()):
                chosen[index] = e
                if backtrack(pos + 1):
                    return True

                del chosen[index]

        return False

    if not backtrack(0):
        return None

    return tuple(chosen[i] for i in range(len(fams)))


def rainbow_disjoint_transversal_naive(fams: Sequence[Family]) -> Optional[Witness]:
    """Exponential oracle over the product of all families."""
    if not fams:
        return ()

    _check_families(fams)
    for combo in itertools.product(*fams):
        if all(a.is_disjoint(b) for a, b in itertools.combinations(combo, 2)):
            return combo

    return None
