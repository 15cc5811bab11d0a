r"""Exact counting formulas and theorem bounds over the Boolean and linear
lattices. Python integers and :class:`fractions.Fraction` all the way, no
floating point.

Gaussian binomial coefficient

.. math::
    \begin{bmatrix} n \\ k \end{bmatrix}_q = \prod_{i=0}^{k-1}
    \frac{q^{n-i} - 1}{q^{k-i} - 1}

with the convention that it vanishes for k < 0 or k > n.

Theorem bounds live in a registry keyed by theorem id. Each entry knows its
required parameters, its side conditions and whether the statement only holds
for n sufficiently large. Side condition violations do not stop the
evaluation. They are recorded on the :class:`BoundResult`.
"""
import functools
import math
import re
import warnings
from fractions import Fraction
from typing import Any, Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

from qlattice.configuration import CONFIG
from qlattice.error import MissingParameter, RangeError, SideConditionViolated
from qlattice.logging import get_logger


__all__ = [
    'binomial', 'gaussian_binomial', 'level_count', 'q_integer', 'q_factorial',
    'alpha', 't_vector', 'IdentityReport', 'check_identities', 'sum_largest',
    'middle_levels', 'BoundResult', 'THEOREMS', 'theorem_bound',
    'resolve_theorem_id', 'f_value', 'fq_value', 'f_star', 'fq_star',
    'ordering_property_holds', 'ThresholdResult', 'threshold_n0',
]


LOGGER = get_logger(__name__)

Number = Union[int, Fraction]


def binomial(n: int, k: int) -> int:
    """Binomial coefficient. Zero for k < 0 or k > n.

    Raises:
        RangeError: For negative n.
    """
    if n < 0:
        raise RangeError(f'Negative n={n}')

    if k < 0 or k > n:
        return 0

    return math.comb(n, k)


@functools.lru_cache(maxsize=4096)
def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n. Zero for k < 0 or k > n.

    Args:
        n: Ambient dimension.
        k: Subspace dimension.
        q: Field order.

    Returns:
        Exact Gaussian binomial coefficient.

    Raises:
        RangeError: For negative n or q < 2.

    Example:
        >>> gaussian_binomial(4, 2, q=2)
        35
    """
    if n < 0:
        raise RangeError(f'Negative n={n}')

    if q < 2:
        raise RangeError(f'Field order q={q} < 2')

    if k < 0 or k > n:
        return 0

    k = min(k, n - k)
    numerator = 1
    denominator = 1
    for i in range(k):
        numerator *= q ** (n - i) - 1
        denominator *= q ** (k - i) - 1

    value, remainder = divmod(numerator, denominator)
    assert remainder == 0, f'[{n}, {k}]_{q} not integral'
    return value


def level_count(n: int, i: int, q: Optional[int] = None) -> int:
    """Size of level i. Binomial for sets (q is None), Gaussian binomial for
    subspaces.
    """
    if q is None:
        return binomial(n, i)

    return gaussian_binomial(n, i, q)


def q_integer(n: int, q: int) -> int:
    """[n]_q = 1 + q + ... + q^(n-1)."""
    return (q ** n - 1) // (q - 1)


def q_factorial(n: int, q: int) -> int:
    """[n]_q! = [1]_q [2]_q ... [n]_q."""
    return math.prod(q_integer(i, q) for i in range(1, n + 1))


def _falling(q: int, n: int, start: int, stop: int) -> int:
    """Product of q^n - q^j for j in [start, stop)."""
    return math.prod(q ** n - q ** j for j in range(start, stop))


def alpha(q: int, n: int) -> int:
    """Number of unordered bases of F_q^n.

    Example:
        >>> alpha(2, 3)
        28
    """
    value, remainder = divmod(_falling(q, n, 0, n), math.factorial(n))
    assert remainder == 0
    return value


def t_vector(q: int, n: int) -> Tuple[int, ...]:
    """Covering multiplicities t_0, ..., t_n. An i-dimensional subspace lies in
    exactly t_i basis generated Boolean sublattices.

    Example:
        >>> t_vector(2, 3)
        (28, 12, 4, 28)
    """
    values = []
    for i in range(n + 1):
        numerator = _falling(q, i, 0, i) * _falling(q, n, i, n)
        value, remainder = divmod(numerator, math.factorial(i) * math.factorial(n - i))
        assert remainder == 0
        values.append(value)

    return tuple(values)


class IdentityReport(NamedTuple):

    """Verification outcome of the Gaussian binomial identities at (n, k, q)."""

    n: int
    k: int
    q: int
    symmetry: bool
    unimodality: bool
    pascal_upper: bool
    pascal_lower: bool
    ratio_identity: bool

    @property
    def passed(self) -> bool:
        return all(self[3:])


def check_identities(n: int, k: int, q: int) -> IdentityReport:
    """Check symmetry, strict unimodality, both Pascal type recursions and the
    ratio identity (q^n - 1) [n-1, k-1] = (q^k - 1) [n, k].

    Args:
        n: Order.
        k: Level, 0 <= k <= n.
        q: Field order.

    Returns:
        Identity report.
    """
    if not 0 <= k <= n:
        raise RangeError(f'Level k={k} outside [0, {n}]')

    gb = functools.partial(gaussian_binomial, q=q)
    half = n // 2
    lower = min(k, n - k)
    unimodality = all(gb(n, lower) < gb(n, level) for level in range(lower + 1, half + 1))
    if n >= 1:
        pascal_upper = gb(n, k) == q ** k * gb(n - 1, k) + gb(n - 1, k - 1)
        pascal_lower = gb(n, k) == gb(n - 1, k) + q ** (n - k) * gb(n - 1, k - 1)
    else:
        pascal_upper = pascal_lower = True

    if n >= 1 and k >= 1:
        ratio = (q ** n - 1) * gb(n - 1, k - 1) == (q ** k - 1) * gb(n, k)
    else:
        ratio = True

    return IdentityReport(
        n=n,
        k=k,
        q=q,
        symmetry=gb(n, k) == gb(n, n - k),
        unimodality=unimodality,
        pascal_upper=pascal_upper,
        pascal_lower=pascal_lower,
        ratio_identity=ratio,
    )


def middle_levels(n: int, k: int, side: str = 'upper') -> List[int]:
    """The k middle levels of a lattice of order n. When n + k is even there are
    two equally large choices, `side` picks one.

    Example:
        >>> middle_levels(3, 1, side='lower'), middle_levels(3, 1, side='upper')
        ([1], [2])
    """
    if not 1 <= k <= n + 1:
        raise RangeError(f'Number of levels k={k} outside [1, {n + 1}]')

    if side not in {'lower', 'upper'}:
        raise RangeError(f'Unknown side {side!r}')

    start = (n - k) // 2 + 1
    if (n + k) % 2 == 0 and side == 'lower':
        start -= 1

    return list(range(start, start + k))


def sum_largest(n: int, k: int, q: Optional[int] = None) -> int:
    """Sum of the k largest (Gaussian) binomial coefficients of order n.

    Example:
        >>> sum_largest(5, 2)
        20
    """
    return sum(level_count(n, i, q) for i in middle_levels(n, k))


class BoundResult(NamedTuple):

    """Exact theorem bound value."""

    theorem_id: str
    parameters: Dict[str, Any]
    value: Number
    violations: Tuple[str, ...] = ()
    """Violated side conditions."""

    asymptotic: bool = False
    """Statement only holds for n sufficiently large."""

    @property
    def side_conditions_hold(self) -> bool:
        return not self.violations


class Theorem(NamedTuple):

    """Registry entry."""

    theorem_id: str
    required: Tuple[str, ...]
    formula: Callable
    conditions: Tuple[Tuple[str, Callable], ...]
    asymptotic: bool
    description: str


THEOREMS: Dict[str, Theorem] = {}
"""All registered theorem bounds by id.

   :meta hide-value:
"""

ALIASES: Dict[str, str] = {}
"""Alternative theorem ids."""

NUMBERED_ALIAS = re.compile(r'^(thm|conj)(\d+)_(\d+)$')
"""Underscore spelling of numbered aliases."""


def register_bound(theorem_id: str, required: Sequence[str], conditions=(), asymptotic=False, aliases=()):
    """Decorator registering a bound formula.

    Args:
        theorem_id: Canonical id.
        required: Required parameter names in call order.
        conditions: Pairs of (description, predicate) over the parameters.
        asymptotic: Bound only holds for n sufficiently large.
        aliases: Alternative ids.
    """
    def decorator(func):
        if theorem_id in THEOREMS:
            raise RuntimeError(f'Theorem {theorem_id!r} is already registered!')

        THEOREMS[theorem_id] = Theorem(
            theorem_id=theorem_id,
            required=tuple(required),
            formula=func,
            conditions=tuple(conditions),
            asymptotic=asymptotic,
            description=(func.__doc__ or '').strip(),
        )
        for alias in aliases:
            ALIASES[alias] = theorem_id

        return func

    return decorator


def resolve_theorem_id(theorem_id: str) -> str:
    """Canonical theorem id for an id or alias. Numbered aliases may use an
    underscore instead of the dot.

    Raises:
        MissingParameter: Unknown theorem id.

    Example:
        >>> resolve_theorem_id('Thm1_12')
        'intersecting-k-sperner-q'
    """
    theorem_id = NUMBERED_ALIAS.sub(r'\1\2.\3', theorem_id.lower())
    theorem_id = ALIASES.get(theorem_id, theorem_id)
    if theorem_id not in THEOREMS:
        raise MissingParameter(f'Unknown theorem id {theorem_id!r}')

    return theorem_id


def _gb_diff(n, k, q):
    """[n, k] - [n-1, k] = q^(n-k) [n-1, k-1]."""
    return gaussian_binomial(n, k, q) - gaussian_binomial(n - 1, k, q)


def _emc_value(n, k, s):
    return max(binomial((s + 1) * k - 1, k), binomial(n, k) - binomial(n - s, k))


def _coefficients(c) -> List[Fraction]:
    if isinstance(c, (int, Fraction)):
        c = [c]

    return [Fraction(x) for x in c]


def _valid_coefficients(c) -> bool:
    c = _coefficients(c)
    return bool(c) and all(0 <= x <= 1 for x in c) and c[-1] > 0


def f_value(n: int, c: Sequence[Number]) -> Fraction:
    """f(n, c_0, ..., c_k) = sum c_i C(n, i)."""
    return sum((ci * binomial(n, i) for i, ci in enumerate(_coefficients(c))), Fraction(0))


def fq_value(n: int, c: Sequence[Number], q: int) -> Fraction:
    """f_q(n, c_0, ..., c_k) = sum c_i [n, i]_q."""
    return sum((ci * gaussian_binomial(n, i, q) for i, ci in enumerate(_coefficients(c))), Fraction(0))


def f_star(n: int, k: int, c: Number) -> Fraction:
    """f*(n, k, c) = c C(n, k)."""
    return Fraction(c) * binomial(n, k)


def fq_star(n: int, k: int, c: Number, q: int) -> Fraction:
    """f*_q(n, k, c) = c [n, k]_q."""
    return Fraction(c) * gaussian_binomial(n, k, q)


def _abs_k_condition(p):
    return all(ki > p['s'] - p['r'] for ki in p.get('K', [p['s']]))


# Boolean lattice bounds

@register_bound('ekr', ['n', 'k'], [('n >= 2k', lambda p: p['n'] >= 2 * p['k'])], aliases=['thm1.1'])
def _ekr(n, k):
    """k-uniform intersecting families of subsets."""
    return binomial(n - 1, k - 1)


@register_bound('ray-chaudhuri-wilson', ['n', 's'], aliases=['rw', 'thm1.2'])
def _rw(n, s):
    """k-uniform L-intersecting families with |L| = s."""
    return binomial(n, s)


@register_bound('frankl-wilson', ['n', 's'], aliases=['fw', 'thm1.3'])
def _fw(n, s):
    """L-intersecting families with |L| = s."""
    return sum(binomial(n, i) for i in range(s + 1))


@register_bound('abs', ['n', 's', 'r'], [
    ('1 <= r <= s', lambda p: 1 <= p['r'] <= p['s']),
    ('k_i > s - r', _abs_k_condition),
], aliases=['thm1.4'])
def _abs(n, s, r):
    """L-intersecting families with sizes from K, |L| = s, |K| = r."""
    return sum(binomial(n, i) for i in range(s - r + 1, s + 1))


@register_bound('erdos-k-sperner', ['n', 'k'], [
    ('1 <= k <= n + 1', lambda p: 1 <= p['k'] <= p['n'] + 1),
], aliases=['thm1.5'])
def _erdos_k_sperner(n, k):
    """k-Sperner families of subsets."""
    return sum_largest(n, k)


@register_bound('simplex-cluster', ['n', 'k', 'd'], [
    ('k >= d + 1 >= 3', lambda p: p['k'] >= p['d'] + 1 >= 3),
    ('n >= 2k - d + 2', lambda p: p['n'] >= 2 * p['k'] - p['d'] + 2),
], aliases=['thm4.2'])
def _simplex_cluster(n, k, d):
    """k-uniform families of subsets without d-simplex-cluster."""
    return binomial(n - 1, k - 1)


@register_bound('simplex', ['n', 'k', 'd'], [
    ('k >= d + 1 >= 3', lambda p: p['k'] >= p['d'] + 1 >= 3),
    ('n >= k(d + 1) / d', lambda p: p['n'] * p['d'] >= p['k'] * (p['d'] + 1)),
], aliases=['conj4.1'])
def _simplex(n, k, d):
    """k-uniform families of subsets without d-simplex (conjectured)."""
    return binomial(n - 1, k - 1)


@register_bound('nontrivial-intersecting', ['n', 'k', 'd'], [
    ('d >= k >= 4', lambda p: p['d'] >= p['k'] >= 4),
], asymptotic=True, aliases=['thm4.4'])
def _nontrivial_intersecting(n, k, d):
    """k-uniform families without non-trivial intersecting subfamily of size d + 1."""
    return binomial(n - 1, k - 1)


@register_bound('matching', ['n', 'k', 's'], [
    ('n >= (2s + 1)k - s', lambda p: p['n'] >= (2 * p['s'] + 1) * p['k'] - p['s']),
], aliases=['thm4.6'])
def _matching(n, k, s):
    """k-uniform families with matching number at most s."""
    return binomial(n, k) - binomial(n - s, k)


@register_bound('emc', ['n', 'k', 's'], [
    ('n >= (s + 1)k', lambda p: p['n'] >= (p['s'] + 1) * p['k']),
], aliases=['conj1.15'])
def _emc(n, k, s):
    """k-uniform families with matching number at most s (conjectured)."""
    return _emc_value(n, k, s)


@register_bound('rainbow', ['n', 'k', 's'], [
    ('n >= (s + 1)k', lambda p: p['n'] >= (p['s'] + 1) * p['k']),
], asymptotic=True, aliases=['thm4.10'])
def _rainbow(n, k, s):
    """Smallest of s + 1 k-uniform families without rainbow matching."""
    return _emc_value(n, k, s)


@register_bound('transfer', ['n', 'c'], [
    ('0 <= c_i <= 1 and c_k > 0', lambda p: _valid_coefficients(p['c'])),
    ('n >= 2k', lambda p: p['n'] >= 2 * (len(_coefficients(p['c'])) - 1)),
])
def _transfer(n, c):
    """f(n, c_0, ..., c_k)."""
    return f_value(n, c)


@register_bound('transfer-uniform', ['n', 'k', 'c'], [
    ('0 < c <= 1', lambda p: 0 < Fraction(p['c']) <= 1),
    ('n >= 2k', lambda p: p['n'] >= 2 * p['k']),
])
def _transfer_uniform(n, k, c):
    """f*(n, k, c)."""
    return f_star(n, k, c)


# Linear lattice bounds

@register_bound('ekr-q', ['q', 'n', 'k'], [
    ('n >= 2k + 1', lambda p: p['n'] >= 2 * p['k'] + 1),
], aliases=['thm1.6'])
def _ekr_q(q, n, k):
    """k-dimensional intersecting families of subspaces."""
    return gaussian_binomial(n - 1, k - 1, q)


@register_bound('frankl-graham', ['q', 'n', 's'], aliases=['fg', 'thm1.7'])
def _frankl_graham(q, n, s):
    """k-dimensional L-intersecting families of subspaces, |L| = s."""
    return gaussian_binomial(n, s, q)


@register_bound('lefmann', ['q', 'n', 's'], aliases=['thm1.8'])
def _lefmann(q, n, s):
    """L-intersecting families of subspaces, |L| = s."""
    return sum(gaussian_binomial(n, i, q) for i in range(s + 1))


@register_bound('abs-q', ['q', 'n', 's', 'r'], [
    ('1 <= r <= s', lambda p: 1 <= p['r'] <= p['s']),
    ('k_i > s - r', _abs_k_condition),
], aliases=['thm1.9'])
def _abs_q(q, n, s, r):
    """L-intersecting families of subspaces with dimensions from K."""
    return sum(gaussian_binomial(n, i, q) for i in range(s - r + 1, s + 1))


@register_bound('sperner-q', ['q', 'n'], aliases=['thm1.10'])
def _sperner_q(q, n):
    """Sperner families of subspaces."""
    return gaussian_binomial(n, n // 2, q)


@register_bound('samotij-q', ['q', 'n', 'k'], [
    ('1 <= k <= n + 1', lambda p: 1 <= p['k'] <= p['n'] + 1),
], aliases=['thm1.11'])
def _samotij_q(q, n, k):
    """k-Sperner families of subspaces."""
    return sum_largest(n, k, q)


@register_bound('intersecting-k-sperner-q', ['q', 'n', 'k'], [
    ('1 <= k <= n // 2', lambda p: 1 <= p['k'] <= p['n'] // 2),
], aliases=['thm1.12'])
def _intersecting_k_sperner_q(q, n, k):
    """Intersecting k-Sperner families of subspaces of dimension at most n // 2."""
    half = n // 2
    return sum(gaussian_binomial(n - 1, j - 1, q) for j in range(half - k + 1, half + 1))


@register_bound('simplex-cluster-q', ['q', 'n', 'k', 'd'], [
    ('k >= d + 1 >= 3', lambda p: p['k'] >= p['d'] + 1 >= 3),
], asymptotic=True, aliases=['thm4.3'])
def _simplex_cluster_q(q, n, k, d):
    """k-dimensional families without d-simplex-cluster."""
    return _gb_diff(n, k, q)


@register_bound('simplex-q', ['q', 'n', 'k', 'd'], [
    ('k >= d + 1 >= 3', lambda p: p['k'] >= p['d'] + 1 >= 3),
    ('n >= k(d + 1) / d', lambda p: p['n'] * p['d'] >= p['k'] * (p['d'] + 1)),
], aliases=['conj5.1'])
def _simplex_q(q, n, k, d):
    """k-dimensional families without d-simplex (conjectured)."""
    return _gb_diff(n, k, q)


@register_bound('nontrivial-intersecting-q', ['q', 'n', 'k', 'd'], [
    ('d >= k >= 4', lambda p: p['d'] >= p['k'] >= 4),
], asymptotic=True, aliases=['thm4.5'])
def _nontrivial_intersecting_q(q, n, k, d):
    """k-dimensional families without non-trivial intersecting subfamily of size d + 1."""
    return _gb_diff(n, k, q)


@register_bound('matching-q', ['q', 'n', 'k', 's'], asymptotic=True, aliases=['thm4.7'])
def _matching_q(q, n, k, s):
    """k-dimensional families with matching number at most s."""
    return _gb_diff(n, k, q)


@register_bound('emc-q', ['q', 'n', 'k', 's'], [
    ('n >= (s + 1)k', lambda p: p['n'] >= (p['s'] + 1) * p['k']),
], aliases=['conj5.2'])
def _emc_q(q, n, k, s):
    """k-dimensional families with matching number at most s (conjectured)."""
    return min(_gb_diff(n, k, q), s * gaussian_binomial(n - 1, k - 1, q))


@register_bound('rainbow-q', ['q', 'n', 'k', 's'], asymptotic=True, aliases=['thm4.11'])
def _rainbow_q(q, n, k, s):
    """Smallest of s + 1 k-dimensional families without rainbow matching."""
    return _gb_diff(n, k, q)


@register_bound('transfer-q', ['q', 'n', 'c'], [
    ('0 <= c_i <= 1 and c_k > 0', lambda p: _valid_coefficients(p['c'])),
    ('n >= 2k', lambda p: p['n'] >= 2 * (len(_coefficients(p['c'])) - 1)),
], asymptotic=True, aliases=['thm1.13'])
def _transfer_q(q, n, c):
    """f_q(n, c_0, ..., c_k)."""
    return fq_value(n, c, q)


@register_bound('transfer-uniform-q', ['q', 'n', 'k', 'c'], [
    ('0 < c <= 1', lambda p: 0 < Fraction(p['c']) <= 1),
    ('n >= 2k', lambda p: p['n'] >= 2 * p['k']),
], aliases=['thm1.14'])
def _transfer_uniform_q(q, n, k, c):
    """f*_q(n, k, c)."""
    return fq_star(n, k, c, q)


def _normalize(value):
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator

    return value


def _complete_parameters(params: Dict[str, Any]) -> Dict[str, Any]:
    """Derive s from L and r from K when only the sets are given."""
    params = dict(params)
    if 's' not in params and 'L' in params:
        params['s'] = len(params['L'])

    if 'r' not in params and 'K' in params:
        params['r'] = len(params['K'])

    return params


def theorem_bound(theorem_id: str, parameters: Dict[str, Any], strict: bool = False) -> BoundResult:
    """Evaluate a theorem bound.

    Args:
        theorem_id: Theorem id or alias (see :data:`THEOREMS`).
        parameters: Named parameters. Extra parameters are ignored but echoed.
        strict: Raise on violated side conditions instead of recording them.

    Returns:
        Bound result.

    Raises:
        MissingParameter: Unknown id or incomplete parameters.
        SideConditionViolated: In strict mode.

    Example:
        >>> theorem_bound('intersecting-k-sperner-q', {'q': 2, 'n': 5, 'k': 2}).value
        16
    """
    theorem = THEOREMS[resolve_theorem_id(theorem_id)]
    params = _complete_parameters(parameters)
    missing = [name for name in theorem.required if name not in params]
    if missing:
        raise MissingParameter(f'{theorem.theorem_id} needs parameters {", ".join(missing)}')

    if 'q' in theorem.required and params['q'] < 2:
        raise RangeError(f'Field order q={params["q"]} < 2')

    violations = []
    for description, predicate in theorem.conditions:
        if not predicate(params):
            violations.append(description)

    if violations:
        msg = f'{theorem.theorem_id}: side conditions violated: {"; ".join(violations)}'
        if strict:
            raise SideConditionViolated(msg)

        LOGGER.warning(msg)
        warnings.warn(msg, SideConditionViolated, stacklevel=2)

    value = theorem.formula(*(params[name] for name in theorem.required))
    return BoundResult(
        theorem_id=theorem.theorem_id,
        parameters={key: params[key] for key in sorted(params)},
        value=_normalize(value),
        violations=tuple(violations),
        asymptotic=theorem.asymptotic,
    )


def ordering_property_holds(n: int, b: Sequence[Number], c: Sequence[Number], q: int) -> bool:
    """Lexicographic dominance of the q-weighted sums at n: if f_q(n, b) >
    f_q(n, c) then b beats c at the topmost coordinate where they differ.
    """
    b = _coefficients(b)
    c = _coefficients(c)
    if len(b) != len(c):
        raise RangeError('Coefficient vectors of different length')

    for bj, cj in zip(reversed(b), reversed(c)):
        if bj != cj:
            return not fq_value(n, b, q) > fq_value(n, c, q) or bj > cj

    return True


LEMMA_KINDS = ('sets', 'subspaces')
"""Threshold kinds. Binomial sums or Gaussian binomial sums."""

LEMMA_KIND_ALIASES: Dict[str, str] = {
    'lemma3_1_i': 'sets',
    'lemma3_1_ii': 'subspaces',
}
"""Numbered threshold kinds."""


class ThresholdResult(NamedTuple):

    """Outcome of a threshold search."""

    kind: str
    k: int
    epsilon: Fraction
    q: Optional[int]
    n0: Optional[int]
    """Least n >= 2k + 2 where the strict inequality holds."""

    horizon: int
    verified: bool
    """Inequality holds on all of [n0, n0 + horizon]."""

    first_violation: Optional[int]
    sufficient_bound: Optional[Fraction]
    """Inequality provably holds for all n > sufficient_bound."""


def _threshold_holds(kind: str, n: int, k: int, epsilon: Fraction, q: Optional[int]) -> bool:
    if kind == 'sets':
        return sum(binomial(n, i) for i in range(k + 1)) < epsilon * binomial(n, k + 1)

    return sum(gaussian_binomial(n, i, q) for i in range(k + 1)) < epsilon * gaussian_binomial(n, k + 1, q)


def _sufficient_bound(kind: str, k: int, epsilon: Fraction, q: Optional[int]) -> Fraction:
    if kind == 'sets':
        return Fraction((k + 1) ** 2) / epsilon + k

    # [n, k+1] = (q^(n-k) - 1) / (q^(k+1) - 1) [n, k] and the lower k + 1
    # levels sum to at most (k + 1) [n, k]
    target = (k + 1) * (q ** (k + 1) - 1) / epsilon
    m = 1
    while q ** m - 1 <= target:
        m += 1

    return Fraction(max(k + m - 1, 2 * k + 1))


def threshold_n0(kind: str, k: int, epsilon: Number, q: Optional[int] = None,
                 horizon: Optional[int] = None, search_limit: Optional[int] = None) -> ThresholdResult:
    """Explicit threshold for the lower level sums being dominated by epsilon
    times the next level.

    sets:      sum_{i <= k} C(n, i)   < epsilon C(n, k+1)
    subspaces: sum_{i <= k} [n, i]_q  < epsilon [n, k+1]_q

    Args:
        kind: 'sets' or 'subspaces' (or their numbered aliases).
        k: Level, k >= 1.
        epsilon: Positive exact rational.
        q: Field order for the subspaces kind.
        horizon: Verification sweep length after n0.
        search_limit: Maximum number of n values to try.

    Returns:
        Threshold result. n0 is None if nothing was found within the limit.

    Example:
        >>> threshold_n0('sets', k=1, epsilon=1).n0
        4
    """
    kind = LEMMA_KIND_ALIASES.get(kind, kind)
    if kind not in LEMMA_KINDS:
        raise RangeError(f'Unknown threshold kind {kind!r}')

    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise RangeError(f'epsilon={epsilon} has to be positive')

    if k < 1:
        raise RangeError(f'k={k} has to be positive')

    if kind == 'subspaces' and (q is None or q < 2):
        raise RangeError('Subspace threshold needs q >= 2')

    if kind == 'sets':
        q = None

    if horizon is None:
        horizon = CONFIG['Caps']['THRESHOLD_HORIZON']

    if search_limit is None:
        search_limit = CONFIG['Caps']['THRESHOLD_SEARCH_LIMIT']

    start = 2 * k + 2
    n0 = None
    for n in range(start, start + search_limit):
        if _threshold_holds(kind, n, k, epsilon, q):
            n0 = n
            break

    sufficient = _sufficient_bound(kind, k, epsilon, q)
    if n0 is None:
        LOGGER.warning('No threshold found for %s k=%d eps=%s within %d steps', kind, k, epsilon, search_limit)
        return ThresholdResult(kind, k, epsilon, q, None, horizon, False, None, sufficient)

    firstViolation = None
    for n in range(n0 + 1, n0 + horizon + 1):
        if not _threshold_holds(kind, n, k, epsilon, q):
            firstViolation = n
            break

    if firstViolation is not None:
        LOGGER.warning('Threshold inequality fails again at n=%d after n0=%d', firstViolation, n0)

    return ThresholdResult(
        kind=kind,
        k=k,
        epsilon=epsilon,
        q=q,
        n0=n0,
        horizon=horizon,
        verified=firstViolation is None,
        first_violation=firstViolation,
        sufficient_bound=sufficient,
    )
