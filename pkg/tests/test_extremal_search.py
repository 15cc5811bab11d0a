import os
import unittest
from fractions import Fraction

from qlattice.constants import SUBSETS, SUBSPACES
from qlattice.error import AmbientMismatch, CenterTooBig, NotOptimal, RangeError, ResourceExhausted
from qlattice.extremal_search import (
    SearchProblem, build_full_levels, build_star, check_equality_characterization,
    classify_family, explore_conjecture, level_ground, max_family, resolve_conjecture_id,
)
from qlattice.family_properties import (
    Intersecting, IntersectingKSperner, KSperner, MatchingAtMost, NoDSimplex, Sperner,
)
from qlattice.finite_field import make_field
from qlattice.matrix import MatrixGF
from qlattice.qcombinatorics import theorem_bound
from qlattice.subspace_lattice import Family, SubsetHandle, canonicalize


def point(q, row):
    field = make_field(q)
    return canonicalize(field, MatrixGF.from_strings(field, [row]))


def sets(n, *members):
    return Family(SUBSETS, n, None, [SubsetHandle.from_iterable(n, m) for m in members])


class TestMaxFamily(unittest.TestCase):
    def test_intersecting_pairs(self):
        result = max_family(SearchProblem(level_ground(SUBSETS, 4, [2]), Intersecting()))

        self.assertEqual(result.max_size, 3)
        self.assertTrue(result.proven_optimal)
        # 4 stars and 4 triangles
        self.assertEqual(len(result.witnesses), 8)
        self.assertTrue(result.witnesses_complete)
        for witness in result.witnesses:
            self.assertTrue(Intersecting().check(witness).holds)

    def test_witnesses_are_in_canonical_order(self):
        ground = level_ground(SUBSETS, 4, [2])
        result = max_family(SearchProblem(ground, Intersecting()))
        indices = [tuple(ground.index(e) for e in w) for w in result.witnesses]

        self.assertEqual(indices, sorted(indices))

    def test_ekr_equality(self):
        result = max_family(SearchProblem(level_ground(SUBSETS, 5, [2]), Intersecting()))
        report = check_equality_characterization(result, 'ekr', {'n': 5, 'k': 2})

        self.assertEqual(result.max_size, 4)
        self.assertEqual(report.labels, ('star',) * 5)
        self.assertTrue(report.holds)
        self.assertTrue(report.complete)

    def test_not_optimal(self):
        result = max_family(SearchProblem(level_ground(SUBSETS, 5, [2]), Intersecting()))
        with self.assertRaises(NotOptimal):
            check_equality_characterization(result, 'ekr', {'n': 6, 'k': 2})

    def test_sperner_q(self):
        ground = level_ground(SUBSPACES, 3, [1, 2], q=2)
        result = max_family(SearchProblem(ground, Sperner()))
        report = check_equality_characterization(result, 'sperner-q', {'q': 2, 'n': 3})

        self.assertEqual(result.max_size, 7)
        self.assertEqual(report.labels, ('full-levels', 'full-levels'))

    def test_k_sperner_restricted_to_k_levels_is_trivial(self):
        ground = level_ground(SUBSETS, 4, [1, 2])
        result = max_family(SearchProblem(ground, KSperner(2), witness_cap=1))

        self.assertEqual(result.max_size, 10)

    def test_k_sperner_subsets(self):
        ground = level_ground(SUBSETS, 4, [1, 2, 3])
        result = max_family(SearchProblem(ground, KSperner(2), witness_cap=1))
        bound = theorem_bound('erdos-k-sperner', {'n': 4, 'k': 2})

        self.assertEqual(result.max_size, bound.value)

    def test_intersecting_k_sperner(self):
        ground = level_ground(SUBSPACES, 4, [1, 2], q=2)
        result = max_family(SearchProblem(ground, IntersectingKSperner(1), witness_cap=1))

        self.assertEqual(result.max_size, 7)

    def test_matching(self):
        ground = level_ground(SUBSETS, 6, [2])
        result = max_family(SearchProblem(ground, MatchingAtMost(2), witness_cap=1))

        # max(C(5, 2), C(6, 2) - C(4, 2))
        self.assertEqual(result.max_size, 10)

    def test_bound_hint_does_not_change_the_result(self):
        ground = level_ground(SUBSETS, 5, [2])
        hint = theorem_bound('ekr', {'n': 5, 'k': 2})
        plain = max_family(SearchProblem(ground, Intersecting()))
        hinted = max_family(SearchProblem(ground, Intersecting(), bound_hint=hint))

        self.assertEqual(plain.max_size, hinted.max_size)
        self.assertEqual(plain.witnesses, hinted.witnesses)
        self.assertLessEqual(hinted.nodes_explored, plain.nodes_explored)

    def test_weighted(self):
        ground = level_ground(SUBSETS, 3, [1, 2])
        result = max_family(SearchProblem(ground, Sperner(), weights=(0, 1, 2)))

        self.assertEqual(result.max_weight, Fraction(6))
        self.assertEqual(result.max_size, 3)
        self.assertEqual(result.witnesses[0].level_set, [2])

    def test_weights_have_to_cover_levels(self):
        ground = level_ground(SUBSETS, 3, [1, 2])
        with self.assertRaises(RangeError):
            max_family(SearchProblem(ground, Sperner(), weights=(0, 1)))

    def test_empty_ground(self):
        result = max_family(SearchProblem(Family(SUBSETS, 3), Intersecting()))

        self.assertEqual(result.max_size, 0)
        self.assertEqual(len(result.witnesses), 1)

    def test_node_cap(self):
        ground = level_ground(SUBSETS, 5, [2])
        with self.assertRaises(ResourceExhausted) as cm:
            max_family(SearchProblem(ground, Intersecting(), node_cap=1))

        partial = cm.exception.partial
        self.assertFalse(partial.proven_optimal)
        self.assertGreaterEqual(partial.max_size, 1)

    def test_witness_cap(self):
        result = max_family(SearchProblem(level_ground(SUBSETS, 4, [2]), Intersecting(), witness_cap=3))

        self.assertEqual(len(result.witnesses), 3)
        self.assertFalse(result.witnesses_complete)

    def test_symmetry_reduction(self):
        ground = level_ground(SUBSETS, 5, [2])
        result = max_family(SearchProblem(ground, Intersecting(), symmetry=True))

        self.assertEqual(result.max_size, 4)
        self.assertTrue(result.symmetry_reduced)
        for witness in result.witnesses:
            self.assertIn(ground[0], witness)

    def test_result_does_not_depend_on_threads(self):
        ground = level_ground(SUBSETS, 5, [2])
        single = max_family(SearchProblem(ground, Intersecting(), threads=1))
        multi = max_family(SearchProblem(ground, Intersecting(), threads=2))

        self.assertEqual(single.max_size, multi.max_size)
        self.assertEqual(single.witnesses, multi.witnesses)
        self.assertEqual(single.nodes_explored, multi.nodes_explored)

    @unittest.skipUnless(os.environ.get('QLATTICE_SLOW'), 'slow')
    def test_ekr_q(self):
        ground = level_ground(SUBSPACES, 5, [2], q=2)
        result = max_family(SearchProblem(ground, Intersecting(), symmetry=True, witness_cap=1))

        self.assertEqual(result.max_size, theorem_bound('ekr-q', {'q': 2, 'n': 5, 'k': 2}).value)


class TestConstructions(unittest.TestCase):
    def test_subset_star(self):
        star = build_star(SUBSETS, 5, 2, None, SubsetHandle.from_iterable(5, [1]))

        self.assertEqual(len(star), 4)
        self.assertTrue(Intersecting().check(star).holds)

    def test_subspace_star(self):
        center = point(2, '10000')
        star = build_star(SUBSPACES, 5, 2, 2, center)

        self.assertEqual(len(star), 15)
        self.assertTrue(all(e.contains(center) for e in star))
        self.assertEqual(len(set(star)), 15)

    def test_subspace_star_through_a_line(self):
        field = make_field(3)
        center = canonicalize(field, MatrixGF.from_strings(field, ['1200', '0011']))
        star = build_star(SUBSPACES, 4, 3, 3, center)

        self.assertEqual(len(star), 4)
        self.assertTrue(all(e.contains(center) for e in star))

    def test_center_too_big(self):
        with self.assertRaises(CenterTooBig):
            build_star(SUBSETS, 5, 1, None, SubsetHandle.from_iterable(5, [1, 2]))

    def test_center_of_another_ambient(self):
        with self.assertRaises(AmbientMismatch):
            build_star(SUBSPACES, 4, 2, 2, point(2, '100'))

    def test_full_levels(self):
        fam = build_full_levels(SUBSPACES, 4, 1, q=2)

        self.assertEqual(fam.profile.counts, (0, 0, 35, 0, 0))
        self.assertEqual(len(build_full_levels(SUBSETS, 5, 2)), 20)

        with self.assertRaises(RangeError):
            build_full_levels(SUBSETS, 3, 4)


class TestClassification(unittest.TestCase):
    def test_star(self):
        center = SubsetHandle.from_iterable(5, [1])
        classification = classify_family(build_star(SUBSETS, 5, 2, None, center))

        self.assertEqual(classification.label, 'star')
        self.assertEqual(classification.center, center)

    def test_star_levels(self):
        center = point(2, '1000')
        fam = build_star(SUBSPACES, 4, 1, 2, center).union(build_star(SUBSPACES, 4, 2, 2, center))

        self.assertEqual(classify_family(fam).label, 'star-levels')
        self.assertEqual(classify_family(fam).levels, (1, 2))

    def test_full_levels(self):
        self.assertEqual(classify_family(level_ground(SUBSETS, 4, [2])).label, 'full-levels')

    def test_unclassified(self):
        self.assertEqual(classify_family(sets(4, [1, 2], [1, 3], [2, 3])).label, 'unclassified')
        self.assertEqual(classify_family(Family(SUBSETS, 4)).label, 'unclassified')


class TestConjectures(unittest.TestCase):
    def test_emc(self):
        rows = explore_conjecture('emc', {'n': [4], 'k': [2], 's': [1]})

        self.assertEqual(len(rows), 1)
        self.assertEqual(rows[0].search_max, 3)
        self.assertEqual(rows[0].conjectured, 3)
        self.assertEqual(rows[0].status, 'consistent-tight')

    def test_grid_point_beyond_cap_is_unknown(self):
        rows = explore_conjecture('emc', {'n': [4, 7], 'k': [2], 's': [1]}, cap=10)

        self.assertEqual([row.status for row in rows], ['consistent-tight', 'unknown'])
        self.assertIsNone(rows[1].search_max)
        self.assertEqual(rows[1].parameters, {'k': 2, 'n': 7, 's': 1})

    def test_side_conditions_are_reported(self):
        rows = explore_conjecture('emc', {'n': [3], 'k': [2], 's': [1]})

        self.assertEqual(rows[0].side_conditions, ('n >= (s + 1)k',))

    def test_unknown_conjecture(self):
        with self.assertRaises(RangeError):
            explore_conjecture('hadwiger', {'n': [4]})

    def test_simplex_q_small(self):
        # Two planes of F_2^3 always meet, so all seven planes are 1-simplex free
        rows = explore_conjecture('simplex-q', {'q': [2], 'n': [3], 'k': [2], 'd': [1]})

        self.assertEqual(rows[0].search_max, 7)
        self.assertEqual(rows[0].conjectured, 6)
        self.assertEqual(rows[0].status, 'VIOLATION')
        self.assertEqual(tuple(rows[0].side_conditions), ('k >= d + 1 >= 3', 'n >= k(d + 1) / d'))

    def test_resolve_conjecture_id(self):
        self.assertEqual(resolve_conjecture_id('5.2'), 'emc-q')
        self.assertEqual(resolve_conjecture_id('conj5_1'), 'simplex-q')
        self.assertEqual(resolve_conjecture_id('emc_set'), 'emc')
        self.assertEqual(resolve_conjecture_id('EMC-Q'), 'emc-q')
        with self.assertRaises(RangeError):
            resolve_conjecture_id('6.1')

    def test_no_simplex_search_agrees_with_checker(self):
        ground = level_ground(SUBSETS, 4, [2])
        result = max_family(SearchProblem(ground, NoDSimplex(2), witness_cap=5))
        for witness in result.witnesses:
            self.assertTrue(NoDSimplex(2).check(witness).holds)


if __name__ == '__main__':
    unittest.main()
