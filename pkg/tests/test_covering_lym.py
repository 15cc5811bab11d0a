import os
import unittest
from fractions import Fraction

from qlattice.constants import SUBSETS, SUBSPACES
from qlattice.covering_lym import (
    antichain_decompose, audit_t_covering, boolean_isomorphism_check,
    build_covering, lym_check, maximize_profile, sublattice_members,
    transfer_audit, weighted_bound_check,
)
from qlattice.error import CapExceeded, HypothesisUnverified, PreconditionFailed, RangeError
from qlattice.extremal_search import build_star
from qlattice.family_properties import Intersecting, is_antichain
from qlattice.finite_field import make_field
from qlattice.matrix import MatrixGF
from qlattice.qcombinatorics import alpha
from qlattice.subspace_lattice import Family, SubsetHandle, canonicalize, enumerate_levels


def point(q, row):
    field = make_field(q)
    return canonicalize(field, MatrixGF.from_strings(field, [row]))


class TestCovering(unittest.TestCase):
    def test_number_of_bases(self):
        for q, n in [(2, 1), (2, 2), (2, 3), (3, 2), (4, 2)]:
            cov = build_covering(make_field(q), n)

            self.assertEqual(len(cov), alpha(q, n))
            self.assertEqual(len(set(cov.bases)), len(cov))

    def test_bases_are_sorted_index_tuples(self):
        cov = build_covering(make_field(2), 2)

        self.assertEqual(cov.bases, ((1, 2), (1, 3), (2, 3)))

    def test_cap(self):
        with self.assertRaises(CapExceeded) as cm:
            build_covering(make_field(2), 3, cap=10)

        self.assertEqual(cm.exception.count, 28)

    def test_invalid_dimension(self):
        with self.assertRaises(RangeError):
            build_covering(make_field(2), 0)

    def test_sublattice_members(self):
        cov = build_covering(make_field(3), 2)
        members = sublattice_members(cov, cov.bases[0])

        self.assertEqual(len(members), 4)
        self.assertEqual(members.profile.counts, (1, 2, 1))

    def test_boolean_isomorphism(self):
        for q, n in [(2, 3), (3, 2)]:
            cov = build_covering(make_field(q), n)
            for basis in cov.bases[:5]:
                self.assertTrue(boolean_isomorphism_check(cov, basis).passed)

    def test_audit(self):
        for q, n in [(2, 2), (2, 3), (3, 2)]:
            audit = audit_t_covering(build_covering(make_field(q), n))

            self.assertTrue(audit.passed, audit)
            self.assertEqual([row.t for row in audit.levels], list(build_covering(make_field(q), n).t))

    def test_scalar_multiples_give_the_same_sublattice(self):
        self.assertEqual(audit_t_covering(build_covering(make_field(2), 3)).distinct_sublattices, 28)
        self.assertEqual(audit_t_covering(build_covering(make_field(3), 2)).distinct_sublattices, 6)

    @unittest.skipUnless(os.environ.get('QLATTICE_SLOW'), 'slow')
    def test_audit_f2_4(self):
        self.assertTrue(audit_t_covering(build_covering(make_field(2), 4)).passed)


class TestWeightedBound(unittest.TestCase):
    def setUp(self):
        self.cov = build_covering(make_field(2), 2)

    def test_verified_hypothesis(self):
        fam = build_star(SUBSPACES, 2, 1, 2, point(2, '10')).union(enumerate_levels(SUBSPACES, 2, [2], q=2))
        report = weighted_bound_check(self.cov, self.cov.t, Intersecting(), 2, fam)

        self.assertEqual(report.hypothesis, 'verified')
        self.assertEqual(report.worst_ratio, 2)
        self.assertEqual(report.weight, 5)
        self.assertEqual(report.limit, 6)
        self.assertTrue(report.holds)
        self.assertTrue(report.family_has_property)

    def test_refuted_hypothesis(self):
        fam = enumerate_levels(SUBSPACES, 2, [2], q=2)
        with self.assertRaises(HypothesisUnverified):
            weighted_bound_check(self.cov, self.cov.t, Intersecting(), 1, fam)

    def test_trusted_hypothesis(self):
        fam = enumerate_levels(SUBSPACES, 2, [1], q=2)
        report = weighted_bound_check(self.cov, self.cov.t, Intersecting(), 1, fam, trusted=True)

        self.assertEqual(report.hypothesis, 'trusted')
        self.assertIsNone(report.worst_ratio)
        self.assertFalse(report.family_has_property)

    def test_weight_vector_length(self):
        with self.assertRaises(RangeError):
            weighted_bound_check(self.cov, [1, 1], Intersecting(), 1, Family(SUBSPACES, 2, 2))

    def test_family_outside_the_covering_ambient(self):
        n = self.cov.n
        wrongKind = Family(SUBSETS, n, None, [SubsetHandle.from_iterable(n, [0])])
        wrongN = Family(SUBSPACES, n + 1, 2)
        wrongQ = Family(SUBSPACES, n, 3)
        for fam in [wrongKind, wrongN, wrongQ]:
            with self.assertRaises(RangeError):
                weighted_bound_check(self.cov, self.cov.t, Intersecting(), 1, fam)


class TestTransfer(unittest.TestCase):
    def test_values(self):
        audit = transfer_audit(3, 2, [0, 1])

        self.assertEqual(audit.f, 3)
        self.assertEqual(audit.fq, 7)
        self.assertEqual(audit.alpha_f, 84)
        self.assertTrue(audit.identity_holds)
        self.assertIsNone(audit.weight_holds)

    def test_identity_for_fractional_coefficients(self):
        for q, n in [(2, 4), (3, 3), (4, 2)]:
            audit = transfer_audit(n, q, [Fraction(1, 3), 0, Fraction(1, 2)])

            self.assertTrue(audit.identity_holds)

    def test_family(self):
        audit = transfer_audit(3, 2, [0, 1], enumerate_levels(SUBSPACES, 3, [1], q=2))

        self.assertEqual(audit.family_weight, 84)
        self.assertTrue(audit.weight_holds)
        self.assertTrue(audit.size_holds)

    def test_family_of_another_ambient(self):
        with self.assertRaises(RangeError):
            transfer_audit(3, 2, [0, 1], enumerate_levels(SUBSPACES, 2, [1], q=2))


class TestLym(unittest.TestCase):
    def test_star_reaches_equality(self):
        star = build_star(SUBSPACES, 5, 2, 2, point(2, '10000'))
        report = lym_check(star)

        self.assertEqual(report.total, 1)
        self.assertTrue(report.holds)
        self.assertTrue(report.equality)
        self.assertFalse(report.vacuous)
        self.assertEqual(report.classification, 'star')
        self.assertTrue(report.characterization_holds)

    def test_subfamily_is_below_one(self):
        star = build_star(SUBSPACES, 5, 2, 2, point(2, '10000'))
        report = lym_check(star.subfamily(range(5)))

        self.assertEqual(report.total, Fraction(5, 15))
        self.assertFalse(report.equality)
        self.assertIsNone(report.classification)

    def test_two_levels(self):
        center = point(2, '10000')
        fam = build_star(SUBSPACES, 5, 2, 2, center).union(
            Family(SUBSPACES, 5, 2, [point(2, '01000')])
        )
        report = lym_check(fam, k=2, strict=False)

        # The point meets most planes of the star trivially
        self.assertTrue(report.vacuous)

    def test_subsets(self):
        star = build_star(SUBSETS, 6, 3, None, SubsetHandle.from_iterable(6, [1]))

        self.assertEqual(lym_check(star).total, 1)

    def test_precondition(self):
        fam = enumerate_levels(SUBSPACES, 4, [1], q=2)
        report = lym_check(fam)

        self.assertTrue(report.vacuous)
        self.assertIn('not intersecting', report.precondition)

        with self.assertRaises(PreconditionFailed):
            lym_check(fam, strict=True)

    def test_levels_outside_range(self):
        fam = enumerate_levels(SUBSPACES, 4, [3], q=2)
        report = lym_check(fam)

        self.assertTrue(report.vacuous)
        self.assertIn('outside', report.precondition)

    def test_invalid_k(self):
        with self.assertRaises(RangeError):
            lym_check(Family(SUBSETS, 4), k=0)


class TestAntichains(unittest.TestCase):
    def test_decompose(self):
        fam = enumerate_levels(SUBSETS, 3, [1, 2])
        parts = antichain_decompose(fam)

        self.assertEqual([len(part) for part in parts], [3, 3])
        self.assertTrue(all(is_antichain(part) for part in parts))

    def test_point_and_planes(self):
        center = point(2, '1000')
        fam = build_star(SUBSPACES, 4, 1, 2, center).union(build_star(SUBSPACES, 4, 2, 2, center))
        parts = antichain_decompose(fam)

        self.assertEqual([len(part) for part in parts], [1, 7])

    def test_empty(self):
        self.assertEqual(antichain_decompose(Family(SUBSETS, 3)), [])


class TestProfile(unittest.TestCase):
    def test_subspaces(self):
        self.assertEqual(maximize_profile(5, 1, q=2).value, 15)

        optimum = maximize_profile(5, 2, q=2)
        self.assertEqual(optimum.value, 16)
        self.assertEqual(optimum.profile, (1, 15))
        self.assertTrue(optimum.exchange_audit)
        self.assertAlmostEqual(optimum.lp_value, 16.0, places=6)

    def test_subsets(self):
        optimum = maximize_profile(6, 1)

        self.assertEqual(optimum.caps, (1, 5, 10))
        self.assertEqual(optimum.value, 10)

    def test_invalid(self):
        with self.assertRaises(RangeError):
            maximize_profile(5, 3, q=2)


if __name__ == '__main__':
    unittest.main()
