import contextlib
import csv
import io
import json
import os
import tempfile
import unittest

from qlattice.cli import main, parse_parameters
from qlattice.constants import EXIT_EXHAUSTED, EXIT_OK, EXIT_USAGE, EXIT_VIOLATED, SUBSETS
from qlattice.error import UsageError
from qlattice.serialization import read_family_file, write_family_file
from qlattice.subspace_lattice import enumerate_levels


class CliTestCase(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.output = os.path.join(self.tmp.name, 'report.json')

    def tearDown(self):
        self.tmp.cleanup()

    def path(self, name):
        return os.path.join(self.tmp.name, name)

    def run_cli(self, *args):
        code = main(list(args) + ['--output', self.output])
        with open(self.output) as f:
            text = f.read()

        return code, text

    def run_json(self, *args):
        code, text = self.run_cli(*args)
        return code, json.loads(text)


class TestParameters(unittest.TestCase):
    def test_values(self):
        params = parse_parameters(['q=2', 'n=4..5', 'eps=1/2', 'L=1', 'side=lower'])

        self.assertEqual(params['q'], 2)
        self.assertEqual(params['n'], [4, 5])
        self.assertEqual(params['L'], [1])
        self.assertEqual(params['side'], 'lower')

    def test_malformed(self):
        for token in ['q', '=2', 'q=']:
            with self.assertRaises(UsageError):
                parse_parameters([token])


class TestBound(CliTestCase):
    def test_ekr_q(self):
        code, report = self.run_json('bound', 'ekr-q', 'q=2', 'n=5', 'k=2')

        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report['command'], 'bound')
        self.assertEqual(report['results']['bound']['value'], 15)
        self.assertTrue(report['results']['side_conditions_hold'])
        self.assertEqual(report['provenance'][0]['theorem_id'], 'ekr-q')

    def test_numbered_theorem_id(self):
        code, report = self.run_json('bound', 'thm1.12', 'q=2', 'n=5', 'k=2')

        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report['results']['bound']['value'], 16)
        self.assertEqual(report['provenance'][0]['theorem_id'], 'intersecting-k-sperner-q')

    def test_side_condition_is_reported(self):
        code, report = self.run_json('bound', 'ekr', 'n=3', 'k=2')

        self.assertEqual(code, EXIT_OK)
        self.assertFalse(report['results']['side_conditions_hold'])

    def test_strict(self):
        code, report = self.run_json('bound', 'ekr', 'n=3', 'k=2', '--strict')

        self.assertEqual(code, EXIT_VIOLATED)
        self.assertEqual(report['results']['error'], 'SideConditionViolated')

    def test_unknown_theorem(self):
        code, report = self.run_json('bound', 'hadwiger', 'n=3')

        self.assertEqual(code, EXIT_USAGE)
        self.assertIn('error', report['results'])

    def test_missing_parameter(self):
        code, _ = self.run_json('bound', 'ekr-q', 'n=5', 'k=2')

        self.assertEqual(code, EXIT_USAGE)

    def test_reports_are_reproducible(self):
        _, first = self.run_cli('bound', 'ekr-q', 'q=2', 'n=5', 'k=2')
        _, second = self.run_cli('bound', 'ekr-q', 'q=2', 'n=5', 'k=2')

        self.assertEqual(first, second)

    def test_text_format(self):
        code, text = self.run_cli('bound', 'ekr-q', 'q=2', 'n=5', 'k=2', '--format', 'text')

        self.assertEqual(code, EXIT_OK)
        self.assertIn('results.bound.value: 15', text.splitlines())

    def test_error_report_honors_format(self):
        code, text = self.run_cli('bound', 'ekr', 'n=3', 'k=2', '--threads', '0', '--format', 'text')

        self.assertEqual(code, EXIT_USAGE)
        self.assertIn('results.error: UsageError', text.splitlines())


class TestUsage(unittest.TestCase):
    def test_help(self):
        with contextlib.redirect_stdout(io.StringIO()) as out:
            code = main(['--help'])

        self.assertEqual(code, EXIT_OK)
        self.assertIn('audit-covering', out.getvalue())

    def test_unknown_command(self):
        with contextlib.redirect_stderr(io.StringIO()):
            code = main(['frobnicate'])

        self.assertEqual(code, EXIT_USAGE)


class TestBuildAndCheck(CliTestCase):
    def test_build_star_then_check(self):
        famPath = self.path('star.fam')
        code, report = self.run_json(
            'build', 'star', 'sets', 'n=5', 'k=2', '--center', '10000', '-o', famPath,
        )

        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report['results']['size'], 4)
        self.assertEqual(len(read_family_file(famPath)), 4)

        code, report = self.run_json('check', famPath, '--property', 'intersecting')

        self.assertEqual(code, EXIT_OK)
        self.assertTrue(report['results']['verdict']['holds'])
        self.assertEqual(report['results']['family']['size'], 4)

    def test_violation(self):
        famPath = self.path('points.fam')
        write_family_file(enumerate_levels(SUBSETS, 4, [1]), famPath)
        code, report = self.run_json('check', famPath, '--property', 'intersecting')

        self.assertEqual(code, EXIT_VIOLATED)
        self.assertFalse(report['results']['verdict']['holds'])

    def test_missing_property(self):
        famPath = self.path('points.fam')
        write_family_file(enumerate_levels(SUBSETS, 4, [1]), famPath)
        code, _ = self.run_json('check', famPath)

        self.assertEqual(code, EXIT_USAGE)

    def test_star_needs_center(self):
        code, _ = self.run_json('build', 'star', 'sets', 'n=5', 'k=2')

        self.assertEqual(code, EXIT_USAGE)


class TestSearch(CliTestCase):
    def test_compare_with_ekr(self):
        code, report = self.run_json(
            'search', 'sets', 'n=4', 'k=2', '--property', 'intersecting', '--compare', 'ekr',
        )

        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report['results']['search']['max_size'], 3)
        self.assertTrue(report['results']['comparison']['tight'])
        self.assertEqual(report['provenance'][0]['theorem_id'], 'ekr')

    def test_compare_does_not_prune(self):
        code, report = self.run_json(
            'search', 'sets', 'n=6', 'k=2', '--property', 'matching:2', '--compare', 'ekr',
        )
        comparison = report['results']['comparison']

        self.assertEqual(code, EXIT_VIOLATED)
        self.assertFalse(report['results']['pruned_with_bound'])
        self.assertEqual(report['results']['search']['max_size'], 10)
        self.assertEqual(comparison['bound']['value'], 5)
        self.assertFalse(comparison['within_bound'])
        self.assertFalse(comparison['tight'])
        self.assertIsNone(comparison['equality'])

    def test_prune_with_bound_needs_compare(self):
        code, report = self.run_json(
            'search', 'sets', 'n=4', 'k=2', '--property', 'intersecting', '--prune-with-bound',
        )

        self.assertEqual(code, EXIT_USAGE)
        self.assertEqual(report['results']['error'], 'UsageError')

    def test_prune_with_bound_is_recorded(self):
        code, report = self.run_json(
            'search', 'sets', 'n=4', 'k=2', '--property', 'intersecting',
            '--compare', 'ekr', '--prune-with-bound',
        )

        self.assertEqual(code, EXIT_OK)
        self.assertTrue(report['results']['pruned_with_bound'])
        self.assertTrue(report['config']['options']['prune_with_bound'])
        self.assertEqual(report['results']['search']['max_size'], 3)

    def test_intersecting_k_sperner_subspaces_by_numbered_id(self):
        code, report = self.run_json(
            'search', 'subspaces', 'q=2', 'n=4', 'dims=1..2',
            '--property', 'intersecting+k-sperner:2', '--compare', 'thm1.12',
        )

        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report['results']['ground_size'], 50)
        self.assertEqual(report['results']['search']['max_size'], 8)
        self.assertTrue(report['results']['comparison']['tight'])
        self.assertEqual(report['provenance'][0]['theorem_id'], 'intersecting-k-sperner-q')

    def test_node_cap(self):
        code, report = self.run_json(
            'search', 'sets', 'n=4', 'k=2', '--property', 'intersecting', '--node-cap', '1',
        )

        self.assertEqual(code, EXIT_EXHAUSTED)
        self.assertIn('exhausted', report['results'])
        self.assertGreaterEqual(report['results']['search']['max_size'], 1)

    def test_subspaces_need_q(self):
        code, _ = self.run_json('search', 'subspaces', 'n=3', 'k=1', '--property', 'intersecting')

        self.assertEqual(code, EXIT_USAGE)


class TestTables(CliTestCase):
    def test_audit_covering(self):
        code, report = self.run_json('audit-covering', 'q=2', 'n=2')

        self.assertEqual(code, EXIT_OK)
        self.assertTrue(report['results']['passed'])
        self.assertEqual(report['results']['isomorphism']['failing'], [])

    def test_thresholds(self):
        code, report = self.run_json('thresholds', 'k=1', 'eps=1')

        self.assertEqual(code, EXIT_OK)
        self.assertEqual(len(report['results']['rows']), 1)
        self.assertEqual(report['results']['rows'][0]['n0'], 4)

    def test_thresholds_csv(self):
        code, text = self.run_cli('thresholds', 'k=1', 'eps=1', 'q=2', '--format', 'csv')
        rows = list(csv.DictReader(io.StringIO(text)))

        self.assertEqual(code, EXIT_OK)
        self.assertEqual([row['n0'] for row in rows], ['4', '4'])

    def test_conjecture(self):
        code, report = self.run_json('conjecture', 'emc', 'n=4', 'k=2', 's=1')

        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report['results']['rows'][0]['status'], 'consistent-tight')
        self.assertEqual(report['provenance'][0]['theorem_id'], 'emc')

    def test_conjecture_by_number(self):
        code, report = self.run_json('conjecture', '5.2', 'q=2', 'n=4', 'k=2', 's=1')

        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report['results']['rows'][0]['status'], 'consistent-tight')
        self.assertEqual(report['provenance'][0]['theorem_id'], 'emc-q')


if __name__ == '__main__':
    unittest.main()
