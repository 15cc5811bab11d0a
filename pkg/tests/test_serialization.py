import os
import tempfile
import unittest
import warnings
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from qlattice.constants import SUBSETS, SUBSPACES
from qlattice.error import ParseError, SideConditionViolated
from qlattice.extremal_search import SearchProblem, level_ground, max_family
from qlattice.family_properties import Intersecting
from qlattice.qcombinatorics import theorem_bound, threshold_n0
from qlattice.serialization import (
    NAMED_TUPLE_LOOKUP, dump_family, dumps, load_family, loads,
    named_tuple_as_dict, named_tuple_from_dict, parse_element,
    read_family_file, register_named_tuple, write_family_file,
)
from qlattice.subspace_lattice import Family, enumerate_levels


SUBSPACE_FAMILY_TEXT = """qlattice-family v1 kind=subspaces q=2 n=4
# two planes
1100;0110

0001
"""


class TestJson(unittest.TestCase):
    def test_fraction(self):
        self.assertEqual(loads(dumps(Fraction(1, 3))), Fraction(1, 3))
        self.assertIn('"numerator": 1', dumps(Fraction(1, 3)))

    def test_keys_are_sorted(self):
        self.assertEqual(dumps({'b': 1, 'a': 2}, indent=None), '{"a": 2, "b": 1}')

    def test_numpy_scalars(self):
        self.assertEqual(loads(dumps({'x': np.uint8(3)})), {'x': 3})

    def test_bound_result(self):
        result = theorem_bound('ekr-q', {'q': 2, 'n': 5, 'k': 2})
        copy = loads(dumps(result))

        self.assertEqual(copy, result)
        self.assertEqual(type(copy), type(result))

    def test_violations_survive_as_tuple(self):
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', SideConditionViolated)
            result = theorem_bound('ekr', {'n': 3, 'k': 2})

        self.assertEqual(loads(dumps(result)).violations, ('n >= 2k',))

    def test_threshold_result(self):
        result = threshold_n0('sets', 1, Fraction(1, 2), horizon=5)

        self.assertEqual(loads(dumps(result)), result)

    def test_search_result_with_families(self):
        result = max_family(SearchProblem(level_ground(SUBSETS, 4, [2]), Intersecting()))
        copy = loads(dumps(result))

        self.assertEqual(copy.max_size, 3)
        self.assertEqual(copy.witnesses, result.witnesses)
        self.assertIsInstance(copy.witnesses[0], Family)

    def test_verdict_witness(self):
        verdict = Intersecting().check(enumerate_levels(SUBSPACES, 3, [1], q=2))

        self.assertEqual(loads(dumps(verdict)), verdict)

    def test_with_new_named_tuple(self):
        Foo = NamedTuple('Foo', name=str, ratio=Fraction)
        foo = Foo('Calimero', Fraction(2, 3))
        dct = named_tuple_as_dict(foo)

        self.assertEqual(dct, {
            'type': 'Foo',
            'name': 'Calimero',
            'ratio': Fraction(2, 3),
        })

        with self.assertRaises(RuntimeError):
            named_tuple_from_dict(dct)

        register_named_tuple(Foo)

        self.assertEqual(named_tuple_from_dict(dct), foo)
        self.assertEqual(loads(dumps(foo)), foo)

        with self.assertRaises(RuntimeError):
            register_named_tuple(Foo)

        NAMED_TUPLE_LOOKUP.pop('Foo')

    def test_type_field_is_reserved(self):
        Bar = NamedTuple('Bar', type=str)
        with self.assertRaises(ValueError):
            register_named_tuple(Bar)


class TestParseElement(unittest.TestCase):
    def test_subspace_is_canonicalized(self):
        self.assertEqual(parse_element(SUBSPACES, 4, 2, '1100;0110').encoding, '1010;0110')

    def test_zero_subspace(self):
        self.assertEqual(parse_element(SUBSPACES, 3, 3, '-').dim, 0)

    def test_subset(self):
        self.assertEqual(parse_element(SUBSETS, 4, None, '0110').elements(), [2, 3])

    def test_invalid(self):
        for kind, n, q, text in [
                (SUBSPACES, 4, 2, '110'),
                (SUBSPACES, 3, 2, '120'),
                (SUBSETS, 4, None, '011'),
                (SUBSETS, 3, None, '0a1'),
            ]:
            with self.assertRaises(ParseError, msg=text):
                parse_element(kind, n, q, text)


class TestFamilyFile(unittest.TestCase):
    def test_load(self):
        fam = load_family(SUBSPACE_FAMILY_TEXT)

        self.assertEqual((fam.kind, fam.n, fam.q), (SUBSPACES, 4, 2))
        self.assertEqual(fam.encodings(), ['0001', '1010;0110'])

    def test_dump_is_canonical(self):
        fam = load_family(SUBSPACE_FAMILY_TEXT)

        self.assertEqual(
            dump_family(fam),
            'qlattice-family v1 kind=subspaces q=2 n=4\n0001\n1010;0110\n',
        )
        self.assertEqual(load_family(dump_family(fam)), fam)

    def test_subsets(self):
        fam = load_family('qlattice-family v1 kind=subsets q=- n=3\n110\n011\n')

        self.assertIsNone(fam.q)
        self.assertEqual(dump_family(fam), 'qlattice-family v1 kind=subsets q=- n=3\n011\n110\n')

    def test_duplicates_are_merged(self):
        with self.assertLogs('qlattice.serialization', level='WARNING'):
            fam = load_family('qlattice-family v1 kind=subspaces q=2 n=2\n10\n10\n')

        self.assertEqual(len(fam), 1)

    def test_header_errors(self):
        for text in [
                '',
                'family v1 kind=subsets q=- n=3\n',
                'qlattice-family v2 kind=subsets q=- n=3\n',
                'qlattice-family v1 kind=subsets n=3\n',
                'qlattice-family v1 kind=points q=- n=3\n',
                'qlattice-family v1 kind=subspaces q=- n=3\n',
                'qlattice-family v1 kind=subsets q=- n=three\n',
                'qlattice-family v1 kind subsets\n',
            ]:
            with self.assertRaises(ParseError, msg=text) as cm:
                load_family(text)

            self.assertEqual(cm.exception.lineno, 1)

    def test_member_errors_carry_line_numbers(self):
        with self.assertRaises(ParseError) as cm:
            load_family(SUBSPACE_FAMILY_TEXT + '01\n')

        self.assertEqual(cm.exception.lineno, 6)
        self.assertIn('line 6', str(cm.exception))

    def test_invalid_field_order_is_a_parse_error(self):
        with self.assertRaises(ParseError) as cm:
            load_family('qlattice-family v1 kind=subspaces q=6 n=2\n10\n')

        self.assertEqual(cm.exception.lineno, 2)

    def test_files(self):
        fam = enumerate_levels(SUBSPACES, 3, [1, 2], q=3)
        with tempfile.TemporaryDirectory() as dirpath:
            filepath = os.path.join(dirpath, 'family.txt')
            write_family_file(fam, filepath)

            self.assertEqual(read_family_file(filepath), fam)


if __name__ == '__main__':
    unittest.main()
