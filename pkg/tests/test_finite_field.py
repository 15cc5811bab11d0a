import pickle
import unittest

from qlattice.error import DivisionByZero, NotAPrimePower, RangeError, TooLarge
from qlattice.finite_field import (
    FieldElement, add, div, field_op, inv, make_field, mul, multiplicative_order,
    neg, primitive_element, sub, verify_field_axioms,
)


FIELD_ORDERS = [2, 3, 4, 5, 7, 8, 9]


class TestMakeField(unittest.TestCase):
    def test_prime_powers(self):
        for q in FIELD_ORDERS:
            f = make_field(q)

            self.assertEqual(f.q, q)
            self.assertEqual(f.p ** f.e, q)

    def test_non_prime_powers_are_rejected(self):
        for q in [0, 1, 6, 10, 12]:
            with self.assertRaises(NotAPrimePower):
                make_field(q)

    def test_too_large(self):
        with self.assertRaises(TooLarge):
            make_field(512)

    def test_prime_fields_have_no_modulus(self):
        self.assertIsNone(make_field(7).modulus)
        self.assertIsNotNone(make_field(9).modulus)
        self.assertTrue(make_field(7).is_prime)
        self.assertFalse(make_field(8).is_prime)

    def test_fields_are_cached_and_pickle_by_order(self):
        self.assertIs(make_field(4), make_field(4))
        self.assertEqual(pickle.loads(pickle.dumps(make_field(4))), make_field(4))


class TestArithmetic(unittest.TestCase):
    def test_prime_field_is_integer_arithmetic_mod_p(self):
        f = make_field(5)
        for a in range(5):
            for b in range(5):
                self.assertEqual(add(f, a, b).code, (a + b) % 5)
                self.assertEqual(sub(f, a, b).code, (a - b) % 5)
                self.assertEqual(mul(f, a, b).code, (a * b) % 5)

    def test_gf4_squares(self):
        f = make_field(4)

        self.assertEqual(mul(f, FieldElement(2), FieldElement(2)), FieldElement(3))
        self.assertEqual(add(f, 2, 3), FieldElement(1))

    def test_characteristic_two_negation_is_identity(self):
        f = make_field(8)
        for a in range(8):
            self.assertEqual(neg(f, a).code, a)

    def test_inverses(self):
        for q in FIELD_ORDERS:
            f = make_field(q)
            for a in range(1, q):
                self.assertEqual(mul(f, a, inv(f, a)).code, 1)
                self.assertEqual(div(f, a, a).code, 1)

    def test_division_by_zero(self):
        f = make_field(3)
        with self.assertRaises(DivisionByZero):
            inv(f, 0)

        with self.assertRaises(DivisionByZero):
            div(f, 1, 0)

    def test_field_op_dispatch(self):
        f = make_field(5)

        self.assertEqual(field_op(f, 'mul', 3, 4), FieldElement(2))
        self.assertEqual(field_op(f, 'neg', 1), FieldElement(4))

        with self.assertRaises(RangeError):
            field_op(f, 'pow', 1, 2)

        with self.assertRaises(RangeError):
            field_op(f, 'add', 5, 1)

        with self.assertRaises(RangeError):
            field_op(f, 'add', 1)


class TestAxioms(unittest.TestCase):
    def test_all_small_fields_satisfy_the_axioms(self):
        for q in FIELD_ORDERS:
            report = verify_field_axioms(make_field(q))

            self.assertTrue(report.passed, report)

    def test_cyclic_multiplicative_group(self):
        for q in FIELD_ORDERS:
            f = make_field(q)
            g = primitive_element(f)

            self.assertEqual(multiplicative_order(f, g), q - 1)

    def test_multiplicative_order(self):
        f = make_field(7)

        self.assertEqual(multiplicative_order(f, 1), 1)
        self.assertEqual(multiplicative_order(f, 2), 3)
        self.assertEqual(primitive_element(f), FieldElement(3))

        with self.assertRaises(DivisionByZero):
            multiplicative_order(f, 0)


if __name__ == '__main__':
    unittest.main()
