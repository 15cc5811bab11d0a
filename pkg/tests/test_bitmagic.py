import unittest

from qlattice.bitmagic import bit_mask, is_subset, iter_bits, lowest_bit, next_colex, popcount


class TestBitMagic(unittest.TestCase):
    def test_popcount(self):
        self.assertEqual(popcount(0), 0)
        self.assertEqual(popcount(0b1011), 3)
        self.assertEqual(popcount(bit_mask(64)), 64)

    def test_lowest_bit_of_zero_is_minus_one(self):
        self.assertEqual(lowest_bit(0), -1)
        self.assertEqual(lowest_bit(0b10100), 2)

    def test_iter_bits_ascending(self):
        self.assertEqual(list(iter_bits(0b1101)), [0, 2, 3])
        self.assertEqual(list(iter_bits(0)), [])

    def test_next_colex_walks_all_k_subsets(self):
        n, k = 6, 3
        value = bit_mask(k)
        seen = []
        while value < (1 << n):
            seen.append(value)
            value = next_colex(value)

        self.assertEqual(len(seen), 20)
        self.assertEqual(len(set(seen)), 20)
        self.assertEqual(seen, sorted(seen))
        self.assertTrue(all(popcount(v) == k for v in seen))

    def test_is_subset(self):
        self.assertTrue(is_subset(0b0101, 0b1101))
        self.assertFalse(is_subset(0b0011, 0b1101))
        self.assertTrue(is_subset(0, 0))


if __name__ == '__main__':
    unittest.main()
