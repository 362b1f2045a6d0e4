import math
import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ksettrace import perms
from ksettrace.perms import ALT, SYM, Permutation


def rand_perm(n, seed):
    return perms.random_element(SYM, n, random.Random(seed))


perm_strategy = st.integers(1, 12).flatmap(
    lambda n: st.permutations(list(range(n))).map(Permutation)
)


class TestBasics:
    def test_identity_compose(self):
        p = Permutation([2, 0, 1, 4, 3])
        assert Permutation.identity(5).compose(p) == p
        assert p.compose(Permutation.identity(5)) == p

    def test_inverse_law(self):
        p = rand_perm(9, 3)
        assert p.compose(p.inverse()) == Permutation.identity(9)
        assert p.inverse().inverse() == p

    def test_hand_composition(self):
        p = Permutation.from_cycles(3, [[0, 1, 2]])
        q = Permutation.from_cycles(3, [[0, 1]])
        # 0 -> q(1) = 0, 1 -> q(2) = 2, 2 -> q(0) = 1: the transposition (1 2)
        assert p.compose(q) == Permutation.from_cycles(3, [[1, 2]])

    def test_degree_mismatch(self):
        with pytest.raises(perms.DegreeMismatchError):
            Permutation.identity(3).compose(Permutation.identity(4))

    def test_not_bijection_rejected(self):
        with pytest.raises(ValueError):
            Permutation([0, 0, 1])


class TestPower:
    def test_power_zero(self):
        p = rand_perm(8, 1)
        assert p**0 == Permutation.identity(8)

    def test_cycle_order(self):
        c6 = Permutation.from_cycles(6, [list(range(6))])
        assert c6**6 == Permutation.identity(6)

    def test_mixed_type_power(self):
        # type (5,2) to the 5th: the 5-cycle dies, the 2-cycle survives
        p = Permutation.from_cycles(7, [[0, 1, 2, 3, 4], [5, 6]])
        assert (p**5) == Permutation.from_cycles(7, [[5, 6]])

    def test_huge_exponent(self):
        p = Permutation.from_cycles(9, [[0, 1, 2, 3, 4], [5, 6, 7]])
        e = 10**30
        assert p**e == p ** (e % 15)

    @given(perm_strategy, st.integers(0, 50), st.integers(0, 50))
    def test_power_additive(self, p, e1, e2):
        assert p ** (e1 + e2) == (p**e1).compose(p**e2)


class TestCyclesOrderParity:
    def test_identity_cycles(self):
        assert Permutation.identity(4).cycles() == [(0,), (1,), (2,), (3,)]

    def test_cycles_follow_images(self):
        p = Permutation.from_cycles(5, [[0, 1], [2, 3, 4]])
        assert p.cycles() == [(0, 1), (2, 3, 4)]

    def test_cycles_sorted_by_min(self):
        p = rand_perm(15, 7)
        mins = [c[0] for c in p.cycles()]
        assert mins == sorted(mins)
        assert all(c[0] == min(c) for c in p.cycles())

    def test_order_lcm(self):
        p = Permutation.from_cycles(13, [[0, 1, 2, 3, 4, 5], [6, 7, 8, 9], [10, 11, 12]])
        assert p.order() == 12
        p2 = Permutation.from_cycles(7, [[0, 1, 2, 3, 4], [5, 6]])
        assert p2.order() == 10

    @given(perm_strategy)
    def test_order_is_minimal(self, p):
        o = p.order()
        assert p**o == Permutation.identity(p.n)
        for q in {2, 3, 5, 7, 11}:
            if o % q == 0:
                assert p ** (o // q) != Permutation.identity(p.n)

    @given(perm_strategy, st.integers(1, 40))
    def test_order_divides_equiv(self, p, t):
        assert p.order_divides(t) == (t % p.order() == 0)

    def test_parity(self):
        assert Permutation.identity(5).parity() == "even"
        assert Permutation.from_cycles(5, [[0, 1]]).parity() == "odd"
        assert Permutation.from_cycles(5, [[0, 1, 2]]).parity() == "even"


class TestTextForms:
    def test_one_line_roundtrip(self):
        p = rand_perm(8, 5)
        assert Permutation.parse(p.one_line_str()) == p

    def test_cycle_roundtrip(self):
        p = rand_perm(8, 6)
        assert Permutation.parse(p.cycle_str(), n=8) == p

    def test_examples(self):
        assert Permutation.parse("[2,3,1]") == Permutation.from_cycles(3, [[0, 1, 2]])
        assert Permutation.parse("(1 2 3)(4)") == Permutation.from_cycles(4, [[0, 1, 2]])

    def test_malformed(self):
        for text in ["[2,2,1]", "(1 2", "[]", "1 2 3", "(0 1)"]:
            with pytest.raises(ValueError):
                Permutation.parse(text)


class TestSampling:
    def test_sym_uniform_chi_square(self):
        rng = random.Random(42)
        draws = 10**5
        counts = Counter(perms.random_element(SYM, 4, rng) for _ in range(draws))
        assert len(counts) == 24
        expected = draws / 24
        chi2 = sum((c - expected) ** 2 / expected for c in counts.values())
        # 23 dof: mean 23, sd sqrt(46); 4 sigma above the mean
        assert chi2 < 23 + 4 * math.sqrt(46)

    def test_alt_always_even(self):
        rng = random.Random(0)
        for _ in range(500):
            assert perms.random_element(ALT, 6, rng).is_even()

    def test_alt_uniform(self):
        rng = random.Random(7)
        draws = 6 * 10**4
        counts = Counter(perms.random_element(ALT, 4, rng) for _ in range(draws))
        assert len(counts) == 12
        expected = draws / 12
        chi2 = sum((c - expected) ** 2 / expected for c in counts.values())
        assert chi2 < 11 + 4 * math.sqrt(22)

    def test_reproducible(self):
        a = [perms.random_element(SYM, 10, random.Random(9)) for _ in range(20)]
        b = [perms.random_element(SYM, 10, random.Random(9)) for _ in range(20)]
        assert a == b


class TestEnumeration:
    def test_counts(self):
        assert sum(1 for _ in perms.enumerate_group(SYM, 3)) == 6
        assert sum(1 for _ in perms.enumerate_group(ALT, 4)) == 12
        assert sum(1 for _ in perms.enumerate_group(SYM, 6)) == 720
        assert sum(1 for _ in perms.enumerate_group(ALT, 6)) == 360

    def test_distinct(self):
        elems = list(perms.enumerate_group(SYM, 5))
        assert len(set(elems)) == 120

    def test_guard(self):
        with pytest.raises(ValueError):
            next(perms.enumerate_group(SYM, 11))
