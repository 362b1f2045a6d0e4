import math
import random

import pytest

from ksettrace import algorithms, families, ksets, perms
from ksettrace.algorithms import (
    FAIL,
    TrivialOracle,
    find_m_cycle,
    make_testbed_oracle,
    trace_cycle,
    trial_budget,
)
from ksettrace.perms import SYM, Permutation


def line1(n):
    return families.line_params(SYM, n, families.LONG_CYCLE)


class TestTestbedOracle:
    def test_action_laws(self):
        params = line1(12)
        oracle = make_testbed_oracle(params, 3)
        rng = random.Random(0)
        for _ in range(30):
            g = oracle.random_element(rng)
            h = oracle.random_element(rng)
            pt = oracle.random_point(rng)
            assert oracle.act(oracle.act(pt, g), h) == oracle.act(pt, g.compose(h))

    def test_k_guard(self):
        with pytest.raises(ValueError):
            make_testbed_oracle(line1(10), 6)
        with pytest.raises(ValueError):
            make_testbed_oracle(line1(10), 1)

    def test_backdoor(self):
        oracle = make_testbed_oracle(line1(10), 2)
        g = oracle.random_element(random.Random(1))
        assert oracle.natural(g) is g


class TestTraceCycle:
    def test_ncycle_accepted_mostly(self):
        params = line1(30)
        oracle = make_testbed_oracle(params, 3)
        g = Permutation.from_cycles(30, [list(range(30))])
        rng = random.Random(42)
        accepted = sum(
            trace_cycle(g, params, 4, oracle, rng).accepted for _ in range(300)
        )
        floor = (28 / 30) ** 4
        assert accepted / 300 >= floor - 3 * math.sqrt(floor * (1 - floor) / 300)

    def test_order_coprime_rejected(self):
        params = line1(10)  # m = 10
        oracle = make_testbed_oracle(params, 2)
        g = Permutation.from_cycles(10, [list(range(9))])  # 9-cycle
        rng = random.Random(1)
        for _ in range(20):
            assert not trace_cycle(g, params, 4, oracle, rng).accepted

    def test_identity_rejected(self):
        params = line1(10)
        oracle = make_testbed_oracle(params, 2)
        rng = random.Random(2)
        out = trace_cycle(Permutation.identity(10), params, 4, oracle, rng)
        assert not out.accepted
        assert out.per_point[0][1] == 1

    def test_accept_implies_m_divides_order(self):
        rng = random.Random(3)
        params = families.line_params(SYM, 14, families.TRANSPOSITION)
        oracle = make_testbed_oracle(params, 3)
        for _ in range(400):
            g = oracle.random_element(rng)
            if trace_cycle(g, params, 4, oracle, rng).accepted:
                assert g.order() % params.m == 0

    def test_matched_r0_divides_r(self):
        params = families.line_params(SYM, 11, families.TRANSPOSITION)  # m=9, r=2
        oracle = make_testbed_oracle(params, 2)
        g = Permutation.from_cycles(11, [list(range(9)), [9, 10]])
        rng = random.Random(4)
        out = trace_cycle(g, params, 4, oracle, rng)
        for _, length, matched in out.per_point:
            if matched is not None:
                assert length == matched * params.m
                assert params.r % matched == 0


class TestFindMCycle:
    def test_trivial_group_fails_after_N(self):
        params = line1(10)
        rng = random.Random(0)
        result, transcript = find_m_cycle(params, 0.5, 4, TrivialOracle(), rng)
        assert result is FAIL
        assert len(transcript.entries) == trial_budget(10, 0.5)

    def test_budget_formula(self):
        assert trial_budget(50, 0.1) == math.ceil(250 * math.log(20))
        assert trial_budget(50, 0.1) == 749

    def test_finds_ncycle(self):
        params = line1(20)
        oracle = make_testbed_oracle(params, 2)
        rng = random.Random(7)
        result, transcript = find_m_cycle(params, 0.2, 4, oracle, rng)
        assert result is not FAIL
        # transcript outcome lines are well formed
        assert transcript.entries[-1]["outcome"] in ("good", "bad")
        for line in transcript.lines():
            assert line.count(",") >= 2

    def test_determinism(self):
        params = line1(25)
        oracle = make_testbed_oracle(params, 2)
        r1, t1 = find_m_cycle(params, 0.2, 4, oracle, random.Random(11))
        r2, t2 = find_m_cycle(params, 0.2, 4, oracle, random.Random(11))
        assert r1 == r2
        assert t1.lines() == t2.lines()

    def test_eps_validated(self):
        with pytest.raises(ValueError):
            find_m_cycle(line1(10), 1.5, 4, TrivialOracle(), random.Random(0))
        with pytest.raises(ValueError):
            find_m_cycle(line1(10), 0.1, 3, TrivialOracle(), random.Random(0))
