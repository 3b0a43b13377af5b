"""Exact rank kernels and the deterministic sampler."""

import random

import pytest

from mseg import _modrank_py
from mseg.linalg import (
    KERNEL,
    MERSENNE61,
    IntMatrix,
    RankConfig,
    rank_exact,
    rank_mod_p,
    sample_coeffs,
)

P = MERSENNE61


def random_matrix(rng, rows, cols, lo=-9, hi=9):
    return IntMatrix(
        rows, cols, tuple(rng.randint(lo, hi) for _ in range(rows * cols))
    )


class TestRankModP:
    def test_examples(self):
        assert rank_mod_p(IntMatrix.from_rows([[1, 0], [0, 1]]), P) == 2
        assert rank_mod_p(IntMatrix.from_rows([[1, 0], [0, 1]]), 97) == 2
        assert rank_mod_p(IntMatrix.from_rows([[1, 2], [2, 4]]), P) == 1
        assert rank_mod_p(IntMatrix(0, 7, ()), P) == 0
        assert rank_mod_p(IntMatrix(7, 0, ()), P) == 0

    def test_requires_prime(self):
        with pytest.raises(ValueError):
            rank_mod_p(IntMatrix.from_rows([[1]]), 91)

    def test_negative_entries_reduced(self):
        assert rank_mod_p(IntMatrix.from_rows([[-1, 1], [1, -1]]), P) == 1


class TestRankExact:
    def test_examples(self):
        assert rank_exact(IntMatrix.from_rows([[1, 0], [0, 1]])) == 2
        assert rank_exact(IntMatrix.from_rows([[2, 4], [3, 6]])) == 1
        assert rank_exact(IntMatrix.from_rows([[1, 0], [0, 0]])) == 1
        assert rank_exact(IntMatrix(0, 3, ())) == 0

    def test_known_rank_by_construction(self):
        # outer-product structure: rank is the number of independent factors
        rng = random.Random(1)
        for _ in range(30):
            n, k = rng.randint(1, 6), rng.randint(0, 3)
            us = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(k)]
            vs = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(k)]
            entries = [
                sum(us[t][i] * vs[t][j] for t in range(k)) for i in range(n) for j in range(n)
            ]
            a = IntMatrix(n, n, tuple(entries))
            assert rank_exact(a) <= k


class TestKernelAgreement:
    def test_modular_never_exceeds_exact(self):
        rng = random.Random(2)
        for _ in range(200):
            a = random_matrix(rng, rng.randint(0, 6), rng.randint(0, 6))
            assert rank_mod_p(a, P) <= rank_exact(a)

    def test_equal_on_small_entries(self):
        # entries far below p: specialization cannot lose rank here
        rng = random.Random(3)
        for _ in range(200):
            a = random_matrix(rng, rng.randint(0, 6), rng.randint(0, 6))
            assert rank_mod_p(a, P) == rank_exact(a)

    def test_p_degenerate_case(self):
        a = IntMatrix.from_rows([[1, 0], [0, P]])
        assert rank_exact(a) == 2
        assert rank_mod_p(a, P) == 1

    def test_invariance_under_permutation_and_transpose(self):
        rng = random.Random(4)
        for _ in range(60):
            rows, cols = rng.randint(1, 5), rng.randint(1, 5)
            a = random_matrix(rng, rows, cols)
            rp = list(range(rows))
            cp = list(range(cols))
            rng.shuffle(rp)
            rng.shuffle(cp)
            b = a.submatrix(rp, cp)
            assert rank_exact(a) == rank_exact(b) == rank_exact(a.transpose())
            assert rank_mod_p(a, P) == rank_mod_p(b, P) == rank_mod_p(a.transpose(), P)

    def test_compiled_matches_pure_python(self):
        rng = random.Random(5)
        for _ in range(100):
            rows, cols = rng.randint(0, 7), rng.randint(0, 7)
            a = random_matrix(rng, rows, cols)
            reduced = [v % P for v in a.entries]
            expect = _modrank_py.rank_mod(reduced, rows, cols, P)
            assert rank_mod_p(a, P) == expect

    def test_kernel_identifies_itself(self):
        assert KERNEL in ("compiled", "python")


class TestSampler:
    def test_empty(self):
        assert sample_coeffs([], P, 0, 1) == {}

    def test_deterministic(self):
        keys = [(1, 2), (2, 3), (4, 1)]
        assert sample_coeffs(keys, P, 11, 3) == sample_coeffs(keys, P, 11, 3)

    def test_trials_differ_statistically(self):
        # across 10^4 draws consecutive trials must virtually never agree
        keys = [(i, j) for i in range(1, 101) for j in range(1, 101)]
        a = sample_coeffs(keys, P, 9, 1)
        b = sample_coeffs(keys, P, 9, 2)
        agree = sum(1 for k in keys if a[k] == b[k])
        assert agree <= 2

    def test_streams_differ(self):
        keys = [(1, 2), (3, 4)]
        assert sample_coeffs(keys, P, 0, 1, stream=0) != sample_coeffs(
            keys, P, 0, 1, stream=1
        )

    def test_values_nonzero_in_range(self):
        for p in (2, 3, 97, P):
            vals = sample_coeffs([(i, 0) for i in range(200)], p, 1, 1)
            assert all(1 <= v <= p - 1 for v in vals.values())


class TestRankConfig:
    def test_defaults(self):
        cfg = RankConfig()
        assert cfg.prime == P and cfg.trials == 8 and not cfg.certify

    def test_validation(self):
        with pytest.raises(ValueError):
            RankConfig(trials=0)
        with pytest.raises(ValueError):
            RankConfig(prime=91)
