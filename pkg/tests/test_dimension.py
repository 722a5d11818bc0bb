import math

from orecalc.dimension import (
    UNIT_IDEAL,
    free_generator_subset,
    hilbert_dimension,
    hilbert_function,
)
from orecalc.groebner import LeftIdeal

from corpus_objects import (
    abel_ideal,
    algebra_nk,
    algebra_nmkl,
    binomial_ideal,
    double_stirling_ideal,
    stirling_ideal,
)


class TestHilbertFunction:
    def test_zero_ideal_full_count(self):
        alg = algebra_nk()
        I = LeftIdeal(alg, [])
        assert hilbert_function(I, 3) == math.comb(2 + 3, 3)

    def test_unit_ideal(self):
        alg = algebra_nk()
        I = LeftIdeal(alg, [alg.scalar(7)])
        for s in range(4):
            assert hilbert_function(I, s) == 0

    def test_binomial_ideal_constant_one(self):
        I = binomial_ideal()
        assert hilbert_function(I, 5) == 1

    def test_eventually_polynomial_of_dimension_degree(self):
        # fit a polynomial on a window and check it extends three points
        for I, d in [(binomial_ideal(), 0), (stirling_ideal(), 1),
                     (double_stirling_ideal(), 2)]:
            vals = [hilbert_function(I, s) for s in range(4, 14)]
            assert hilbert_dimension(I) == d
            # finite differences of order d+1 vanish eventually
            seq = vals[:]
            for _ in range(d + 1):
                seq = [b - a for a, b in zip(seq, seq[1:])]
            assert all(x == 0 for x in seq[-3:])


class TestHilbertDimension:
    def test_binomial_partial_finite(self):
        assert hilbert_dimension(binomial_ideal()) == 0

    def test_stirling_dimension_one(self):
        assert hilbert_dimension(stirling_ideal()) == 1

    def test_double_stirling_dimension_two(self):
        assert hilbert_dimension(double_stirling_ideal()) == 2

    def test_abel_dimension_two(self):
        assert hilbert_dimension(abel_ideal()) == 2

    def test_unit_ideal_distinguished(self):
        alg = algebra_nk()
        I = LeftIdeal(alg, [alg.one])
        assert hilbert_dimension(I) == UNIT_IDEAL

    def test_zero_ideal_is_ngens(self):
        alg = algebra_nmkl()
        assert hilbert_dimension(LeftIdeal(alg, [])) == 4

    def test_monotone_under_inclusion(self):
        alg = algebra_nk()
        I = binomial_ideal(alg)
        sub = LeftIdeal(alg, [I.generators[0]])
        d_sub = hilbert_dimension(sub)
        d_full = hilbert_dimension(I)
        assert d_full <= d_sub


class TestFreeGeneratorSubset:
    def test_double_stirling_size_two(self):
        alg = algebra_nmkl()
        I = double_stirling_ideal(alg)
        T = free_generator_subset(I, 2)
        assert T is not None and len(T) == 2
        # independent check: enumerate all pairs against the staircase
        gb = I.groebner_basis()
        supports = [frozenset(i for i, d in enumerate(e) if d) for e in gb.corners]
        idx = [alg.gen_index[t] for t in T]
        assert not any(sup <= set(idx) for sup in supports)

    def test_unit_ideal_absent(self):
        alg = algebra_nk()
        I = LeftIdeal(alg, [alg.one])
        assert free_generator_subset(I, 1) is None

    def test_zero_ideal_full_set(self):
        alg = algebra_nk()
        I = LeftIdeal(alg, [])
        assert free_generator_subset(I, 2) == ("Sn", "Sk")

    def test_no_oversized_subset(self):
        I = binomial_ideal()
        assert free_generator_subset(I, 1) is None
