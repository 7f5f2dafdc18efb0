import math

import numpy as np
import pytest

from nnjsd import (
    ValidationError,
    WeightedPair,
    delta_series,
    entropy,
    epsilon_rms_norm,
    jsd_auto,
    jsd_exact_reduced,
    jsd_naive,
    jsd_series,
    reduce,
)
from nnjsd.core import ReducedForm

# 50-digit mpmath / sympy evaluations on the exact binary inputs
H_06_04 = 0.67301166700925644499985331656564743226656342833679
JSD_06_04 = 0.02013551355068886441737880489252913580894
# sum of B_i 0.2^(i+1), i = 1..12, alpha = 0, in exact rationals from the c_i recurrence
DELTA_02_K12 = 0.040271027099520928022490506512139921907610157202939

LN2 = math.log(2.0)
SWAP = WeightedPair([0.6, 0.4], [0.4, 0.6])


class TestEntropy:
    def test_degenerate(self, backend):
        assert entropy([1.0, 0.0, 0.0]) == 0.0

    def test_uniform_two_point(self, backend):
        assert entropy([0.5, 0.5]) == pytest.approx(LN2, rel=1e-15)

    def test_derived_value(self, backend):
        assert entropy([0.6, 0.4]) == pytest.approx(H_06_04, rel=1e-15)

    @pytest.mark.parametrize("p", [[0.5, -0.1, 0.6], [0.5, 0.4], [0.5, 0.5 + 1e-9]])
    def test_rejects_malformed(self, p):
        with pytest.raises(ValidationError):
            entropy(p)

    def test_bounded_by_log_n(self, rng):
        for n in (2, 7, 50):
            p = rng.dirichlet(np.ones(n))
            assert 0.0 <= entropy(p) <= math.log(n) + 1e-15


class TestWeightedPair:
    def test_pi2_defaults_to_complement(self):
        pair = WeightedPair([1.0], [1.0], 0.3)
        assert pair.pi2 == pytest.approx(0.7, abs=1e-16)
        assert pair.n == 1

    def test_length_mismatch(self):
        with pytest.raises(ValidationError, match="length"):
            WeightedPair([0.5, 0.5], [1.0])

    @pytest.mark.parametrize("pi1,pi2", [(0.5, 0.6), (-0.1, 1.1), (1.2, None)])
    def test_bad_weights(self, pi1, pi2):
        with pytest.raises(ValidationError):
            WeightedPair([1.0], [1.0], pi1, pi2)

    def test_sum_tolerance(self):
        WeightedPair([0.5, 0.5 + 5e-13], [0.5, 0.5])
        with pytest.raises(ValidationError):
            WeightedPair([0.5, 0.5 + 5e-12], [0.5, 0.5])

    def test_normalize_flag(self):
        pair = WeightedPair([1.0, 3.0], [2.0, 2.0], normalize=True)
        np.testing.assert_allclose(pair.p1, [0.25, 0.75])
        with pytest.raises(ValidationError):
            WeightedPair([1.0, 3.0], [2.0, 2.0])

    def test_arrays_are_frozen(self):
        with pytest.raises(ValueError):
            SWAP.p1[0] = 0.0


class TestReduce:
    def test_swap_example(self):
        rf = reduce(SWAP)
        np.testing.assert_allclose(rf.pbar, [0.5, 0.5], atol=1e-16)
        np.testing.assert_allclose(rf.eta, [0.1, -0.1], atol=1e-16)
        np.testing.assert_allclose(rf.eps, [0.2, -0.2], atol=1e-15)
        assert rf.alpha == 0.0

    def test_identical_inputs(self):
        rf = reduce(WeightedPair([0.3, 0.7], [0.3, 0.7], 0.8, 0.2))
        assert np.all(rf.eta == 0.0) and np.all(rf.eps == 0.0)
        assert rf.alpha == pytest.approx(0.6, abs=1e-15)

    def test_empty_bin_convention(self):
        rf = reduce(WeightedPair([0.5, 0.5, 0.0], [0.5, 0.5, 0.0], 0.9))
        assert list(rf.eps) == [0.0, 0.0, 0.0]
        assert rf.empty_bins and not rf.boundary_eps

    def test_round_trip(self, rng):
        for _ in range(200):
            n = int(rng.integers(1, 30))
            pair = WeightedPair(rng.dirichlet(np.ones(n)), rng.dirichlet(np.ones(n)))
            rf = reduce(pair)
            np.testing.assert_allclose(rf.pbar * (1 + rf.eps), pair.p1, rtol=0, atol=1e-15)
            np.testing.assert_allclose(rf.pbar * (1 - rf.eps), pair.p2, rtol=0, atol=1e-15)
            assert np.all(np.abs(rf.eps) <= 1.0)
            assert abs(math.fsum(rf.eta)) <= 1e-12


class TestEpsilonNorm:
    @pytest.mark.parametrize(
        "eps,expected", [([0.0, 0.0, 0.0], 0.0), ([0.2, -0.2], 0.2), ([1.0, 0.0, 0.0, 0.0], 0.5)]
    )
    def test_examples(self, eps, expected):
        eps = np.array(eps)
        rf = ReducedForm(pbar=np.full(eps.size, 1 / eps.size), eta=eps / eps.size, eps=eps, alpha=0.0)
        assert epsilon_rms_norm(rf) == pytest.approx(expected, abs=1e-16)


class TestNaive:
    def test_identical(self, backend):
        p = [0.1, 0.2, 0.7]
        assert jsd_naive(WeightedPair(p, p)).value == 0.0
        # 0.3 p + 0.7 p rounds away from p in the last bit
        assert abs(jsd_naive(WeightedPair(p, p, 0.3)).value) <= 1e-15

    def test_disjoint(self, backend):
        assert jsd_naive(WeightedPair([1, 0], [0, 1])).value == pytest.approx(LN2, rel=1e-15)

    def test_derived(self, backend):
        res = jsd_naive(SWAP)
        assert res.value == pytest.approx(JSD_06_04, rel=1e-13)
        assert res.method == "naive" and res.order is None and res.units == "nats"


class TestExactReduced:
    def test_identical(self, backend):
        p = [0.1, 0.2, 0.7]
        assert jsd_exact_reduced(WeightedPair(p, p, 0.3)).value == 0.0

    def test_derived(self, backend):
        assert jsd_exact_reduced(SWAP).value == pytest.approx(JSD_06_04, rel=1e-14)

    def test_disjoint_limit(self, backend):
        res = jsd_exact_reduced(WeightedPair([1, 0], [0, 1]))
        assert res.value == pytest.approx(LN2, rel=1e-15)
        assert res.diagnostics.boundary_eps

    @pytest.mark.parametrize("pi1", [0.0, 1.0])
    def test_unit_weight_near_one_sided_bin(self, backend, pi1):
        # eps_1 = 1 - 2.4e-7: 1 - eps^2 from a rounded eps^2 would lose ten digits here
        pair = WeightedPair([0.24705882, 0.37647059, 0.37647059], [1.19209275e-07, 0.0, 0.999999880790725], pi1, normalize=True)
        assert abs(jsd_exact_reduced(pair).value) <= 1e-15

    def test_near_boundary_matches_oracle(self, backend):
        from nnjsd import jsd_reference, relative_difference

        for tiny in (1e-3, 1e-7, 1e-12):
            pair = WeightedPair([0.5 - tiny, 0.5 + tiny], [tiny, 1 - tiny], 0.3)
            assert relative_difference(jsd_exact_reduced(pair).value, jsd_reference(pair)) <= 1e-13

    @pytest.mark.parametrize("pi1", [0.0, 0.2, 0.5, 0.9, 1.0])
    def test_partial_overlap_with_boundary(self, backend, pi1):
        # bins 1 and 3 are one-sided (eps = +-1), bin 2 is shared
        pair = WeightedPair([0.3, 0.7, 0.0], [0.0, 0.4, 0.6], pi1)
        assert jsd_exact_reduced(pair).value == pytest.approx(jsd_naive(pair).value, rel=1e-13, abs=1e-15)


class TestSeries:
    def test_identical(self, backend):
        p = [0.1, 0.2, 0.7]
        for k in (1, 2, 7, 12):
            assert jsd_series(WeightedPair(p, p, 0.3), k).value == 0.0

    def test_leading_term(self, backend):
        assert jsd_series(SWAP, 1).value == pytest.approx(0.02, rel=1e-14)

    def test_order_12(self, backend):
        res = jsd_series(SWAP, 12)
        assert abs(res.value - JSD_06_04) / JSD_06_04 <= 1e-10
        assert res.order == 12 and res.method == "series"

    @pytest.mark.parametrize("order", [0, -1, 2.5, True])
    def test_bad_order(self, order):
        with pytest.raises(ValidationError):
            jsd_series(SWAP, order)

    def test_bad_units(self):
        with pytest.raises(ValidationError):
            jsd_series(SWAP, 3, units="hartleys")


class TestDeltaSeries:
    def test_zero_eps(self, backend):
        for a in (-1.0, -0.3, 0.0, 0.8):
            for k in (1, 2, 9):
                assert delta_series(0.0, a, k) == 0.0

    def test_single_term(self, backend):
        assert delta_series(0.2, 0.0, 1) == pytest.approx(0.04, rel=1e-15)

    def test_derived_order_12(self, backend):
        assert delta_series(0.2, 0.0, 12) == pytest.approx(DELTA_02_K12, rel=1e-15)

    @pytest.mark.parametrize("eps,alpha", [(1.1, 0.0), (0.1, -1.5)])
    def test_out_of_range(self, eps, alpha):
        with pytest.raises(ValidationError):
            delta_series(eps, alpha, 3)

    @pytest.mark.parametrize("alpha", [-0.9, 0.0, 0.95])
    def test_first_order_vanishes(self, backend, alpha):
        e = 1e-5
        assert delta_series(e, alpha, 12) / e**2 == pytest.approx(1 - alpha**2, abs=1e-6)

    @pytest.mark.parametrize("alpha", [-0.6, -0.2, 0.4, 0.7])
    def test_next_term_is_cubic(self, backend, alpha):
        # (delta / e^2 - B_1) / e -> B_2: no e^1 term hides below the e^2 one
        from nnjsd import series_coefficients

        b = series_coefficients(alpha, 2)
        e = 1e-5
        slope = (delta_series(e, alpha, 12) / e**2 - b[1]) / e
        assert slope == pytest.approx(b[2], rel=1e-4)


class TestAuto:
    def test_identical_minimal_order(self, backend):
        res = jsd_auto(WeightedPair([0.2, 0.8], [0.2, 0.8]))
        assert res.value == 0.0 and res.method == "series" and res.order == 2 and res.auto_selected

    def test_large_eps_switches(self, backend):
        # eps = (0.9, -0.9)
        pair = WeightedPair([0.95, 0.05], [0.05, 0.95])
        assert np.max(np.abs(reduce(pair).eps)) == pytest.approx(0.9)
        res = jsd_auto(pair)
        assert res.method == "exact_reduced" and res.order is None

    def test_tiny_eps(self, backend):
        from nnjsd import GenSpec, jsd_reference, relative_difference, sample_pair

        pair = sample_pair(GenSpec(100, -6.0, 0.0, 7)).pair
        res = jsd_auto(pair, rel_tol=1e-12)
        assert res.value > 0 and res.method == "series" and res.order <= 6
        assert relative_difference(res.value, jsd_reference(pair)) <= 1e-10

    def test_order_grows_with_eps(self, backend):
        from nnjsd import GenSpec, sample_pair

        small = jsd_auto(sample_pair(GenSpec(20, -3.0, 0.3, 1)).pair, 1e-14)
        large = jsd_auto(sample_pair(GenSpec(10, -1.0, 0.3, 1)).pair, 1e-14)
        assert small.order < large.order <= 64

    @pytest.mark.parametrize("tol", [0.0, 1.0, -1e-3])
    def test_bad_tolerance(self, tol):
        with pytest.raises(ValidationError):
            jsd_auto(SWAP, tol)


class TestUnits:
    def test_bits_is_nats_over_ln2(self, backend, rng):
        from conftest import random_pair

        for _ in range(50):
            pair = random_pair(rng, 8, 0.3, alpha=0.2)
            for fn, args in ((jsd_naive, ()), (jsd_exact_reduced, ()), (jsd_series, (9,))):
                nats = fn(pair, *args).value
                bits = fn(pair, *args, units="bits").value
                assert abs(bits - nats / LN2) <= math.ulp(bits)


class TestWeightDegeneracy:
    @pytest.mark.parametrize("pi1", [0.0, 1.0])
    def test_all_evaluators_vanish(self, backend, rng, pi1):
        for _ in range(20):
            pair = WeightedPair(rng.dirichlet(np.ones(6)), rng.dirichlet(np.ones(6)), pi1)
            assert abs(jsd_naive(pair).value) <= 1e-15
            assert abs(jsd_exact_reduced(pair).value) <= 1e-15
            assert jsd_series(pair, 11).value == 0.0
            assert abs(jsd_auto(pair).value) <= 1e-15
