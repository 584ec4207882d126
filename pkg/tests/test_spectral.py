import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from booleanity import (
    DenseFunction,
    FiniteDistribution,
    InvalidArgumentError,
    SparseFunction,
    check_closeness_theorem,
    check_conv_support,
    check_entropy_uncertainty,
    check_support_uncertainty,
    conditional_entropy_bound_check,
    convolve_fast,
    convolve_naive,
    far_from_set_bound,
    is_boolean_by_spectrum,
    spectral_sparsity_bound,
    sumset_power,
    to_dense,
    wht_forward,
)
from booleanity.hypercube import support
from booleanity.spectral import (
    log2_far_from_set_bound,
    product_over_set,
    sparsity_bound_binomial,
    spectrum_booleanity_deviation,
)

from conftest import brute_chi, majority3, x1_plus_x2


def random_sparse(rng, n, k):
    masks = rng.choice(1 << n, size=k, replace=False)
    return SparseFunction(n, {int(m): float(rng.uniform(0.1, 2) * rng.choice([-1, 1])) for m in masks})


class TestBooleanBySpectrum:
    def test_constant_one(self):
        assert is_boolean_by_spectrum(DenseFunction.delta(3), 1e-12)

    def test_majority(self):
        values = [sum(c * brute_chi(y, x) for y, c in majority3().terms.items()) for x in range(8)]
        assert sorted(set(values)) == [-1.0, 1.0]
        assert is_boolean_by_spectrum(wht_forward(to_dense(majority3())), 1e-12)

    def test_x1_plus_x2(self):
        fhat = wht_forward(x1_plus_x2())
        assert convolve_naive(fhat, fhat)[0] == 2.0
        assert not is_boolean_by_spectrum(fhat, 1e-9)

    def test_all_boolean_functions_n3(self):
        for bits in itertools.product([1.0, -1.0], repeat=8):
            assert is_boolean_by_spectrum(wht_forward(DenseFunction(bits)), 1e-9)

    def test_random_non_boolean(self, rng):
        for _ in range(200):
            v = rng.choice([-1.0, 1.0], size=16)
            v[rng.integers(16)] = rng.uniform(-3, 3)
            f = DenseFunction(v)
            assert spectrum_booleanity_deviation(wht_forward(f)) > 0
            assert not is_boolean_by_spectrum(wht_forward(f), 1e-9)


class TestEntropyUncertainty:
    @pytest.mark.parametrize("n", [1, 4, 9])
    def test_equality_cases(self, n):
        for f in (DenseFunction.delta(n), DenseFunction.constant(n), DenseFunction.character(n, (1 << n) - 1)):
            rep = check_entropy_uncertainty(f)
            assert rep.rhs == n
            assert rep.lhs == pytest.approx(n, abs=1e-9)
            assert rep.holds

    def test_random(self, rng):
        for _ in range(50):
            rep = check_entropy_uncertainty(DenseFunction(rng.standard_normal(256)))
            assert rep.slack >= -1e-9 and rep.holds

    def test_zero_function(self):
        with pytest.raises(InvalidArgumentError):
            check_entropy_uncertainty(DenseFunction.zeros(3))


class TestSupportUncertainty:
    def test_delta(self):
        rep = check_support_uncertainty(DenseFunction.delta(6))
        assert (rep.support_f, rep.support_fhat) == (1, 64)
        assert rep.support_product.slack == 0 and rep.holds

    def test_character(self):
        rep = check_support_uncertainty(DenseFunction.character(6, 37))
        assert (rep.support_f, rep.support_fhat) == (64, 1)
        assert rep.support_product.slack == 0
        assert rep.support_entropy.slack == pytest.approx(0, abs=1e-12)

    def test_random_three_sparse(self, rng):
        for _ in range(20):
            f = to_dense(random_sparse(rng, 8, 3))
            count = sum(1 for v in f.values if abs(v) > 1e-9)
            assert count >= 256 / 3
            rep = check_support_uncertainty(f)
            assert rep.support_f == count and rep.support_fhat == 3 and rep.holds

    def test_subspace_indicator_saturates(self):
        # indicator of the subspace spanned by bits 0, 1 in n = 5
        v = np.zeros(32)
        v[[0, 1, 2, 3]] = 1.0
        rep = check_support_uncertainty(DenseFunction(v))
        assert rep.support_f * rep.support_fhat == 32
        assert rep.support_entropy.slack == pytest.approx(0, abs=1e-9)


class TestConvSupport:
    def test_delta(self, rng):
        f = to_dense(random_sparse(rng, 5, 4))
        assert check_conv_support(f, DenseFunction.delta(5))

    def test_spikes(self):
        a, b = 0b1011, 0b0110
        fa = np.zeros(16)
        fa[a] = 2.0
        fb = np.zeros(16)
        fb[b] = -0.5
        f, g = DenseFunction(fa), DenseFunction(fb)
        assert check_conv_support(f, g)
        assert support(convolve_fast(f, g), 1e-9) == {a ^ b}

    def test_random_sparse_pairs(self, rng):
        for _ in range(50):
            n = int(rng.integers(2, 11))
            f = np.zeros(1 << n)
            g = np.zeros(1 << n)
            f[rng.choice(1 << n, 3, replace=False)] = rng.uniform(-1, 1, 3)
            g[rng.choice(1 << n, 4, replace=False)] = rng.uniform(-1, 1, 4)
            assert check_conv_support(DenseFunction(f), DenseFunction(g))

    def test_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            check_conv_support(DenseFunction.delta(2), DenseFunction.delta(3))


class TestSumset:
    def test_examples(self):
        assert sumset_power({0}, 5) == {0}
        assert sumset_power({0, 0b101}, 2) == {0, 0b101}
        assert sumset_power({0, 0b01, 0b10}, 2) == {0, 1, 2, 3}

    def test_containment_when_zero_in_set(self, rng):
        A = {0} | set(rng.choice(256, 5).tolist())
        for i in range(1, 4):
            assert sumset_power(A, i) <= sumset_power(A, 4)

    def test_invalid_d(self):
        with pytest.raises(InvalidArgumentError):
            sumset_power({1}, 0)


class TestBounds:
    def test_sparsity_bound(self):
        assert spectral_sparsity_bound(2, 2) == 8.0
        assert spectral_sparsity_bound(1, 1) == 2.0
        assert sparsity_bound_binomial(2, 2) == 6
        for k in range(1, 30):
            for d in range(1, 5):
                assert sparsity_bound_binomial(k, d) <= spectral_sparsity_bound(k, d)

    def test_far_bound(self):
        assert far_from_set_bound(2, 2) == 0.125
        assert far_from_set_bound(1, 1) == 0.5
        assert far_from_set_bound(100, 2) == 2 / 10404
        assert far_from_set_bound(100, 2) == pytest.approx(1.922e-4, rel=1e-3)
        assert 2 ** log2_far_from_set_bound(100, 2) == pytest.approx(2 / 10404, rel=1e-12)

    def test_far_bound_exact_for_d2(self):
        for k in list(range(1, 2000)) + [10 ** 5, 999_999, 10 ** 6]:
            assert far_from_set_bound(k, 2) == 2 / (k + 2) ** 2

    def test_invalid(self):
        with pytest.raises(InvalidArgumentError):
            far_from_set_bound(0, 2)
        with pytest.raises(InvalidArgumentError):
            spectral_sparsity_bound(3, 0)

    def test_bound_dominates_measured_support(self, rng):
        for _ in range(30):
            f = to_dense(random_sparse(rng, 8, 3))
            fhat = wht_forward(f)
            A = {0} | support(fhat, 1e-9)
            ghat = wht_forward(product_over_set(f, [-1, 1]))
            supp_g = support(ghat, 1e-9)
            assert len(supp_g) <= spectral_sparsity_bound(3, 2)
            assert len(supp_g) <= sparsity_bound_binomial(3, 2)
            assert supp_g <= sumset_power(A, 2)


class TestConditionalEntropy:
    def test_uniform_two(self):
        h, hc, holds, bound = conditional_entropy_bound_check(FiniteDistribution({"a": 0.5, "b": 0.5}), "a")
        assert (h, hc, bound) == (1.0, 0.0, 2.0) and holds

    def test_uniform_four(self):
        res = conditional_entropy_bound_check(FiniteDistribution({i: 0.25 for i in range(4)}), 0)
        assert res.h_conditional == pytest.approx(math.log2(3))
        assert res.bound == pytest.approx(2 / 0.75)
        assert res.holds

    def test_point_mass_elsewhere(self):
        res = conditional_entropy_bound_check(FiniteDistribution({0: 0.0, 1: 1.0}), 0)
        assert (res.h, res.h_conditional, res.bound) == (0.0, 0.0, 0.0) and res.holds

    def test_undefined_conditional(self):
        with pytest.raises(InvalidArgumentError):
            conditional_entropy_bound_check(FiniteDistribution({0: 1.0}), 0)

    def test_bad_distribution(self):
        with pytest.raises(InvalidArgumentError):
            FiniteDistribution({0: 0.7, 1: 0.7})

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.floats(0, 1), min_size=2, max_size=64), st.data())
    def test_property(self, weights, data):
        if sum(weights) == 0:
            return
        X = FiniteDistribution.from_weights(dict(enumerate(weights)))
        x0 = data.draw(st.integers(0, len(weights) - 1))
        if X.prob(x0) >= 1.0 - 1e-15:
            return
        assert conditional_entropy_bound_check(X, x0).holds


class TestCloseness:
    def test_worked_instance(self):
        f = x1_plus_x2() / math.sqrt(2)
        rep = check_closeness_theorem(f, math.sqrt(2), 1.0)
        assert rep.distance == pytest.approx(1.0, abs=1e-12)
        assert rep.conv_norm_sq == pytest.approx(2.0, abs=1e-12)
        assert rep.conv_entropy == pytest.approx(2 * math.log2(math.sqrt(2)), abs=1e-12)
        assert rep.fraction == 1.0
        assert rep.bound == pytest.approx(0.25, abs=1e-12)
        assert rep.conv_norm_bound == 2.0
        assert rep.p_nonzero == pytest.approx(0.5) and rep.p_nonzero_bound == 0.5
        assert rep.holds

    def test_boolean_is_close(self):
        rep = check_closeness_theorem(DenseFunction.character(4, 3), 2.0, 0.3)
        assert rep.distance == 0 and rep.close and rep.bound is None and rep.holds

    def test_preconditions(self):
        f = x1_plus_x2()
        with pytest.raises(InvalidArgumentError, match=r"\|f\|\^2"):
            check_closeness_theorem(f, 2.0, 0.5)
        g = x1_plus_x2() / math.sqrt(2)
        with pytest.raises(InvalidArgumentError, match="2 log2 k"):
            check_closeness_theorem(g, 1.2, 0.5)
        with pytest.raises(InvalidArgumentError):
            check_closeness_theorem(g, 1.0, 0.5)
        with pytest.raises(InvalidArgumentError):
            check_closeness_theorem(g, 2.0, 0.0)

    def test_random_normalized(self, rng):
        for _ in range(100):
            v = rng.choice([-1.0, 1.0], size=16)
            v[rng.choice(16, 2, replace=False)] = rng.uniform(-2, 2, 2)
            v *= 4 / np.linalg.norm(v)
            f = DenseFunction(v)
            sq = wht_forward(DenseFunction(v * v)).values
            h = -sum(p * math.log2(p) for p in sq ** 2 / np.sum(sq ** 2) if p > 0)
            rep = check_closeness_theorem(f, max(2 ** (h / 2), 1 + 1e-9), float(rng.uniform(0.05, 1.5)))
            assert rep.holds
