import math

import pytest
import numpy as np

from jordanlp import densemat
from jordanlp.algebras import matrix_jordan, matrix_element, spin_abstract
from jordanlp.core import StateFunctional, evaluate_state, involution, jordan_product
from jordanlp.errors import NotFaithful, UnsupportedKind
from jordanlp.interp import (CoupleSpec, BracketBudget, NormBracket, bracket, upper_bound,
                             lower_bound, default_witnesses, endpoint0_norm, endpoint1_norm,
                             strip_to_disk, regularizer, regularizer_max, certify,
                             ricard_xu_norm, ricard_xu_comparison, LowerBound)
from jordanlp.utils.rng import get_rng
from jordanlp.sampling import random_element
from jordanlp.spec_parse import parse_algebra

QUICK = BracketBudget(degrees=(2, 4), grids=(32,), families=('disk',))
# fine exponent grid over a wide range for states without a closed-form candidate
HILBERT_BUDGET = BracketBudget(degrees=(4, 8, 16, 32), grids=(64, 128), lam_max=8.)


def diag_state(alg, weights):
    d = matrix_element(alg, np.diag(weights))
    return StateFunctional.from_density(alg, d, name='diag')


def schatten(x, p):
    return densemat.schatten_norm(x.to_matrix(), p, 1. / x.algebra.ambient_dim)


def hilbert(x, phi):
    return math.sqrt(evaluate_state(phi, jordan_product(involution(x), x)).real)


class TestCoupleSpec:

    def test_abstract_kind_unsupported(self):
        alg = spin_abstract(3)
        with pytest.raises(UnsupportedKind):
            CoupleSpec(StateFunctional.trace(alg), 0.5)

    @pytest.mark.parametrize('theta', [0., 1., -0.2, 1.5])
    def test_theta_range(self, m2, theta):
        with pytest.raises(ValueError):
            CoupleSpec(StateFunctional.trace(m2), theta)

    def test_not_faithful(self, m2):
        with pytest.raises(NotFaithful):
            CoupleSpec(diag_state(m2, [1., 0.]), 0.5)

    def test_at(self, m2):
        spec = CoupleSpec(StateFunctional.trace(m2), 0.25)
        dual = spec.at(0.75)
        assert dual.theta == 0.75 and spec.theta == 0.25
        assert spec.p == pytest.approx(4.)
        assert spec.trace_state


class TestEndpoints:

    def test_endpoint0_is_spectral(self, m2, rng):
        spec = CoupleSpec(StateFunctional.trace(m2), 0.5)
        x = random_element(m2, 'ball', rng)
        assert endpoint0_norm(x, spec) == pytest.approx(densemat.spectral_norm(x.to_matrix()))

    def test_endpoint1_is_normalized_trace_norm(self, m2, rng):
        spec = CoupleSpec(StateFunctional.trace(m2), 0.5)
        x = random_element(m2, 'ball', rng)
        assert endpoint1_norm(x, spec) == pytest.approx(densemat.trace_norm(x.to_matrix(), 0.5))

    def test_numerical_endpoint1_is_lower_estimate(self, m2, rng):
        spec = CoupleSpec(diag_state(m2, [1.5, 0.5]), 0.5)
        x = random_element(m2, 'ball', rng)
        exact = endpoint1_norm(x, spec)
        est = endpoint1_norm(x, spec, method='numerical', rng=rng)
        assert est <= exact * (1. + 1e-9)
        assert est >= 0.9 * exact

    def test_theta_maps_to_centre(self):
        assert abs(strip_to_disk(0.3, 0.3)) == pytest.approx(0., abs=1e-15)
        assert abs(strip_to_disk(0.3 + 2j, 0.3)) < 1.

    def test_boundary_maps_to_circle(self):
        for z in (0.7j, -3j, 1. + 0.5j):
            assert abs(strip_to_disk(z, 0.4)) == pytest.approx(1.)

    def test_regularizer(self):
        assert regularizer(0.4, 0.4, 1e-3) == pytest.approx(1.)
        for j in (0, 1):
            for t in (0., 1., 5.):
                assert abs(regularizer(j + 1j * t, 0.4, 1e-3)) <= regularizer_max(j, 0.4, 1e-3) + 1e-15


class TestBracketTracial:

    @pytest.mark.parametrize('p', [4. / 3., 2., 3., 4.])
    def test_contains_schatten(self, m2, rng, p):
        spec = CoupleSpec(StateFunctional.trace(m2), 1. / p)
        x = random_element(m2, 'ball', rng)
        br = bracket(x, spec, BracketBudget(), rng)
        assert br.contains(schatten(x, p))
        assert br.lower <= br.upper
        assert br.relative_width(schatten(x, p)) <= 0.05
        assert not br.inconclusive

    def test_spin_represented_hilbert(self, rng):
        from jordanlp.algebras import pauli_spin_representation
        rep, _ = pauli_spin_representation(3)
        tau = StateFunctional.trace(rep)
        x = random_element(rep, 'ball', rng)
        br = bracket(x, CoupleSpec(tau, 0.5), BracketBudget(), rng)
        assert br.contains(hilbert(x, tau))

    def test_zero(self, m2):
        br = bracket(m2.zero(), CoupleSpec(StateFunctional.trace(m2), 0.5))
        assert (br.lower, br.upper) == (0., 0.)
        assert br.ratio == 1.

    def test_unit_lower_bound_is_one(self, m2):
        spec = CoupleSpec(StateFunctional.trace(m2), 1. / 3.)
        low = lower_bound(m2.one(), spec, [m2.one()])
        assert low.value == pytest.approx(1., rel=1e-3)

    def test_lower_bound_needs_witnesses(self, m2):
        with pytest.raises(ValueError):
            lower_bound(m2.one(), CoupleSpec(StateFunctional.trace(m2), 0.5), [])

    def test_to_dict(self, m2, rng):
        x = random_element(m2, 'ball', rng)
        d = bracket(x, CoupleSpec(StateFunctional.trace(m2), 0.5), rng=rng).to_dict()
        assert {'theta', 'lower', 'upper', 'ratio', 'certificate', 'grid', 'degree',
                'status', 'upper_by_eps', 'upper_extrapolated'} <= set(d)
        assert d['lower'] <= d['upper']

    def test_ricard_xu_under_trace_is_schatten(self, m2, rng):
        spec = CoupleSpec(StateFunctional.trace(m2), 1. / 3.)
        x = random_element(m2, 'ball', rng)
        assert ricard_xu_norm(x, spec) == pytest.approx(schatten(x, 3.), rel=1e-12)


class TestBracketGeneral:

    def test_disk_upper_is_certified(self, m2, rng):
        spec = CoupleSpec(diag_state(m2, [1.5, 0.5]), 0.5)
        x = random_element(m2, 'ball', rng)
        ub = upper_bound(x, spec, degree=2, grid=32, family='disk')
        assert ub.value >= hilbert(x, spec.state) * (1. - 1e-9)
        value, _ = certify(ub.candidate, spec)
        assert value == pytest.approx(ub.value)

    def test_candidate_interpolates_x(self, m2, rng):
        spec = CoupleSpec(StateFunctional.trace(m2), 0.5)
        x = random_element(m2, 'ball', rng)
        ub = upper_bound(x, spec, degree=2, grid=32, family='exponential')
        assert ub.candidate.evaluate(0.5).allclose(x, tol=1e-10)

    def test_quick_bracket_is_sound(self, m2, rng):
        phi = diag_state(m2, [1.5, 0.5])
        x = random_element(m2, 'ball', rng)
        br = bracket(x, CoupleSpec(phi, 0.5), QUICK, rng)
        assert br.lower <= hilbert(x, phi) * (1. + 1e-9)
        assert hilbert(x, phi) <= br.upper * (1. + 1e-9)

    def test_witnesses_nonzero(self, m2, rng):
        spec = CoupleSpec(StateFunctional.trace(m2), 0.25)
        x = random_element(m2, 'selfadjoint', rng)
        ws = default_witnesses(x, spec, rng)
        assert len(ws) >= 3
        assert all(w.coord_norm() > 0 for w in ws)

    def test_crossed_bounds_are_reported(self, m2, rng, monkeypatch):
        spec = CoupleSpec(StateFunctional.trace(m2), 0.5)
        x = random_element(m2, 'ball', rng)
        too_high = LowerBound(10. * schatten(x, 2.))
        monkeypatch.setattr('jordanlp.interp.lower_bound', lambda *args, **kwargs: too_high)
        br = bracket(x, spec, QUICK, rng)
        assert br.status == 'inconsistent'
        assert br.inconclusive
        assert br.lower == too_high.value
        assert br.lower > br.upper
        assert br.to_dict()['lower'] == too_high.value


@pytest.mark.slow
class TestAcceptance:

    @pytest.mark.parametrize('p', [4. / 3., 2., 3., 4.])
    def test_schatten_agreement_m2(self, p):
        m2 = matrix_jordan(2)
        spec = CoupleSpec(StateFunctional.trace(m2), 1. / p)
        budget = BracketBudget(degrees=(2, 4, 8, 16), grids=(32, 64, 128))
        rng = get_rng([1, int(100 * p)])
        for _ in range(20):
            x = random_element(m2, 'ball', rng)
            oracle = schatten(x, p)
            br = bracket(x, spec, budget, rng)
            assert br.contains(oracle), br.to_dict()
            assert br.relative_width(oracle) <= 0.05, br.to_dict()

    @pytest.mark.parametrize('weights', [[1.5, 0.5], [1.9, 0.1]])
    def test_hilbert_non_tracial(self, weights):
        m2 = matrix_jordan(2)
        phi = diag_state(m2, weights)
        rng = get_rng(11)
        for _ in range(5):
            x = random_element(m2, 'ball', rng)
            br = bracket(x, CoupleSpec(phi, 0.5), BracketBudget(), rng)
            assert br.contains(hilbert(x, phi)), br.to_dict()

    # diag(0.7, 0.3) against the trace, and its copy 1 + 0.4 s_1 in the spin factor
    @pytest.mark.parametrize('kind,weights', [('matrix:2', None), ('matrix:2', [1.4, 0.6]),
                                              ('spin:3:represented', None),
                                              ('spin:3:represented', [1.4, 1.4, 0.6, 0.6])])
    def test_hilbert_identification(self, kind, weights):
        alg = parse_algebra(kind)
        if weights is None:
            phi = StateFunctional.trace(alg)
        else:
            phi = diag_state(alg, weights)
        spec = CoupleSpec(phi, 0.5)
        rng = get_rng([2, len(kind), 0 if weights is None else 1])
        for _ in range(5):
            x = random_element(alg, 'ball', rng)
            h = hilbert(x, phi)
            br = bracket(x, spec, HILBERT_BUDGET, rng)
            assert br.contains(h), br.to_dict()
            assert br.relative_width(h) <= 0.05, br.to_dict()

    def test_near_endpoint_zero(self):
        m2 = matrix_jordan(2)
        tau = StateFunctional.trace(m2)
        rng = get_rng(5)
        x = random_element(m2, 'selfadjoint', rng)
        br = bracket(x, CoupleSpec(tau, 0.02), BracketBudget(), rng)
        assert br.midpoint == pytest.approx(x.norm_inf(), rel=0.1)

    def test_ricard_xu_ratio_is_finite(self):
        m2 = matrix_jordan(2)
        spec = CoupleSpec(diag_state(m2, [1.5, 0.5]), 1. / 3.)
        rng = get_rng(3)
        out = ricard_xu_comparison(random_element(m2, 'ball', rng), spec, rng=rng)
        assert math.isfinite(out['ratio']) and out['ratio'] > 0
