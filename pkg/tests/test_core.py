import pytest
import numpy as np

from jordanlp.algebras import matrix_jordan, matrix_element, spin_abstract, SIGMA_1, SIGMA_2, SIGMA_3
from jordanlp.core import (StateFunctional, jordan_product, involution, triple_product,
                           quadratic_map, evaluate_state, phi_x, operator_commute,
                           operator_commute_defect,
                           jordan_identity_residual, check_jb_axioms, require_selfadjoint)
from jordanlp.errors import AlgebraMismatch, DimensionMismatch, NotSelfadjoint, NotFaithful
from jordanlp.sampling import random_element


class TestJordanProduct:

    def test_pauli_anticommute(self, m2):
        s1, s2 = matrix_element(m2, SIGMA_1), matrix_element(m2, SIGMA_2)
        assert jordan_product(s1, s2).coord_norm() == pytest.approx(0., abs=1e-15)
        assert jordan_product(s1, s1).allclose(m2.one())

    def test_symmetric_matrix_product(self, m2):
        a = matrix_element(m2, [[1, 2], [3, 4]])
        b = matrix_element(m2, [[0, 1], [1, 0]])
        np.testing.assert_allclose(jordan_product(a, b).to_matrix(), [[2.5, 2.5], [2.5, 2.5]])

    def test_unit(self, any_alg, rng):
        x = random_element(any_alg, 'ball', rng)
        assert jordan_product(any_alg.one(), x).allclose(x)

    def test_commutative(self, any_alg, rng):
        x, y = random_element(any_alg, 'ball', rng), random_element(any_alg, 'ball', rng)
        assert jordan_product(x, y).allclose(jordan_product(y, x))

    def test_jordan_identity(self, any_alg, rng):
        for _ in range(5):
            x, y = random_element(any_alg, 'ball', rng), random_element(any_alg, 'ball', rng)
            assert jordan_identity_residual(x, y) <= 1e-10

    def test_mixed_algebras(self, m2, m4):
        with pytest.raises(AlgebraMismatch):
            jordan_product(m2.one(), m4.one())

    def test_wrong_coordinate_count(self, m2):
        with pytest.raises(DimensionMismatch):
            m2.element(np.ones(3))

    def test_elements_do_not_multiply_with_star(self, m2):
        with pytest.raises(TypeError):
            m2.one() * m2.one()

    def test_numpy_scalar_times_element(self, m2):
        out = np.float64(2.) * m2.one()
        assert out.allclose(m2.one() + m2.one())


class TestTripleProducts:

    def test_triple_is_matrix_sandwich(self, m2, rng):
        x, y = random_element(m2, 'ball', rng), random_element(m2, 'ball', rng)
        X, Y = x.to_matrix(), y.to_matrix()
        np.testing.assert_allclose(triple_product(x, y, x).to_matrix(), X @ Y @ X, atol=1e-12)

    def test_quadratic_map_of_symmetry(self, m2, rng):
        s = matrix_element(m2, SIGMA_2)
        x = random_element(m2, 'ball', rng)
        S = SIGMA_2
        np.testing.assert_allclose(quadratic_map(s, x).to_matrix(), S @ x.to_matrix() @ S, atol=1e-12)

    def test_involution_is_conjugate_transpose(self, m2):
        s3 = matrix_element(m2, SIGMA_3)
        assert involution(s3).allclose(s3)
        a = matrix_element(m2, [[0, 1j], [0, 0]])
        np.testing.assert_allclose(involution(a).to_matrix(), [[0, 0], [-1j, 0]])


class TestStates:

    def test_trace_of_unit(self, any_alg):
        tau = StateFunctional.trace(any_alg)
        assert evaluate_state(tau, any_alg.one()) == pytest.approx(1.)
        assert tau.is_state
        assert tau.tracial
        assert tau.faithful

    @pytest.mark.parametrize('weights, expected', [
        ([1., 1.], True),
        ([3., 1.], False),
    ])
    def test_diagonal_density_traciality(self, m2, weights, expected):
        d = matrix_element(m2, np.diag(weights))
        phi = StateFunctional.from_density(m2, d)
        assert phi.is_state
        assert phi.tracial is expected

    def test_density_must_be_positive(self, m2):
        with pytest.raises(ValueError):
            StateFunctional.from_density(m2, matrix_element(m2, np.diag([1., -0.5])))

    def test_phi_x_representer(self, m2, rng):
        d = matrix_element(m2, np.diag([1.5, 0.5]))
        phi = StateFunctional.from_density(m2, d)
        tau = StateFunctional.trace(m2)
        x, y = random_element(m2, 'ball', rng), random_element(m2, 'ball', rng)
        r = phi_x(phi, x)
        assert evaluate_state(tau, jordan_product(r, y)) == pytest.approx(
            evaluate_state(phi, jordan_product(x, y)), abs=1e-12)

    def test_phi_x_needs_faithful_state(self, m2):
        phi = StateFunctional.from_density(m2, matrix_element(m2, np.diag([1., 0.])))
        assert not phi.faithful
        with pytest.raises(NotFaithful):
            phi_x(phi, m2.one())

    def test_require_selfadjoint(self, m2):
        with pytest.raises(NotSelfadjoint):
            require_selfadjoint(matrix_element(m2, [[0, 1], [0, 0]]))


class TestOperatorCommute:

    def test_diagonals_commute(self, m2):
        a = matrix_element(m2, np.diag([1., 2.]))
        b = matrix_element(m2, np.diag([-1., 5.]))
        assert operator_commute(a, b)

    def test_paulis_do_not_commute(self, m2):
        assert not operator_commute(matrix_element(m2, SIGMA_1), matrix_element(m2, SIGMA_2))

    def test_sampled(self, any_alg, rng):
        x = random_element(any_alg, 'selfadjoint', rng)
        assert operator_commute(any_alg.one(), x, samples=25, rng=rng)
        assert operator_commute(x, x.square(), samples=25, tol=1e-9 * max(1., x.coord_norm()) ** 3,
                                rng=rng)

    def test_sampled_paulis(self, m2, rng):
        s1, s2 = matrix_element(m2, SIGMA_1), matrix_element(m2, SIGMA_2)
        assert not operator_commute(s1, s2, samples=10, rng=rng)
        assert operator_commute_defect(s1, s2, samples=10, rng=rng) >= operator_commute_defect(s1, s2)

    def test_negative_samples(self, m2):
        with pytest.raises(ValueError):
            operator_commute(m2.one(), m2.one(), samples=-1)


class TestJBAxioms:

    def test_matrix_axioms_pass(self, m2):
        reports = check_jb_axioms(m2, samples=30, seed=1)
        assert {r.name for r in reports} >= {'jb_product', 'jb_square', 'jb_monotone',
                                             'jbstar_involution', 'jbstar_triple'}
        assert all(r.status == 'pass' for r in reports), [r.to_dict() for r in reports]

    def test_abstract_spin_complex_axioms_unsupported(self):
        reports = {r.name: r for r in check_jb_axioms(spin_abstract(3), samples=10, seed=2)}
        assert reports['jb_square'].status == 'pass'
        assert reports['jbstar_triple'].status == 'unsupported'

    def test_bad_norm_oracle_fails(self, m2):
        reports = {r.name: r for r in check_jb_axioms(
            m2, norm_oracle=lambda x: 2. * x.norm_inf(), samples=10, seed=3)}
        assert reports['jb_square'].status == 'fail'
