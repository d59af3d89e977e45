import pytest
import numpy as np

from jordanlp.algebras import matrix_jordan, matrix_element, spin_system, SubalgebraModel
from jordanlp.calculus import spectral_decompose
from jordanlp.core import StateFunctional, jordan_product
from jordanlp.errors import NotSubalgebra, UnsupportedKind
from jordanlp.expect import conditional_expectation
from jordanlp.lp_norms import lp_norm
from jordanlp.sampling import random_element


def diagonals(alg):
    n = alg.ambient_dim
    return [matrix_element(alg, np.diag(np.eye(n)[i])) for i in range(n)]


@pytest.fixture
def m3():
    return matrix_jordan(3)


class TestSubalgebraModel:

    def test_no_ambient_matrices(self, m3):
        model = SubalgebraModel(m3, diagonals(m3))
        assert model.dim == 3 and not model.represented
        with pytest.raises(UnsupportedKind):
            model.one().to_matrix()

    def test_product_matches_ambient(self, m4, rng):
        basis = [m4.one()] + [matrix_element(m4, s) for s in spin_system(3)]
        model = SubalgebraModel(m4, basis)
        u, v = rng.standard_normal(4), rng.standard_normal(4)
        lhs = model.embed(model.product(u, v))
        rhs = jordan_product(model.embed(u), model.embed(v))
        assert lhs.allclose(rhs, tol=1e-12)

    def test_diagonal_spectrum(self, m3):
        model = SubalgebraModel(m3, diagonals(m3))
        sd = spectral_decompose(model.element([1., -2., 0.5]))
        np.testing.assert_allclose(sd.eigenvalues, [-2., 0.5, 1.], atol=1e-12)
        np.testing.assert_allclose(sd.idempotents[0].coords, [0., 1., 0.], atol=1e-12)

    def test_repeated_eigenvalue(self, m3):
        model = SubalgebraModel(m3, diagonals(m3))
        sd = spectral_decompose(model.element([1., 1., 2.]))
        np.testing.assert_allclose(sd.eigenvalues, [1., 2.], atol=1e-12)
        np.testing.assert_allclose(sd.idempotents[0].coords, [1., 1., 0.], atol=1e-12)

    def test_spin_spectrum(self, m4):
        basis = [m4.one()] + [matrix_element(m4, s) for s in spin_system(3)]
        model = SubalgebraModel(m4, basis)
        # lambda 1 + a.s has eigenvalues lambda -+ |a|
        x = model.element([0.5, 3., 0., 4.])
        np.testing.assert_allclose(spectral_decompose(x).eigenvalues, [-4.5, 5.5], atol=1e-12)
        assert x.norm_inf() == pytest.approx(5.5)

    def test_non_selfadjoint_norm_is_ambient(self, m3, rng):
        model = SubalgebraModel(m3, diagonals(m3))
        u = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        assert model.sup_norm(u) == pytest.approx(float(np.max(np.abs(u))))

    @pytest.mark.parametrize('p', [1., 2.5, 4.])
    def test_range_norms_agree(self, m4, rng, p):
        tau = StateFunctional.trace(m4)
        basis = [m4.one()] + [matrix_element(m4, s) for s in spin_system(3)]
        Q = conditional_expectation(m4, basis, tau)
        model = Q.intrinsic()
        x = random_element(m4, 'ball', rng)
        intrinsic = lp_norm(model.element(Q.range_coordinates(x)), StateFunctional.trace(model), p)
        assert intrinsic.value == pytest.approx(lp_norm(Q(x), tau, p).value, rel=1e-10)

    def test_restricted_state(self, m2):
        phi = StateFunctional.from_density(m2, matrix_element(m2, np.diag([1.4, 0.6])))
        model = SubalgebraModel(m2, diagonals(m2), functional=phi)
        np.testing.assert_allclose(model.trace, [0.7, 0.3], atol=1e-12)
        assert model.trace_of(model.unit).real == pytest.approx(1.)

    def test_not_closed(self, m2):
        e12 = matrix_element(m2, np.array([[0., 1.], [0., 0.]]))
        with pytest.raises(NotSubalgebra):
            SubalgebraModel(m2, [m2.one(), e12])
