import pytest
import numpy as np

from jordanlp.core import StateFunctional
from jordanlp.errors import ConfigError
from jordanlp.spec_parse import parse_state
from jordanlp.suites import DualitySuite, ExpectationSuite, HolderSuite, IochumSuite


def statuses(entries):
    return {name: e.status for name, e in entries.items()}


class TestHolderSuite:

    def test_selfadjoint_pairs_pass(self, run_suite, any_alg, tau):
        entries = run_suite(HolderSuite, any_alg, tau, p_grid=(2., 4., np.inf), batch_size=4)
        assert entries
        assert 'fail' not in statuses(entries).values()

    def test_needs_trace(self, run_suite, m2):
        entries = run_suite(HolderSuite, m2, parse_state('diag:3,1', m2))
        assert statuses(entries) == {'holder': 'unsupported'}


class TestDualitySuite:

    def test_matrix(self, run_suite, m2):
        entries = run_suite(DualitySuite, m2, StateFunctional.trace(m2), p_grid=(1.5, 2., 3.),
                            batch_size=2)
        assert set(entries) == {'dual_attainment[p=1.5]', 'dual_attainment[p=2]',
                                'dual_attainment[p=3]'}
        assert set(statuses(entries).values()) == {'pass'}


class TestExpectationSuite:

    def test_fixed_points_of_transpose(self, run_suite, m2):
        entries = run_suite(ExpectationSuite, m2, StateFunctional.trace(m2),
                            p_grid=(1., 2., np.inf), batch_size=3, subalgebra='fixed:transpose')
        assert entries['canonical_equals_expectation'].status == 'pass'
        assert any(name.startswith('canonical_') and name != 'canonical_equals_expectation'
                   for name in entries)
        assert 'l1_extension' in entries
        assert 'fail' not in statuses(entries).values()

    @pytest.mark.parametrize('subalgebra', ['scalars', 'diagonal'])
    def test_matrix_subalgebras(self, run_suite, subalgebra):
        from jordanlp.algebras import matrix_jordan
        alg = matrix_jordan(3)
        entries = run_suite(ExpectationSuite, alg, StateFunctional.trace(alg),
                            p_grid=(1.5, 3.), batch_size=3, subalgebra=subalgebra)
        assert 'fail' not in statuses(entries).values()
        assert 'canonical_equals_expectation' not in entries

    def test_subalgebra_needs_matrix_kind(self, spin_rep):
        alg, _ = spin_rep
        proc = ExpectationSuite(jordan_algebra=alg, state_functional=StateFunctional.trace(alg),
                                p_grid=np.array([2.]), seed_state=1, subalgebra='diagonal')
        with pytest.raises(ConfigError):
            proc.initialize()


class TestIochumSuite:

    def test_abstract_kind_agreement_only(self, run_suite, spin3):
        entries = run_suite(IochumSuite, spin3, StateFunctional.trace(spin3),
                            p_grid=(1., 3.), agreement_samples=5)
        assert entries['iochum_agreement[p=1]'].status == 'pass'
        assert entries['iochum_agreement[p=3]'].status == 'pass'
        assert entries['iochum_embedding[p=3]'].status == 'unsupported'

    @pytest.mark.slow
    def test_represented_spin_embedding(self, run_suite, spin_rep):
        alg, _ = spin_rep
        ps = (4. / 3., 2., 4.)
        entries = run_suite(IochumSuite, alg, StateFunctional.trace(alg), p_grid=ps,
                            batch_size=20, agreement_samples=20, seed_state=alg.k)
        for p in ps:
            assert entries[f"iochum_agreement[p={p:g}]"].status == 'pass'
            entry = entries[f"iochum_embedding[p={p:g}]"]
            assert entry.status == 'pass', entry.to_dict()
            assert entry.instances == 20
