import pytest
import numpy as np

from jordanlp.checks import CheckReport
from jordanlp.core import StateFunctional
from jordanlp.interp import NormBracket
from jordanlp.spec_parse import parse_state
from jordanlp.suites import InterpSuite, IndependenceSuite, RicardXuSuite
from jordanlp.suites.base import record_bracket
from jordanlp.suites.independence import perturbed_state

QUICK = {'batch_size': 1, 'max_degree': 4, 'target_ratio': 1.5}


def test_unrepresented_kind(run_suite, spin3):
    entries = run_suite(InterpSuite, spin3, StateFunctional.trace(spin3), p_grid=(2.,))
    assert list(entries) == ['interp']
    assert entries['interp'].status == 'unsupported'


def test_perturbed_state_is_faithful(m2, rng):
    phi = perturbed_state(m2, rng)
    assert phi.name == 'perturbed'
    assert not phi.density.allclose(m2.one(), tol=1e-12)
    assert np.all(np.linalg.eigvalsh(phi.density.to_matrix()) > 0.)


def test_crossed_bracket_fails_containment():
    entry = CheckReport('interp_contains_lp[p=2]', 'L2 identification')
    br = NormBracket(theta=0.5, lower=1.2, upper=1., status='inconsistent')
    # above the upper bound and below the lower one
    record_bracket(entry, br, 1.1, None)
    assert entry.status == 'fail'
    assert entry.max_violation == pytest.approx(0.2 / 1.1)


@pytest.mark.slow
class TestBracketSuites:

    def test_interp_contains_schatten(self, run_suite, m2):
        entries = run_suite(InterpSuite, m2, StateFunctional.trace(m2), p_grid=(1., 2., 4.),
                            **QUICK)
        assert set(entries) == {'interp_contains_lp[p=2]', 'interp_contains_lp[p=4]',
                                'bracket_order'}
        assert entries['bracket_order'].status == 'pass'
        assert entries['interp_contains_lp[p=2]'].status in ('pass', 'inconclusive')

    def test_interp_non_tracial_only_hilbert(self, run_suite, m2):
        entries = run_suite(InterpSuite, m2, parse_state('diag:3,1', m2), p_grid=(2., 4.),
                            **QUICK)
        assert 'interp_contains_lp[p=4]' not in entries
        assert entries['interp_contains_lp[p=2]'].status in ('pass', 'inconclusive')

    @pytest.mark.parametrize('cls, name', [
        (RicardXuSuite, 'ricard_xu_window[p=3]'),
        (IndependenceSuite, 'state_independence[p=3]'),
    ])
    def test_observations(self, run_suite, m2, cls, name):
        entries = run_suite(cls, m2, parse_state('diag:3,1', m2), p_grid=(3.,), **QUICK)
        assert list(entries) == [name]
        assert entries[name].exploratory
        assert entries[name].status in ('pass', 'observed', 'inconclusive')
        assert np.isfinite(entries[name].max_violation)
