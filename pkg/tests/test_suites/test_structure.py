import math

import pytest
import numpy as np

from jordanlp.algebras import matrix_jordan, pauli_spin_representation
from jordanlp.core import StateFunctional
from jordanlp.spec_parse import parse_state
from jordanlp.suites import SUITES, AxiomSuite, CalculusSuite, EmbeddingSuite, LpSuite


def failed(entries):
    return {name: e.to_dict() for name, e in entries.items() if e.status == 'fail'}


def test_suite_names():
    assert set(SUITES) == {'axioms', 'calculus', 'lp', 'holder', 'duality', 'expectation',
                           'interp', 'embedding', 'ricard_xu', 'iochum', 'independence'}


class TestAxiomSuite:

    def test_any_alg(self, run_suite, any_alg, tau):
        entries = run_suite(AxiomSuite, any_alg, tau, batch_size=3)
        assert not failed(entries)
        assert entries['tracial_state_uniqueness'].status == 'pass'
        assert entries['jordan_identity'].instances == 3

    def test_spin_identities(self, run_suite, spin_rep):
        alg, _ = spin_rep
        entries = run_suite(AxiomSuite, alg, StateFunctional.trace(alg), batch_size=2)
        assert entries['spin_anticommutation'].status == 'pass'

    @pytest.mark.slow
    def test_albert(self, run_suite, albert_alg):
        entries = run_suite(AxiomSuite, albert_alg, StateFunctional.trace(albert_alg), batch_size=2)
        assert not failed(entries)
        assert {'albert_cayley_hamilton', 'octonion_moufang'} <= set(entries)


class TestCalculusSuite:

    def test_matrix(self, run_suite, m2):
        entries = run_suite(CalculusSuite, m2, StateFunctional.trace(m2), batch_size=4)
        assert not failed(entries)
        assert 'polar_decomposition' in entries


class TestLpSuite:

    def test_tracial(self, run_suite, represented_alg):
        tau = StateFunctional.trace(represented_alg)
        entries = run_suite(LpSuite, represented_alg, tau, p_grid=(1., 1.5, 2., 4., np.inf),
                            batch_size=4)
        assert not failed(entries)
        assert entries['p_monotonicity'].status == 'pass'
        assert 'triangle[p=inf]' in entries

    def test_non_tracial(self, run_suite):
        alg = matrix_jordan(2)
        phi = parse_state('diag:3,1', alg)
        entries = run_suite(LpSuite, alg, phi, p_grid=(1., 3.), batch_size=3)
        assert entries['p_monotonicity'].status == 'unsupported'
        assert not failed(entries)

    def test_same_seed_same_entries(self, run_suite, m2):
        tau = StateFunctional.trace(m2)
        first = run_suite(LpSuite, m2, tau, seed_state=99, batch_size=2)
        second = run_suite(LpSuite, m2, tau, seed_state=99, batch_size=2)
        assert {k: e.to_dict() for k, e in first.items()} == \
               {k: e.to_dict() for k, e in second.items()}


class TestEmbeddingSuite:

    @pytest.mark.parametrize('k, variant', [(2, 'ambient'), (3, 'ambient'), (3, 'split')])
    def test_spin(self, run_suite, k, variant):
        alg, _ = pauli_spin_representation(k, variant)
        entries = run_suite(EmbeddingSuite, alg, StateFunctional.trace(alg),
                            p_grid=(1.5, 3.), batch_size=5)
        assert not failed(entries)
        assert entries['car_tower_consistency'].status == 'pass'
        assert entries['pauli_homomorphism'].instances == 5
        assert 'lp_ambient_schatten[p=inf]' in entries

    @pytest.mark.slow
    @pytest.mark.parametrize('k', [3, 4])
    def test_spin_in_m4_at_scale(self, run_suite, k):
        alg, _ = pauli_spin_representation(k)
        assert alg.ambient_dim == 4
        ps = (1., 1.5, 2., 3., math.inf)
        entries = run_suite(EmbeddingSuite, alg, StateFunctional.trace(alg), p_grid=ps,
                            batch_size=1000, seed_state=k)
        assert not failed(entries)
        for p in ps:
            entry = entries[f"lp_ambient_schatten[p={p:g}]"]
            assert entry.status == 'pass'
            assert entry.instances == 1000
        assert entries['pauli_homomorphism'].status == 'pass'

    def test_unsupported(self, run_suite, sum_alg):
        entries = run_suite(EmbeddingSuite, sum_alg, StateFunctional.trace(sum_alg))
        assert list(entries) == ['embedding']
        assert entries['embedding'].status == 'unsupported'
