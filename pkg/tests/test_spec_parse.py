import pytest
import numpy as np

from jordanlp.core import StateFunctional, evaluate_state
from jordanlp.errors import ConfigError
from jordanlp.spec_parse import normalize_algebra_spec, parse_algebra, parse_state


class TestNormalizeAlgebraSpec:

    @pytest.mark.parametrize('spec, expected', [
        ('matrix:3', 'matrix:3'),
        (' albert ', 'albert'),
        ({'kind': 'matrix', 'n': 2}, 'matrix:2'),
        ({'kind': 'spin', 'k': 3}, 'spin:3'),
        ({'kind': 'spin', 'k': 3, 'represented': True}, 'spin:3:represented'),
        ({'kind': 'spin', 'k': 5, 'variant': 'split'}, 'spin:5:split'),
        ({'kind': 'direct_sum', 'parts': [{'algebra': 'matrix:2', 'weight': 0.5},
                                          {'algebra': {'kind': 'spin', 'k': 2}, 'weight': 0.5}]},
         'direct_sum:matrix:2@0.5+spin:2@0.5'),
    ])
    def test_string_form(self, spec, expected):
        assert normalize_algebra_spec(spec) == expected

    def test_unknown_kind(self):
        with pytest.raises(ConfigError):
            normalize_algebra_spec({'kind': 'octonion'})


class TestParseAlgebra:

    @pytest.mark.parametrize('spec, kind, dim', [
        ('matrix:2', 'matrix', 4),
        ('spin:3', 'spin', 4),
        ('spin:3:represented', 'spin', 4),
        ('spin:3:split', 'spin', 4),
        ('albert', 'albert', 27),
        ('direct_sum:matrix:2@0.25+spin:2@0.75', 'direct_sum', 7),
    ])
    def test_kinds(self, spec, kind, dim):
        alg = parse_algebra(spec)
        assert alg.kind == kind
        assert alg.dim == dim

    def test_jacobi_backend(self):
        assert parse_algebra('matrix:2', 'jacobi').eig_method == 'jacobi'

    @pytest.mark.parametrize('spec', [
        'matrix:x',
        'matrix:0',
        'spin:1',
        'spin:4:split',
        'spin:3:weird',
        'quaternion:2',
        'direct_sum:matrix:2',
        'direct_sum:matrix:2@0.3+spin:2@0.3',
        'direct_sum:matrix:2@a+spin:2@0.5',
    ])
    def test_invalid(self, spec):
        with pytest.raises(ConfigError):
            parse_algebra(spec)

    def test_unknown_eig_method(self):
        with pytest.raises(ConfigError):
            parse_algebra('matrix:2', 'qr')


class TestParseState:

    def test_trace(self, m2):
        assert parse_state('trace', m2).tracial

    def test_diag_normalized(self, m2):
        phi = parse_state('diag:3,1', m2)
        assert phi.is_state
        assert not phi.tracial
        # phi(E11) = 3/4 for the density diag(3, 1)/4 against tr
        e11 = m2.basis(0)
        assert evaluate_state(phi, e11).real == pytest.approx(0.75)

    @pytest.mark.parametrize('spec', ['diag:1', 'diag:a,b', 'uniform', 'diag:1,-3'])
    def test_invalid(self, m2, spec):
        with pytest.raises(ConfigError):
            parse_state(spec, m2)

    def test_diag_needs_representation(self, spin3):
        with pytest.raises(ConfigError):
            parse_state('diag:1,1', spin3)
