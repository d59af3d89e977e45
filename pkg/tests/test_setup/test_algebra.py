import pytest
import numpy as np

from jordanlp.errors import ConfigError
from jordanlp.setup.algebra import SetupCampaign


class TestSetupCampaign:

    @pytest.mark.parametrize('algebra, state, kind, tracial', [
        ('matrix:2', 'trace', 'matrix', True),
        ('matrix:3', 'diag:1,2,3', 'matrix', False),
        ('spin:3:represented', 'trace', 'spin', True),
        ('direct_sum:matrix:2@0.5+spin:2@0.5', 'trace', 'direct_sum', True),
    ])
    def test_can_initialize(self, algebra, state, kind, tracial):
        inputs = {
            'algebra': algebra,
            'state': state,
            'p_grid': np.array([1., 2., np.inf]),
        }
        proc = SetupCampaign(**inputs)
        proc.initialize()
        assert proc.jordan_algebra.kind == kind
        assert proc.state_functional.tracial == tracial
        assert proc.state_functional.algebra is proc.jordan_algebra

    @pytest.mark.parametrize('p_grid', [[0.5, 2.], [], [np.nan]])
    def test_bad_p_grid(self, p_grid):
        proc = SetupCampaign(algebra='matrix:2', p_grid=np.array(p_grid))
        with pytest.raises(ValueError):
            proc.initialize()

    def test_bad_algebra(self):
        proc = SetupCampaign(algebra='quaternion:2', p_grid=np.array([2.]))
        with pytest.raises(ConfigError):
            proc.initialize()
