import pytest
import numpy as np


@pytest.fixture
def run_suite():
    """Instantiates a suite process outside of a model and runs one batch.
    Returns its entries keyed by check name."""
    def _run_suite(cls, alg, phi, p_grid=(2.,), seed_state=1, **inputs):
        proc = cls(jordan_algebra=alg, state_functional=phi, p_grid=np.array(p_grid),
                   seed_state=seed_state, **inputs)
        proc.initialize()
        proc.run_step()
        assert all(e.suite == cls.SUITE for e in proc.entries)
        return {e.name: e for e in proc.entries}
    return _run_suite
