import os
import yaml
import pytest
import numpy as np
import logging

from jordanlp.algebras import matrix_jordan, spin_abstract, pauli_spin_representation, albert, direct_sum
from jordanlp.core import StateFunctional
from jordanlp.utils.rng import get_rng


@pytest.fixture
def rng():
    return get_rng(20211017)


@pytest.fixture(params=[2, 3])
def matrix_alg(request):
    return matrix_jordan(request.param)


@pytest.fixture
def m2():
    return matrix_jordan(2)


@pytest.fixture
def m4():
    return matrix_jordan(4)


@pytest.fixture(params=[2, 3, 4])
def spin_rep(request):
    """Represented spin factor and the isomorphism from the abstract model."""
    return pauli_spin_representation(request.param)


@pytest.fixture
def spin3():
    return spin_abstract(3)


@pytest.fixture(scope='session')
def albert_alg():
    return albert()


@pytest.fixture
def sum_alg():
    return direct_sum([(matrix_jordan(2), 0.25), (spin_abstract(2), 0.75)])


@pytest.fixture(params=[
    'matrix2',
    'spin3_rep',
    'spin2',
    'direct_sum',
])
def any_alg(request):
    """One algebra of every cheap kind."""
    if request.param == 'matrix2':
        return matrix_jordan(2)
    elif request.param == 'spin3_rep':
        return pauli_spin_representation(3)[0]
    elif request.param == 'spin2':
        return spin_abstract(2)
    elif request.param == 'direct_sum':
        return direct_sum([(matrix_jordan(2), 0.5), (spin_abstract(2), 0.5)])
    raise ValueError(request.param)


@pytest.fixture(params=[
    'matrix2',
    'spin3_rep',
])
def represented_alg(request):
    if request.param == 'matrix2':
        return matrix_jordan(2)
    return pauli_spin_representation(3)[0]


@pytest.fixture
def tau(any_alg):
    return StateFunctional.trace(any_alg)


@pytest.fixture
def config_fp(tmpdir):
    """Factory writing a campaign config to a YAML file in `tmpdir`."""
    def _config_fp(config: dict, name: str = 'config.yaml') -> str:
        fp = os.path.join(str(tmpdir), name)
        with open(fp, 'w') as f:
            yaml.safe_dump(config, f)
        logging.debug(f"wrote campaign config to {fp}")
        return fp
    return _config_fp
