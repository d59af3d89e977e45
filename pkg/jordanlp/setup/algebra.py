import logging

import numpy as np
import xsimlab as xs

from ..spec_parse import parse_algebra, parse_state


@xs.process
class SetupCampaign:
    """Builds the algebra and the state every suite checks against from their
    spec strings, and publishes the exponent grid.
    """
    algebra = xs.variable(static=True, intent='in', default='matrix:2',
                          description='algebra spec, e.g. matrix:2 or spin:3:represented')
    state = xs.variable(static=True, intent='in', default='trace',
                        description='state spec: trace or diag:<d1>,<d2>,...')
    eig_method = xs.variable(static=True, intent='in', default='lapack',
                             description='Hermitian eigensolver: lapack or jacobi')
    p_grid = xs.variable(dims='p', global_name='p_grid', static=True, intent='in',
                         description='exponents p in [1, inf]')
    jordan_algebra = xs.variable(global_name='jordan_algebra', intent='out')
    state_functional = xs.variable(global_name='state_functional', intent='out')

    def initialize(self):
        ps = np.atleast_1d(np.asarray(self.p_grid, dtype=float))
        if ps.size == 0 or np.any(np.isnan(ps)) or np.any(ps < 1.):
            raise ValueError(f"p_grid must hold exponents in [1, inf], received {ps.tolist()}")
        self.jordan_algebra = parse_algebra(str(self.algebra), str(self.eig_method))
        self.state_functional = parse_state(str(self.state), self.jordan_algebra)
        logging.info(f"campaign on {self.jordan_algebra.label} (dim {self.jordan_algebra.dim}) "
                     f"under {self.state_functional.name}, p in {ps.tolist()}")
