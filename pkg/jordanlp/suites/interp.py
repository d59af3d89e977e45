import math
from typing import List

import xsimlab as xs

from .base import BracketSuite, record_bracket
from .. import densemat
from ..checks import CheckReport, element_witness
from ..core import evaluate_state, involution, jordan_product
from ..interp import CoupleSpec, bracket
from ..sampling import random_element


def hilbert_norm(x, phi) -> float:
    """sqrt(phi(x* o x))"""
    return math.sqrt(max(evaluate_state(phi, jordan_product(involution(x), x)).real, 0.))


@xs.process
class InterpSuite(BracketSuite):
    """Certified brackets of the complex interpolation norm at theta = 1/p.
    Under a trace they must contain the normalized Schatten norm of the
    representing matrix; at theta = 1/2 they must contain sqrt(phi(x* o x))
    under any faithful state."""
    SUITE = 'interp'

    def checks(self, rng) -> List[CheckReport]:
        phi = self.state_functional
        alg = self.jordan_algebra
        out = []
        order = CheckReport(name='bracket_order', anchor="lower <= upper", tolerance=1e-9)
        for p in self.bracket_ps:
            spec = CoupleSpec(phi, 1. / p)
            hilbert = math.isclose(p, 2.)
            if not (hilbert or phi.tracial):
                continue
            contains = CheckReport(
                name=f"interp_contains_lp[p={p:g}]",
                anchor="L^p(M, phi) = (M, M_*)_{1/p} isometrically",
                tolerance=1e-9)
            for _ in range(self.samples):
                x = random_element(alg, 'ball', rng)
                br = bracket(x, spec, self.budget, rng)
                if hilbert:
                    oracle = hilbert_norm(x, phi)
                else:
                    oracle = densemat.schatten_norm(x.to_matrix(), p, 1. / spec.m)
                record_bracket(contains, br, oracle,
                               lambda: element_witness(x, oracle=oracle, bracket=br.to_dict()))
                order.record((br.lower - br.upper) / max(1., br.upper))
            out.append(contains)
        out.append(order)
        return out
