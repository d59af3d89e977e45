from typing import List

import xsimlab as xs

from .base import CheckSuite
from ..algebras import inner_automorphism, random_unitary
from ..checks import CheckReport
from ..lp_norms import (l2_identity_check, l2_decomposition_check, monotonicity_check,
                        involution_isometry_check, automorphism_isometry_check,
                        triangle_check, werner_check, phi_x_bound_check)


@xs.process
class LpSuite(CheckSuite):
    """Functional-calculus norms: the L^2 identity, p-monotonicity, involution
    and automorphism isometries, the triangle inequality and the norm of the
    embedding x -> phi_x."""
    SUITE = 'lp'

    def checks(self, rng) -> List[CheckReport]:
        phi = self.state_functional
        alg = self.jordan_algebra
        n = self.samples
        out = [l2_identity_check(phi, samples=n, rng=rng)]
        if self.needs_trace(out, 'p_monotonicity', "||x||_p <= ||x||_q for p <= q"):
            out.append(monotonicity_check(phi, self.ps, samples=n, rng=rng))
            out.append(l2_decomposition_check(phi, samples=n, rng=rng))
        for p in self.ps:
            out.append(involution_isometry_check(phi, p, samples=n, rng=rng))
            out.append(triangle_check(phi, p, samples=n, rng=rng))
            if alg.kind == 'matrix' and phi.tracial:
                u = inner_automorphism(alg, random_unitary(alg.ambient_dim, rng))
                out.append(automorphism_isometry_check(u, phi, p, samples=n, rng=rng))
        out.append(werner_check(phi, samples=max(1, n // 4), rng=rng))
        out.append(phi_x_bound_check(phi, samples=max(1, n // 4), rng=rng))
        return out
