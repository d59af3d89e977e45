from typing import List

import numpy as np
import xsimlab as xs

from .base import CheckSuite
from ..algebras import spin_system, anticommutation_defects, Octonion
from ..algebras.octonion import composition_defect, alternativity_defect, moufang_defect
from ..calculus import polar_real
from ..checks import CheckReport, element_witness
from ..core import (StateFunctional, JordanAlgebra, check_jb_axioms, evaluate_state,
                    involution, jordan_identity_residual, jordan_product, quadratic_map)
from ..sampling import random_element


def simple_summands(alg: JordanAlgebra) -> int:
    if alg.kind == 'direct_sum':
        return sum(simple_summands(p) for p in alg.parts)
    return 1


def tracial_functionals_dim(alg: JordanAlgebra, rng: np.random.Generator,
                            triples: int = None) -> int:
    """Dimension of the space of linear functionals f with
    ``f(x o (y o z)) = f((x o y) o z)``, from seeded random triples."""
    triples = triples or 4 * alg.dim
    rows = []
    for _ in range(triples):
        x, y, z = (alg.element(rng.standard_normal(alg.dim)) for _ in range(3))
        rows.append((jordan_product(x, jordan_product(y, z))
                     - jordan_product(jordan_product(x, y), z)).coords)
    s = np.linalg.svd(np.array(rows), compute_uv=False)
    cutoff = 1e-9 * max(1., float(s[0]) if s.size else 1.)
    return alg.dim - int(np.sum(s > cutoff))


@xs.process
class AxiomSuite(CheckSuite):
    """Structural identities: JB/JB* norm axioms, the Jordan identity, the
    trace properties and the identities specific to spin factors and the
    Albert algebra."""
    SUITE = 'axioms'

    def checks(self, rng) -> List[CheckReport]:
        alg = self.jordan_algebra
        n = self.samples
        out = check_jb_axioms(alg, samples=n, rng=rng)

        jordan = CheckReport(name='jordan_identity', anchor="(x o y) o x^2 = x o (y o x^2)",
                             tolerance=1e-10)
        star = CheckReport(name='involution_antimultiplicative',
                           anchor="(x o y)* = y* o x*, x** = x", tolerance=1e-12)
        for _ in range(n):
            x = random_element(alg, 'ball', rng)
            y = random_element(alg, 'ball', rng)
            jordan.record(jordan_identity_residual(x, y),
                          lambda: element_witness(x, partner=element_witness(y)))
            defect = max((involution(jordan_product(x, y))
                          - jordan_product(involution(y), involution(x))).coord_norm(),
                         (involution(involution(x)) - x).coord_norm())
            star.record(defect / max(1., x.coord_norm() * y.coord_norm()), lambda: element_witness(x))
        out += [jordan, star]
        out += self.trace_checks(alg, rng)

        if alg.kind == 'spin':
            out.append(self.spin_checks(alg))
        elif alg.kind == 'albert':
            out += self.albert_checks(alg, rng)
        return out

    def trace_checks(self, alg, rng) -> List[CheckReport]:
        tau = StateFunctional.trace(alg)
        assoc = CheckReport(name='trace_associativity',
                            anchor="tau(x o (y o z)) = tau((x o y) o z)", tolerance=1e-10)
        assoc.record(tau.tracial_defect(seed=int(rng.integers(2 ** 31))))
        unique = CheckReport(name='tracial_state_uniqueness',
                             anchor="a factor carries a unique tracial state", tolerance=0.)
        found = tracial_functionals_dim(alg, rng)
        expected = simple_summands(alg)
        unique.record(abs(found - expected), lambda: {'dimension': found, 'expected': expected})
        symm = CheckReport(name='trace_symmetry_invariance',
                           anchor="tau(s o x o s) = tau(x) for symmetries s", tolerance=1e-10)
        for _ in range(self.samples):
            s = polar_real(random_element(alg, 'selfadjoint', rng)).symmetry
            x = random_element(alg, 'ball', rng)
            lhs = evaluate_state(tau, quadratic_map(s, x))
            rhs = evaluate_state(tau, x)
            symm.record(abs(lhs - rhs) / max(1., abs(rhs)),
                        lambda: element_witness(x, symmetry=element_witness(s)))
        return [assoc, unique, symm]

    def spin_checks(self, alg) -> CheckReport:
        report = CheckReport(name='spin_anticommutation',
                             anchor="s_i^2 = 1 and s_i s_j = -s_j s_i for i != j", tolerance=0.)
        gens = alg.reps[1:] if alg.represented else spin_system(alg.k)
        square, anti = anticommutation_defects(gens)
        report.record(max(square, anti), lambda: {'square_defect': square, 'anticommutator': anti})
        return report

    def albert_checks(self, alg, rng) -> List[CheckReport]:
        cayley = CheckReport(name='albert_cayley_hamilton',
                             anchor="x^3 - T(x) x^2 + S(x) x - N(x) 1 = 0", tolerance=1e-8)
        composition = CheckReport(name='octonion_composition', anchor="|xy| = |x| |y|",
                                  tolerance=1e-10)
        alternative = CheckReport(name='octonion_alternativity',
                                  anchor="x(xy) = (xx)y and (yx)x = y(xx)", tolerance=1e-10)
        moufang = CheckReport(name='octonion_moufang', anchor="z(x(zy)) = ((zx)z)y", tolerance=1e-10)
        for _ in range(self.samples):
            u = random_element(alg, 'ball', rng)
            scale = max(1., u.coord_norm() ** 3)
            cayley.record(np.linalg.norm(alg.cayley_hamilton_residual(u.coords)) / scale,
                          lambda: element_witness(u))
            x, y, z = (Octonion(rng.standard_normal(8)) for _ in range(3))
            size = max(1., x.norm() * y.norm() * max(x.norm(), z.norm()) ** 2)
            wit = lambda: {'x': x.coords.tolist(), 'y': y.coords.tolist(), 'z': z.coords.tolist()}
            composition.record(composition_defect(x, y) / max(1., x.norm() * y.norm()), wit)
            alternative.record(alternativity_defect(x, y) / size, wit)
            moufang.record(moufang_defect(x, y, z) / size, wit)
        return [cayley, composition, alternative, moufang]
