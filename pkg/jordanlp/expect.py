"""Trace-preserving Jordan conditional expectations onto unital Jordan
*-subalgebras, canonical projections ``(Id + alpha)/2`` and their checks."""
import logging
from dataclasses import dataclass, field
from typing import List, Sequence

import numpy as np

from .calculus import min_eigenvalue
from .checks import CheckReport, element_witness
from .core import (JordanAlgebra, JordanElement, StateFunctional, ElementMap,
                   evaluate_state, involution, jordan_product,
                   phi_x, FAITHFUL_TOL)
from .errors import MapCheckFailed, NotFaithful, NotSubalgebra
from .algebras.intrinsic import SubalgebraModel
from .lp_norms import lp_norm
from .sampling import random_element

CLOSURE_TOL = 1e-9
EXPECT_TOL = 1e-10
POSITIVITY_SLACK = 1e-9


@dataclass
class ExpectationOperator:
    """Linear projection of `algebra` onto the span of `sub_basis`, stored as
    its matrix in the algebra basis."""
    algebra: JordanAlgebra
    sub_basis: List[JordanElement]
    matrix: np.ndarray
    gram: np.ndarray
    name: str = 'Q'
    state: StateFunctional = field(default=None, repr=False)

    def __call__(self, x: JordanElement) -> JordanElement:
        if x.algebra is not self.algebra:
            raise ValueError(f"{self.name} acts on {self.algebra.label}, "
                             f"received element of {x.algebra.label}")
        return self.algebra.element(self.matrix @ x.coords)

    @property
    def rank(self) -> int:
        return len(self.sub_basis)

    def basis_matrix(self) -> np.ndarray:
        return np.column_stack([b.coords for b in self.sub_basis])

    def range_coordinates(self, x: JordanElement) -> np.ndarray:
        """Coefficients of ``Q(x)`` in `sub_basis`."""
        coef, *_ = np.linalg.lstsq(self.basis_matrix(), self(x).coords, rcond=None)
        return coef

    def intrinsic(self, phi: StateFunctional = None) -> SubalgebraModel:
        """The range as an algebra in its own right, with `phi` restricted to
        it as the trace of the model."""
        return SubalgebraModel(self.algebra, self.sub_basis, functional=phi,
                               label=f"range({self.name})")


def _span_residual(bmat: np.ndarray, v: np.ndarray) -> float:
    coef, *_ = np.linalg.lstsq(bmat, v, rcond=None)
    return float(np.linalg.norm(bmat @ coef - v)) / max(1., float(np.linalg.norm(v)))


def check_subalgebra(alg: JordanAlgebra, basis: Sequence[JordanElement],
                     tol: float = CLOSURE_TOL) -> None:
    """Raise `NotSubalgebra` unless the span of `basis` holds the unit and is
    closed under the Jordan product and the involution."""
    if not basis:
        raise NotSubalgebra("empty subalgebra basis")
    bmat = np.column_stack([b.coords for b in basis])
    if np.linalg.matrix_rank(bmat, tol=1e-10) < len(basis):
        raise NotSubalgebra("subalgebra basis is linearly dependent")
    problems = []
    if _span_residual(bmat, alg.unit) > tol:
        problems.append("unit is not in the span")
    for i, bi in enumerate(basis):
        if _span_residual(bmat, involution(bi).coords) > tol:
            problems.append(f"b{i}* is not in the span")
        for j in range(i, len(basis)):
            if _span_residual(bmat, jordan_product(bi, basis[j]).coords) > tol:
                problems.append(f"b{i} o b{j} is not in the span")
    if problems:
        raise NotSubalgebra(f"not a unital Jordan *-subalgebra of {alg.label}: "
                            + "; ".join(problems[:5]))


def conditional_expectation(alg: JordanAlgebra, sub_basis: Sequence[JordanElement],
                            tau: StateFunctional, name: str = 'Q') -> ExpectationOperator:
    """``Q(x) = sum_jk (G^-1)_jk tau(b_k* o x) b_j`` with ``G_kj = tau(b_k* o b_j)``."""
    if tau.algebra is not alg:
        raise ValueError("state and algebra do not match")
    if not tau.tracial:
        raise ValueError(f"{tau.name} is not tracial; conditional expectations need a trace")
    if not tau.faithful:
        raise NotFaithful(f"{tau.name} is not faithful on {alg.label} "
                          f"(Gram min eigenvalue {tau.gram_min_eigenvalue():.3e})")
    sub_basis = list(sub_basis)
    check_subalgebra(alg, sub_basis)
    starred = [involution(b) for b in sub_basis]
    gram = np.array([[evaluate_state(tau, jordan_product(bk, bj)) for bj in sub_basis]
                     for bk in starred])
    if np.min(np.linalg.eigvalsh(0.5 * (gram + gram.conj().T))) <= FAITHFUL_TOL:
        raise NotFaithful("Gram matrix of the subalgebra basis is singular")
    # L[k, i] = tau(b_k* o e_i)
    lmat = np.array([[alg.trace_of(alg.product(bk.coords, e)) for e in np.eye(alg.dim)]
                     for bk in starred])
    bmat = np.column_stack([b.coords for b in sub_basis])
    matrix = bmat @ np.linalg.solve(gram, lmat)
    logging.debug(f"built {name} onto a {len(sub_basis)}-dimensional subalgebra of {alg.label}")
    return ExpectationOperator(alg, sub_basis, matrix, gram, name=name, state=tau)


def scalar_subalgebra(alg: JordanAlgebra) -> List[JordanElement]:
    return [alg.one()]


def _rebased(Q: ExpectationOperator, rng: np.random.Generator) -> List[JordanElement]:
    """Another basis of the same range, mixed by a random real invertible matrix."""
    n = Q.rank
    while True:
        mix = rng.standard_normal((n, n))
        if abs(np.linalg.det(mix)) > 1e-3:
            break
    bmat = Q.basis_matrix() @ mix
    return [Q.algebra.element(bmat[:, j]) for j in range(n)]


def verify_expectation(Q: ExpectationOperator, tau: StateFunctional = None,
                       samples: int = 100, rng: np.random.Generator = None,
                       tol: float = EXPECT_TOL) -> List[CheckReport]:
    """Residuals of the defining properties of a conditional expectation."""
    tau = tau or Q.state
    alg = Q.algebra
    rng = rng if rng is not None else np.random.default_rng(0)
    entries = {
        'unital': "Q(1) = 1",
        'idempotent': "Q(Q(x)) = Q(x)",
        'range_fixed': "Q(b) = b for b in B",
        'positivity': "Q(x) in B_+ for x >= 0",
        'modularity': "Q(x o Q(y)) = Q(x) o Q(y)",
        'trace_preservation': "tau(Q(x)) = tau(x)",
        'defining_identity': "tau(Q(x) o y) = tau(x o y) for y in B",
        'faithfulness': "Q(x) = 0 and x >= 0 imply x = 0",
        'selfadjointness': "tau(Q(x) o y) = tau(x o Q(y))",
        'star_preservation': "Q(x*) = Q(x)*",
        'orthogonality': "tau((x - Q(x))* o b) = 0 for b in B",
        'uniqueness': "a trace-preserving conditional expectation onto B is unique",
    }
    reports = {k: CheckReport(name=f"expectation_{k}", anchor=a, tolerance=tol)
               for k, a in entries.items()}
    reports['positivity'].tolerance = POSITIVITY_SLACK

    one = alg.one()
    reports['unital'].record((Q(one) - one).coord_norm())
    reports['idempotent'].record(float(np.linalg.norm(Q.matrix @ Q.matrix - Q.matrix, 2)))
    for b in Q.sub_basis:
        reports['range_fixed'].record((Q(b) - b).coord_norm() / max(1., b.coord_norm()))
    faithful_gap = max(0., FAITHFUL_TOL - tau.gram_min_eigenvalue())
    reports['faithfulness'].record(faithful_gap)

    for _ in range(samples):
        x = random_element(alg, 'ball', rng)
        y = random_element(alg, 'ball', rng)
        qx, qy = Q(x), Q(y)
        wit = lambda: element_witness(x, partner=element_witness(y))
        reports['idempotent'].record((Q(qx) - qx).coord_norm(), wit)
        reports['modularity'].record(
            (Q(jordan_product(x, qy)) - jordan_product(qx, qy)).coord_norm(), wit)
        reports['trace_preservation'].record(abs(evaluate_state(tau, qx) - evaluate_state(tau, x)), wit)
        reports['selfadjointness'].record(
            abs(evaluate_state(tau, jordan_product(qx, y)) - evaluate_state(tau, jordan_product(x, qy))), wit)
        reports['star_preservation'].record((Q(involution(x)) - involution(qx)).coord_norm(), wit)
        diff = involution(x - qx)
        for b in Q.sub_basis:
            reports['orthogonality'].record(abs(evaluate_state(tau, jordan_product(diff, b))), wit)
            reports['defining_identity'].record(
                abs(evaluate_state(tau, jordan_product(qx, b)) - evaluate_state(tau, jordan_product(x, b))), wit)

        pos = random_element(alg, 'positive', rng)
        qp = Q(pos)
        scale = max(1., pos.coord_norm())
        reports['positivity'].record(max(0., -min_eigenvalue(qp)) / scale,
                                     lambda: element_witness(pos))
        if pos.coord_norm() > 1e-8:
            reports['faithfulness'].record(
                max(0., 1e-12 * pos.coord_norm() - abs(evaluate_state(tau, qp))),
                lambda: element_witness(pos))

    other = conditional_expectation(alg, _rebased(Q, rng), tau, name=f"{Q.name}'")
    reports['uniqueness'].record(float(np.max(np.abs(other.matrix - Q.matrix))))
    out = list(reports.values())
    failed = [r.name for r in out if r.status == 'fail']
    if failed:
        logging.warning(f"{Q.name} on {alg.label} failed {failed}")
    return out


def _check_trace_preserving(alg: JordanAlgebra, alpha: ElementMap, tau: StateFunctional,
                            tol: float = EXPECT_TOL) -> None:
    worst = max(abs(evaluate_state(tau, alpha(b)) - evaluate_state(tau, b))
                for b in alg.basis_elements())
    if worst > tol:
        msg = f"{alpha.name} does not preserve {tau.name} (defect {worst:.3e})"
        logging.error(msg)
        raise MapCheckFailed(msg)


def canonical_projection(alg: JordanAlgebra, alpha: ElementMap,
                         tau: StateFunctional = None) -> ExpectationOperator:
    """``P = (Id + alpha)/2`` onto the fixed points of an involutive
    trace-preserving *-antiautomorphism."""
    from .algebras.fixed import fixed_point_subalgebra
    tau = tau or StateFunctional.trace(alg)
    fixed = fixed_point_subalgebra(alg, alpha)
    _check_trace_preserving(alg, alpha, tau)
    matrix = 0.5 * (np.eye(alg.dim) + alpha.coordinate_matrix())
    gram = np.array([[evaluate_state(tau, jordan_product(involution(bk), bj)) for bj in fixed]
                     for bk in fixed])
    return ExpectationOperator(alg, fixed, matrix, gram, name=f"P_can[{alpha.name}]", state=tau)


def _check_state_preserved(Q: ExpectationOperator, phi: StateFunctional,
                           tol: float = EXPECT_TOL) -> None:
    worst = max(abs(evaluate_state(phi, Q(b)) - evaluate_state(phi, b))
                for b in Q.algebra.basis_elements())
    if worst > tol:
        msg = f"{Q.name} does not preserve {phi.name} (defect {worst:.3e})"
        logging.error(msg)
        raise MapCheckFailed(msg)


def lp_contractivity_check(Q: ExpectationOperator, phi: StateFunctional, p: float,
                           samples: int = 100, rng: np.random.Generator = None,
                           tol: float = 1e-9) -> List[CheckReport]:
    """L^p contractivity and positivity of Q, and agreement of range norms
    with the norms computed inside the range algebra."""
    _check_state_preserved(Q, phi)
    alg = Q.algebra
    rng = rng if rng is not None else np.random.default_rng(0)
    contract = CheckReport(name=f"lp_contractivity[p={p:g}]", anchor="||Q(x)||_p <= ||x||_p",
                           tolerance=tol)
    positive = CheckReport(name=f"lp_positivity[p={p:g}]",
                           anchor="the L^p extension of Q is positive", tolerance=POSITIVITY_SLACK)
    ranged = CheckReport(name=f"range_norms[p={p:g}]",
                         anchor="L^p(B) is isometric to its image in L^p(M)", tolerance=tol)
    sub_state = None
    try:
        sub = Q.intrinsic(phi)
        sub_state = StateFunctional(sub, sub.one(), name=f"{phi.name} on {sub.label}",
                                    tracial=True if phi.tracial else None)
    except NotSubalgebra as err:
        ranged.mark_unsupported(str(err))

    for _ in range(samples):
        x = random_element(alg, 'ball', rng)
        qx = Q(x)
        nx, nq = lp_norm(x, phi, p).value, lp_norm(qx, phi, p).value
        contract.record((nq - nx) / max(1., nx), lambda: element_witness(x, norm=nx, projected=nq))
        if sub_state is not None:
            intrinsic = lp_norm(sub_state.algebra.element(Q.range_coordinates(x)), sub_state, p).value
            ranged.record(abs(intrinsic - nq) / max(1., nq), lambda: element_witness(x))
        pos = random_element(alg, 'positive', rng)
        positive.record(max(0., -min_eigenvalue(Q(pos))) / max(1., pos.coord_norm()),
                        lambda: element_witness(pos))
    return [contract, positive, ranged]


def l1_extension_check(Q: ExpectationOperator, tau: StateFunctional = None,
                       samples: int = 100, rng: np.random.Generator = None,
                       tol: float = EXPECT_TOL) -> CheckReport:
    """phi_x(tau, Q(x)) and phi_x(tau, x) agree as functionals on B."""
    tau = tau or Q.state
    rng = rng if rng is not None else np.random.default_rng(0)
    report = CheckReport(name='l1_extension',
                         anchor="Q extends to the L^1 predual map of the inclusion B -> M",
                         tolerance=tol)
    for _ in range(samples):
        x = random_element(Q.algebra, 'ball', rng)
        r_q, r_x = phi_x(tau, Q(x)), phi_x(tau, x)
        worst = max(abs(evaluate_state(tau, jordan_product(r_q - r_x, b))) for b in Q.sub_basis)
        report.record(worst, lambda: element_witness(x))
    return report
