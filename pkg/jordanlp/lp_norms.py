"""Functional-calculus L^p norms, Iochum norms, the L^2 inner product,
duality pairings and the L^p property checks."""
import logging
from dataclasses import dataclass
from typing import Iterable, List

import numpy as np
import scipy.optimize

from . import densemat
from .calculus import (spectral_decompose, apply_function, nonnegative_power,
                       polar_real)
from .checks import CheckReport, element_witness
from .core import (JordanAlgebra, JordanElement, StateFunctional, ElementMap,
                   evaluate_state, involution, jordan_product, require_selfadjoint,
                   phi_x, star_map)
from .errors import FunctionDomainError, MapCheckFailed, UnsupportedKind
from .sampling import random_element

RADICAND_TOL = 1e-10
METHODS = ('functional_calculus', 'endpoint', 'dual_estimate')


@dataclass
class LpValue:
    p: float
    value: float
    method: str
    exploratory: bool = False

    def __float__(self):
        return float(self.value)


def conjugate_exponent(p: float) -> float:
    if p < 1:
        raise ValueError(f"L^p exponent must be >= 1, received {p}")
    if p == 1:
        return np.inf
    if np.isinf(p):
        return 1.
    return p / (p - 1.)


def _validate_p(p: float) -> float:
    p = float(p)
    if np.isnan(p) or p < 1:
        raise ValueError(f"L^p exponent must be >= 1, received {p}")
    return p


def _warn_exploratory(phi: StateFunctional) -> None:
    if not getattr(phi, '_exploratory_warned', False):
        logging.warning(
            f"{phi.name} on {phi.algebra.label} is not tracial; functional-calculus "
            f"norms under it are exploratory")
        phi._exploratory_warned = True


def lp_norm(x: JordanElement, phi: StateFunctional, p: float) -> LpValue:
    """(phi[(x* o x)^(p/2)])^(1/p); ``p = inf`` returns the algebra norm."""
    p = _validate_p(p)
    if np.isinf(p):
        return LpValue(p, x.norm_inf(), 'endpoint')
    exploratory = not phi.tracial
    if exploratory:
        _warn_exploratory(phi)
    radicand = jordan_product(involution(x), x)
    sd = spectral_decompose(radicand)
    scale = max(1., float(np.max(np.abs(sd.eigenvalues))))
    low = float(np.min(sd.eigenvalues))
    if low < -RADICAND_TOL * scale:
        raise FunctionDomainError(
            low, f"x* o x has eigenvalue {low:.3e}: positivity is broken")
    power = nonnegative_power(radicand, p / 2., tol=RADICAND_TOL, sd=sd)
    val = max(evaluate_state(phi, power).real, 0.)
    return LpValue(p, float(val ** (1. / p)), 'functional_calculus', exploratory)


def iochum_norm(x: JordanElement, tau: StateFunctional, p: float) -> LpValue:
    """(tau |x|^p)^(1/p) for selfadjoint x under a trace."""
    p = _validate_p(p)
    require_selfadjoint(x)
    _require_tracial(tau)
    if np.isinf(p):
        return LpValue(p, x.norm_inf(), 'endpoint')
    modp = apply_function(x, lambda t: np.abs(t) ** p)
    val = max(evaluate_state(tau, modp).real, 0.)
    return LpValue(p, float(val ** (1. / p)), 'functional_calculus')


def l2_inner(x: JordanElement, y: JordanElement, phi: StateFunctional) -> complex:
    """<x, y> = phi(x* o y)"""
    return evaluate_state(phi, jordan_product(involution(x), y))


def _require_tracial(tau: StateFunctional) -> None:
    if not tau.tracial:
        raise ValueError(f"{tau.name} on {tau.algebra.label} is not tracial")


def dual_pair(x: JordanElement, y: JordanElement, tau: StateFunctional) -> complex:
    _require_tracial(tau)
    return evaluate_state(tau, jordan_product(x, y))


def _real_embed(c: np.ndarray) -> np.ndarray:
    return np.concatenate([c.real, c.imag])


def _complex(v: np.ndarray) -> np.ndarray:
    h = len(v) // 2
    return v[:h] + 1j * v[h:]


def _polish(objective, start: np.ndarray, maxiter: int = 200) -> np.ndarray:
    """Local maximization of a ratio objective on complex coordinates."""
    res = scipy.optimize.minimize(lambda v: -objective(_complex(v)), _real_embed(start),
                                  method='Nelder-Mead',
                                  options=dict(maxiter=maxiter, xatol=1e-10, fatol=1e-12))
    return _complex(res.x)


def analytic_dual_witnesses(x: JordanElement, p: float) -> List[JordanElement]:
    """Norming elements for ``y -> tau(x o y)`` on L^{p*}: ``s o |x|^(p-1)``
    for selfadjoint x, ``V S^(p-1) W*`` from ``x = W S V*`` on full matrix
    algebras, and ``x*``."""
    alg = x.algebra
    out = [involution(x)]
    if x.is_selfadjoint():
        sd = spectral_decompose(x)
        if np.isinf(p):
            i = int(np.argmax(np.abs(sd.eigenvalues)))
            lam = sd.eigenvalues[i]
            out.append((1. if lam >= 0 else -1.) * sd.idempotents[i])
        else:
            pol = polar_real(x)
            mod = pol.modulus
            out.append(jordan_product(pol.symmetry, nonnegative_power(mod, p - 1.)))
    if alg.kind == 'matrix':
        w, s, vh = densemat.polar_svd(x.to_matrix())
        if np.isinf(p):
            y = np.outer(vh[0].conj(), w[:, 0].conj())
        else:
            sp = np.where(s > 1e-14 * max(1., s[0]), s ** (p - 1.), 0.)
            y = vh.conj().T @ np.diag(sp) @ w.conj().T
        out.append(alg.element(alg.from_matrix(y)))
    return out


def dual_norm_estimate(x: JordanElement, tau: StateFunctional, p: float,
                       rng: np.random.Generator = None, random_candidates: int = 4,
                       polish: bool = True) -> LpValue:
    """Lower estimate of ``sup |tau(x o y)| / ||y||_{p*}`` from the analytic
    witnesses, seeded random candidates and a local polish of the best one."""
    p = _validate_p(p)
    _require_tracial(tau)
    q = conjugate_exponent(p)
    alg = x.algebra

    def ratio(c: np.ndarray) -> float:
        y = alg.element(c)
        try:
            ny = lp_norm(y, tau, q).value
        except (UnsupportedKind, FunctionDomainError):
            return 0.
        if ny <= 1e-300:
            return 0.
        return abs(dual_pair(x, y, tau)) / ny

    candidates = [y.coords for y in analytic_dual_witnesses(x, p)]
    if rng is not None:
        distribution = 'ball'
        for _ in range(random_candidates):
            try:
                candidates.append(random_element(alg, distribution, rng).coords)
            except UnsupportedKind:
                distribution = 'selfadjoint'
                candidates.append(random_element(alg, distribution, rng).coords)
    scores = [ratio(c) for c in candidates]
    best = int(np.argmax(scores))
    value = scores[best]
    if polish and value > 0:
        polished = _polish(ratio, candidates[best])
        value = max(value, ratio(polished))
    return LpValue(p, float(value), 'dual_estimate')


def functional_norm_estimate(r: JordanElement, rng: np.random.Generator = None,
                             random_candidates: int = 4, polish: bool = True) -> float:
    """Lower estimate of ``sup_{||y||_inf <= 1} |tau(r o y)|``, the dual norm of
    the functional represented by `r` against the unit ball of the algebra."""
    alg = r.algebra
    trace = lambda c: complex(alg.trace @ alg.product(r.coords, c))

    def ratio(c: np.ndarray) -> float:
        y = alg.element(c)
        try:
            ny = y.norm_inf()
        except UnsupportedKind:
            return 0.
        return abs(trace(c)) / ny if ny > 1e-300 else 0.

    candidates = [involution(r).coords]
    if r.is_selfadjoint():
        pol = polar_real(r)
        candidates.append(pol.symmetry.coords)
    if alg.kind == 'matrix':
        w, _, vh = densemat.polar_svd(r.to_matrix())
        candidates.append(alg.from_matrix(vh.conj().T @ w.conj().T))
    if rng is not None:
        for _ in range(random_candidates):
            candidates.append(random_element(alg, 'ball', rng).coords)
    scores = [ratio(c) for c in candidates]
    best = int(np.argmax(scores))
    value = scores[best]
    if polish and value > 0:
        value = max(value, ratio(_polish(ratio, candidates[best])))
    return float(value)


# -- property checks ---------------------------------------------------------

def _scaled(v: float, scale: float) -> float:
    return v / max(1., scale)


def _pair_sampler(alg: JordanAlgebra, rng: np.random.Generator):
    """Ball samples, falling back to selfadjoint ones when the kind has no
    norm off the selfadjoint part."""
    try:
        random_element(alg, 'ball', np.random.default_rng(0)).norm_inf()
        distribution = 'ball'
    except UnsupportedKind:
        distribution = 'selfadjoint'
    return lambda: random_element(alg, distribution, rng)


def holder_exponent(p: float, q: float) -> float:
    """r with 1/r = 1/p + 1/q."""
    inv = (0. if np.isinf(p) else 1. / p) + (0. if np.isinf(q) else 1. / q)
    if inv == 0.:
        return np.inf
    return 1. / inv


def _pairs(alg: JordanAlgebra, distribution: str, rng: np.random.Generator):
    rng = rng if rng is not None else np.random.default_rng(0)
    if distribution == 'selfadjoint':
        return lambda: random_element(alg, 'selfadjoint', rng)
    return _pair_sampler(alg, rng)


def holder_check(tau: StateFunctional, p: float, q: float, r: float = None,
                 samples: int = 100, rng: np.random.Generator = None,
                 tol: float = 1e-9, exploratory: bool = None,
                 distribution: str = 'selfadjoint') -> CheckReport:
    """max of ||h o k||_r - ||h||_p ||k||_q over seeded pairs.

    Selfadjoint pairs by default; ``distribution='ball'`` draws complex pairs,
    for which the functional-calculus norm departs from the Schatten norm on
    non-normal matrices, so those runs are exploratory on every kind.
    """
    _require_tracial(tau)
    p, q = _validate_p(p), _validate_p(q)
    expected = holder_exponent(p, q)
    if r is None:
        r = expected
    if expected < 1 or not np.isclose(r, expected):
        raise ValueError(f"invalid Holder exponents p={p}, q={q}, r={r}")
    alg = tau.algebra
    if exploratory is None:
        exploratory = not alg.represented or distribution != 'selfadjoint'
    prefix = 'holder' if distribution == 'selfadjoint' else 'holder_complex'
    report = CheckReport(name=f"{prefix}[p={p:g},q={q:g}]",
                         anchor="||h o k||_r <= ||h||_p ||k||_q, 1/r = 1/p + 1/q",
                         tolerance=tol, exploratory=exploratory)
    draw = _pairs(alg, distribution, rng)
    for _ in range(samples):
        h, k = draw(), draw()
        bound = lp_norm(h, tau, p).value * lp_norm(k, tau, q).value
        lhs = lp_norm(jordan_product(h, k), tau, r).value
        report.record(_scaled(lhs - bound, bound),
                      lambda: element_witness(h, partner=element_witness(k), lhs=lhs, bound=bound))
    return report


def module_action_check(tau: StateFunctional, p: float, samples: int = 100,
                        rng: np.random.Generator = None, tol: float = 1e-9,
                        exploratory: bool = None,
                        distribution: str = 'selfadjoint') -> CheckReport:
    """max of ||h o k||_p - ||h||_inf ||k||_p."""
    _require_tracial(tau)
    p = _validate_p(p)
    alg = tau.algebra
    if exploratory is None:
        exploratory = not alg.represented or distribution != 'selfadjoint'
    prefix = 'module_action' if distribution == 'selfadjoint' else 'module_action_complex'
    report = CheckReport(name=f"{prefix}[p={p:g}]",
                         anchor="||h o k||_p <= ||h||_inf ||k||_p",
                         tolerance=tol, exploratory=exploratory)
    draw = _pairs(alg, distribution, rng)
    for _ in range(samples):
        h, k = draw(), draw()
        bound = h.norm_inf() * lp_norm(k, tau, p).value
        lhs = lp_norm(jordan_product(h, k), tau, p).value
        report.record(_scaled(lhs - bound, bound),
                      lambda: element_witness(h, partner=element_witness(k), lhs=lhs, bound=bound))
    return report


def _check_preserves(mapping: ElementMap, phi: StateFunctional, tol: float = 1e-10) -> None:
    worst = 0.
    for b in phi.algebra.basis_elements():
        target = evaluate_state(phi, b)
        if mapping.antilinear:
            target = np.conj(target)
        worst = max(worst, abs(evaluate_state(phi, mapping(b)) - target))
    if worst > tol:
        msg = f"{mapping.name} does not preserve {phi.name} (defect {worst:.3e})"
        logging.error(msg)
        raise MapCheckFailed(msg)


def isometry_check(mapping: ElementMap, phi: StateFunctional, p: float,
                   samples: int = 100, rng: np.random.Generator = None,
                   tol: float = 1e-10, anchor: str = None) -> CheckReport:
    """max of | ||map(x)||_p - ||x||_p | for a state-preserving map."""
    _check_preserves(mapping, phi)
    p = _validate_p(p)
    report = CheckReport(name=f"{mapping.name}_isometry[p={p:g}]",
                         anchor=anchor or f"||{mapping.name}(x)||_p = ||x||_p",
                         tolerance=tol)
    draw = _pair_sampler(phi.algebra, rng if rng is not None else np.random.default_rng(0))
    for _ in range(samples):
        x = draw()
        nx = lp_norm(x, phi, p).value
        ny = lp_norm(mapping(x), phi, p).value
        report.record(_scaled(abs(ny - nx), nx), lambda: element_witness(x))
    return report


def involution_isometry_check(phi: StateFunctional, p: float, samples: int = 100,
                              rng: np.random.Generator = None, tol: float = 1e-10) -> CheckReport:
    return isometry_check(star_map(phi.algebra), phi, p, samples, rng, tol,
                          anchor="||x*||_p = ||x||_p")


def automorphism_isometry_check(mapping: ElementMap, phi: StateFunctional, p: float,
                                samples: int = 100, rng: np.random.Generator = None,
                                tol: float = 1e-10) -> CheckReport:
    return isometry_check(mapping, phi, p, samples, rng, tol,
                          anchor="state-preserving Jordan *-automorphisms are L^p isometries")


def monotonicity_check(tau: StateFunctional, p_grid: Iterable[float], samples: int = 100,
                       rng: np.random.Generator = None, tol: float = 1e-10) -> CheckReport:
    """||x||_p <= ||x||_q for p <= q under a normalized trace."""
    ps = sorted({_validate_p(p) for p in p_grid} | {np.inf})
    report = CheckReport(name='p_monotonicity', anchor="||x||_p <= ||x||_q for p <= q",
                         tolerance=tol)
    draw = _pair_sampler(tau.algebra, rng if rng is not None else np.random.default_rng(0))
    for _ in range(samples):
        x = draw()
        norms = [lp_norm(x, tau, p).value for p in ps]
        worst = max((a - b for a, b in zip(norms[:-1], norms[1:])), default=0.)
        report.record(_scaled(worst, norms[-1]), lambda: element_witness(x, norms=norms))
    return report


def l2_identity_check(phi: StateFunctional, samples: int = 100,
                      rng: np.random.Generator = None, tol: float = 1e-12) -> CheckReport:
    report = CheckReport(name='l2_identity', anchor="||x||_2^2 = phi(x* o x)", tolerance=tol)
    draw = _pair_sampler(phi.algebra, rng if rng is not None else np.random.default_rng(0))
    for _ in range(samples):
        x = draw()
        n2 = lp_norm(x, phi, 2.).value ** 2
        inner = l2_inner(x, x, phi)
        report.record(_scaled(abs(n2 - inner), n2), lambda: element_witness(x))
    return report


def l2_decomposition_check(tau: StateFunctional, samples: int = 100,
                           rng: np.random.Generator = None, tol: float = 1e-10) -> CheckReport:
    """||h + ik||_2^2 = ||h||_2^2 + ||k||_2^2 for selfadjoint h, k."""
    _require_tracial(tau)
    report = CheckReport(name='l2_real_imaginary', anchor="||h + ik||_2^2 = ||h||_2^2 + ||k||_2^2",
                         tolerance=tol)
    draw = _pair_sampler(tau.algebra, rng if rng is not None else np.random.default_rng(0))
    for _ in range(samples):
        x = draw()
        h, k = x.real_part(), x.imag_part()
        lhs = lp_norm(x, tau, 2.).value ** 2
        rhs = lp_norm(h, tau, 2.).value ** 2 + lp_norm(k, tau, 2.).value ** 2
        report.record(_scaled(abs(lhs - rhs), lhs), lambda: element_witness(x))
    return report


def triangle_check(phi: StateFunctional, p: float, samples: int = 100,
                   rng: np.random.Generator = None, tol: float = 1e-10,
                   exploratory: bool = None) -> CheckReport:
    """||x + y||_p <= ||x||_p + ||y||_p; conjectural off the represented kinds."""
    p = _validate_p(p)
    alg = phi.algebra
    if exploratory is None:
        exploratory = not alg.represented or not phi.tracial
    report = CheckReport(name=f"triangle[p={p:g}]", anchor="||x + y||_p <= ||x||_p + ||y||_p",
                         tolerance=tol, exploratory=exploratory)
    draw = _pair_sampler(alg, rng if rng is not None else np.random.default_rng(0))
    for _ in range(samples):
        x, y = draw(), draw()
        bound = lp_norm(x, phi, p).value + lp_norm(y, phi, p).value
        lhs = lp_norm(x + y, phi, p).value
        report.record(_scaled(lhs - bound, bound),
                      lambda: element_witness(x, partner=element_witness(y)))
    return report


def iochum_agreement_check(tau: StateFunctional, p: float, samples: int = 100,
                           rng: np.random.Generator = None, tol: float = 1e-10) -> CheckReport:
    report = CheckReport(name=f"iochum_agreement[p={p:g}]",
                         anchor="(tau |x|^p)^(1/p) = (tau (x* o x)^(p/2))^(1/p) for selfadjoint x",
                         tolerance=tol)
    rng = rng if rng is not None else np.random.default_rng(0)
    for _ in range(samples):
        x = random_element(tau.algebra, 'selfadjoint', rng)
        a, b = iochum_norm(x, tau, p).value, lp_norm(x, tau, p).value
        report.record(_scaled(abs(a - b), b), lambda: element_witness(x))
    return report


def dual_attainment_check(tau: StateFunctional, p: float, samples: int = 20,
                          rng: np.random.Generator = None, tol: float = 1e-7) -> CheckReport:
    """|dual estimate - ||x||_p| on selfadjoint samples."""
    report = CheckReport(name=f"dual_attainment[p={p:g}]",
                         anchor="(L^p)* = L^{p*} isometrically under tau(x o y)", tolerance=tol)
    rng = rng if rng is not None else np.random.default_rng(0)
    for _ in range(samples):
        x = random_element(tau.algebra, 'selfadjoint', rng)
        est = dual_norm_estimate(x, tau, p, polish=False).value
        norm = lp_norm(x, tau, p).value
        report.record(_scaled(abs(est - norm), norm), lambda: element_witness(x, estimate=est, norm=norm))
    return report


def werner_check(phi: StateFunctional, samples: int = 20, rng: np.random.Generator = None,
                 tol: float = 1e-6) -> CheckReport:
    """The dual norm of phi_x against the unit ball equals the normalized
    trace norm of its representer (full matrix kinds)."""
    alg = phi.algebra
    report = CheckReport(name='endpoint_dual_norm',
                         anchor="||x||_{X_1} = sup{|<y, x>| : ||y||_{X_0} <= 1}", tolerance=tol)
    if alg.kind != 'matrix':
        return report.mark_unsupported("needs a full matrix algebra")
    rng = rng if rng is not None else np.random.default_rng(0)
    for _ in range(samples):
        x = random_element(alg, 'ball', rng)
        r = phi_x(phi, x)
        exact = densemat.trace_norm(r.to_matrix(), 1. / alg.ambient_dim)
        est = functional_norm_estimate(r, polish=False)
        report.record(abs(est - exact) / max(exact, 1e-300),
                      lambda: element_witness(x, estimate=est, exact=exact))
    return report


def phi_x_bound_check(phi: StateFunctional, samples: int = 20,
                      rng: np.random.Generator = None, tol: float = 1e-8) -> CheckReport:
    """||phi_x|| <= ||phi|| ||x||_inf; the functional norm is estimated from below."""
    report = CheckReport(name='phi_x_bound', anchor="||phi_x|| <= ||phi|| ||x||", tolerance=tol)
    alg = phi.algebra
    rng = rng if rng is not None else np.random.default_rng(0)
    draw = _pair_sampler(alg, rng)
    for _ in range(samples):
        x = draw()
        r = phi_x(phi, x)
        if alg.represented:
            est = densemat.trace_norm(r.to_matrix(), 1. / alg.ambient_dim)
        else:
            est = functional_norm_estimate(r, rng=rng, random_candidates=2, polish=False)
        report.record(est - x.norm_inf(), lambda: element_witness(x, functional_norm=est))
    return report
