"""Certified brackets for the complex interpolation norm of the couple
``(M, M_*)`` of a matrix-represented algebra with a faithful state.

``M`` sits inside its predual through ``x -> phi_x = phi(x o .)``. Upper
bounds come from explicit admissible functions on the strip
``0 <= Re z <= 1`` whose boundary norms are sampled and padded into a
certified supremum; lower bounds come from the three-lines pairing with a
witness ``y`` at the dual parameter ``1 - theta``.

Strip to disk: ``zeta = exp(i pi z)`` maps the strip onto the upper half
plane and ``w = (zeta - zeta_t) / (zeta - conj(zeta_t))`` with
``zeta_t = exp(i pi theta)`` maps that onto the unit disk with ``w(theta) = 0``.
The line ``Re z = 0`` goes to the arc of angles ``[2 pi theta, 2 pi]`` and
``Re z = 1`` to ``[0, 2 pi theta]``; both ends of each arc are the limits
``t -> +-inf``.

Candidate families (every candidate carries ``e^{eps (z^2 - theta^2)}``):

- ``disk``: ``sum_k c_k w(z)^k`` with ``c_0 = x``.
- ``exponential``: ``sum_k c_k e^{l_k (z - theta)}`` over a uniform exponent
  grid ``l_k``, ``sum_k c_k = x``. Boundary values are periodic in ``t``.
- ``spectral``: for the canonical trace, the conditional expectation onto
  the algebra of ``||x||_p W S^{p z} V*`` built from ``x/||x||_p = W S V*``.

Between two samples a boundary function ``M(s)`` obeys
``||M(s)|| <= max(||M(s_0)||, ||M(s_1)||) + h^2/8 sup ||M''||`` (convexity
of the norm plus the linear interpolation error), and ``||M''||`` is bounded
by the coefficient norms. That pad turns sampled maxima into certified ones.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np
import scipy.optimize
from scipy.special import logsumexp, softmax

from . import densemat
from .calculus import nonnegative_power, polar_real
from .core import JordanElement, StateFunctional, evaluate_state, involution, jordan_product
from .errors import NotFaithful, UnsupportedKind
from .sampling import random_element
from .utils.digest import array_digest

FAMILIES = ('spectral', 'disk', 'exponential')
EPS_SCHEDULE = (1e-2, 1e-3, 1e-4)
TEMPERATURES = (1e-1, 3e-2, 1e-2, 3e-3, 1e-3)
PAD_FRACTION = 1e-3
MAX_CERT_SAMPLES = 2 ** 14
SEED_TOL = 1e-9
ORDER_SLACK = 1e-9


class CoupleSpec:
    """The couple ``(M, M_*)`` at parameter `theta` for a faithful state."""

    def __init__(self, state: StateFunctional, theta: float):
        alg = state.algebra
        if not alg.represented:
            raise UnsupportedKind(
                f"interpolation needs a matrix-represented algebra, received {alg.label}")
        theta = float(theta)
        if not 0. < theta < 1.:
            raise ValueError(f"theta must lie in (0, 1), received {theta}")
        if not state.is_state:
            raise ValueError(f"{state.name} is not normalized")
        if not state.faithful:
            raise NotFaithful(f"{state.name} is not faithful on {alg.label}; "
                              f"the couple is not compatible")
        self.state = state
        self.theta = theta
        self.m = alg.ambient_dim
        density = state.density.to_matrix()
        reps = alg.reps
        # rep matrices of basis elements and of their representers D o b_i
        self._mats = (reps, 0.5 * (density @ reps + reps @ density))
        self.density_matrix = density

    def __repr__(self):
        return f"<CoupleSpec {self.state.name} on {self.algebra.label} theta={self.theta:g}>"

    @property
    def algebra(self):
        return self.state.algebra

    @property
    def p(self) -> float:
        return 1. / self.theta

    @property
    def trace_state(self) -> bool:
        """True for the canonical trace (density = unit)."""
        return self.state.density.allclose(self.algebra.one(), tol=1e-12)

    def at(self, theta: float) -> 'CoupleSpec':
        """The same couple at another parameter."""
        other = object.__new__(CoupleSpec)
        other.__dict__.update(self.__dict__)
        theta = float(theta)
        if not 0. < theta < 1.:
            raise ValueError(f"theta must lie in (0, 1), received {theta}")
        other.theta = theta
        return other

    def basis_matrices(self, j: int) -> np.ndarray:
        return self._mats[j]

    def line_norms(self, mats: np.ndarray, j: int) -> np.ndarray:
        """Endpoint norms of a batch of boundary values given as matrices of
        ``F`` (line 0) or of ``D o F`` (line 1)."""
        s = np.linalg.svd(mats, compute_uv=False)
        return s[..., 0] if j == 0 else s.sum(axis=-1) / self.m

    def line_matrices(self, coef: np.ndarray, j: int) -> np.ndarray:
        """Matrices of ``sum_i coef[..., i] B_j[i]`` for a coefficient batch."""
        mats = self._mats[j]
        d = mats.shape[0]
        flat = np.asarray(coef).reshape(-1, d) @ mats.reshape(d, -1)
        return flat.reshape(np.shape(coef)[:-1] + (self.m, self.m))


def _same_algebra(x: JordanElement, spec: CoupleSpec) -> None:
    if x.algebra is not spec.algebra:
        raise ValueError(f"element of {x.algebra.label} does not belong to {spec!r}")


def endpoint0_norm(x: JordanElement, spec: CoupleSpec) -> float:
    _same_algebra(x, spec)
    return densemat.spectral_norm(x.to_matrix())


def endpoint1_norm(x: JordanElement, spec: CoupleSpec, method: str = 'exact',
                   rng: np.random.Generator = None) -> float:
    """``||phi_x||`` on the unit ball of the algebra.

    ``exact`` is the normalized trace norm of ``D o x``: the sup over the
    ambient unit ball is reached inside the algebra because the trace
    preserving conditional expectation onto it is contractive.
    ``numerical`` maximizes the pairing over the algebra's own unit ball and
    is a lower estimate of the same number.
    """
    _same_algebra(x, spec)
    r = jordan_product(spec.state.density, x)
    if method == 'exact':
        return densemat.trace_norm(r.to_matrix(), 1. / spec.m)
    elif method == 'numerical':
        from .lp_norms import functional_norm_estimate
        return functional_norm_estimate(r, rng=rng)
    raise ValueError(f"unknown endpoint norm method {method!r}")


# -- conformal map and regularizer -------------------------------------------

def strip_to_disk(z, theta: float):
    zeta = np.exp(1j * np.pi * np.asarray(z, dtype=np.complex128))
    zt = np.exp(1j * np.pi * theta)
    return (zeta - zt) / (zeta - np.conj(zt))


def boundary_arc(j: int, theta: float):
    """Angle interval covered by the image of the line ``Re z = j``."""
    return (2. * np.pi * theta, 2. * np.pi) if j == 0 else (0., 2. * np.pi * theta)


def regularizer(z, theta: float, eps: float):
    z = np.asarray(z, dtype=np.complex128)
    return np.exp(eps * (z * z - theta * theta))


def regularizer_max(j: int, theta: float, eps: float) -> float:
    """sup over ``t`` of ``|e^{eps((j + it)^2 - theta^2)}|``."""
    return math.exp(eps * (j - theta * theta))


# -- candidates ----------------------------------------------------------------

@dataclass
class StripCandidate:
    """An admissible function ``F`` on the strip with ``F(theta) = x``."""
    family: str
    theta: float
    eps: float
    coefficients: List[JordanElement]
    degree: int = 0
    grid: int = 0
    exponents: Optional[np.ndarray] = None
    spectral: Optional[tuple] = field(default=None, repr=False)

    @property
    def algebra(self):
        return self.coefficients[0].algebra

    def coefficient_array(self) -> np.ndarray:
        return np.array([c.coords for c in self.coefficients])

    def evaluate(self, z: complex) -> JordanElement:
        alg = self.algebra
        reg = complex(regularizer(z, self.theta, self.eps))
        if self.family == 'disk':
            w = complex(strip_to_disk(z, self.theta))
            powers = w ** np.arange(len(self.coefficients))
        elif self.family == 'exponential':
            powers = np.exp(self.exponents * (z - self.theta))
        elif self.family == 'spectral':
            w_mat, s_hat, vh, scale, p = self.spectral
            pw = np.zeros(len(s_hat), dtype=np.complex128)
            pos = s_hat > 0
            pw[pos] = np.exp(p * z * np.log(s_hat[pos]))
            mat = scale * (w_mat * pw) @ vh
            return alg.element(reg * alg.from_matrix(mat, strict=False))
        else:
            raise ValueError(f"unknown candidate family {self.family!r}")
        return alg.element(reg * (powers @ self.coefficient_array()))

    def digest(self) -> str:
        if self.family == 'spectral':
            w_mat, s_hat, vh, scale, _ = self.spectral
            return array_digest(w_mat, s_hat, vh, np.array([scale]))
        return array_digest(self.coefficient_array())


@dataclass
class _Family:
    """Sampled boundary data of a candidate family.

    ``phases[j][s, k]`` is the weight of coefficient k at sample s of line j
    (without the regularizer); ``kappa[j][k]`` bounds the modulus of its
    second derivative along the line; coefficient `fixed` is eliminated by
    ``c_fixed = x - sum_k sigma_k c_k``.
    """
    name: str
    degree: int
    grid: int
    phases: tuple
    kappa: tuple
    spacing: tuple
    intervals: int
    fixed: int
    sigma: np.ndarray
    exponents: Optional[np.ndarray] = None

    @property
    def size(self) -> int:
        return self.phases[0].shape[1]

    @property
    def free(self) -> np.ndarray:
        return np.array([k for k in range(self.size) if k != self.fixed], dtype=int)


def _disk_family(theta: float, degree: int, grid: int, samples: int = None) -> _Family:
    n = samples or grid
    k = np.arange(degree + 1)
    phases, spacing = [], []
    for j in (0, 1):
        lo, hi = boundary_arc(j, theta)
        alpha = np.linspace(lo, hi, n + 1)
        phases.append(np.exp(1j * np.outer(alpha, k)))
        spacing.append((hi - lo) / n)
    kappa = (k ** 2.,) * 2
    return _Family('disk', degree, grid, tuple(phases), kappa, tuple(spacing), n,
                   fixed=0, sigma=np.zeros(degree + 1))


def _exponential_family(theta: float, degree: int, grid: int, lam_max: float,
                        samples: int = None) -> _Family:
    # the fastest phase turns degree times per period
    n = samples or grid * max(1, degree // 4)
    if degree == 0:
        lam = np.zeros(1)
        period = 1.
    else:
        lam = lam_max * np.arange(-degree, degree + 1) / degree
        period = 2. * np.pi * degree / lam_max
    t = np.linspace(0., period, n + 1)
    phases, kappa = [], []
    for j in (0, 1):
        amp = np.exp(lam * (j - theta))
        phases.append(amp * np.exp(1j * np.outer(t, lam)))
        kappa.append(amp * lam ** 2)
    sigma = np.ones(len(lam))
    sigma[degree] = 0.
    return _Family('exponential', degree, grid, tuple(phases), tuple(kappa),
                   (period / n,) * 2, n, fixed=degree, sigma=sigma, exponents=lam)


def _family(name: str, theta: float, degree: int, grid: int, lam_max: float = 4.,
            samples: int = None) -> _Family:
    if name == 'disk':
        return _disk_family(theta, degree, grid, samples)
    elif name == 'exponential':
        return _exponential_family(theta, degree, grid, lam_max, samples)
    raise ValueError(f"unknown candidate family {name!r}")


def _assemble(fam: _Family, free: np.ndarray, x: np.ndarray) -> np.ndarray:
    coef = np.zeros((fam.size, len(x)), dtype=np.complex128)
    idx = fam.free
    coef[idx] = free
    coef[fam.fixed] = x - fam.sigma[idx] @ free
    return coef


def _objective(v: np.ndarray, fam: _Family, spec: CoupleSpec, x: np.ndarray,
               rho: tuple, temp: float):
    """Log-sum-exp of the weighted boundary norms and its gradient in the
    real and imaginary parts of the free coefficients."""
    n_free, d = len(fam.free), len(x)
    half = n_free * d
    free = (v[:half] + 1j * v[half:]).reshape(n_free, d)
    coef = _assemble(fam, free, x)
    values, grads = [], []
    for j in (0, 1):
        mats = spec.line_matrices(fam.phases[j] @ coef, j)
        u, s, vh = np.linalg.svd(mats)
        if j == 0:
            norm = s[:, 0]
            g = u[:, :, :1] @ vh[:, :1, :]
        else:
            norm = s.sum(axis=1) / spec.m
            g = (u @ vh) / spec.m
        values.append(rho[j] * norm)
        grads.append(rho[j] * np.einsum('sab,iab->si', g.conj(), spec.basis_matrices(j)))
    f = np.concatenate(values)
    loss = temp * logsumexp(f / temp)
    weights = softmax(f / temp)
    split = len(values[0])
    z = np.zeros((fam.size, d), dtype=np.complex128)
    for j, wj in ((0, weights[:split]), (1, weights[split:])):
        z += np.einsum('s,si,sk->ki', wj, grads[j], fam.phases[j])
    z_free = z[fam.free] - np.outer(fam.sigma[fam.free], z[fam.fixed])
    grad = np.conj(z_free).ravel()
    return loss, np.concatenate([grad.real, grad.imag])


def _sampled_max(fam: _Family, spec: CoupleSpec, coef: np.ndarray, rho: tuple) -> float:
    return max(rho[j] * float(np.max(spec.line_norms(
        spec.line_matrices(fam.phases[j] @ coef, j), j))) for j in (0, 1))


def _optimize(fam: _Family, spec: CoupleSpec, x: np.ndarray, rho: tuple):
    """Smoothed minimax over the free coefficients with temperature
    continuation; returns the best coefficients by sampled max."""
    n_free, d = len(fam.free), len(x)
    v = np.zeros(2 * n_free * d)
    best = _assemble(fam, np.zeros((n_free, d)), x)
    best_val = _sampled_max(fam, spec, best, rho)
    if n_free == 0 or best_val == 0.:
        return best, False
    stagnated = False
    for tfrac in TEMPERATURES:
        res = scipy.optimize.minimize(_objective, v, args=(fam, spec, x, rho, tfrac * best_val),
                                      jac=True, method='L-BFGS-B', options=dict(maxiter=300))
        v = res.x
        free = (v[:n_free * d] + 1j * v[n_free * d:]).reshape(n_free, d)
        coef = _assemble(fam, free, x)
        val = _sampled_max(fam, spec, coef, rho)
        if val < best_val:
            best, best_val = coef, val
        stagnated = not res.success and res.status != 0
    return best, stagnated


def _certify_family(fam_name: str, theta: float, degree: int, grid: int, lam_max: float,
                    spec: CoupleSpec, coef: np.ndarray, eps: float):
    rho = (regularizer_max(0, theta, eps), regularizer_max(1, theta, eps))
    fam = _family(fam_name, theta, degree, grid, lam_max)
    out = 0.
    samples = 0
    for j in (0, 1):
        curvature = float(np.sum(fam.kappa[j] * spec.line_norms(spec.line_matrices(coef, j), j)))
        smax = float(np.max(spec.line_norms(spec.line_matrices(fam.phases[j] @ coef, j), j)))
        n0 = fam.intervals
        length = fam.spacing[j] * n0
        n = n0
        if curvature > 0 and smax > 0:
            h_needed = math.sqrt(8. * PAD_FRACTION * smax / curvature)
            n = int(min(MAX_CERT_SAMPLES, max(n0, math.ceil(length / h_needed))))
        if n != n0:
            fine = _family(fam_name, theta, degree, grid, lam_max, samples=n)
            smax = float(np.max(spec.line_norms(spec.line_matrices(fine.phases[j] @ coef, j), j)))
        h = length / n
        out = max(out, rho[j] * (smax + h * h / 8. * curvature))
        samples += n + 1
    return out, samples


def _spectral_candidate(x: JordanElement, spec: CoupleSpec, eps: float) -> Optional[StripCandidate]:
    if not spec.trace_state:
        return None
    p = spec.p
    w_mat, s, vh = densemat.polar_svd(x.to_matrix())
    scale = float((np.sum(s ** p) / spec.m) ** (1. / p))
    if scale == 0.:
        return None
    s_hat = s / scale
    cand = StripCandidate('spectral', spec.theta, eps, [x], spectral=(w_mat, s_hat, vh, scale, p))
    # boundary norms at t = 0 against the closed form
    alg = spec.algebra
    on0 = alg.element(alg.from_matrix(scale * (w_mat * (s_hat > 0)) @ vh, strict=False))
    on1 = alg.element(alg.from_matrix(scale * (w_mat * s_hat ** p) @ vh, strict=False))
    if (endpoint0_norm(on0, spec) > scale * (1. + SEED_TOL) + SEED_TOL
            or endpoint1_norm(on1, spec) > scale * (1. + SEED_TOL) + SEED_TOL):
        logging.warning(f"spectral candidate for {alg.label} failed its boundary check; dropped")
        return None
    return cand


def certify(candidate: StripCandidate, spec: CoupleSpec, eps: float = None):
    """Certified upper bound on ``max(sup ||F(it)||_0, sup ||F(1+it)||_1)``
    for `candidate` with its coefficients and regularizer `eps`; returns
    ``(value, boundary samples used)``."""
    eps = candidate.eps if eps is None else eps
    theta = candidate.theta
    rho_max = max(regularizer_max(0, theta, eps), regularizer_max(1, theta, eps))
    if candidate.family == 'spectral':
        return candidate.spectral[3] * rho_max, 0
    lam_max = float(np.max(np.abs(candidate.exponents))) if candidate.exponents is not None \
        and candidate.degree > 0 else 4.
    return _certify_family(candidate.family, theta, candidate.degree, candidate.grid, lam_max,
                           spec, candidate.coefficient_array(), eps)


@dataclass
class UpperBound:
    value: float
    candidate: StripCandidate
    eps: float
    stagnated: bool = False
    samples: int = 0

    def __float__(self):
        return float(self.value)


def upper_bound(x: JordanElement, spec: CoupleSpec, degree: int = 8, grid: int = 64,
                eps: float = 1e-3, family: str = 'disk', lam_max: float = 4.) -> UpperBound:
    """Certified upper bound for ``||x||_theta`` from the best candidate of
    `family` at the given degree and grid."""
    _same_algebra(x, spec)
    if eps < 0:
        raise ValueError(f"regularization must be >= 0, received {eps}")
    if degree < 0 or grid < 1:
        raise ValueError(f"invalid degree {degree} or grid {grid}")
    if family == 'spectral':
        cand = _spectral_candidate(x, spec, eps)
        if cand is None:
            raise ValueError("the spectral candidate needs the canonical trace and x != 0")
        value, samples = certify(cand, spec)
        return UpperBound(value, cand, eps, samples=samples)
    theta = spec.theta
    fam = _family(family, theta, degree, grid, lam_max)
    rho = (regularizer_max(0, theta, eps), regularizer_max(1, theta, eps))
    coef, stagnated = _optimize(fam, spec, x.coords, rho)
    if stagnated:
        logging.info(f"{family} candidate optimizer stagnated at degree {degree}, grid {grid}")
    alg = spec.algebra
    cand = StripCandidate(family, theta, eps, [alg.element(c) for c in coef],
                          degree=degree, grid=grid, exponents=fam.exponents)
    value, samples = _certify_family(family, theta, degree, grid, lam_max, spec, coef, eps)
    return UpperBound(value, cand, eps, stagnated=stagnated, samples=samples)


# -- lower bounds ----------------------------------------------------------------

@dataclass
class BracketBudget:
    degrees: Sequence[int] = (2, 4, 8, 16)
    grids: Sequence[int] = (32, 64, 128)
    eps_schedule: Sequence[float] = EPS_SCHEDULE
    target_ratio: float = 1.05
    families: Sequence[str] = FAMILIES
    random_witnesses: int = 2
    lam_max: float = 4.

    def __post_init__(self):
        if not self.degrees or not self.grids or not self.eps_schedule:
            raise ValueError("bracket budget needs degrees, grids and an eps schedule")
        unknown = set(self.families) - set(FAMILIES)
        if unknown:
            raise ValueError(f"unknown candidate families {sorted(unknown)}")
        if self.target_ratio < 1:
            raise ValueError("target ratio must be >= 1")

    @property
    def eps(self) -> float:
        return float(min(self.eps_schedule))

    def levels(self):
        """Escalating ``(degree, grid)`` pairs."""
        n = max(len(self.degrees), len(self.grids))
        return [(int(self.degrees[min(i, len(self.degrees) - 1)]),
                 int(self.grids[min(i, len(self.grids) - 1)])) for i in range(n)]


def best_upper(x: JordanElement, spec: CoupleSpec, degree: int, grid: int,
               budget: BracketBudget) -> UpperBound:
    """Smallest certified bound over the budget's candidate families."""
    best = None
    families = list(budget.families)
    if 'spectral' in families:
        if _spectral_candidate(x, spec, budget.eps) is not None:
            # attains ||x||_p up to the regularizer factor
            families = ['spectral']
        else:
            families.remove('spectral')
    for family in families:
        ub = upper_bound(x, spec, degree, grid, budget.eps, family, budget.lam_max)
        if best is None or ub.value < best.value:
            best = ub
    if best is None:
        raise ValueError("no candidate family applies")
    return best


def default_witnesses(x: JordanElement, spec: CoupleSpec, rng: np.random.Generator = None,
                      random_witnesses: int = 2) -> List[JordanElement]:
    """``x*``, the polar witness ``s o |x|^(p-1)`` of a selfadjoint x, the
    projected matrix witness ``V S^(p-1) W*`` and seeded random elements."""
    alg = spec.algebra
    p = spec.p
    out = [involution(x)]
    if x.is_selfadjoint():
        pol = polar_real(x)
        out.append(jordan_product(pol.symmetry, nonnegative_power(pol.modulus, p - 1.)))
    w_mat, s, vh = densemat.polar_svd(x.to_matrix())
    sp = np.where(s > 1e-14 * max(1., s[0]), s ** (p - 1.), 0.)
    out.append(alg.element(alg.from_matrix(vh.conj().T @ np.diag(sp) @ w_mat.conj().T, strict=False)))
    if rng is not None:
        out += [random_element(alg, 'ball', rng) for _ in range(random_witnesses)]
    return [y for y in out if y.coord_norm() > 1e-14]


@dataclass
class LowerBound:
    value: float
    witness: Optional[JordanElement] = None
    denominator: float = math.inf

    def __float__(self):
        return float(self.value)

    def digest(self) -> str:
        return array_digest(self.witness.coords) if self.witness is not None else ''


def lower_bound(x: JordanElement, spec: CoupleSpec, witnesses: Sequence[JordanElement],
                degree: int = 8, grid: int = 64, budget: BracketBudget = None) -> LowerBound:
    """``max_y |phi(x o y)| / upper(y, 1 - theta)`` over the witnesses."""
    _same_algebra(x, spec)
    witnesses = list(witnesses)
    if not witnesses:
        raise ValueError("lower_bound needs at least one witness")
    budget = budget or BracketBudget()
    dual = spec.at(1. - spec.theta)
    best = LowerBound(0.)
    for y in witnesses:
        pairing = abs(evaluate_state(spec.state, jordan_product(x, y)))
        if pairing <= 1e-300:
            continue
        den = best_upper(y, dual, degree, grid, budget).value
        if den > 0 and pairing / den > best.value:
            best = LowerBound(pairing / den, y, den)
    return best


# -- brackets ----------------------------------------------------------------------

@dataclass
class NormBracket:
    theta: float
    lower: float
    upper: float
    certificate: tuple = ('', '')
    grid: int = 0
    degree: int = 0
    family: str = ''
    status: str = 'converged'
    upper_by_eps: Dict[float, float] = field(default_factory=dict)
    upper_extrapolated: float = math.nan
    stagnated: bool = False

    @property
    def ratio(self) -> float:
        if self.upper == 0.:
            return 1.
        return self.upper / self.lower if self.lower > 0 else math.inf

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lower + self.upper)

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def relative_width(self, reference: float) -> float:
        return self.width / reference if reference > 0 else math.inf

    def contains(self, value: float, slack: float = 1e-9) -> bool:
        return self.lower - slack * max(1., value) <= value <= self.upper + slack * max(1., value)

    @property
    def inconclusive(self) -> bool:
        return self.status != 'converged'

    def to_dict(self) -> dict:
        return {
            'theta': self.theta, 'lower': self.lower, 'upper': self.upper,
            'ratio': self.ratio if math.isfinite(self.ratio) else 'inf',
            'certificate': {'candidate': self.certificate[0], 'witness': self.certificate[1]},
            'grid': self.grid, 'degree': self.degree, 'family': self.family,
            'status': self.status, 'stagnated': self.stagnated,
            'upper_by_eps': {f"{k:g}": v for k, v in sorted(self.upper_by_eps.items())},
            'upper_extrapolated': None if math.isnan(self.upper_extrapolated)
            else self.upper_extrapolated,
        }


def _extrapolate(by_eps: Dict[float, float]) -> float:
    """Linear extrapolation to eps = 0 through the two smallest eps."""
    pts = sorted(by_eps.items())
    if len(pts) < 2:
        return pts[0][1] if pts else math.nan
    (e0, v0), (e1, v1) = pts[0], pts[1]
    return v0 - e0 * (v1 - v0) / (e1 - e0)


def bracket(x: JordanElement, spec: CoupleSpec, budget: BracketBudget = None,
            rng: np.random.Generator = None) -> NormBracket:
    """Escalate candidates and witnesses until ``upper/lower`` reaches the
    budget's target ratio or the budget runs out."""
    _same_algebra(x, spec)
    budget = budget or BracketBudget()
    if x.coord_norm() == 0.:
        return NormBracket(spec.theta, 0., 0.)
    witnesses = default_witnesses(x, spec, rng, budget.random_witnesses)
    up: Optional[UpperBound] = None
    low = LowerBound(0.)
    level = (0, 0)
    for degree, grid in budget.levels():
        level = (degree, grid)
        cand = best_upper(x, spec, degree, grid, budget)
        if up is None or cand.value < up.value:
            up = cand
        trial = lower_bound(x, spec, witnesses, degree, grid, budget)
        if trial.value > low.value:
            low = trial
        logging.debug(f"bracket level {level}: [{low.value:.6g}, {up.value:.6g}]")
        if low.value > 0 and up.value / low.value <= budget.target_ratio:
            break
    by_eps = {float(e): certify(up.candidate, spec, e)[0] for e in budget.eps_schedule}
    upper = min(min(by_eps.values()), up.value)
    out = NormBracket(
        theta=spec.theta, lower=low.value, upper=upper,
        certificate=(up.candidate.digest(), low.digest()),
        grid=up.candidate.grid or level[1], degree=up.candidate.degree,
        family=up.candidate.family, upper_by_eps=by_eps,
        upper_extrapolated=_extrapolate(by_eps), stagnated=up.stagnated)
    if low.value > upper * (1. + ORDER_SLACK):
        out.status = 'inconsistent'
        logging.error(f"lower bound {low.value!r} exceeds upper bound {upper!r} "
                      f"for theta={spec.theta:g} on {spec.algebra.label}")
    elif out.ratio > budget.target_ratio:
        out.status = 'exhausted'
        logging.warning(f"bracket for theta={spec.theta:g} on {spec.algebra.label} stopped at "
                        f"ratio {out.ratio:.4f} > {budget.target_ratio}")
    return out


def ricard_xu_norm(x: JordanElement, spec: CoupleSpec) -> float:
    """``||D^(1/p) x + x D^(1/p)||_p / 2`` in normalized Schatten norm."""
    _same_algebra(x, spec)
    p = spec.p
    w, v = densemat.hermitian_eig(spec.density_matrix)
    root = (v * np.clip(w, 0., None) ** (1. / p)) @ v.conj().T
    xm = x.to_matrix()
    return 0.5 * densemat.schatten_norm(root @ xm + xm @ root, p, 1. / spec.m)


def ricard_xu_comparison(x: JordanElement, spec: CoupleSpec, budget: BracketBudget = None,
                         rng: np.random.Generator = None) -> dict:
    """Ratio of the bracket midpoint to the symmetric Schatten expression."""
    br = bracket(x, spec, budget, rng)
    ref = ricard_xu_norm(x, spec)
    return {'ratio': br.midpoint / ref if ref > 0 else math.nan,
            'midpoint': br.midpoint, 'reference': ref, 'bracket': br}
