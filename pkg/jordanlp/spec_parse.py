"""Parsing of algebra, state and subalgebra spec strings.

Algebras: ``matrix:<n>``, ``spin:<k>``, ``spin:<k>:represented``,
``spin:<k>:split``, ``albert``, ``direct_sum:<spec>@<w>+<spec>@<w>...``.
States: ``trace`` or ``diag:<d1>,<d2>,...``. Subalgebras (for ``expect``):
``scalars``, ``diagonal``, ``spin:<k>``, ``fixed:transpose``.
"""
import logging
from typing import List, Optional, Tuple, Union

import numpy as np

from .algebras import (matrix_jordan, matrix_element, transpose_map, spin_abstract,
                       pauli_spin_representation, spin_system, albert, direct_sum)
from .core import JordanAlgebra, JordanElement, ElementMap, StateFunctional
from .errors import ConfigError

EIG_METHODS = ('lapack', 'jacobi')


def _int(token: str, what: str) -> int:
    try:
        return int(token)
    except (TypeError, ValueError):
        raise ConfigError(f"{what} must be an integer, received {token!r}")


def normalize_algebra_spec(spec: Union[str, dict]) -> str:
    """Mapping form ``{kind, n|k, represented, variant, parts}`` to the
    string form; strings pass through stripped."""
    if isinstance(spec, str):
        return spec.strip()
    if not isinstance(spec, dict):
        raise ConfigError(f"algebra spec must be a string or mapping, received {type(spec)}")
    kind = spec.get('kind')
    if kind == 'matrix':
        return f"matrix:{spec.get('n')}"
    elif kind == 'spin':
        out = f"spin:{spec.get('k')}"
        if spec.get('variant') == 'split':
            return out + ':split'
        return out + (':represented' if spec.get('represented') else '')
    elif kind == 'albert':
        return 'albert'
    elif kind == 'direct_sum':
        parts = spec.get('parts') or []
        return 'direct_sum:' + '+'.join(
            f"{normalize_algebra_spec(p['algebra'])}@{p['weight']}" for p in parts)
    raise ConfigError(f"unknown algebra kind {kind!r}")


def parse_algebra(spec: Union[str, dict], eig_method: str = 'lapack') -> JordanAlgebra:
    spec = normalize_algebra_spec(spec)
    if eig_method not in EIG_METHODS:
        raise ConfigError(f"unknown eigensolver {eig_method!r}; expected one of {EIG_METHODS}")
    head, _, rest = spec.partition(':')
    try:
        if head == 'matrix':
            return matrix_jordan(_int(rest, 'matrix size'), eig_method=eig_method)
        elif head == 'spin':
            tokens = rest.split(':')
            k = _int(tokens[0], 'spin dimension')
            variant = tokens[1] if len(tokens) > 1 else None
            if variant is None:
                return spin_abstract(k)
            elif variant == 'represented':
                return pauli_spin_representation(k, eig_method=eig_method)[0]
            elif variant == 'split':
                return pauli_spin_representation(k, 'split', eig_method=eig_method)[0]
            raise ConfigError(f"unknown spin variant {variant!r}")
        elif head == 'albert' and not rest:
            return albert()
        elif head == 'direct_sum':
            parts = []
            for token in rest.split('+'):
                sub, at, weight = token.rpartition('@')
                if not at:
                    raise ConfigError(f"direct_sum part {token!r} has no '@<weight>'")
                try:
                    w = float(weight)
                except ValueError:
                    raise ConfigError(f"direct_sum weight {weight!r} is not a number")
                parts.append((parse_algebra(sub, eig_method), w))
            return direct_sum(parts)
    except ConfigError:
        raise
    except ValueError as err:
        logging.error(f"invalid algebra spec {spec!r}")
        raise ConfigError(f"invalid algebra spec {spec!r}: {err}") from err
    raise ConfigError(f"unknown algebra spec {spec!r}")


def parse_state(spec: str, alg: JordanAlgebra) -> StateFunctional:
    spec = (spec or 'trace').strip()
    if spec == 'trace':
        return StateFunctional.trace(alg)
    head, _, rest = spec.partition(':')
    if head != 'diag':
        raise ConfigError(f"unknown state spec {spec!r}")
    if not alg.represented:
        raise ConfigError(f"diagonal densities need a matrix-represented algebra, got {alg.label}")
    try:
        weights = np.array([float(t) for t in rest.split(',')])
    except ValueError:
        raise ConfigError(f"state weights in {spec!r} must be numbers")
    if len(weights) != alg.ambient_dim:
        raise ConfigError(f"{spec!r} gives {len(weights)} weights for {alg.ambient_dim}x"
                          f"{alg.ambient_dim} matrices")
    # weights are a density matrix for tr; rescale to the normalized trace
    density = np.diag(weights * alg.ambient_dim / weights.sum())
    try:
        d = alg.element(alg.from_matrix(density))
        return StateFunctional.from_density(alg, d, normalize=True, name=spec)
    except ValueError as err:
        logging.error(f"invalid state spec {spec!r} on {alg.label}")
        raise ConfigError(f"invalid state spec {spec!r}: {err}") from err


def parse_subalgebra(spec: str, alg: JordanAlgebra) -> Tuple[List[JordanElement], Optional[ElementMap]]:
    """Basis of a unital Jordan *-subalgebra and, for ``fixed:`` specs, the
    antiautomorphism whose fixed points it is."""
    spec = spec.strip()
    if spec == 'scalars':
        return [alg.one()], None
    if not alg.represented or alg.kind != 'matrix':
        raise ConfigError(f"subalgebra {spec!r} needs a full matrix algebra, got {alg.label}")
    m = alg.ambient_dim
    if spec == 'diagonal':
        return [matrix_element(alg, np.diag(np.eye(m)[i])) for i in range(m)], None
    if spec == 'fixed:transpose':
        from .algebras import fixed_point_subalgebra
        alpha = transpose_map(alg)
        return fixed_point_subalgebra(alg, alpha), alpha
    head, _, rest = spec.partition(':')
    if head == 'spin':
        k = _int(rest, 'spin dimension')
        gens = spin_system(k)
        if gens.shape[1] != m:
            raise ConfigError(f"spin:{k} lives in M{gens.shape[1]}, not in {alg.label}")
        return [alg.one()] + [matrix_element(alg, s) for s in gens], None
    raise ConfigError(f"unknown subalgebra spec {spec!r}")
