"""Command line entry point: ``jordanlp verify|interp-norm|expect|gen``."""
import argparse
import json
import logging
import os
import sys
from typing import List, Optional

import numpy as np

from .errors import UnsupportedKind
from .expect import canonical_projection, conditional_expectation, verify_expectation
from .interp import BracketBudget, CoupleSpec, bracket
from .models import run_campaign
from .report import EXIT_CODES, VerificationReport, jsonable
from .sampling import DISTRIBUTIONS, generate_element
from .spec_parse import EIG_METHODS, parse_algebra, parse_state, parse_subalgebra
from .core import StateFunctional
from .utils.digest import array_digest, dumps
from .utils.rng import get_rng


def _dump(obj) -> str:
    return dumps(jsonable(obj), indent=2)


def _coordinate(c) -> complex:
    if isinstance(c, dict):
        return complex(float(c.get('re', 0.)), float(c.get('im', 0.)))
    if isinstance(c, (list, tuple)) and len(c) == 2:
        return complex(float(c[0]), float(c[1]))
    return complex(float(c))


def load_element(alg, element: str, distribution: str = 'ball'):
    """An integer seeds a sample of `alg`; anything else is a JSON file with a
    ``coords`` list as written by ``jordanlp gen``."""
    try:
        seed = int(element)
    except ValueError:
        seed = None
    if seed is not None:
        return generate_element(alg, distribution, seed)
    if not os.path.isfile(element):
        raise ValueError(f"--element must be an integer seed or a JSON file, received {element!r}")
    with open(element, 'r') as f:
        data = json.load(f)
    coords = data.get('coords') if isinstance(data, dict) else data
    if not isinstance(coords, list):
        raise ValueError(f"{element} has no coordinate list")
    return alg.element([_coordinate(c) for c in coords])


def cmd_verify(args) -> int:
    report = run_campaign(args.config)
    text = report.to_json()
    if args.out:
        with open(args.out, 'w') as f:
            f.write(text + '\n')
        logging.info(f"wrote report to {args.out}")
    else:
        print(text)
    return report.exit_code


def cmd_interp_norm(args) -> int:
    alg = parse_algebra(args.algebra, args.eig_method)
    phi = parse_state(args.state, alg)
    x = load_element(alg, args.element)
    degrees = tuple(d for d in (2, 4, 8, 16, 32) if d <= args.max_degree) or (args.max_degree,)
    budget = BracketBudget(degrees=degrees, target_ratio=args.target_ratio)
    br = bracket(x, CoupleSpec(phi, args.theta), budget, get_rng(args.witness_seed))
    print(_dump(dict(br.to_dict(), algebra=alg.label, state=phi.name,
                     element=array_digest(x.coords))))
    return EXIT_CODES['inconclusive'] if br.inconclusive else EXIT_CODES['pass']


def cmd_expect(args) -> int:
    alg = parse_algebra(args.algebra, args.eig_method)
    tau = StateFunctional.trace(alg)
    basis, alpha = parse_subalgebra(args.sub, alg)
    rng = get_rng(args.seed)
    operators = [conditional_expectation(alg, basis, tau)]
    if alpha is not None:
        operators.append(canonical_projection(alg, alpha, tau))
    entries = []
    doc = {'algebra': alg.label, 'subalgebra': args.sub, 'operators': []}
    for Q in operators:
        found = verify_expectation(Q, tau, samples=args.samples, rng=rng)
        for e in found:
            e.suite = Q.name
        entries += found
        doc['operators'].append({'name': Q.name, 'rank': Q.rank,
                                 'digest': array_digest(Q.matrix)})
    report = VerificationReport(entries, seed=args.seed)
    doc.update(status=report.status, counts=report.counts(),
               entries=[e.to_dict() for e in report.entries])
    print(_dump(doc))
    return report.exit_code


def cmd_gen(args) -> int:
    alg = parse_algebra(args.algebra, args.eig_method)
    x = generate_element(alg, args.distribution, args.seed)
    print(_dump({'algebra': alg.label, 'distribution': args.distribution,
                 'seed': args.seed, 'coords': np.asarray(x.coords)}))
    return EXIT_CODES['pass']


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='jordanlp',
        description='Finite-dimensional L^p spaces over Jordan algebras: '
                    'verification campaigns and direct computations.')
    parser.add_argument('-v', '--verbose', action='store_true', help='debug logging')
    sub = parser.add_subparsers(dest='command', required=True)

    verify = sub.add_parser('verify', help='run a verification campaign')
    verify.add_argument('--config', required=True, help='YAML or JSON campaign config')
    verify.add_argument('--out', default=None, help='report file (stdout if omitted)')
    verify.set_defaults(func=cmd_verify)

    interp = sub.add_parser('interp-norm', help='bracket the interpolation norm of one element')
    interp.add_argument('--algebra', required=True)
    interp.add_argument('--state', default='trace')
    interp.add_argument('--theta', type=float, required=True)
    interp.add_argument('--element', required=True, help='integer seed or JSON file')
    interp.add_argument('--target-ratio', type=float, default=1.05)
    interp.add_argument('--max-degree', type=int, default=16)
    interp.add_argument('--witness-seed', type=int, default=0)
    interp.set_defaults(func=cmd_interp_norm)

    expect = sub.add_parser('expect', help='build and verify a conditional expectation')
    expect.add_argument('--algebra', required=True)
    expect.add_argument('--sub', required=True, help='scalars, diagonal, spin:<k> or fixed:transpose')
    expect.add_argument('--samples', type=int, default=100)
    expect.add_argument('--seed', type=int, default=0)
    expect.set_defaults(func=cmd_expect)

    gen = sub.add_parser('gen', help='print a seeded element')
    gen.add_argument('--algebra', required=True)
    gen.add_argument('--seed', type=int, required=True)
    gen.add_argument('--distribution', choices=DISTRIBUTIONS, default='ball')
    gen.set_defaults(func=cmd_gen)

    for p in (interp, expect, gen):
        p.add_argument('--eig-method', choices=EIG_METHODS, default='lapack')
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # usage errors share the configuration error code
        return EXIT_CODES['config_error'] if exc.code else EXIT_CODES['pass']
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    try:
        return args.func(args)
    except (ValueError, OSError, UnsupportedKind) as err:
        logging.error(f"{args.command}: {err}")
        return EXIT_CODES['config_error']


if __name__ == '__main__':
    sys.exit(main())
