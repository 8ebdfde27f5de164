#!/usr/bin/env python3
"""
Command-line front end for the hermitian lattice toolkit.

Every verb reads JSON (inline options, --in FILE, or stdin) and writes one JSON
document to stdout. Exit status: 0 success, 1 failed verification, 2 bad input.
"""

import argparse
import json
import logging
import sys
from dataclasses import replace
from typing import Any, Callable, Dict, List, Optional

from exact_linalg import matrix_from_json, parse_ring_tag, snf
from form_converter import (
    get_form_converter,
    trace_alt_form,
    trace_sym_form,
    zform_from_json,
)
from hermitian_lattice import (
    HermLattice,
    disc_group,
    dual,
    lattice_from_json,
    reduce_mod_pi,
    signature,
    verify_chain,
)
from lattice_config import configure_logging, get_settings, load_settings
from lattice_errors import InputFormatError, LatticeError
from occult_catalog import get_occult_catalog, star_degree, star_t_function
from quadratic_ring import (
    RingDesc,
    element_from_json,
    generator,
    ramified_prime,
    ramified_primes,
    units,
)
from special_cycles import dx_nonempty, enumerate_vectors, perp_lattice, rep_count_table

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2


class CommandResult:
    """JSON payload plus exit status of one verb."""

    def __init__(self, payload: Dict[str, Any], status: int = EXIT_OK):
        self.payload = payload
        self.status = status


# -- input helpers -----------------------------------------------------------

def _parse_json(text: str, field: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputFormatError(f"Invalid JSON: {e}", field=field)


def _document(args) -> Any:
    """The JSON document from --in FILE or stdin."""
    if args.input:
        try:
            with open(args.input, 'r', encoding='utf-8') as f:
                return _parse_json(f.read(), 'input')
        except OSError as e:
            raise InputFormatError(f"Cannot read {args.input}: {e}", field='input')
    text = sys.stdin.read()
    if not text.strip():
        raise InputFormatError("No input given (use inline options, --in FILE or stdin)",
                               field='input')
    return _parse_json(text, 'input')


def _ring(args) -> Optional[RingDesc]:
    if getattr(args, 'ring', None) is None:
        return None
    return parse_ring_tag(args.ring, 'ring')


def _lattice(args) -> HermLattice:
    """Lattice from --ring/--gram/--basis, or from the input document."""
    if getattr(args, 'gram', None) is not None:
        if args.ring is None:
            raise InputFormatError("--gram needs --ring", field='ring')
        data = {'ring': args.ring, 'gram': _parse_json(args.gram, 'gram')}
        if getattr(args, 'basis', None) is not None:
            data['basis'] = _parse_json(args.basis, 'basis')
        return lattice_from_json(data)
    data = _document(args)
    if isinstance(data, dict) and 'ring' not in data and args.ring is not None:
        data = dict(data, ring=args.ring)
    return lattice_from_json(data)


def _pi(args, lattice: HermLattice):
    return element_from_json(args.pi, lattice.ring, field='pi')


def _add_lattice_options(p: argparse.ArgumentParser):
    p.add_argument('--ring', help='discriminant D of O_k')
    p.add_argument('--gram', help='Gram matrix as JSON (nested list or matrix object)')
    p.add_argument('--basis', help='basis matrix as JSON (columns are basis vectors)')


# -- verbs -------------------------------------------------------------------

def cmd_ring_info(args) -> CommandResult:
    ring = parse_ring_tag(args.ring, 'ring')
    if ring is None:
        raise InputFormatError("ring-info needs a discriminant", field='ring')
    primes = [{'p': p, 'pi': ramified_prime(ring, p).to_json()} for p in ramified_primes(ring)]
    return CommandResult({
        'discriminant': ring.discriminant,
        'unit_count': ring.unit_count,
        'units': [u.to_json() for u in units(ring)],
        'different_generator': ring.different_generator.to_json(),
        'generator': generator(ring).to_json(),
        'ramified_primes': primes,
    })


def cmd_dual(args) -> CommandResult:
    lattice = _lattice(args)
    result = dual(lattice)
    return CommandResult({'lattice': result.to_json(), 'gram': result.gram().to_json()})


def cmd_snf(args) -> CommandResult:
    ring = _ring(args)
    if args.matrix is not None:
        m = matrix_from_json(_parse_json(args.matrix, 'matrix'), 'matrix', ring=ring)
    else:
        m = matrix_from_json(_document(args), 'matrix', ring=ring)
    return CommandResult(snf(m).to_json())


def cmd_signature(args) -> CommandResult:
    p, q = signature(_lattice(args))
    return CommandResult({'p': p, 'q': q})


def cmd_disc_group(args) -> CommandResult:
    if args.gram is None:
        data = _document(args)
        if isinstance(data, dict) and 'sub' in data:
            sub = lattice_from_json(data['sub'], 'sub')
            sup = lattice_from_json(data['sup'], 'sup') if 'sup' in data else None
            return CommandResult(disc_group(sub, sup).to_json())
        return CommandResult(disc_group(lattice_from_json(data)).to_json())
    return CommandResult(disc_group(_lattice(args)).to_json())


def cmd_convert(args) -> CommandResult:
    converter = get_form_converter()
    if converter.source_of(args.kind) == 'lattice':
        source = _lattice(args)
    else:
        source = zform_from_json(_document(args))
    result = converter.convert(args.kind, source)
    if isinstance(result, HermLattice):
        return CommandResult({'lattice': result.to_json(), 'gram': result.gram().to_json()})
    return CommandResult(result.to_json())


def cmd_trace_form(args) -> CommandResult:
    lattice = _lattice(args)
    form = trace_alt_form(lattice) if args.kind == 'alternating' else trace_sym_form(lattice)
    return CommandResult(form.to_json())


def cmd_chain(args) -> CommandResult:
    lattice = _lattice(args)
    report = verify_chain(lattice, _pi(args, lattice))
    return CommandResult(report.to_json(), EXIT_OK if report.holds else EXIT_FAILED)


def cmd_reduce_mod_pi(args) -> CommandResult:
    lattice = _lattice(args)
    return CommandResult(reduce_mod_pi(lattice, _pi(args, lattice)).to_json())


def cmd_enumerate(args) -> CommandResult:
    lattice = _lattice(args)
    if args.t_max is not None:
        table = rep_count_table(lattice, args.t_max, args.threads)
        return CommandResult({'t_max': args.t_max, 'counts': {str(t): c for t, c in table.items()}})
    if args.t is None:
        raise InputFormatError("enumerate needs --t or --t-max", field='t')
    return CommandResult(enumerate_vectors(lattice, args.t, args.threads).to_json())


def _vector(args, lattice: HermLattice) -> List:
    raw = _parse_json(args.x, 'x')
    if not isinstance(raw, list):
        raise InputFormatError("x must be a JSON list of ring elements", field='x')
    return [element_from_json(c, lattice.ring, field=f"x[{i}]") for i, c in enumerate(raw)]


def cmd_perp(args) -> CommandResult:
    lattice = _lattice(args)
    result = perp_lattice(lattice, _vector(args, lattice))
    p, q = signature(result)
    return CommandResult({'lattice': result.to_json(), 'signature': [p, q]})


def cmd_dx_nonempty(args) -> CommandResult:
    lattice = _lattice(args)
    return CommandResult({'nonempty': dx_nonempty(lattice, _vector(args, lattice))})


def cmd_case_profile(args) -> CommandResult:
    return CommandResult(get_occult_catalog().get_profile(args.case).to_json())


def cmd_case_build(args) -> CommandResult:
    lattice = get_occult_catalog().build(args.case)
    return CommandResult({'case': args.case, 'lattice': lattice.to_json()})


def cmd_case_verify(args) -> CommandResult:
    catalog = get_occult_catalog()
    catalog.get_profile(args.case)
    lattice = None if args.build else _lattice(args)
    report = catalog.verify(args.case, lattice)
    return CommandResult(report.to_json(), EXIT_OK if report.passed else EXIT_FAILED)


def cmd_verify_all(args) -> CommandResult:
    reports = get_occult_catalog().verify_all()
    passed = all(r.passed for r in reports.values())
    return CommandResult({'cases': [r.to_json() for r in reports.values()], 'pass': passed},
                         EXIT_OK if passed else EXIT_FAILED)


def cmd_star_degree(args) -> CommandResult:
    payload = {'d': args.d, 'n': args.n, 'degree': star_degree(args.d, args.n)}
    if args.p is not None:
        payload['p'] = args.p
        payload['t'] = star_t_function(args.d, args.n, args.p)
    return CommandResult(payload)


COMMANDS: Dict[str, Callable[[Any], CommandResult]] = {
    'ring-info': cmd_ring_info,
    'dual': cmd_dual,
    'snf': cmd_snf,
    'signature': cmd_signature,
    'disc-group': cmd_disc_group,
    'convert': cmd_convert,
    'trace-form': cmd_trace_form,
    'chain': cmd_chain,
    'reduce-mod-pi': cmd_reduce_mod_pi,
    'enumerate': cmd_enumerate,
    'perp': cmd_perp,
    'dx-nonempty': cmd_dx_nonempty,
    'case-profile': cmd_case_profile,
    'case-build': cmd_case_build,
    'case-verify': cmd_case_verify,
    'verify-all': cmd_verify_all,
    'star-degree': cmd_star_degree,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='lattice', description='Exact hermitian lattice computations over imaginary-quadratic orders')
    parser.add_argument('--pretty', action='store_true', default=None, help='indent JSON output')
    parser.add_argument('--threads', type=int, default=None, help='enumeration worker threads')
    parser.add_argument('--in', dest='input', default=None, help='read the input document from FILE')
    parser.add_argument('--log-level', default=None, type=str.upper,
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
    parser.add_argument('--config', default=None, help='alternate lattice_config.json')
    sub = parser.add_subparsers(dest='verb', required=True)

    p = sub.add_parser('ring-info', help='units, generator and ramified primes of O_k')
    p.add_argument('--ring', required=True)

    for verb, text in (('dual', 'dual lattice'), ('signature', 'signature (p, q)'),
                       ('disc-group', 'discriminant group L^v/L or N/M')):
        _add_lattice_options(sub.add_parser(verb, help=text))

    p = sub.add_parser('snf', help='Smith normal form of a matrix over Z or O_k')
    p.add_argument('--ring', help='ring of a bare nested-list matrix')
    p.add_argument('--matrix', help='matrix as JSON')

    p = sub.add_parser('convert', help='apply a form correspondence')
    _add_lattice_options(p)
    p.add_argument('--kind', required=True, choices=get_form_converter().kinds())

    p = sub.add_parser('trace-form', help='alternating or symmetric trace form')
    _add_lattice_options(p)
    p.add_argument('--kind', default='symmetric', choices=['alternating', 'symmetric'])

    for verb, text in (('chain', 'check Lambda in Lambda^v in pi^-1 Lambda'),
                       ('reduce-mod-pi', 'residue form and radical mod pi')):
        p = sub.add_parser(verb, help=text)
        _add_lattice_options(p)
        p.add_argument('--pi', default='pi', help='ramified prime element (default: pi)')

    p = sub.add_parser('enumerate', help='vectors with h(x, x) = t')
    _add_lattice_options(p)
    p.add_argument('--t', type=int)
    p.add_argument('--t-max', type=int, help='count every t from 1 to T_MAX instead')

    for verb, text in (('perp', 'lattice perpendicular to x'),
                       ('dx-nonempty', 'does x^perp contain a negative line')):
        p = sub.add_parser(verb, help=text)
        _add_lattice_options(p)
        p.add_argument('--x', required=True, help='lattice coordinates of x as JSON')

    catalog = get_occult_catalog()
    for verb in ('case-profile', 'case-build'):
        p = sub.add_parser(verb)
        p.add_argument('case', choices=catalog.list_cases())

    p = sub.add_parser('case-verify', help='check a lattice against a case profile')
    p.add_argument('case', choices=catalog.list_cases())
    p.add_argument('--build', action='store_true', help='verify the built catalog lattice')
    _add_lattice_options(p)

    sub.add_parser('verify-all', help='verify every catalog case')

    p = sub.add_parser('star-degree', help='polarization degree and t-function')
    p.add_argument('--d', type=int, required=True)
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--p', type=int)
    return parser


def _emit(payload: Dict[str, Any], pretty: bool, indent: int):
    if pretty:
        text = json.dumps(payload, indent=indent, ensure_ascii=False)
    else:
        text = json.dumps(payload, separators=(',', ':'), ensure_ascii=False)
    sys.stdout.write(text + '\n')


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = get_settings()
        if args.config:
            settings = load_settings(args.config)
    except LatticeError as e:
        _emit(e.to_dict(), False, 0)
        return EXIT_INPUT
    if args.log_level:
        settings = replace(settings, log_level=args.log_level.upper())
    if args.threads is None:
        args.threads = settings.threads
    pretty = settings.pretty if args.pretty is None else args.pretty
    configure_logging(settings)

    try:
        result = COMMANDS[args.verb](args)
    except LatticeError as e:
        logger.info(f"{args.verb} rejected input: {e.message}")
        _emit(e.to_dict(), pretty, settings.indent)
        return EXIT_INPUT
    _emit(result.payload, pretty, settings.indent)
    return result.status


if __name__ == "__main__":
    raise SystemExit(main())
