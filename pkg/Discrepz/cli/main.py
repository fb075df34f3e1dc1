"""
Command-line front end.

Machine-readable JSON goes to stdout, human summaries and errors to stderr. Exit codes:
0 ok, 2 malformed input, 3 infeasible profile, 4 cohort creation without a seed,
5 step cap reached, 6 invariant violation, 7 internal engine error.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys

from Discrepz.constants import paper_profile, check_inequalities, DEFAULT_BIT_CAP
from Discrepz.oracle import brute_force_coloring, GeneratorSpec, generate, GENERATOR_KINDS, DEFAULT_CAP
from Discrepz.setsystem import verify_coloring
from Discrepz.solvers import Opt, cohort_bf, classic_beck_fiala, run_batch
from Discrepz.solvers.option import RELEASE_RULES
from Discrepz.utilities.errors import DiscrepzError
from Discrepz.utilities.io import (read_instance, read_coloring, read_profile, read_trace, write_trace, write_snapshot,
                                   write_json, coloring_document, dumps, inspect_trace)

logger = logging.getLogger(__name__)

PROFILE_ENV = 'DISCREPZ_PROFILE'
BIT_CAP_ENV = 'DISCREPZ_BIT_CAP'


def _emit(doc):
    sys.stdout.write(dumps(doc) + '\n')


def _bit_cap() -> int:
    raw = os.environ.get(BIT_CAP_ENV)
    if not raw:
        return DEFAULT_BIT_CAP
    try:
        return int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{BIT_CAP_ENV} must be an integer, got {raw!r}")


def _check_mode(text: str) -> tuple[str, int]:
    if text in ('off', 'per-step'):
        return text, 1
    if text.startswith('every-'):
        try:
            k = int(text[len('every-'):])
        except ValueError:
            k = 0
        if k >= 1:
            return 'every-k', k
    raise argparse.ArgumentTypeError(f"expected off, per-step or every-K, got {text!r}")


def _options(args) -> Opt:
    mode, every = args.check_invariants
    return Opt(check_invariants=mode,
               check_every=every,
               check_lemmas=args.check_lemmas,
               strict=not args.no_strict,
               trace=args.trace is not None,
               step_cap=args.step_cap,
               bit_cap=_bit_cap(),
               residual_sign=args.residual_sign,
               mirror=args.mirror,
               diagnose_seeds=args.diagnose_seeds or args.ledger is not None,
               bf_release=args.release)


def _profile(args, opt: Opt):
    source = args.profile or os.environ.get(PROFILE_ENV) or 'paper'
    if source == 'paper':
        return None
    return read_profile(source, bit_cap=opt.bit_cap)


def _save_artifacts(args, trace=None, state=None, ledger=None):
    if args.trace is not None and trace is not None:
        write_trace(args.trace, trace)
    if args.snapshot is not None and state is not None:
        write_snapshot(args.snapshot, state)
    if args.ledger is not None and ledger is not None:
        ledger.to_csv(args.ledger)


def cmd_run(args) -> int:
    opt = _options(args)
    profile = _profile(args, opt) if args.mode == 'cohort' else None
    if len(args.input) > 1:
        return _run_many(args, opt, profile)
    sys_ = read_instance(args.input[0])
    try:
        if args.mode == 'classic':
            result = classic_beck_fiala(sys_, opt)
        else:
            result = cohort_bf(sys_, profile, opt)
    except DiscrepzError as e:
        _save_artifacts(args, getattr(e, 'trace', None), getattr(e, 'state', None), getattr(e, 'ledger', None))
        raise
    _save_artifacts(args, result.trace, result.state, result.ledger)
    _emit(coloring_document(result))
    guarantee = f", guarantee {result.guarantee_claimed}" if result.guarantee_claimed else ''
    print(f"{result.mode}: discrepancy {result.discrepancy} (bound {result.bound}{guarantee}) "
          f"after {result.steps_executed} steps", file=sys.stderr)
    return 0


def _run_many(args, opt: Opt, profile) -> int:
    systems = [read_instance(path) for path in args.input]
    status = 0
    for path, out in zip(args.input, run_batch(systems, profile, opt, workers=args.jobs, mode=args.mode)):
        if isinstance(out, DiscrepzError):
            print(f"{path}: {out.format()}", file=sys.stderr)
            _emit({'input': path, 'error': out.kind, 'exit_code': out.exit_code})
            status = max(status, out.exit_code)
        else:
            _emit({'input': path, **coloring_document(out)})
    return status


def cmd_verify(args) -> int:
    sys_ = read_instance(args.input)
    per_set, disc = verify_coloring(sys_, read_coloring(args.coloring))
    values = [abs(v) for v in per_set]
    for s, v in enumerate(values):
        print(f"set {s}: |chi(S)| = {v}", file=sys.stderr)
    _emit({'per_set': values, 'discrepancy': disc})
    return 0


def cmd_gen(args) -> int:
    sys_ = generate(GeneratorSpec(args.kind, args.n, args.sets, args.d, args.seed))
    if args.output:
        write_json(args.output, sys_.to_dict())
    else:
        _emit(sys_.to_dict())
    return 0


def cmd_oracle(args) -> int:
    sys_ = read_instance(args.input)
    disc, colors = brute_force_coloring(sys_, cap=args.cap, workers=args.jobs)
    doc = {'discrepancy': disc}
    if args.coloring:
        doc['colors'] = colors
    _emit(doc)
    return 0


def cmd_check_constants(args) -> int:
    if args.profile is not None:
        profile = read_profile(args.profile, bit_cap=_bit_cap())
        d = args.d if args.d is not None else profile.d
        if d is None:
            raise argparse.ArgumentTypeError("a manual profile needs --d")
    else:
        d = args.d
        profile = paper_profile(d, bit_cap=_bit_cap(), allow_infeasible=True)
    report = check_inequalities(profile, d)
    print(report.to_frame().to_string(index=False), file=sys.stderr)
    if not profile.feasible:
        print(f"note: W = {profile.w} < 1, this profile cannot drive a cohort run at d={d}", file=sys.stderr)
    _emit({**report.to_dict(), 'feasible': profile.feasible})
    return 0


def cmd_inspect_trace(args) -> int:
    summary = inspect_trace(read_trace(args.path))
    print(f"{summary['steps']} steps, histogram {summary['histogram']}, "
          f"potential {'monotone' if summary['potential_monotone'] else 'NOT monotone'}", file=sys.stderr)
    _emit(summary)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='discrepz', description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument('-v', '--verbose', action='store_true', help='log every step')
    sub = parser.add_subparsers(dest='command', required=True)

    run = sub.add_parser('run', help='color an instance')
    run.add_argument('--mode', choices=['cohort', 'classic'], default='cohort')
    run.add_argument('--input', nargs='+', required=True, help='instance JSON file(s)')
    run.add_argument('--profile', help=f"'paper' or a profile JSON file (default ${PROFILE_ENV} or paper)")
    run.add_argument('--check-invariants', type=_check_mode, default=('off', 1), metavar='off|per-step|every-K')
    run.add_argument('--check-lemmas', action='store_true')
    run.add_argument('--no-strict', action='store_true', help='count violations instead of stopping')
    run.add_argument('--trace', metavar='PATH', help='write the step trace as JSONL')
    run.add_argument('--snapshot', metavar='PATH', help='write the final cohort state as JSON')
    run.add_argument('--ledger', metavar='PATH', help='write the last charge ledger as CSV')
    run.add_argument('--step-cap', type=int)
    run.add_argument('--residual-sign', type=int, choices=[1, -1], default=1)
    run.add_argument('--mirror', action='store_true')
    run.add_argument('--release', choices=RELEASE_RULES, default='tight', help='classic release rule')
    run.add_argument('--diagnose-seeds', action='store_true')
    run.add_argument('--jobs', type=int, default=1, help='workers for several inputs')
    run.set_defaults(func=cmd_run)

    verify = sub.add_parser('verify', help='recompute the discrepancy of a coloring')
    verify.add_argument('--input', required=True)
    verify.add_argument('--coloring', required=True)
    verify.set_defaults(func=cmd_verify)

    gen = sub.add_parser('gen', help='generate an instance')
    gen.add_argument('--kind', choices=GENERATOR_KINDS, default='random-bounded-degree')
    gen.add_argument('--n', type=int, required=True)
    gen.add_argument('--sets', type=int, required=True)
    gen.add_argument('--d', type=int, required=True)
    gen.add_argument('--seed', type=int, default=0)
    gen.add_argument('--output', metavar='PATH')
    gen.set_defaults(func=cmd_gen)

    oracle = sub.add_parser('oracle', help='exact discrepancy by enumeration')
    oracle.add_argument('--input', required=True)
    oracle.add_argument('--cap', type=int, default=DEFAULT_CAP)
    oracle.add_argument('--coloring', action='store_true', help='also print a minimising coloring')
    oracle.add_argument('--jobs', type=int, default=1)
    oracle.set_defaults(func=cmd_oracle)

    constants = sub.add_parser('check-constants', help='evaluate the constant inequalities')
    constants.add_argument('--d', type=int)
    constants.add_argument('--profile', metavar='PATH')
    constants.set_defaults(func=cmd_check_constants)

    inspect = sub.add_parser('inspect-trace', help='summarise a JSONL trace')
    inspect.add_argument('path')
    inspect.set_defaults(func=cmd_inspect_trace)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')
    if args.command == 'check-constants':
        if args.d is None and args.profile is None:
            parser.error('check-constants needs --d or --profile')
        if args.profile is None and args.d < 2:
            parser.error('--d must be at least 2')
    try:
        return args.func(args)
    except DiscrepzError as e:
        print(e.format(), file=sys.stderr)
        return e.exit_code
    except argparse.ArgumentTypeError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == '__main__':
    sys.exit(main())
