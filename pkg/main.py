import sys
import argparse

from core.utils import apply_overrides, get_settings, logger
from cli.commander import AnalysisCommander, CHECKS, COMPLETE_METHODS, SIGNATURE_QUERIES


def build_parser():
    settings = get_settings()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--output', choices=('text', 'json'), default=settings.default_output)
    common.add_argument('--max-carrier', type=int, metavar='N', help='override the carrier size limit')
    common.add_argument('--verify-witness', action='store_true',
                        help='read every witness back from the JSON report and verify it again')

    parser = argparse.ArgumentParser(
        prog='mvlab',
        description='Exact computations on finite MV-algebras and their completions',
    )
    commands = parser.add_subparsers(dest='command', required=True)

    for name, text in (('validate', 'check the MV-algebra axioms on a description'),
                       ('spectrum', 'maximal ideals, ranks and radical'),
                       ('ideals', 'enumerate every ideal')):
        sub = commands.add_parser(name, parents=[common], help=text)
        sub.add_argument('file')

    complete = commands.add_parser('complete', parents=[common], help='profinite or MacNeille completion')
    complete.add_argument('file')
    complete.add_argument('--method', choices=COMPLETE_METHODS, default='both')

    check = commands.add_parser('check', parents=[common], help='decide a structure theorem on an instance')
    check.add_argument('name', choices=CHECKS)
    check.add_argument('file')
    check.add_argument('--with', dest='with_file', metavar='FILE', help='second description')

    signature = commands.add_parser('signature', parents=[common], help='query a spectral signature')
    signature.add_argument('name', choices=SIGNATURE_QUERIES)
    signature.add_argument('file')
    signature.add_argument('--with', dest='with_file', metavar='FILE', help='second description')
    signature.add_argument('--strict-divisibility', action='store_true',
                           help='read the divisibility condition as (n0-1) | n')
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.max_carrier is not None:
        if args.max_carrier < 1:
            print("--max-carrier must be positive", file=sys.stderr)
            return 2
        apply_overrides(max_carrier=args.max_carrier)

    commander = AnalysisCommander()
    report = commander.run_files(
        args.command,
        args.file,
        subcommand=getattr(args, 'name', None),
        with_path=getattr(args, 'with_file', None),
        method=getattr(args, 'method', 'both'),
        strict=getattr(args, 'strict_divisibility', False),
        verify_witness=args.verify_witness,
    )
    sys.stdout.write(report.render(args.output))
    logger(f"{report.command} finished with exit status {report.exit_hint}", 'debug')
    return report.exit_hint


if __name__ == "__main__":
    sys.exit(main())
