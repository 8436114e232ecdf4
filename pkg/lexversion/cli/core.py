import argparse
import dataclasses
import logging
import os
import sys
from pathlib import Path
from typing import Optional, Tuple

import yapecs

import lexversion


###############################################################################
# Command-line configuration
###############################################################################


class UsageError(Exception):
    """Flags that are well formed but do not make sense together"""


@dataclasses.dataclass(frozen=True)
class CliConfig:

    log_path: Optional[Path]
    output_format: str
    default_language: str

    @classmethod
    def from_args(cls, args, environ=None):
        """Resolve flags, falling back to the environment and defaults"""
        environ = os.environ if environ is None else environ
        log_path = args.log or environ.get(lexversion.LOG_ENV_VAR) or None
        return cls(
            log_path=None if log_path is None else Path(log_path),
            output_format=args.format or lexversion.OUTPUT_FORMAT,
            default_language=args.lang or lexversion.DEFAULT_LANGUAGE)

    @property
    def log(self) -> Path:
        if self.log_path is None:
            raise UsageError(
                f'no event log; pass --log or set {lexversion.LOG_ENV_VAR}')
        return self.log_path


###############################################################################
# Commands
###############################################################################


def cmd_init(config: CliConfig) -> str:
    """Create an empty event log"""
    path = lexversion.store.create(config.log)
    return f'initialized {path}\n'


def cmd_ingest(config: CliConfig, norm_file) -> str:
    """Bootstrap a norm from a norm file"""
    document = lexversion.load.norm(norm_file)
    kind = lexversion.store.EntryKind.BOOTSTRAP
    payload = lexversion.store.to_payload(kind, document)

    # Dry run so that the log never holds an entry that fails to replay
    g = lexversion.store.replay(config.log)
    g = lexversion.bootstrap_norm(
        g,
        document.concept,
        document.enacted,
        document.components,
        form=document.form,
        nature=document.nature,
        actors=document.actors)

    entry = lexversion.store.append(config.log, kind, payload)
    version, event = lexversion.history(g, document.concept)[-1]
    return _committed(config, entry, {
        'concept': str(document.concept),
        'new_version': str(version.urn),
        'macro_event': event})


def cmd_amend(config: CliConfig, script_file, concept=None) -> str:
    """Apply an amendment script to a norm"""
    script = lexversion.load.script(script_file)
    kind = lexversion.store.EntryKind.AMENDMENT
    payload = lexversion.store.to_payload(kind, script, concept)

    # Dry run
    g = lexversion.store.replay(config.log)
    _, report = lexversion.apply_amendment(
        g, lexversion.parse_urn(payload['concept']), script)

    entry = lexversion.store.append(config.log, kind, payload)
    return _committed(
        config, entry, {'concept': payload['concept'], **report.to_dict()})


def cmd_reconstruct(
    config: CliConfig,
    urn,
    at=None,
    language=None
) -> str:
    """Text of a norm or component on a date or in one version

    Concept urns need a date. Version urns name their date themselves, and
    expression urns name their language too.
    """
    urn = lexversion.parse_urn(urn)
    g = lexversion.store.replay(config.log)
    if urn.language is not None:
        language = language or urn.language
        urn = lexversion.identifiers.strip_language(urn)
    if urn.version_date is not None:
        if str(urn) not in g.works:
            raise lexversion.UnknownVersion(str(urn))
        at = urn.version_date
    elif at is None:
        raise UsageError('reconstructing a concept requires --at')
    tree = lexversion.reconstruct_text(
        g,
        lexversion.identifiers.strip_to_component_concept(urn),
        at,
        language or config.default_language)
    return lexversion.reconstruct.render.document(
        tree, _format(config, 'turtle'))


def cmd_history(config: CliConfig, urn) -> str:
    """Every version of a norm or component"""
    g = lexversion.store.replay(config.log)
    return lexversion.reconstruct.render.history(
        lexversion.history(g, urn), _format(config, 'turtle'))


def cmd_diff(config: CliConfig, urn, start, end) -> str:
    """Components whose version changed between two dates"""
    g = lexversion.store.replay(config.log)
    return lexversion.reconstruct.render.changes(
        lexversion.diff(g, urn, start, end), _format(config, 'turtle'))


def cmd_provenance(config: CliConfig, urn) -> str:
    """The event and instruction behind one version"""
    g = lexversion.store.replay(config.log)
    return lexversion.reconstruct.render.change(
        lexversion.provenance(g, urn), _format(config, 'turtle'))


def cmd_validate(config: CliConfig) -> Tuple[str, int]:
    """Check the structural rules of the replayed graph

    Returns
        The report and the exit code; 1 if any rule is broken
    """
    g = lexversion.store.replay(config.log)
    violations = lexversion.validate(g)
    if _format(config, 'turtle') == 'structured':
        output = lexversion.reconstruct.render.structured({
            'violations': [
                dataclasses.asdict(violation) for violation in violations]})
    else:
        output = ''.join(f'{violation}\n' for violation in violations)
        output += f'{len(violations)} violations\n'
    return output, int(bool(violations))


def cmd_export(config: CliConfig, fmt='turtle') -> str:
    """Serialize the replayed graph"""
    if fmt != 'turtle':
        raise UsageError(f'cannot export as {fmt}')
    return lexversion.store.export_turtle(lexversion.store.replay(config.log))


###############################################################################
# Entry point
###############################################################################


def main(argv=None) -> int:
    """Run one command

    Arguments
        argv
            Command-line arguments, defaulting to sys.argv[1:]

    Returns
        Exit code: 0 on success, 1 on a domain error, 2 on a usage error
    """
    parser = parser_()
    try:
        args = parser.parse_args(argv)
    except SystemExit as error:
        return error.code if isinstance(error.code, int) else 2

    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s')

    try:
        config = CliConfig.from_args(args)
        output, code = run(config, args), 0
        if isinstance(output, tuple):
            output, code = output
    except UsageError as error:
        parser.print_usage(sys.stderr)
        print(f'error: {error}', file=sys.stderr)
        return 2
    except lexversion.LexversionError as error:
        print(f'error: {error}', file=sys.stderr)
        return 1

    sys.stdout.write(output)
    sys.stdout.flush()
    return code


def run(config: CliConfig, args):
    """Dispatch parsed arguments to their command"""
    if args.command == 'init':
        return cmd_init(config)
    if args.command == 'ingest':
        return cmd_ingest(config, args.norm_file)
    if args.command == 'amend':
        return cmd_amend(config, args.script_file, args.concept)
    if args.command == 'reconstruct':
        return cmd_reconstruct(
            config, args.urn, args.at, args.command_lang)
    if args.command == 'history':
        return cmd_history(config, args.urn)
    if args.command == 'diff':
        return cmd_diff(config, args.urn, args.start, args.end)
    if args.command == 'provenance':
        return cmd_provenance(config, args.urn)
    if args.command == 'validate':
        return cmd_validate(config)
    return cmd_export(config, args.export_format)


def parser_():
    """Command-line argument parser"""
    parser = yapecs.ArgumentParser(
        prog='lexversion',
        description='Point-in-time versioning of legal norms')
    parser.add_argument(
        '--log',
        type=Path,
        help=f'The event log; defaults to ${lexversion.LOG_ENV_VAR}')
    parser.add_argument(
        '--format',
        choices=['flat', 'tree', 'structured', 'turtle'],
        help='The output format')
    parser.add_argument(
        '--lang',
        help='The language of reconstructed text')
    parser.add_argument(
        '--verbose',
        action='store_true',
        help='Log progress to standard error')
    commands = parser.add_subparsers(
        dest='command',
        required=True,
        parser_class=argparse.ArgumentParser)

    commands.add_parser('init', help='Create an empty event log')

    ingest = commands.add_parser('ingest', help='Bootstrap a norm')
    ingest.add_argument('norm_file', type=Path, help='The norm YAML file')

    amend = commands.add_parser('amend', help='Apply an amendment script')
    amend.add_argument(
        'script_file', type=Path, help='The amendment script YAML file')
    amend.add_argument(
        '--concept',
        help='Concept urn of the amended norm; overrides the script')

    reconstruct = commands.add_parser(
        'reconstruct', help='Text of a norm or component on a date')
    reconstruct.add_argument('urn', help='Concept, version or expression urn')
    reconstruct.add_argument(
        '--at', type=_date, help='The date to reconstruct (YYYY-MM-DD)')
    reconstruct.add_argument(
        '--lang', dest='command_lang', help='The language of the text')

    history = commands.add_parser(
        'history', help='Every version of a norm or component')
    history.add_argument('urn', help='Concept urn')

    diff = commands.add_parser(
        'diff', help='What changed between two dates')
    diff.add_argument('urn', help='Concept urn')
    diff.add_argument(
        '--from', dest='start', type=_date, required=True,
        help='The earlier date (YYYY-MM-DD)')
    diff.add_argument(
        '--to', dest='end', type=_date, required=True,
        help='The later date (YYYY-MM-DD)')

    provenance = commands.add_parser(
        'provenance', help='The event behind one version')
    provenance.add_argument('urn', help='Version urn')

    commands.add_parser('validate', help='Check structural rules')

    export = commands.add_parser('export', help='Serialize the graph')
    export.add_argument(
        '--format',
        dest='export_format',
        choices=['turtle'],
        default='turtle',
        help='The serialization format')

    return parser


###############################################################################
# Utilities
###############################################################################


def _committed(config, entry, summary):
    """Render a committed log entry and what it created"""
    summary = {'seq': entry.seq, 'kind': entry.kind.value, **summary}
    if _format(config, 'turtle') == 'structured':
        return lexversion.reconstruct.render.structured(summary)
    lines = [f'appended entry {entry.seq} ({entry.kind.value})']
    for key, value in summary.items():
        if key in ('seq', 'kind'):
            continue
        if isinstance(value, list):
            value = ', '.join('-' if item is None else item for item in value)
        lines.append(f'{key}\t{value}')
    return '\n'.join(lines) + '\n'


def _date(value):
    try:
        return lexversion.identifiers.parse_date(value)
    except ValueError as error:
        raise argparse.ArgumentTypeError(str(error))


def _format(config, *unsupported):
    """Output format, rejecting formats the command cannot produce"""
    if config.output_format in unsupported:
        raise UsageError(
            f'{config.output_format} output is only available from export')
    return config.output_format
