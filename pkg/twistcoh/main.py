import logging
import sys

import click

from .commands import algebra, charclass, hankel
from .errors import TwistcohError
from .export import FORMATS

log = logging.getLogger(__name__)


def configure_logging(verbose: int):
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s', stream=sys.stderr, force=True)


class TwistcohGroup(click.Group):
    """Exit codes: 1 usage, 2 invalid input, 3 failed mathematical precondition."""

    def make_context(self, *args, **kwargs):
        try:
            return super().make_context(*args, **kwargs)
        except click.UsageError as e:
            e.exit_code = 1
            raise

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.exit_code = 1
            raise
        except TwistcohError as e:
            log.debug('command failed', exc_info=True)
            click.echo(f'error: {e.detail}', err=True)
            ctx.exit(e.exit_code)


@click.group(cls=TwistcohGroup)
@click.option('--format', 'fmt', type=click.Choice(FORMATS), default='table', show_default=True)
@click.option('-v', '--verbose', count=True, help='-v for progress, -vv for debug output.')
@click.pass_context
def cli(ctx, fmt, verbose):
    """Exact twisted de Rham cohomology and characteristic classes of twisted K-theory."""
    configure_logging(verbose)
    ctx.ensure_object(dict)
    ctx.obj['format'] = fmt


cli.add_command(algebra.cohomology)
cli.add_command(algebra.twisted)
cli.add_command(algebra.ss)
cli.add_command(algebra.massey)
cli.add_command(algebra.massey_eta)
cli.add_command(algebra.example)
cli.add_command(charclass.jring)
cli.add_command(charclass.wang)
cli.add_command(charclass.lift)
cli.add_command(charclass.psi)
cli.add_command(charclass.tensor_action)
cli.add_command(hankel.hankel)


def run():
    cli(prog_name='twistcoh')


if __name__ == '__main__':
    run()
