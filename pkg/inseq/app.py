import logging

import click

from config.config import Settings
from routes.construct import construct, gen
from routes.programs import analyze, behave, equiv, free, lnf, parse, rel
from routes.translate import translate
from routes.validate import validate


@click.group()
@click.option("--log-level", default=None, help="overrides INSEQ_LOG_LEVEL")
@click.pass_context
def cli(ctx, log_level):
    """Parse, run, compare and translate PGA, C and Cg instruction sequences."""
    settings = Settings()
    logging.basicConfig(filename=settings.log_file, level=(log_level or settings.log_level).upper())
    ctx.obj = settings


cli.add_command(parse)
cli.add_command(behave)
cli.add_command(equiv)
cli.add_command(translate)
cli.add_command(analyze)
cli.add_command(lnf)
cli.add_command(free)
cli.add_command(rel)
cli.add_command(construct)
cli.add_command(gen)
cli.add_command(validate)
