import logging

import click

from algebra.translate import ROUTES, program_length, resolve_k, route_report, run_route
from config.config import Settings
from routes.errors import handle_errors
from routes.inputs import read_program
from utils.printer import format_program

logger = logging.getLogger(__name__)


@click.command()
@click.argument("source", type=click.File("r"), default="-")
@click.option("--route", "name", type=click.Choice(sorted(ROUTES)), required=True)
@click.option("--k", type=int, default=None, help="k of the positional and homomorphic routes")
@click.option("--report", is_flag=True, help="print the size report after the program")
@click.option("--json", "as_json", is_flag=True, help="print the report as JSON")
@click.pass_obj
@handle_errors
def translate(settings: Settings, source, name, k, report, as_json):
    """Translate a program along a route and print the result."""
    route = ROUTES[name]
    program = read_program(source, route.source)
    k = resolve_k(name, program, k, settings.default_k)
    logger.info(f"running {name} on a {route.source} program of length {program_length(program)}, k={k}")
    output = run_route(name, program, k, check=settings.check_steps)
    click.echo(format_program(output))
    if not report:
        return
    summary = route_report(name, program, output, k)
    if as_json:
        click.echo(summary.model_dump_json(indent=2))
        return
    for field, value in summary.model_dump().items():
        if value is not None:
            click.echo(f"{field}: {value}")
