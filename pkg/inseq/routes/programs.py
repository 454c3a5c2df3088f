import logging

import click

from algebra.c_core import exits, reachable
from algebra.cg_core import (
    cg_exits,
    cg_reachable,
    free_seq,
    is_lnf,
    label_relations,
    orphaned,
    rel_k,
    to_lnf,
)
from algebra.thread_core import bisimilar
from config.config import Settings
from routes.errors import NOT_EQUIVALENT, handle_errors
from routes.inputs import PROGRAM_FORMALISMS, SEMANTICS, START, behavior, position_of, read_program
from schemas.analysis import AnalysisReport
from utils.compare import distinguishing_trace, format_trace
from utils.parser import parse_cg
from utils.printer import format_program, format_spec

logger = logging.getLogger(__name__)

KINDS = click.Choice(list(SEMANTICS) + ["spec"])


@click.command()
@click.argument("formalism", type=click.Choice(list(PROGRAM_FORMALISMS) + ["spec"]))
@click.argument("source", type=click.File("r"), default="-")
@handle_errors
def parse(formalism, source):
    """Read a program or thread spec and print it back in canonical text."""
    program = read_program(source, formalism)
    if formalism == "spec":
        click.echo(format_spec(program, canonical=False))
    else:
        click.echo(format_program(program))


@click.command()
@click.argument("formalism", type=click.Choice(list(SEMANTICS)))
@click.argument("source", type=click.File("r"), default="-")
@click.option("--from", "start", type=START, default="left", show_default=True, help="left, right or a position")
@click.option("--k", type=int, default=None, help="largest relative goto (cg-rel)")
@click.pass_obj
@handle_errors
def behave(settings: Settings, formalism, source, start, k):
    """Print the minimized thread a program performs from a position."""
    program = read_program(source, formalism)
    if formalism == "cg-rel" and k is None:
        k = settings.default_k
    logger.info(f"extracting {formalism} behavior from {start}")
    click.echo(format_spec(behavior(formalism, program, start, k)))


@click.command()
@click.argument("first", type=click.File("r"))
@click.argument("second", type=click.File("r"))
@click.option("--first-kind", type=KINDS, default="spec", show_default=True)
@click.option("--second-kind", type=KINDS, default="spec", show_default=True)
@click.option("--from", "start", type=START, default="left", show_default=True)
@click.option("--k", type=int, default=None)
@click.pass_context
@handle_errors
def equiv(ctx, first, second, first_kind, second_kind, start, k):
    """Decide whether two programs or thread specs behave alike."""
    k = ctx.obj.default_k if k is None else k
    left = behavior(first_kind, read_program(first, first_kind), start, k)
    right = behavior(second_kind, read_program(second, second_kind), start, k)
    if bisimilar(left, right):
        click.echo("EQUIVALENT")
        return
    trace = distinguishing_trace(left, right)
    click.echo(f"NOT EQUIVALENT after {format_trace(trace)}")
    ctx.exit(NOT_EQUIVALENT)


def _in_range(program, positions):
    return sorted(i for i in positions if 1 <= i <= len(program))


@click.command()
@click.argument("formalism", type=click.Choice(list(PROGRAM_FORMALISMS[1:])))
@click.argument("source", type=click.File("r"), default="-")
@click.option("--from", "start", type=START, default="left", show_default=True)
@click.option("--json", "as_json", is_flag=True, help="print the report as JSON")
@handle_errors
def analyze(formalism, source, start, as_json):
    """Report reachable, exit and orphaned positions and the label relations."""
    program = read_program(source, formalism)
    i = position_of(program, start)
    if formalism == "cg":
        reached, exit_positions = cg_reachable(program, i), cg_exits(program)
    else:
        reached, exit_positions = reachable(program, i), exits(program)
    reached = _in_range(program, reached)
    report = AnalysisReport(
        formalism=formalism,
        length=len(program),
        start=i,
        reachable=reached,
        unreachable=[j for j in range(1, len(program) + 1) if j not in reached],
        exits=sorted(exit_positions),
        orphaned=sorted(orphaned(program)) if formalism == "cg" else None,
        lnf=is_lnf(program) if formalism == "cg" else None,
        labels=label_relations(program) if formalism == "cg" else None,
        behavior=format_spec(behavior(formalism, program, i)),
    )
    if as_json:
        click.echo(report.model_dump_json(indent=2))
        return
    click.echo(f"length: {report.length}")
    click.echo(f"reachable from {i}: {' '.join(map(str, report.reachable))}")
    click.echo(f"unreachable: {' '.join(map(str, report.unreachable))}")
    click.echo(f"exits: {' '.join(map(str, report.exits))}")
    if report.labels is not None:
        click.echo(f"orphaned: {' '.join(map(str, report.orphaned))}")
        classes = " ".join("{" + ",".join(map(str, cls)) + "}" for cls in report.labels.classes)
        click.echo(f"label classes: {classes}")
        click.echo(f"lnf: {'yes' if report.lnf else 'no'}")
    click.echo(f"behavior: {report.behavior}")


@click.command()
@click.argument("source", type=click.File("r"), default="-")
@handle_errors
def lnf(source):
    """Bring a Cg program into label normal form."""
    click.echo(format_program(to_lnf(parse_cg(source.read()))))


@click.command()
@click.argument("source", type=click.File("r"))
@click.argument("numbers", type=click.IntRange(min=0), nargs=-1, required=True)
@handle_errors
def free(source, numbers):
    """Free label numbers, in the given order, in a Cg program."""
    click.echo(format_program(free_seq(parse_cg(source.read()), numbers)))


@click.command()
@click.argument("source", type=click.File("r"), default="-")
@click.option("--k", type=int, default=None, help="largest emulated distance")
@click.pass_obj
@handle_errors
def rel(settings: Settings, source, k):
    """Emulate relative gotos of distance up to k with labels and gotos."""
    k = settings.default_k if k is None else k
    click.echo(format_program(rel_k(parse_cg(source.read()), k)))
