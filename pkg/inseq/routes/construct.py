import logging
import random

import click

from algebra.expressiveness import (
    backward_counters,
    construct_inseq,
    forward_counters,
    forward_only_build,
    forward_only_build_cg,
    gen_a_plus_n_thread,
    gen_c_tree,
    gen_cg_tree,
    gen_one_dir_thread,
)
from config.config import Settings
from models.c import CInSeq
from routes.errors import BadInput, handle_errors
from utils.parser import parse_counter_set, parse_spec
from utils.printer import format_program, format_spec

logger = logging.getLogger(__name__)

EVERY_COUNTER = "every 1 from 1 offset 0"


@click.command()
@click.argument("source", type=click.File("r"), default="-")
@click.option("--fwd", default=EVERY_COUNTER, show_default=True, help="admitted forward jump counters")
@click.option("--bwd", default=EVERY_COUNTER, show_default=True, help="admitted backward jump counters")
@click.option(
    "--method",
    type=click.Choice(["connect", "forward-only", "forward-only-cg"]),
    default="connect",
    show_default=True,
)
@click.option("--negative", is_flag=True, help="build forward-only programs with negative tests")
@click.option("--seed", type=int, default=None, help="pick counters at random instead of the least")
@click.pass_obj
@handle_errors
def construct(settings: Settings, source, fwd, bwd, method, negative, seed):
    """Build a program with restricted jump counters from a thread spec."""
    spec = parse_spec(source.read())
    forward = parse_counter_set(fwd)
    if method == "forward-only":
        program = forward_only_build(spec, forward, positive=not negative)
    elif method == "forward-only-cg":
        program = forward_only_build_cg(spec, forward, positive=not negative)
    else:
        seed = settings.seed if seed is None else seed
        rng = random.Random(seed) if seed is not None else None
        program = construct_inseq(spec, forward, parse_counter_set(bwd), rng)
    logger.info(f"built {len(program)} instructions with method {method}")
    if isinstance(program, CInSeq):
        logger.info(
            f"forward counters {sorted(set(forward_counters(program)))}, "
            f"backward counters {sorted(set(backward_counters(program)))}"
        )
    click.echo(format_program(program))


@click.command()
@click.argument("kind", type=click.Choice(["a-plus-n", "one-dir", "c-tree", "cg-tree"]))
@click.argument("n", type=click.IntRange(min=1))
@click.option("--action", default="a", show_default=True)
@handle_errors
def gen(kind, n, action):
    """Print a thread family member or a tree program of depth n."""
    if kind == "a-plus-n":
        click.echo(format_spec(gen_a_plus_n_thread(action, n), canonical=False))
    elif kind == "one-dir":
        click.echo(format_spec(gen_one_dir_thread(action, n), canonical=False))
    elif action != "a":
        raise BadInput("tree programs are built over the action a")
    elif kind == "c-tree":
        click.echo(format_program(gen_c_tree(n)))
    else:
        click.echo(format_program(gen_cg_tree(n)))
