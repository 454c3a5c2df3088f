import concurrent.futures
import logging
import random
from typing import Optional

import click
from pydantic import ValidationError

from algebra.errors import InseqError
from algebra.translate import ROUTES, resolve_k, run_route
from config.config import Settings
from routes.errors import handle_errors
from schemas.validation import Counterexample, ValidationSummary
from utils.samples import GENERATORS

logger = logging.getLogger(__name__)

DEFAULT_SEED = 0


def check_case(name: str, seed: int, case: int, max_length: int, default_k: int) -> Optional[Counterexample]:
    """Run one seeded random input through a route; a counterexample if the route's identity fails."""
    route = ROUTES[name]
    rng = random.Random(seed * 1_000_003 + case)
    program = GENERATORS[route.source](rng, max_length)
    k = resolve_k(name, program, None, default_k)
    try:
        output = run_route(name, program, k)
        if route.check(program, output, k):
            return None
        reason = f"the identity {route.correspondence} fails"
    except (InseqError, ValidationError, AssertionError) as e:
        return Counterexample(program=str(program), k=k, reason=f"{type(e).__name__}: {e}")
    return Counterexample(program=str(program), output=str(output), k=k, reason=reason)


def validate_route(name: str, seed: int, count: int, workers: int, max_length: int, default_k: int) -> ValidationSummary:
    counterexamples = []
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
        futures = [
            executor.submit(check_case, name, seed, case, max_length, default_k) for case in range(count)
        ]
        for future in concurrent.futures.as_completed(futures):
            counterexample = future.result()
            if counterexample is not None:
                logger.error(f"{name}: {counterexample.reason} on {counterexample.program}")
                counterexamples.append(counterexample)
    counterexamples.sort(key=lambda c: (len(c.program), c.program))
    return ValidationSummary(
        route=name,
        seed=seed,
        count=count,
        passed=count - len(counterexamples),
        failed=len(counterexamples),
        counterexamples=counterexamples,
    )


@click.command()
@click.argument("name", metavar="ROUTE", type=click.Choice(sorted(ROUTES)))
@click.option("--count", type=click.IntRange(min=1), default=None)
@click.option("--workers", type=click.IntRange(min=1), default=None)
@click.option("--max-length", type=click.IntRange(min=1), default=None)
@click.option("--seed", type=int, default=None)
@click.option("--json", "as_json", is_flag=True, help="print the summary as JSON")
@click.pass_context
@handle_errors
def validate(ctx, name, count, workers, max_length, seed, as_json):
    """Check a route's behavior identity on seeded random inputs."""
    settings: Settings = ctx.obj
    if seed is None:
        seed = settings.seed if settings.seed is not None else DEFAULT_SEED
    summary = validate_route(
        name,
        seed,
        count or settings.validate_count,
        workers or settings.validate_workers,
        max_length or settings.validate_max_length,
        settings.default_k,
    )
    if as_json:
        click.echo(summary.model_dump_json(indent=2))
    else:
        click.echo(f"{name}: {summary.passed}/{summary.count} passed (seed {seed})")
        for counterexample in summary.counterexamples:
            click.echo(f"  {counterexample.program}: {counterexample.reason}")
    if not summary.ok:
        ctx.exit(1)
