import functools
import logging

import click
from pydantic import ValidationError

from algebra.errors import InseqError, PreconditionError

logger = logging.getLogger(__name__)

NOT_EQUIVALENT = 1
BAD_INPUT = 2
PRECONDITION = 3


class BadInput(click.ClickException):
    exit_code = BAD_INPUT


class PreconditionFailed(click.ClickException):
    exit_code = PRECONDITION


def handle_errors(command):
    """Turn library errors into click errors with the matching exit code."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except PreconditionError as e:
            logger.info(f"{command.__name__}: precondition failed: {e}")
            raise PreconditionFailed(f"{type(e).__name__}: {e}")
        except ValidationError as e:
            raise BadInput("; ".join(error["msg"] for error in e.errors()))
        except InseqError as e:
            raise BadInput(str(e))

    return wrapper
