from algebra.thread_core import minimize
from models.thread import Test, ThreadSpec


def format_state(index: int, state) -> str:
    if not isinstance(state, Test):
        return f"P{index} = {state.kind}"
    if state.yes == state.no:
        return f"P{index} = {state.action} . P{state.yes}"
    return f"P{index} = {state.action} ? P{state.yes} : P{state.no}"


def format_spec(spec: ThreadSpec, canonical: bool = True) -> str:
    """Print a thread spec on one line; canonical output is minimized first so equal behaviors print alike."""
    if canonical:
        spec = minimize(spec)
    else:
        spec = ThreadSpec.of(spec.states, spec.entry)
    return " ; ".join(format_state(index, state) for index, state in enumerate(spec.states))


def format_program(value) -> str:
    return str(value)
