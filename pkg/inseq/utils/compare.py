from collections import deque
from typing import Dict, List, Optional, Tuple

from models.thread import Test, ThreadSpec

Trace = List[Tuple[str, bool]]


def _signature(state) -> Tuple:
    if isinstance(state, Test):
        return ("test", state.action)
    return (state.kind,)


def distinguishing_trace(first: ThreadSpec, second: ThreadSpec) -> Optional[Trace]:
    """
    Search the product of two threads for the shortest reply sequence after which they differ.

    Args:
    first (ThreadSpec): First thread
    second (ThreadSpec): Second thread

    Returns:
    Optional[Trace]: The (action, reply) pairs leading to a pair of states that
    differ in what they do next, or None if the threads are bisimilar
    """
    start = (first.entry, second.entry)
    parents: Dict[Tuple[int, int], Optional[Tuple[Tuple[int, int], Tuple[str, bool]]]] = {start: None}
    queue = deque([start])

    while queue:
        pair = queue.popleft()
        left, right = first.states[pair[0]], second.states[pair[1]]
        if _signature(left) != _signature(right):
            trace: Trace = []
            while parents[pair] is not None:
                pair, step = parents[pair]
                trace.append(step)
            return trace[::-1]
        if not isinstance(left, Test):
            continue
        for reply, successors in ((True, (left.yes, right.yes)), (False, (left.no, right.no))):
            if successors not in parents:
                parents[successors] = (pair, (left.action, reply))
                queue.append(successors)

    return None


def format_trace(trace: Trace) -> str:
    if not trace:
        return "(no actions)"
    return " ".join(f"{action}={'true' if reply else 'false'}" for action, reply in trace)
