"""Swap operators and swap sequences over stage assignments.

A position is a tuple of per-stage user tuples in execution order (index 0
is the first stage run). Positions inside a stage are 0-based; ``Exchange``
addresses the flattened assignment.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from imro.exceptions import ParameterError, SwapError

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator, Sequence

Position = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Exchange:
    """Put ``user`` at flat ``position``; an already present user trades places."""

    position: int
    user: int


@dataclass(frozen=True)
class Insert:
    """Add ``user`` at ``position`` of ``stage``."""

    stage: int
    position: int
    user: int


@dataclass(frozen=True)
class Remove:
    """Delete ``user``, found at ``position`` of ``stage``."""

    stage: int
    position: int
    user: int


SwapOp = Exchange | Insert | Remove


@dataclass(frozen=True)
class SwapSequence:
    """Ordered swap operators, applied left to right."""

    ops: tuple[SwapOp, ...] = ()

    def __len__(self) -> int:
        return len(self.ops)

    def __iter__(self) -> Iterator[SwapOp]:
        return iter(self.ops)

    def __add__(self, other: SwapSequence) -> SwapSequence:
        return SwapSequence(self.ops + other.ops)

    def newest(self, cap: int) -> SwapSequence:
        """Keep only the last ``cap`` operators."""
        if cap <= 0:
            return SwapSequence()
        return SwapSequence(self.ops[-cap:])


def _validate(position: Sequence[Sequence[int]]) -> Position:
    stages = tuple(tuple(stage) for stage in position)
    flat = [u for stage in stages for u in stage]
    if len(flat) != len(set(flat)):
        raise ParameterError(f"position repeats a user: {stages}")
    return stages


def apply_swap(
    position: Position,
    op: SwapOp,
    budget: int | None = None,
    node_count: int | None = None,
) -> Position:
    """Apply one operator; raise :class:`SwapError` when it does not fit."""
    if op.user < 0 or (node_count is not None and op.user >= node_count):
        raise SwapError(f"{op} names an unknown user")
    stages = [list(stage) for stage in position]

    if isinstance(op, Exchange):
        sizes = [len(stage) for stage in stages]
        flat = [u for stage in stages for u in stage]
        if not 0 <= op.position < len(flat):
            raise SwapError(f"{op} is outside a position of {len(flat)} users")
        if op.user in flat:
            other = flat.index(op.user)
            flat[op.position], flat[other] = flat[other], flat[op.position]
        else:
            flat[op.position] = op.user
        result = []
        start = 0
        for size in sizes:
            result.append(tuple(flat[start : start + size]))
            start += size
        return tuple(result)

    if not 0 <= op.stage < len(stages):
        raise SwapError(f"{op} names a stage outside 0..{len(stages) - 1}")
    stage = stages[op.stage]
    if isinstance(op, Insert):
        if not 0 <= op.position <= len(stage):
            raise SwapError(f"{op} is outside stage of {len(stage)} users")
        if any(op.user in s for s in stages):
            raise SwapError(f"{op} inserts a user already present")
        if budget is not None and sum(len(s) for s in stages) >= budget:
            raise SwapError(f"{op} exceeds the impression budget {budget}")
        stage.insert(op.position, op.user)
    else:
        if not 0 <= op.position < len(stage) or stage[op.position] != op.user:
            raise SwapError(f"{op} does not match stage {tuple(stage)}")
        del stage[op.position]
    return tuple(tuple(s) for s in stages)


def apply_sequence(
    position: Position,
    sequence: Iterable[SwapOp],
    budget: int | None = None,
    node_count: int | None = None,
) -> tuple[Position, int]:
    """Apply operators in order, skipping the ones that do not fit.

    Returns the new position and the number of skipped operators.
    """
    skipped = 0
    for op in sequence:
        try:
            position = apply_swap(position, op, budget, node_count)
        except SwapError:
            skipped += 1
    return position, skipped


def subtract_solutions(target: Position, source: Position) -> SwapSequence:
    """Swap sequence turning ``source`` into ``target``.

    Built in three phases. Users the target lacks, or that overflow their
    stage, are removed first. Missing users then go into their target stage
    when it has room, else into the first stage with room. Finally exchanges
    fix every flat position. The sequence is short for this scheme, not
    necessarily the shortest over all sequences.
    """
    target = _validate(target)
    current = [list(stage) for stage in _validate(source)]
    if len(target) != len(current):
        raise ParameterError(f"stage counts differ: {len(target)} vs {len(current)}")
    home = {u: k for k, stage in enumerate(target) for u in stage}
    slot = {u: j for stage in target for j, u in enumerate(stage)}
    ops: list[SwapOp] = []

    for k, stage in enumerate(current):
        j = 0
        while j < len(stage):
            if stage[j] not in home:
                ops.append(Remove(k, j, stage.pop(j)))
            else:
                j += 1
    for k, stage in enumerate(current):
        surplus = len(stage) - len(target[k])
        j = 0
        while surplus > 0 and j < len(stage):
            if home[stage[j]] != k:
                ops.append(Remove(k, j, stage.pop(j)))
                surplus -= 1
            else:
                j += 1

    # no stage is over its target size now, so free slots match missing users
    present = {u for stage in current for u in stage}
    for user in (u for stage in target for u in stage):
        if user in present:
            continue
        k = home[user]
        if len(current[k]) < len(target[k]):
            j = min(slot[user], len(current[k]))
        else:
            k = next(i for i, stage in enumerate(current) if len(stage) < len(target[i]))
            j = len(current[k])
        current[k].insert(j, user)
        ops.append(Insert(k, j, user))

    flat = [u for stage in current for u in stage]
    goal = [u for stage in target for u in stage]
    for p, user in enumerate(goal):
        if flat[p] != user:
            q = flat.index(user)
            flat[p], flat[q] = flat[q], flat[p]
            ops.append(Exchange(p, user))
    return SwapSequence(tuple(ops))
