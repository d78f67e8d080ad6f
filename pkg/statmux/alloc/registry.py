"""
Allocator registry used by the multiplexing loop.

Each registered allocator takes an AllocationContext holding everything any
allocator may look at for super GOP k+1, and picks what it needs.
"""

from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple

from ..errors import UnknownAllocatorError
from ..models.feedback import FeedbackRecord
from .allocators import (
    AllocationDecision,
    AllocationInput,
    StreamAllocationInput,
    allocate_lam,
    allocate_lfam,
    allocate_oracle,
    allocate_uniform,
)


@dataclass(frozen=True)
class AllocationContext:
    """Inputs available when allocating super GOP `gop` (1-based)."""

    gop: int
    channel_rate: float
    floor_fraction: float
    c_next: Tuple[float, ...]
    c_prev: Tuple[float, ...]
    feedback: Tuple[Optional[FeedbackRecord], ...]
    sigma_true_next: Tuple[float, ...]
    c_true_next: Tuple[float, ...]


Allocator = Callable[[AllocationContext], AllocationDecision]


def _lam(ctx: AllocationContext) -> AllocationDecision:
    return allocate_lam(ctx.c_next, ctx.channel_rate, ctx.floor_fraction)


def _lfam(ctx: AllocationContext) -> AllocationDecision:
    inp = AllocationInput(
        streams=tuple(
            StreamAllocationInput(c_next=n, c_prev=p, feedback=f)
            for n, p, f in zip(ctx.c_next, ctx.c_prev, ctx.feedback)
        ),
        channel_rate=ctx.channel_rate,
    )
    return allocate_lfam(inp, ctx.floor_fraction)


def _oracle(ctx: AllocationContext) -> AllocationDecision:
    return allocate_oracle(
        ctx.sigma_true_next, ctx.c_true_next, ctx.channel_rate, ctx.floor_fraction
    )


def _uniform(ctx: AllocationContext) -> AllocationDecision:
    return allocate_uniform(len(ctx.c_next), ctx.channel_rate)


ALLOCATORS: Dict[str, Allocator] = {
    "lam": _lam,
    "lfam": _lfam,
    "oracle": _oracle,
    "uniform": _uniform,
}


def get_allocator(name: str) -> Allocator:
    try:
        return ALLOCATORS[name]
    except KeyError:
        raise UnknownAllocatorError(
            f"unknown allocator '{name}' (known: {', '.join(ALLOCATORS)})"
        ) from None
