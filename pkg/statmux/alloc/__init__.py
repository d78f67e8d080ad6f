"""
Joint rate allocators and their registry.
"""

from .allocators import (
    AllocationDecision,
    AllocationInput,
    StreamAllocationInput,
    allocate_lam,
    allocate_lfam,
    allocate_oracle,
    allocate_uniform,
    apply_floor,
    integer_shares,
)
from .registry import ALLOCATORS, AllocationContext, get_allocator

__all__ = [
    "ALLOCATORS",
    "AllocationContext",
    "AllocationDecision",
    "AllocationInput",
    "StreamAllocationInput",
    "allocate_lam",
    "allocate_lfam",
    "allocate_oracle",
    "allocate_uniform",
    "apply_floor",
    "get_allocator",
    "integer_shares",
]
