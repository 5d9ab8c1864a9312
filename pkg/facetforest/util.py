"""Utilities for common tasks"""
import inspect
from itertools import combinations
from typing import Awaitable, Callable, Iterable, Iterator, List, Optional


def ensure_async(fn: Callable) -> Callable[..., Awaitable]:
    """A decorator that can be used to require async behavior."""
    if inspect.iscoroutinefunction(fn):
        return fn

    async def wrapped(*args, **kwargs):
        return fn(*args, **kwargs)

    return wrapped


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for index in indices:
        mask |= 1 << index
    return mask


def submasks(mask: int, size: Optional[int] = None) -> Iterator[int]:
    """All submasks of ``mask`` (of one size when ``size`` is given), smallest first."""
    members = list(bits(mask))
    sizes = range(len(members) + 1) if size is None else [size]
    for k in sizes:
        if k < 0 or k > len(members):
            continue
        for chosen in combinations(members, k):
            yield mask_of(chosen)


def maximal_masks(masks: Iterable[int]) -> List[int]:
    """Inclusion-maximal elements of ``masks`` without duplicates."""
    kept: List[int] = []
    for mask in sorted(set(masks), key=popcount, reverse=True):
        if not any(mask & other == mask for other in kept):
            kept.append(mask)
    return kept


def minimal_masks(masks: Iterable[int]) -> List[int]:
    """Inclusion-minimal elements of ``masks`` without duplicates."""
    kept: List[int] = []
    for mask in sorted(set(masks), key=popcount):
        if not any(other & mask == other for other in kept):
            kept.append(mask)
    return kept
