"""Kernel backend selection: compiled extension if available, pure Python otherwise.

Set ``HULLGAMES_PURE=1`` to force the pure-Python kernels (used by the
benchmark and by backend-equivalence tests).
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from . import _kernels as _pure
from .errors import KernelUnsupported

DEFAULT_STATE_LIMIT = 5_000_000
STATE_LIMIT_ENV = "HULLGAMES_STATE_LIMIT"

_fast = None
if not os.environ.get("HULLGAMES_PURE"):
    try:
        from . import _speedups as _fast  # type: ignore
    except ImportError:
        _fast = None

BACKEND = "compiled" if _fast is not None else "pure"


def default_state_limit() -> int:
    raw = os.environ.get(STATE_LIMIT_ENV)
    if raw:
        limit = int(raw)
        if limit <= 0:
            raise ValueError(f"{STATE_LIMIT_ENV} must be positive, got {raw!r}")
        return limit
    return DEFAULT_STATE_LIMIT


@dataclass(frozen=True)
class SearchResult:
    nim: int
    states: int
    backend: str


def mask_search(num_vertices, facet_masks, perms, is_dnt, state_limit=None) -> SearchResult:
    limit = state_limit if state_limit is not None else default_state_limit()
    if _fast is not None and num_vertices <= 24:
        try:
            nim, states = _fast.mask_nim_search(
                num_vertices, list(facet_masks), perms, is_dnt, limit
            )
            return SearchResult(nim, states, "compiled")
        except KernelUnsupported:
            pass
    nim, states = _pure.mask_nim_search(
        num_vertices, list(facet_masks), perms, is_dnt, limit
    )
    return SearchResult(nim, states, "pure")


def tensor_search(entries, faces, perms, is_dnt, state_limit=None) -> SearchResult:
    limit = state_limit if state_limit is not None else default_state_limit()
    if _fast is not None:
        try:
            nim, states = _fast.tensor_nim_search(
                list(entries), faces, perms, is_dnt, limit
            )
            return SearchResult(nim, states, "compiled")
        except KernelUnsupported:
            pass
    nim, states = _pure.tensor_nim_search(entries, faces, perms, is_dnt, limit)
    return SearchResult(nim, states, "pure")
