"""Shared exception types."""

from __future__ import annotations


class CapacityError(OverflowError):
    """A requested computation would overflow the declared 64-bit budget."""


class TableTooSmallError(ValueError):
    """A prime table does not cover the requested index range.

    The message names the coverage that would be required; ``required``
    carries a block-count estimate when one is available.
    """

    def __init__(self, message: str, required: int | None = None) -> None:
        super().__init__(message)
        self.required = required
