"""Exceptions raised by facetforest.

Every error derives from ``FacetForestError`` so callers (the CLI in particular)
can map them onto exit codes in one place.
"""
from typing import Any, Dict, Tuple


class FacetForestError(Exception):
    pass


class MalformedInputError(FacetForestError):
    pass


class ParseError(MalformedInputError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class NotFoundError(FacetForestError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class DomainError(FacetForestError, ValueError):
    pass


class UnitIdealError(DomainError):
    pass


class ResourceLimitError(FacetForestError):
    pass


class GenerationError(FacetForestError):
    pass


class BoxStabilityError(FacetForestError):
    """Betti data kept changing while the search box was enlarged."""

    def __init__(
        self,
        message: str,
        boxes: Tuple[Tuple[int, ...], Tuple[int, ...]],
        tables: Tuple[Dict[Any, int], Dict[Any, int]],
    ):
        super().__init__(message)
        self.boxes = boxes
        self.tables = tables
