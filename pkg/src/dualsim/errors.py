"""Semantic exception hierarchy for dualsim.

Public functions never raise bare ValueError; they raise one of the types
below so callers (and the CLI exit-code mapping) can tell invalid input
apart from a genuinely infeasible probability model.
"""

from __future__ import annotations


class DualSimError(Exception):
    """Base error for this package."""


class ValidationError(DualSimError, ValueError):
    """Inputs violate a contract: bad domain, shape, or unknown field."""


class InfeasibleParamsError(DualSimError, ValueError):
    """Parameters induce a negative probability cell.

    ``cell`` identifies the offending joint-table cell, e.g. ``(1, 0)``,
    and ``value`` carries the (negative) mass it would have received.
    """

    def __init__(self, cell: tuple[int, ...], value: float):
        self.cell = cell
        self.value = value
        bits = ", ".join(str(b) for b in cell)
        super().__init__(f"joint cell ({bits}) would be negative: {value!r}")
