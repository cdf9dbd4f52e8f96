"""Exception types shared across the package.

Every error that a CLI command may surface carries a ``payload`` dict so the
command layer can serialize it as machine-readable JSON on stderr.
"""

from __future__ import annotations


class ColorgamesError(Exception):
    """Base class for all package-specific errors."""

    code = "error"

    def __init__(self, message: str, **payload):
        super().__init__(message)
        self.message = message
        self.payload = dict(payload)

    def to_json_dict(self) -> dict:
        d = {"error": self.code, "message": self.message}
        d.update(self.payload)
        return d


class ValidationError(ColorgamesError):
    """Input data violates a structural contract (bad graph, bad scenario...)."""

    code = "validation"


class ProtocolViolation(ColorgamesError):
    """A game participant made an illegal move or broke an obligation."""

    code = "protocol"


class ResourceBudgetError(ColorgamesError):
    """An exact computation exceeded its node/scenario/time budget.

    Carries whatever partial information was established (typically a
    lower/upper bracket) so callers can degrade gracefully.
    """

    code = "budget"
