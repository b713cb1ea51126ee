"""Error taxonomy shared by the library and the CLI.

Every failure the library raises on purpose is a LottoError carrying a
short machine-readable ``category``; the CLI renders it on stderr as
``error[category]: message`` and maps it to an exit code.
"""

from __future__ import annotations


class LottoError(Exception):
    """Base class for all deliberate failures."""

    category = "error"


class ValidationError(LottoError):
    """Malformed value or broken structural invariant in an input object."""

    category = "validation"


class DomainError(LottoError):
    """Arguments outside the mathematical domain of an operation."""

    category = "domain"


class UnsupportedSchemeError(LottoError):
    """Scheme shape the closed-form machinery does not cover."""

    category = "unsupported-scheme"


class ParseError(LottoError):
    """Design-file syntax error; pinpoints line and offending token."""

    category = "parse"

    def __init__(self, message: str, line_number: int | None = None,
                 token: str | None = None):
        self.line_number = line_number
        self.token = token
        where = f"line {line_number}: " if line_number is not None else ""
        tok = f" (token {token!r})" if token is not None else ""
        super().__init__(f"{where}{message}{tok}")


class ResourceLimitError(LottoError):
    """Work or memory would exceed a configured cap; message says which knob to raise."""

    category = "resource"


class ConstructionError(LottoError):
    """Greedy construction stopped before reaching a full cover.

    ``partial_design`` holds the blocks selected so far (may be None when
    nothing was selected).
    """

    category = "construction"

    def __init__(self, message: str, partial_design=None):
        self.partial_design = partial_design
        super().__init__(message)
