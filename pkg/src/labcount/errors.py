"""Exception hierarchy shared by the library and the command line."""

from __future__ import annotations


class LabcountError(Exception):
    """Base class for all errors raised by labcount."""

    exit_code = 1


class UsageError(LabcountError, ValueError):
    """Arguments are well-formed but not meaningful for the operation."""

    exit_code = 2


class InputError(LabcountError, ValueError):
    """Malformed input data (graph files, sequences, block syntax)."""

    exit_code = 3


class GuardrailError(LabcountError):
    """Refusal to start a computation whose size exceeds a resource guardrail.

    Pass ``force=True`` (``--force`` on the command line) to override.
    """

    exit_code = 4


def check_guardrail(size: int, limit: int, what: str, force: bool = False) -> None:
    if size > limit and not force:
        raise GuardrailError(f"{what}: {size} exceeds guardrail {limit} (use force to override)")
