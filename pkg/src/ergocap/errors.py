"""Shared error types."""

from __future__ import annotations


class InternalVerificationError(RuntimeError):
    """A construction failed one of its own built-in exactness checks.

    These checks guard conclusions that hold by theorem for valid inputs,
    so this error means a library bug (or a genuinely broken input that
    slipped past validation), never a property of the data.
    """
