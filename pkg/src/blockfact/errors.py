"""Exception types shared across the package."""

from __future__ import annotations


class BlockfactError(Exception):
    """Base class for package errors."""


class InstanceError(BlockfactError, ValueError):
    """A config document is malformed; ``path`` names the offending field."""

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}")


class ResourceCapError(BlockfactError, RuntimeError):
    """A search was refused because it exceeds a configured size cap."""


class UnsupportedInstanceError(BlockfactError, ValueError):
    """An operation's precondition on the instance shape is not met."""
