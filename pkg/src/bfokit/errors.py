"""Exception types shared across the package.

The CLI maps these onto exit codes: ParseError/ConfigError -> 2,
DomainError -> 3. Anything else is a bug.
"""

from __future__ import annotations


class BfokitError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(BfokitError, ValueError):
    """Numerically invalid input: out-of-span time, coincident points,
    empty sample sets, ill-ordered bounds and so on."""


class ConfigError(BfokitError, ValueError):
    """Analysis configuration is missing, malformed or inconsistent."""


class ParseError(BfokitError, ValueError):
    """A data file could not be parsed.

    ``problems`` is a list of (line_number, message) pairs; line numbers
    are 1-based and refer to the physical file.
    """

    def __init__(self, path, problems):
        self.path = str(path)
        self.problems = list(problems)
        lines = "; ".join(f"line {n}: {msg}" for n, msg in self.problems)
        super().__init__(f"{self.path}: {lines}")
