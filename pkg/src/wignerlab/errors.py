"""Exception types shared across the package.

Three failure families are distinguished so that callers (and the CLI exit
code mapping) can react appropriately:

* :class:`ConfigurationError` -- a spec, flag, or parameter set is malformed
  before any numerics run.
* :class:`DomainError` -- an argument is outside the mathematical domain of
  an operation (index out of range, interval reversed, ...).
* :class:`NumericError` -- a numerical routine failed to deliver the
  requested accuracy (non-convergence, quadrature failure).
"""

from __future__ import annotations


class WignerLabError(Exception):
    """Base class for all package errors."""


class ConfigurationError(WignerLabError, ValueError):
    """Malformed distribution, experiment, or CLI configuration."""


class DomainError(WignerLabError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class NumericError(WignerLabError, RuntimeError):
    """A numerical routine failed to converge or meet its tolerance."""
