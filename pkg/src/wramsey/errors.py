"""Error taxonomy shared by all modules.

The CLI maps these onto exit codes: InputError -> 2, CapabilityError -> 3,
CertificateError -> 4.  ContractViolationError signals that a caller handed
an algorithm data that breaks its stated precondition.
"""


class WramseyError(Exception):
    """Base class for all library errors."""


class InputError(WramseyError, ValueError):
    """Malformed or out-of-range input (bad index, bad file, bad flag)."""


class CapabilityError(WramseyError):
    """Request is well-formed but outside the supported size regime."""


class ContractViolationError(WramseyError):
    """A precondition of a constructive algorithm does not hold."""


class CertificateError(WramseyError):
    """An exactness or feasibility certificate failed to verify."""
