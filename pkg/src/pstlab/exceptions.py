"""Exception types shared across the package."""


class PstlabError(Exception):
    """Base class for all package errors."""


class InvalidSizeError(PstlabError, ValueError):
    """A size/dimension argument is outside its allowed range."""


class UnsupportedBaseError(PstlabError, ValueError):
    """Hypercube base chain must have one or two links."""


class NotColumnRegularError(PstlabError, ValueError):
    """Graph violates the column-regularity conditions."""


class UnsupportedWeightsError(PstlabError, ValueError):
    """Edge weights are outside what an operation supports."""


class DomainError(PstlabError, ValueError):
    """A numeric argument is outside the operation's domain."""


class NormalizationError(PstlabError, ValueError):
    """A state vector or amplitude pair is not normalized."""


class ContractViolationError(PstlabError, ValueError):
    """An input breaks a documented precondition (e.g. non-Hermitian matrix)."""


class DegenerateSpectrumError(PstlabError, ValueError):
    """All eigenvalues coincide; ratio tests are undefined."""


class SymmetrySearchInconclusive(PstlabError):
    """Symmetry search exhausted its node budget without a definite answer.

    Distinct from a completed search that proves no witness exists.
    """


class PerfectTransferRequiredError(PstlabError, ValueError):
    """Operation requires a Hamiltonian certified for perfect transfer."""


class TransferBrokenError(PstlabError, ValueError):
    """Transfer modulus fell below unity where perfection was required."""


class ConfigurationError(PstlabError, ValueError):
    """Inconsistent configuration (e.g. mismatched chain lengths)."""
