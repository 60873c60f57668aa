"""Exception types shared across the package."""


class SGModelError(Exception):
    """Base class for all package errors."""


class DomainError(SGModelError, ValueError):
    """An argument is outside the mathematical domain of the operation."""


class RangeError(SGModelError, ValueError):
    """A value falls outside the representable/tabulated range."""


class CapabilityError(SGModelError, RuntimeError):
    """The requested operation is not available for these inputs."""


class KernelError(SGModelError, RuntimeError):
    """The covariance kernel violates a required property (symmetry/PSD)."""


class RankError(SGModelError, RuntimeError):
    """More eigenpairs requested than the discretization resolves."""


class DegeneracyError(SGModelError, RuntimeError):
    """Eigenpair matching across grids failed (crossing or degeneracy)."""


class StaleArtifactError(SGModelError, RuntimeError):
    """A derived artifact no longer matches its configuration hash."""


class ConfigError(SGModelError, ValueError):
    """A configuration file is malformed or inconsistent."""


class InfeasibleTargetError(SGModelError, ValueError):
    """The accuracy target cannot be met by any finite model."""
