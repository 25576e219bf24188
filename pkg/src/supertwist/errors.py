"""Exception hierarchy shared by all kernel modules."""


class KernelError(Exception):
    """Base class for every error raised by the kernel."""


class ConfigurationError(KernelError):
    """Incompatible objects combined, e.g. mismatched truncation orders."""


class SchemaError(KernelError):
    """Malformed input data: unknown basis names, bad indices, bad files."""


class NotInvertible(KernelError):
    """Inversion attempted on an element without the required leading term."""


class EvennessViolation(KernelError):
    """An element that must be parity-even has an odd component."""


class UInverseMismatch(KernelError):
    """The two closed formulas for u and its inverse are not mutually inverse."""


class InvalidTwist(KernelError):
    """A twist failed its validity gate (leading term, cocycle identity)."""


class DegreeCapExceeded(KernelError):
    """A word exceeded the configured rewriting degree cap."""
