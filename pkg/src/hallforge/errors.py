"""Shared exception types."""


class HallforgeError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(HallforgeError):
    """Invalid user-facing configuration (quiver files, charges, bounds, flags)."""


class ResourceLimitError(HallforgeError):
    """An enumeration would exceed the configured desk-scale bounds."""


class InternalInconsistencyError(HallforgeError):
    """Two routes that must agree produced different answers; signals a bug."""
