"""Exceptions shared across the library."""


class CapacityError(RuntimeError):
    """An exact computation would exceed its configured size limit."""


class InfeasibleError(ValueError):
    """A subnetwork instance cannot meet its degree requirement."""
