"""Shared exception types."""


class GraphFormatError(ValueError):
    """Malformed graph6, edge-list, property or hypergraph input."""


class PropertyError(ValueError):
    """Invalid property definition or a property precondition violated."""


class EnumerationBoundError(RuntimeError):
    """An exhaustive enumeration would exceed its configured bound."""


class GadgetError(RuntimeError):
    """A gadget construction precondition failed."""


class GadgetVerificationError(GadgetError):
    """A built gadget failed its brute-force verification."""


class ReductionError(ValueError):
    """Hypergraph/property-pair mismatch in the reduction."""


class CertificateError(RuntimeError):
    """A colouring or lifted certificate failed validation."""
