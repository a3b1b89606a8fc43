"""Exception hierarchy shared by the package."""


class GeodecompError(Exception):
    """Base class for every error raised by this package."""


class GraphError(GeodecompError, ValueError):
    """Malformed graph input: self-loop, out-of-range id, duplicate edge, bad file."""


class PathError(GeodecompError, ValueError):
    """A vertex sequence is not a path of the host graph, or violates a precondition."""


class CoverError(GeodecompError, ValueError):
    """A covering family does not verify against its graph."""

    def __init__(self, message, *, uncovered=(), non_shortest=()):
        super().__init__(message)
        self.uncovered = list(uncovered)
        self.non_shortest = list(non_shortest)


class CertificateError(GeodecompError, RuntimeError):
    """An internally constructed certificate failed its independent check.

    Valid input never triggers this; it points at a bug (or a gap in the
    underlying argument) and carries the offending object for diagnosis.
    """

    def __init__(self, message, *, certificate=None, claim=None, block=None):
        super().__init__(message)
        self.certificate = certificate
        self.claim = claim
        self.block = block


class CapExceeded(GeodecompError, ValueError):
    """An exact solver was asked to handle more vertices than its configured cap."""
