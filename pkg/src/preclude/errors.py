"""Exception hierarchy shared by all modules."""


class PrecludeError(Exception):
    """Base class for every error raised by this package."""


class GraphError(PrecludeError, ValueError):
    pass


class DuplicateEdge(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class EndpointOutOfRange(GraphError):
    pass


class SizeCapExceeded(PrecludeError):
    pass


class CapExceeded(PrecludeError):
    """Raised when perfect matching enumeration overflows its cap.

    ``count`` holds the number of matchings found before giving up.
    """

    def __init__(self, message, count=0):
        super().__init__(message)
        self.count = count


class OddOrder(PrecludeError, ValueError):
    pass


class NotBipartite(PrecludeError, ValueError):
    pass


class NotRegular(PrecludeError, ValueError):
    pass


class NotRegularBipartite(NotRegular):
    pass


class UnbalancedSides(PrecludeError, ValueError):
    pass


class NoPerfectMatching(PrecludeError):
    pass


class MissingTerminals(PrecludeError, ValueError):
    pass


class InvalidSpec(PrecludeError, ValueError):
    pass
