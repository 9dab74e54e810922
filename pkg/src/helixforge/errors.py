"""Exception types raised by helixforge."""


class HelixForgeError(ValueError):
    """Base class for all job/geometry validation errors."""


class InvalidTolerance(HelixForgeError):
    pass


class InvalidCount(HelixForgeError):
    pass


class CutterTooLarge(HelixForgeError):
    pass


class ZeroRevolutions(HelixForgeError):
    pass


class EmptyToolpath(HelixForgeError):
    pass


class DegenerateSegment(HelixForgeError):
    pass


class IoFailure(OSError):
    """Writing an NC/CSV/SVG file failed; ``__cause__`` holds the OS error."""
