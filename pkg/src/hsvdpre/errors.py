"""Exception types shared across the package."""


class HsvdpreError(Exception):
    """Base class for package-specific failures."""


class ParseError(HsvdpreError):
    """A file (FID text format, phantom JSON) failed to parse or validate."""


class NumericalError(HsvdpreError):
    """A numerical routine failed (non-convergence) or an operation could
    not produce a meaningful result for the given data."""
