class HexmassError(Exception):
    """Base class for errors raised by this package."""


class InvalidElementError(HexmassError, ValueError):
    """Element fails the orientation check (centroid metric not positive)."""


class ElementFileError(HexmassError, ValueError):
    """Element file could not be parsed or has the wrong structure."""
