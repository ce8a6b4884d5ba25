from typing import Tuple


class SegScoreError(Exception):
    """Base class for every error raised by segscore"""


class InputValidationError(SegScoreError):
    """Inputs violate a precondition of an operation"""


class DimensionMismatchError(InputValidationError):
    """Two maps or masks that must share a shape do not"""

    def __init__(self, first: Tuple[int, int], second: Tuple[int, int]):
        self.first = first
        self.second = second
        super().__init__(
            f"Dimension mismatch: {first[0]}x{first[1]} vs {second[0]}x{second[1]} (width x height)"
        )


class UnknownLabelError(InputValidationError):
    """A foreground selector names a label absent from the map"""

    def __init__(self, label: int):
        self.label = label
        super().__init__(f"Label {label} does not occur in the label map")


class EmptySetError(InputValidationError):
    """A point or pixel set that must be non-empty is empty"""


class InvalidLabelMapError(InputValidationError):
    """Label grid is not a non-empty 2-D grid of non-negative integers"""


class UnsupportedFormatError(InputValidationError):
    """Label map file uses a pixel format other than 8-bit single channel"""


class FixtureError(InputValidationError):
    """Fixture geometry is invalid or does not fit its canvas"""


class SegScoreIOError(SegScoreError):
    """Reading or writing a file failed"""
