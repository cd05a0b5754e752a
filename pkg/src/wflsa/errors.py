"""Exception types raised by the wflsa package."""


class WflsaError(Exception):
    """Base class for all wflsa errors."""


class NonSquareError(WflsaError):
    """Weight matrix input is not square."""


class AsymmetricMatrixError(WflsaError):
    """Weight matrix violates symmetry beyond tolerance."""


class NegativeWeightError(WflsaError):
    """Weight matrix contains a negative entry."""


class NonzeroDiagonalError(WflsaError):
    """Weight matrix has a nonzero diagonal entry."""


class DimensionMismatchError(WflsaError):
    """Vector or matrix dimensions do not agree."""


class TooLargeError(WflsaError):
    """Problem size exceeds a guard intended for desk-scale verification."""


class PatchLargerThanImageError(WflsaError):
    """Requested patch does not fit inside the image."""


class EvenWindowError(WflsaError):
    """Median filter window dimensions must be odd."""


class WindowLargerThanImageError(WflsaError):
    """Median filter window does not fit inside the image."""


class ParseError(WflsaError):
    """An input file failed to parse. Carries the offending file and line."""

    def __init__(self, path, line, message):
        self.path = path
        self.line = line
        super().__init__(f"{path}:{line}: {message}" if line else f"{path}: {message}")
