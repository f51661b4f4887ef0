"""
Error hierarchy shared by the arithmetic kernel, the pairing and the CLI.
"""


class SymbolError(Exception):
    """Base class for every failure raised by the symbols app"""


class RingError(SymbolError):
    """Invalid coefficient ring parameters (non-prime p, p = 2, bad f or N)"""


class ShapeError(SymbolError):
    """An argument does not have the shape an operation requires"""


class WindowTooSmall(SymbolError):
    """A needed coefficient lies outside the guaranteed window"""


class PrecisionFault(SymbolError):
    """An integrality or divisibility assertion failed"""


class StabilizationError(SymbolError):
    """No two successive precision plans produced the same value"""


class ElementSyntaxError(SymbolError):
    """Text is not in the element grammar"""


class DecompositionError(SymbolError):
    """A unit could not be written over the Shafarevich basis"""


class SearchFailure(SymbolError):
    """An exhaustive search found no witness"""
