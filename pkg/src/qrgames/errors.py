"""Exception types shared across the package."""


class QRGamesError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(QRGamesError):
    """Malformed game text or an invalid game definition.

    ``line`` is the 1-based line number when the problem is tied to a
    specific input line, otherwise None.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CapExceeded(QRGamesError):
    """An enumeration or search exceeded its configured budget."""


class LassoError(QRGamesError):
    """A lasso witness is structurally invalid (discontinuous path,
    profile outside the action alphabets, or a non-simple cycle)."""


class FragmentError(QRGamesError):
    """A polynomial fast path was invoked on a game outside its fragment."""
