"""
Exception hierarchy for akschur.

Library code raises these; cli.py maps them to exit code 2.
"""


class AkSchurError(ValueError):
    """Base class for all akschur errors."""


class InvalidInputError(AkSchurError):
    """Malformed partition, multipartition or parameter input."""


class InvalidNodeError(AkSchurError):
    def __init__(self, node, shape) -> None:
        super().__init__(f"node not in diagram | Node={tuple(node)} | Shape={tuple(shape)}")


class SymbolLengthError(AkSchurError):
    def __init__(self, L: int, length: int) -> None:
        super().__init__(f"L smaller than length | L={L} | Length={length}")


class ArityMismatchError(AkSchurError):
    pass


class ZeroDenominatorError(AkSchurError):
    pass


class PoleError(AkSchurError):
    """Raised when an unreduced quotient is evaluated at a zero of its denominator."""

    def __init__(self) -> None:
        super().__init__(
            "specialization hits a pole of the unreduced representation; use the factored form instead"
        )


class IndexOrderError(AkSchurError):
    def __init__(self, s: int, t: int, d: int) -> None:
        super().__init__(f"expected 0 <= s < t <= d-1 | s={s} | t={t} | d={d}")


class OutOfRangeError(AkSchurError):
    pass
