"""
Exception hierarchy shared by every hypercube convolution module.

Each class carries the exit status the management commands report when
the error escapes to the command line: 1 for usage, format and domain
problems, 2 for capacity and infeasibility problems.
"""


class HypercubeError(Exception):
    """Base class for all errors raised by the convolution library."""
    exit_code = 1


class InvalidIndexError(HypercubeError, ValueError):
    """A binary or ternary index has a digit out of range or is out of bounds."""


class FormatError(HypercubeError, ValueError):
    """
    A HCUBE/TCUBE/VEC stream could not be parsed.

    Attributes:
        line (int | None): 1-based line number of the offending token.
        offset (int | None): 0-based token offset within the value section.
    """

    def __init__(self, message, line=None, offset=None):
        location = []
        if line is not None:
            location.append(f"line {line}")
        if offset is not None:
            location.append(f"token {offset}")
        if location:
            message = f"{message} ({', '.join(location)})"
        super().__init__(message)
        self.line = line
        self.offset = offset


class DimensionError(HypercubeError, ValueError):
    """Operands have different dimensions, or a dimension is out of range."""


class ShapeError(HypercubeError, ValueError):
    """A flat vector does not have a power-of-two length."""


class DomainError(HypercubeError, ValueError):
    """An input value lies outside the domain of the operation."""


class ContractError(HypercubeError, ValueError):
    """A caller violated a buffer-size or data-coverage contract."""


class CapacityError(HypercubeError, MemoryError):
    """The operation would allocate more than the configured memory cap."""
    exit_code = 2

    def __init__(self, message, required_bytes=None, cap_bytes=None):
        super().__init__(message)
        self.required_bytes = required_bytes
        self.cap_bytes = cap_bytes


class PNormOverflowError(HypercubeError, OverflowError):
    """
    The p-th powers of the inputs would leave the double exponent range.

    Attributes:
        max_p (float): Largest p for which the computation stays finite.
    """
    exit_code = 2

    def __init__(self, message, max_p):
        super().__init__(f"{message}; largest usable p is {max_p:.6g}")
        self.max_p = max_p


class InfeasibleError(HypercubeError):
    """
    No p satisfies the exactness bound within the available resources.

    Attributes:
        required_p (int): The p the exactness bound asks for.
        limit (int): The largest p the resources allow.
    """
    exit_code = 2

    def __init__(self, message, required_p, limit):
        super().__init__(f"{message} (required p={required_p}, limit p={limit})")
        self.required_p = required_p
        self.limit = limit


class ScalingError(HypercubeError):
    """A runtime ratio between consecutive dimensions left the expected window."""
