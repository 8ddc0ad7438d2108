from dataclasses import dataclass
import math

from conv_app.api.tensors.models import ResultTensor
from conv_app.errors import ContractError, DomainError


@dataclass(frozen=True)
class CarryFreeResult:
    """
    Ternary-indexed products of a carry-free 1D convolution.

    Attributes:
        dim (int): log2 of the input vector length.
        tensor (ResultTensor): Cell k holds Σ u[i] * v[j] over bit vectors
            with digit-wise i + j = k.
    """
    dim: int
    tensor: ResultTensor

    def __post_init__(self):
        if self.tensor.dim != self.dim:
            raise ContractError(f"tensor dimension {self.tensor.dim} differs from {self.dim}")


@dataclass(frozen=True)
class PNormConfig:
    """
    Parameters of a p-norm max-convolution.

    Attributes:
        p (float): Norm exponent, at least 1.
        value_bound (int | None): Largest input magnitude covered by the
            exactness guarantee, when the caller has one.
    """
    p: float
    value_bound: int = None

    def __post_init__(self):
        if not math.isfinite(self.p) or self.p < 1:
            raise DomainError(f"p must be a finite number >= 1, got {self.p}")
        if self.value_bound is not None and (
            isinstance(self.value_bound, bool) or not isinstance(self.value_bound, int) or self.value_bound < 1
        ):
            raise DomainError(f"value_bound must be a positive integer, got {self.value_bound!r}")

    @property
    def is_power_of_two(self):
        p = self.p
        return float(p).is_integer() and int(p) & (int(p) - 1) == 0
