import enum

from conv_app.api.convolution.dft_ref import dft_convolve, dft_required_bytes
from conv_app.api.convolution.dnc import dnc_convolve, dnc_required_bytes
from conv_app.api.convolution.naive import naive_convolve, naive_required_bytes
from conv_app.api.tensors.limits import DEFAULT_LEAF_DIM, DEFAULT_MEMORY_CAP_BYTES


class ConvMethod(enum.Enum):
    """The three convolution engines."""
    NAIVE = "naive"
    DNC = "dnc"
    DFT = "dft"

    def __str__(self):
        return self.value


def required_bytes(method, dim, *, leaf_dim=DEFAULT_LEAF_DIM):
    """Allocation plan of one convolution call with `method` at dimension `dim`."""
    method = ConvMethod(method)
    if method is ConvMethod.NAIVE:
        return naive_required_bytes(dim)
    if method is ConvMethod.DNC:
        return dnc_required_bytes(dim, leaf_dim)
    return dft_required_bytes(dim)


def convolve(x, y, method=ConvMethod.DNC, *, memory_cap=DEFAULT_MEMORY_CAP_BYTES, leaf_dim=DEFAULT_LEAF_DIM):
    """
    Convolve two hypercubes with the selected engine.

    Args:
        x (Hypercube): Left operand.
        y (Hypercube): Right operand.
        method (ConvMethod | str): "naive", "dnc" or "dft".
        memory_cap (int): Allocation limit in bytes.
        leaf_dim (int): Leaf depth of the divide-and-conquer kernel.

    Returns:
        ResultTensor: The convolution result.
    """
    method = ConvMethod(method)
    if method is ConvMethod.NAIVE:
        return naive_convolve(x, y, memory_cap=memory_cap)
    if method is ConvMethod.DNC:
        return dnc_convolve(x, y, memory_cap=memory_cap, leaf_dim=leaf_dim)
    return dft_convolve(x, y, memory_cap=memory_cap)
