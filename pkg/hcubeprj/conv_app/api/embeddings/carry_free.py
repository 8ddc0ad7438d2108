"""
Carry-free 1D convolution through the hypercube embedding.

A vector of length 2^D is a hypercube whose axes are the bits of the
index, most significant first; with that convention the embedding is
the identity on flat storage. Convolving the hypercubes adds indices
bit by bit without carries, so indices 7 = (1,1,1) and 5 = (1,0,1) meet
at the ternary cell (2,1,2). Applying the carries afterwards collapses
every cell onto Σ k_a · 2^(D-a) and recovers ordinary convolution.
"""
import numpy as np

from conv_app.api.convolution.dnc import dnc_convolve
from conv_app.api.embeddings.models import CarryFreeResult
from conv_app.api.tensors.indexing import carried_index_table
from conv_app.api.tensors.models import Hypercube
from conv_app.errors import ShapeError


def embed_vector(v):
    """
    View a vector of 2^D reals as a D-dimensional hypercube.

    Raises:
        ShapeError: If the length is not a power of two >= 2.
    """
    return Hypercube.from_flat(np.asarray(v, dtype=np.float64).reshape(-1))


def carry_free_convolve(u, v, **kwargs):
    """
    Convolve two vectors with carry-free index addition.

    Keyword arguments are passed to `dnc_convolve`.

    Raises:
        ShapeError: If the lengths differ or are not powers of two.

    Returns:
        CarryFreeResult: The ternary-indexed products.
    """
    u = np.asarray(u, dtype=np.float64).reshape(-1)
    v = np.asarray(v, dtype=np.float64).reshape(-1)
    if u.size != v.size:
        raise ShapeError(f"vector lengths differ: {u.size} and {v.size}")
    x = embed_vector(u)
    y = embed_vector(v)
    return CarryFreeResult(x.dim, dnc_convolve(x, y, **kwargs))


def apply_carries(r):
    """
    Collapse each ternary cell onto the integer its digits carry into.

    Returns:
        numpy.ndarray: 2 * 2^D - 1 values equal to the ordinary convolution
        of the original vectors.
    """
    targets = carried_index_table(r.dim)
    return np.bincount(targets, weights=r.tensor.data, minlength=2 * 2**r.dim - 1)


def naive_convolve_1d(u, v):
    """Ordinary 1D convolution Σ_{i+j=m} u[i] * v[j], used as the reference."""
    return np.convolve(np.asarray(u, dtype=np.float64), np.asarray(v, dtype=np.float64))
