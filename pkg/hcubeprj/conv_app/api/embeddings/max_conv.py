"""
Max-convolution on hypercubes through p-norms.

For non-negative inputs, (Σ_{i+j=k} (x[i] y[j])^p)^(1/p) lies between the
true maximum m_k and m_k * n_k^(1/p), where n_k = 2^(number of digits of
k equal to 1) is how many pairs meet in cell k. With bounded integer
inputs and p large enough, rounding the estimate recovers m_k exactly.
"""
import logging
import math
import sys

import numpy as np

from conv_app.api.convolution.dnc import dnc_convolve_arrays, dnc_required_bytes
from conv_app.api.embeddings.models import PNormConfig
from conv_app.api.tensors.indexing import binary_to_ternary_table, ones_digit_count_table
from conv_app.api.tensors.limits import (
    DEFAULT_LEAF_DIM,
    DEFAULT_MEMORY_CAP_BYTES,
    check_same_dim,
    ensure_capacity,
)
from conv_app.api.tensors.models import ResultTensor
from conv_app.errors import DomainError, InfeasibleError, PNormOverflowError

logger = logging.getLogger(__name__)

LOG_DOUBLE_MIN = math.log(sys.float_info.min)

# bytes a CPython int of n bits occupies, roughly: header plus 30-bit digits
INT_OBJECT_OVERHEAD = 28
# object buffers of 3^D cells alive at once: the result and four leaf buffers
EXACT_BUFFERS_PER_CELL = 5
# mantissa bits the middle-slab subtractions may consume, and bits kept for the estimate
MANTISSA_BITS = 52
SAFETY_BITS = 22


def pair_counts(dim):
    """Number of (i, j) pairs meeting in each result cell: 2^(#digits equal to 1)."""
    return np.left_shift(1, ones_digit_count_table(dim))


def pnorm_relative_bounds(dim, p):
    """Per-cell relative error bound 1 - n_k^(-1/p) of the p-norm estimate."""
    return 1.0 - pair_counts(dim).astype(np.float64) ** (-1.0 / p)


def max_convolve_naive(x, y):
    """Brute-force max_{i+j=k} x[i] * y[j] over every pair; the reference."""
    dim = check_same_dim(x, y)
    offsets = binary_to_ternary_table(dim)
    z = np.zeros(3**dim, dtype=np.float64)
    for i, x_i in enumerate(x.data):
        targets = offsets[i] + offsets
        z[targets] = np.maximum(z[targets], x_i * y.data)
    return ResultTensor.adopt(dim, z)




def _check_non_negative(x, y):
    for name, cube in (("x", x), ("y", y)):
        bad = np.flatnonzero(~(np.isfinite(cube.data) & (cube.data >= 0)))
        if bad.size:
            raise DomainError(
                f"{name} has a negative or non-finite entry {cube.data[bad[0]]!r} at flat index {bad[0]}"
            )


def _float_power(values, cfg):
    if cfg.is_power_of_two:
        powered = np.array(values)
        for _ in range(int(cfg.p).bit_length() - 1):
            np.multiply(powered, powered, out=powered)
        return powered
    return np.power(values, cfg.p)


def _float_root(values, cfg):
    if cfg.is_power_of_two:
        for _ in range(int(cfg.p).bit_length() - 1):
            np.sqrt(values, out=values)
        return values
    return np.power(values, 1.0 / cfg.p, out=values)


def _unit_exponent(data):
    """Exponent e with max(data) * 2^-e in [0.5, 1); 0 for an all-zero operand."""
    peak = float(np.max(data))
    return math.frexp(peak)[1] if peak > 0 else 0


def _check_power_range(xs, ys, cfg):
    """
    Reject a p whose smallest product underflows once raised to the p-th power.

    Both operands are already scaled to a maximum below 1, so no power or
    marginal sum can overflow; only the low end of the range is at risk.
    """
    logs = [math.log(float(np.min(v[v > 0]))) for v in (xs, ys) if np.any(v > 0)]
    if len(logs) < 2:
        return
    lowest = sum(logs)
    if lowest < 0 and cfg.p * lowest < LOG_DOUBLE_MIN:
        raise PNormOverflowError(
            f"p={cfg.p} takes the smallest products below the double range",
            max_p=LOG_DOUBLE_MIN / lowest,
        )


def _max_convolve_float(x, y, cfg, leaf_dim):
    x_exp, y_exp = _unit_exponent(x.data), _unit_exponent(y.data)
    xs, ys = np.ldexp(x.data, -x_exp), np.ldexp(y.data, -y_exp)
    _check_power_range(xs, ys, cfg)
    z = dnc_convolve_arrays(_float_power(xs, cfg), _float_power(ys, cfg), x.dim, leaf_dim=leaf_dim)
    # cancellation in the middle slabs can leave tiny negatives
    np.maximum(z, 0.0, out=z)
    _float_root(z, cfg)
    return np.ldexp(z, x_exp + y_exp)


def _float_kernel_loses_cells(x, y, cfg):
    """
    True when middle-slab cancellation can swamp the smaller cells.

    The subtractive kernel keeps a cell only if its powered products are
    within the mantissa of the largest powered product sharing its slab.
    A zero entry next to non-zero ones is an unbounded spread.
    """
    spread = 0.0
    for cube in (x, y):
        nonzero = cube.data[cube.data > 0]
        if nonzero.size == 0:
            return False
        if nonzero.size < cube.data.size:
            return True
        spread += math.log2(float(nonzero.max()) / float(nonzero.min()))
    return cfg.p * spread + 2 * x.dim + SAFETY_BITS > MANTISSA_BITS


def _integer_values(cube, name):
    data = cube.data
    if not np.all(np.isfinite(data)) or not np.all(data == np.floor(data)):
        raise DomainError(f"{name} must hold integers for exact arithmetic")
    return [int(v) for v in data]


def _dyadic_integers(data):
    """Write non-negative doubles as integers over one power-of-two denominator, exactly."""
    ratios = [float(v).as_integer_ratio() for v in data]
    denominator = max(d for _, d in ratios)
    return [n * (denominator // d) for n, d in ratios], denominator


def exact_accumulator_bytes(dim, p, product_bits):
    """Rough footprint of the arbitrary-precision kernel for products of `product_bits` bits."""
    bits = p * product_bits + dim
    return EXACT_BUFFERS_PER_CELL * 3**dim * (INT_OBJECT_OVERHEAD + bits // 8)


def _exact_plan(x, y, cfg):
    xs, x_den = _dyadic_integers(x.data)
    ys, y_den = _dyadic_integers(y.data)
    product_bits = max(xs).bit_length() + max(ys).bit_length()
    return xs, ys, math.log(x_den) + math.log(y_den), exact_accumulator_bytes(x.dim, int(cfg.p), product_bits)


def _max_convolve_exact(x, y, cfg, plan, leaf_dim):
    p = int(cfg.p)
    xs, ys, log_denominator, _ = plan
    sums = dnc_convolve_arrays(
        np.array([v**p for v in xs], dtype=object),
        np.array([v**p for v in ys], dtype=object),
        x.dim,
        dtype=object,
        leaf_dim=leaf_dim,
    )
    return np.array(
        [0.0 if s == 0 else math.exp(math.log(s) / p - log_denominator) for s in sums], dtype=np.float64
    )


def max_convolve_pnorm(x, y, cfg, *, exact=None, memory_cap=DEFAULT_MEMORY_CAP_BYTES, leaf_dim=DEFAULT_LEAF_DIM):
    """
    Approximate max-convolution by the p-norm of each cell's products.

    The inputs are raised to the p-th power, convolved with the
    divide-and-conquer kernel and the p-th root is taken cell by cell.
    In doubles each operand is first scaled by a power of two so that its
    maximum lies in [0.5, 1); the scale is undone after the root.
    Power-of-two p uses repeated squaring and repeated square roots.

    With p = 1 the result is the plain divide-and-conquer convolution.

    Args:
        x (Hypercube): Non-negative left operand.
        y (Hypercube): Non-negative right operand.
        cfg (PNormConfig): The exponent.
        exact (bool | None): True runs the kernel over arbitrary-precision
            integers (every double is an integer over a power of two),
            which needs an integral p. False forces doubles. None picks
            the exact kernel when cancellation in doubles could drop
            cells, p is integral and the plan fits `memory_cap`.
        memory_cap (int): Allocation limit in bytes.
        leaf_dim (int): Leaf depth of the kernel.

    Raises:
        DomainError: On a negative or non-finite entry, or a fractional p
            with `exact`.
        PNormOverflowError: If the p-th powers leave the double range.
        CapacityError: If the allocation plan exceeds `memory_cap`.

    Returns:
        ResultTensor: Cell k estimates max_{i+j=k} x[i] * y[j] within a
        relative error of 1 - n_k^(-1/p).
    """
    dim = check_same_dim(x, y)
    _check_non_negative(x, y)
    integral_p = float(cfg.p).is_integer()

    if exact and not integral_p:
        raise DomainError(f"exact arithmetic needs an integral p, got {cfg.p}")

    plan = None
    if exact is None:
        exact = False
        if cfg.p != 1 and _float_kernel_loses_cells(x, y, cfg):
            if integral_p:
                plan = _exact_plan(x, y, cfg)
                exact = plan[3] <= memory_cap
            if not exact:
                logger.warning("p=%s in doubles may lose small cells to cancellation at D=%d", cfg.p, dim)

    if exact:
        plan = plan or _exact_plan(x, y, cfg)
        ensure_capacity(plan[3], memory_cap, "exact p-norm convolution")
        logger.debug("p-norm convolution at D=%d, p=%s over exact integers", dim, cfg.p)
        return ResultTensor.adopt(dim, _max_convolve_exact(x, y, cfg, plan, leaf_dim))

    ensure_capacity(dnc_required_bytes(dim, leaf_dim), memory_cap, "p-norm convolution")
    if cfg.p == 1:
        return ResultTensor.adopt(dim, dnc_convolve_arrays(x.data, y.data, dim, leaf_dim=leaf_dim))
    return ResultTensor.adopt(dim, _max_convolve_float(x, y, cfg, leaf_dim))


def exact_int_p(dim, value_bound):
    """
    Smallest power-of-two p with (2^(dim/p) - 1) * value_bound^2 < 0.5.

    The estimate of a cell with maximum m is at most m * 2^(dim/p), so
    this keeps its absolute error below 1/2 for every m <= value_bound^2.

    Returns:
        int: The exponent p.
    """
    # (2^(D/p) - 1) B^2 < 1/2  <=>  p > D ln 2 / ln(1 + 1/(2 B^2))
    threshold = dim * math.log(2.0) / math.log1p(0.5 / value_bound**2)
    m = max(0, math.ceil(math.log2(threshold)))
    while 2**m <= threshold:
        m += 1
    return 2**m


def max_convolve_exact_int(x, y, value_bound, *, memory_cap=DEFAULT_MEMORY_CAP_BYTES, leaf_dim=DEFAULT_LEAF_DIM):
    """
    Exact max-convolution of integer hypercubes with entries in [0, value_bound].

    Picks p with `exact_int_p` so that the absolute error of the p-norm
    estimate stays below 1/2 on every cell, then rounds.

    Raises:
        DomainError: If an entry is not an integer in [0, value_bound].
        InfeasibleError: If the accumulators for the required p do not fit
            the memory cap.

    Returns:
        ResultTensor: max_{i+j=k} x[i] * y[j] for every cell k.
    """
    # PNormConfig rejects a non-positive or non-integral bound
    bound = PNormConfig(1.0, value_bound).value_bound
    dim = check_same_dim(x, y)
    _check_non_negative(x, y)
    for name, cube in (("x", x), ("y", y)):
        _integer_values(cube, name)
        if np.max(cube.data) > bound:
            raise DomainError(f"{name} has an entry above value_bound={bound}")

    p = exact_int_p(dim, bound)
    product_bits = 2 * bound.bit_length()
    if exact_accumulator_bytes(dim, p, product_bits) > memory_cap:
        limit = 1
        while exact_accumulator_bytes(dim, limit * 2, product_bits) <= memory_cap:
            limit *= 2
        raise InfeasibleError(
            f"exact max-convolution at D={dim} with value_bound={bound} does not fit "
            f"the memory cap of {memory_cap} bytes",
            required_p=p,
            limit=limit,
        )

    logger.info("exact max-convolution at D=%d, value_bound=%d uses p=%d", dim, bound, p)
    estimate = max_convolve_pnorm(
        x, y, PNormConfig(float(p), bound), exact=True, memory_cap=memory_cap, leaf_dim=leaf_dim
    )
    return ResultTensor.adopt(dim, np.rint(estimate.data))
