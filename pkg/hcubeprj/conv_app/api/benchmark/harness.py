"""
Runtime and accuracy table for the convolution engines.

Accuracy is probed with x.flat = y.flat = [1, 2, ..., 2^D], whose
smallest result cell, z[(0, ..., 0)] = 1, is the one most exposed to
error coming from the large cells.
"""
import logging
import time

import numpy as np

from conv_app.api.benchmark.models import BenchReport, BenchStatus
from conv_app.api.convolution.methods import ConvMethod, convolve, required_bytes
from conv_app.api.tensors.limits import (
    DEFAULT_LEAF_DIM,
    DEFAULT_MEMORY_CAP_BYTES,
    NAIVE_PRACTICAL_MAX_DIM,
    check_dim,
)
from conv_app.api.tensors.models import Hypercube
from conv_app.errors import ContractError, ScalingError

logger = logging.getLogger(__name__)

SCALING_WINDOW = (2.3, 4.0)
SCALING_MIN_DIM = 13


def make_probe(dim):
    """
    Build the accuracy probe pair.

    Returns:
        tuple[Hypercube, Hypercube]: Two hypercubes with flat data [1, ..., 2^D].
    """
    check_dim(dim)
    probe = Hypercube(dim, np.arange(1, 2**dim + 1, dtype=np.float64))
    return probe, probe


def rel_error_at_smallest(z):
    """Relative error of the probe result at flat index 0, where the exact value is 1."""
    return abs(float(z.data[0]) - 1.0) / 1.0


def _skip_reason(method, dim, memory_cap, naive_max_dim, leaf_dim):
    if method is ConvMethod.NAIVE and dim > naive_max_dim:
        return BenchStatus.SKIPPED_PRACTICALITY
    if required_bytes(method, dim, leaf_dim=leaf_dim) > memory_cap:
        return BenchStatus.SKIPPED_MEMORY
    return None


def run_benchmark(
    methods,
    dims,
    runs=3,
    *,
    memory_cap=DEFAULT_MEMORY_CAP_BYTES,
    naive_max_dim=NAIVE_PRACTICAL_MAX_DIM,
    leaf_dim=DEFAULT_LEAF_DIM,
    timer=time.perf_counter,
    on_result=None,
):
    """
    Time every (method, D) cell and measure its probe error.

    Each cell runs one untimed warmup, then `runs` timed convolution
    calls; probe construction and error measurement stay outside the
    timed region. Cells that exceed the memory cap, or naive cells above
    `naive_max_dim`, produce skip records instead.

    Args:
        methods (Iterable[ConvMethod | str]): Engines to run.
        dims (Iterable[int]): Dimensions to run, in order.
        runs (int): Timed repetitions per cell.
        memory_cap (int): Allocation limit in bytes.
        naive_max_dim (int): Largest D the naive engine is run at.
        leaf_dim (int): Leaf depth of the divide-and-conquer kernel.
        timer (Callable[[], float]): Clock used for timing.
        on_result (Callable | None): Called with (method, dim, result) for
            the last timed run of every cell.

    Raises:
        ContractError: If `runs` < 1.

    Returns:
        list[BenchReport]: One report per (method, D), methods outermost.
    """
    if runs < 1:
        raise ContractError(f"runs must be at least 1, got {runs}")
    methods = [ConvMethod(m) for m in methods]
    dims = [check_dim(d) for d in dims]

    reports = []
    for method in methods:
        for dim in dims:
            reason = _skip_reason(method, dim, memory_cap, naive_max_dim, leaf_dim)
            if reason is not None:
                logger.info("%s D=%d %s", method, dim, reason)
                reports.append(BenchReport(method, dim, runs, status=reason))
                continue

            x, y = make_probe(dim)
            result = convolve(x, y, method, memory_cap=memory_cap, leaf_dim=leaf_dim)
            timings = []
            for _ in range(runs):
                result = None
                start = timer()
                result = convolve(x, y, method, memory_cap=memory_cap, leaf_dim=leaf_dim)
                timings.append(timer() - start)

            report = BenchReport(
                method,
                dim,
                runs,
                median_seconds=float(np.median(timings)),
                rel_error_at_min=rel_error_at_smallest(result),
            )
            logger.info(
                "%s D=%d median=%.6gs rel_error_at_min=%.3g",
                method, dim, report.median_seconds, report.rel_error_at_min,
            )
            if on_result is not None:
                on_result(method, dim, result)
            reports.append(report)
            result = None
    return reports


def scaling_check(reports, *, window=SCALING_WINDOW, min_dim=SCALING_MIN_DIM, enforce=True):
    """
    Runtime ratios between consecutive dimensions of the dnc engine.

    Args:
        reports (Iterable[BenchReport]): Reports covering consecutive D.
        window (tuple[float, float]): Accepted ratio range.
        min_dim (int): Steps starting below this D are reported but not
            checked, their runtimes being dominated by noise.
        enforce (bool): Raise when a checked ratio leaves the window.

    Raises:
        ContractError: If fewer than two consecutive ok dnc reports exist.
        ScalingError: If `enforce` and a checked ratio is outside `window`.

    Returns:
        list[float]: median_seconds(D) / median_seconds(D - 1) per step.
    """
    rows = sorted((r for r in reports if r.method is ConvMethod.DNC and r.ok), key=lambda r: r.dim)
    if len(rows) < 2:
        raise ContractError("scaling check needs ok dnc reports for at least two dimensions")
    for previous, current in zip(rows, rows[1:]):
        if current.dim != previous.dim + 1:
            raise ContractError(f"dnc reports skip from D={previous.dim} to D={current.dim}")

    ratios = []
    low, high = window
    for previous, current in zip(rows, rows[1:]):
        if previous.median_seconds <= 0:
            raise ContractError(f"D={previous.dim} has a zero median runtime")
        ratio = current.median_seconds / previous.median_seconds
        ratios.append(ratio)
        logger.info("dnc runtime ratio D=%d/%d: %.3f", current.dim, previous.dim, ratio)
        if enforce and previous.dim >= min_dim and not low <= ratio <= high:
            raise ScalingError(
                f"runtime ratio {ratio:.3f} for D={current.dim}/{previous.dim} is outside [{low}, {high}]"
            )
    return ratios
