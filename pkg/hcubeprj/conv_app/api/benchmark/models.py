from dataclasses import dataclass
import enum

from conv_app.api.convolution.methods import ConvMethod


class BenchStatus(enum.Enum):
    OK = "ok"
    SKIPPED_MEMORY = "skipped-memory"
    SKIPPED_PRACTICALITY = "skipped-practicality"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class BenchReport:
    """
    One (method, D) cell of the runtime and accuracy table.

    Attributes:
        method (ConvMethod): The engine that ran.
        dim (int): Hypercube dimension D.
        runs (int): Number of timed repetitions.
        median_seconds (float | None): Median wall-clock time of the
            convolution call; None for skip records.
        rel_error_at_min (float | None): Relative error at the probe's
            smallest result cell; None for skip records.
        status (BenchStatus): ok or the reason the cell was skipped.
    """
    method: ConvMethod
    dim: int
    runs: int
    median_seconds: float = None
    rel_error_at_min: float = None
    status: BenchStatus = BenchStatus.OK

    @property
    def peak_result_cells(self):
        return 3**self.dim

    @property
    def ok(self):
        return self.status is BenchStatus.OK
