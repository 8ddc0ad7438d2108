import logging

from conv_app.api.benchmark.export import export_to_excel, write_csv
from conv_app.api.benchmark.harness import SCALING_MIN_DIM, run_benchmark, scaling_check
from conv_app.api.benchmark.serializers import BenchOptionsSerializer
from conv_app.api.convolution.methods import ConvMethod
from conv_app.management.helpers import (
    STDIO_PATH,
    HypercubeCommand,
    command_errors,
    conv_setting,
    write_output,
)

logger = logging.getLogger(__name__)


class Command(HypercubeCommand):
    help = "Time the convolution engines over a range of D and write a CSV report."

    def add_arguments(self, parser):
        parser.add_argument(
            "--methods",
            nargs="+",
            default=[ConvMethod.DNC.value],
            help="Engines to run: naive, dnc, dft (default: dnc).",
        )
        parser.add_argument("--dim-min", type=int, default=1)
        parser.add_argument("--dim-max", type=int, default=12)
        parser.add_argument("--runs", type=int, default=3, help="Timed runs per cell (default: %(default)s).")
        parser.add_argument("--output", default=STDIO_PATH, help="CSV destination ('-' for stdout).")
        parser.add_argument("--xlsx", metavar="PATH", help="Also export the reports to an Excel workbook.")
        parser.add_argument(
            "--check-scaling",
            action="store_true",
            help=f"Fail when a dnc runtime ratio from D >= {SCALING_MIN_DIM} leaves the expected window.",
        )
        parser.add_argument("--allow-large", action="store_true", help="Permit D above 16.")

    def handle(self, *args, **options):
        with command_errors():
            serializer = BenchOptionsSerializer(
                data={
                    "methods": options["methods"],
                    "dim_min": options["dim_min"],
                    "dim_max": options["dim_max"],
                    "runs": options["runs"],
                    "allow_large": options["allow_large"],
                }
            )
            serializer.is_valid(raise_exception=True)
            opts = serializer.validated_data

            reports = run_benchmark(
                opts["methods"],
                range(opts["dim_min"], opts["dim_max"] + 1),
                opts["runs"],
                naive_max_dim=conv_setting("NAIVE_PRACTICAL_MAX_DIM"),
                **self.engine_options(options),
            )
            write_output(options["output"], write_csv, reports, self.stdout)
            if options["xlsx"]:
                export_to_excel(reports, options["xlsx"])
                logger.info("wrote %s", options["xlsx"])
            if options["check_scaling"]:
                scaling_check(reports, window=tuple(conv_setting("BENCH_SCALING_WINDOW")))
