import logging

from conv_app.api.convolution.methods import ConvMethod, convolve
from conv_app.api.tensors.formats import write_result
from conv_app.api.tensors.models import reflect_hypercube
from conv_app.management.helpers import HypercubeCommand, command_errors, load_hypercube, write_output

logger = logging.getLogger(__name__)


class Command(HypercubeCommand):
    help = "Convolve two HCUBE files and write the TCUBE result."

    def add_arguments(self, parser):
        parser.add_argument("input_x", help="Left operand, HCUBE format ('-' for stdin).")
        parser.add_argument("input_y", help="Right operand, HCUBE format.")
        parser.add_argument("output", help="Destination TCUBE file ('-' for stdout).")
        parser.add_argument(
            "--method",
            choices=[m.value for m in ConvMethod],
            default=ConvMethod.DNC.value,
            help="Convolution engine (default: %(default)s).",
        )
        parser.add_argument(
            "--difference",
            action="store_true",
            help="Pair x[i] with y[j] at cell i - j + (1, ..., 1) instead of i + j.",
        )

    def handle(self, *args, **options):
        method = ConvMethod(options["method"])
        with command_errors():
            x = load_hypercube(options["input_x"])
            y = load_hypercube(options["input_y"])
            if options["difference"]:
                y = reflect_hypercube(y)
            logger.info("convolving D=%d with %s", x.dim, method)
            z = convolve(x, y, method, **self.engine_options(options))
            write_output(options["output"], write_result, z, self.stdout)
