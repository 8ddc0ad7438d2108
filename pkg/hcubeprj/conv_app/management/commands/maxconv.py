from conv_app.api.embeddings.max_conv import max_convolve_exact_int, max_convolve_pnorm
from conv_app.api.embeddings.serializers import PNormConfigSerializer
from conv_app.api.tensors.formats import write_result
from conv_app.management.helpers import HypercubeCommand, command_errors, load_hypercube, write_output


class Command(HypercubeCommand):
    help = "Max-convolution of two non-negative HCUBE files via p-norms."

    def add_arguments(self, parser):
        parser.add_argument("input_x", help="Left operand, HCUBE format.")
        parser.add_argument("input_y", help="Right operand, HCUBE format.")
        parser.add_argument("output", help="Destination TCUBE file ('-' for stdout).")
        mode = parser.add_mutually_exclusive_group(required=True)
        mode.add_argument("--p", type=float, help="Norm exponent of the approximation (>= 1).")
        mode.add_argument(
            "--exact-int",
            type=int,
            dest="value_bound",
            metavar="BOUND",
            help="Exact result for integer entries in [0, BOUND].",
        )

    def handle(self, *args, **options):
        with command_errors():
            serializer = PNormConfigSerializer(data={"p": options["p"], "value_bound": options["value_bound"]})
            serializer.is_valid(raise_exception=True)
            cfg = serializer.save()

            x = load_hypercube(options["input_x"])
            y = load_hypercube(options["input_y"])
            engine = self.engine_options(options)
            if cfg.value_bound is not None:
                z = max_convolve_exact_int(x, y, cfg.value_bound, **engine)
            else:
                z = max_convolve_pnorm(x, y, cfg, **engine)
            write_output(options["output"], write_result, z, self.stdout)
