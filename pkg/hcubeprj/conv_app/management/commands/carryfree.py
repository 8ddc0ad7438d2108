from conv_app.api.embeddings.carry_free import apply_carries, carry_free_convolve
from conv_app.api.tensors.formats import write_result, write_vector
from conv_app.management.helpers import HypercubeCommand, command_errors, load_hypercube, write_output


class Command(HypercubeCommand):
    help = (
        "Carry-free convolution of two length-2^D vectors stored as HCUBE files. "
        "Writes the TCUBE result, or the ordinary convolution as VEC with --with-carries."
    )

    def add_arguments(self, parser):
        parser.add_argument("input_u", help="First vector, HCUBE format.")
        parser.add_argument("input_v", help="Second vector, HCUBE format.")
        parser.add_argument("output", help="Destination file ('-' for stdout).")
        parser.add_argument(
            "--with-carries",
            action="store_true",
            help="Apply the carries and write the 2*2^D - 1 values of the ordinary convolution.",
        )

    def handle(self, *args, **options):
        with command_errors():
            u = load_hypercube(options["input_u"])
            v = load_hypercube(options["input_v"])
            result = carry_free_convolve(u.data, v.data, **self.engine_options(options))
            if options["with_carries"]:
                write_output(options["output"], write_vector, apply_carries(result), self.stdout)
            else:
                write_output(options["output"], write_result, result.tensor, self.stdout)
