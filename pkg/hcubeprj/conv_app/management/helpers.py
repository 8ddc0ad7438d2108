import contextlib
import io
import logging
import sys

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError
from rest_framework import serializers

from conv_app.api.tensors.formats import decode_ascii, read_hypercube
from conv_app.errors import HypercubeError

logger = logging.getLogger(__name__)

USAGE_EXIT = 1
STDIO_PATH = "-"


def conv_setting(key):
    """Read one entry of the HYPERCUBE_CONV settings dict."""
    return settings.HYPERCUBE_CONV[key]


def flatten_validation_errors(detail):
    """
    Turn a DRF error structure into one readable line.

    Args:
        detail (dict | list | str): `ValidationError.detail`.

    Returns:
        str: Messages joined with "; ", field names prefixed.
    """
    if isinstance(detail, dict):
        parts = []
        for field, messages in detail.items():
            text = flatten_validation_errors(messages)
            parts.append(text if field == "non_field_errors" else f"{field}: {text}")
        return "; ".join(parts)
    if isinstance(detail, (list, tuple)):
        return "; ".join(flatten_validation_errors(d) for d in detail)
    return str(detail)


@contextlib.contextmanager
def command_errors():
    """
    Translate library and validation errors into CommandError.

    HypercubeError subclasses keep their own exit code; validation errors
    and unreadable files exit with 1.
    """
    try:
        yield
    except HypercubeError as exc:
        raise CommandError(str(exc), returncode=exc.exit_code) from exc
    except serializers.ValidationError as exc:
        raise CommandError(flatten_validation_errors(exc.detail), returncode=USAGE_EXIT) from exc
    except OSError as exc:
        raise CommandError(f"{exc.filename or ''}: {exc.strerror or exc}", returncode=USAGE_EXIT) from exc


def load_hypercube(path):
    """Read a HCUBE file; "-" reads standard input."""
    if path == STDIO_PATH:
        return read_hypercube(sys.stdin)
    with open(path, "rb") as source:
        raw = source.read()
    cube = read_hypercube(io.StringIO(decode_ascii(raw)))
    logger.debug("read %s: D=%d", path, cube.dim)
    return cube


def write_output(path, writer, value, stdout):
    """
    Serialize `value` with `writer` to `path`, or to `stdout` for "-".

    Args:
        path (str): Destination file or "-".
        writer (Callable[[object, TextIO], None]): Format writer.
        value: The object to write.
        stdout (OutputWrapper): The command's standard output.
    """
    if path == STDIO_PATH:
        buffer = io.StringIO()
        writer(value, buffer)
        stdout.write(buffer.getvalue(), ending="")
        return
    with open(path, "w", encoding="ascii", newline="\n") as sink:
        writer(value, sink)
    logger.info("wrote %s", path)


def _usage_error(parser, message):
    if parser.called_from_command_line:
        parser.print_usage(sys.stderr)
        parser.exit(USAGE_EXIT, f"{parser.prog}: error: {message}\n")
    raise CommandError(f"Error: {message}", returncode=USAGE_EXIT)


class HypercubeCommand(BaseCommand):
    """
    Base class of the convolution commands.

    Skips Django's system checks, reports malformed command lines with
    exit status 1, and adds the shared `--memory-cap` and `--leaf-dim`
    options.
    """
    requires_system_checks = []

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        parser.error = lambda message: _usage_error(parser, message)
        parser.add_argument(
            "--memory-cap",
            type=int,
            default=conv_setting("MEMORY_CAP_BYTES"),
            help="Refuse to allocate more than this many bytes (default: %(default)s).",
        )
        parser.add_argument(
            "--leaf-dim",
            type=int,
            default=conv_setting("LEAF_DIM"),
            help="Depth at which the divide-and-conquer kernel switches to its vectorised sweep.",
        )
        return parser

    def engine_options(self, options):
        return {"memory_cap": options["memory_cap"], "leaf_dim": options["leaf_dim"]}
