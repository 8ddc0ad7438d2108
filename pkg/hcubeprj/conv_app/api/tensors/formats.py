"""
Text formats for hypercubes (HCUBE), result tensors (TCUBE) and flat
vectors (VEC).

Every format is a header line `<MAGIC> <n>` followed by whitespace
separated decimal values in flat row-major order. Values are written in
the shortest decimal form that parses back to the same double.
"""
import logging
import math

import numpy as np

from conv_app.api.tensors.limits import MAX_DIM
from conv_app.api.tensors.models import Hypercube, ResultTensor
from conv_app.errors import FormatError

logger = logging.getLogger(__name__)

HCUBE_MAGIC = "HCUBE"
TCUBE_MAGIC = "TCUBE"
VEC_MAGIC = "VEC"


def format_value(value):
    """
    Render a double in its shortest round-trip decimal form.

    Integral values print without a fractional part ("3", not "3.0").
    """
    value = float(value)
    if value == 0.0:
        return "-0" if math.copysign(1.0, value) < 0 else "0"
    if value.is_integer() and abs(value) < 2**53:
        return str(int(value))
    return repr(value)


def _read_header(text, magic):
    first, _, rest = text.partition("\n")
    tokens = first.split()
    if len(tokens) != 2 or tokens[0] != magic:
        raise FormatError(f"expected header '{magic} <n>', got {first.strip()!r}", line=1)
    try:
        count = int(tokens[1])
    except ValueError:
        raise FormatError(f"header size {tokens[1]!r} is not an integer", line=1) from None
    return count, rest


def _locate_bad_token(body):
    offset = 0
    for line_number, line in enumerate(body.split("\n"), start=2):
        for token in line.split():
            try:
                float(token)
            except ValueError:
                return token, line_number, offset
            offset += 1
    return None, None, None


def _parse_values(body, expected, magic):
    tokens = body.split()
    if len(tokens) != expected:
        raise FormatError(
            f"{magic} body holds {len(tokens)} values, {expected} expected",
            offset=min(len(tokens), expected),
        )
    try:
        values = np.array(tokens, dtype=np.float64)
    except ValueError:
        token, line, offset = _locate_bad_token(body)
        raise FormatError(f"unparseable number {token!r}", line=line, offset=offset) from None
    logger.debug("parsed %d %s values", values.size, magic)
    return values


def decode_ascii(raw):
    """
    Decode the bytes of a HCUBE/TCUBE/VEC file.

    Raises:
        FormatError: At the first byte outside ASCII, with its line.
    """
    try:
        return raw.decode("ascii")
    except UnicodeDecodeError as exc:
        line = raw.count(b"\n", 0, exc.start) + 1
        raise FormatError(f"byte {raw[exc.start]:#04x} is not ASCII", line=line) from exc


def _read_dim(source, magic):
    try:
        text = source.read()
    except UnicodeDecodeError as exc:
        raise FormatError(f"{magic} stream is not ASCII: {exc.reason}") from exc
    dim, body = _read_header(text, magic)
    if not 1 <= dim <= MAX_DIM:
        raise FormatError(f"dimension {dim} is outside [1, {MAX_DIM}]", line=1)
    return dim, body


def read_hypercube(source):
    """
    Parse a HCUBE stream.

    Args:
        source: A readable text stream.

    Raises:
        FormatError: On a malformed header, a wrong value count or an
            unparseable number.

    Returns:
        Hypercube: The parsed hypercube.
    """
    dim, body = _read_dim(source, HCUBE_MAGIC)
    return Hypercube(dim, _parse_values(body, 2**dim, HCUBE_MAGIC))


def read_result(source):
    """Parse a TCUBE stream into a ResultTensor."""
    dim, body = _read_dim(source, TCUBE_MAGIC)
    return ResultTensor.adopt(dim, _parse_values(body, 3**dim, TCUBE_MAGIC))


def read_vector(source):
    """Parse a VEC stream into a float64 array."""
    length, body = _read_header(source.read(), VEC_MAGIC)
    if length < 1:
        raise FormatError(f"vector length {length} must be positive", line=1)
    return _parse_values(body, length, VEC_MAGIC)


def _write_rows(sink, header, data, row_length):
    sink.write(header + "\n")
    for start in range(0, data.size, row_length):
        sink.write(" ".join(format_value(v) for v in data[start:start + row_length]) + "\n")


def write_hypercube(x, sink):
    """Emit `x` in HCUBE format, one last-axis pair per line."""
    _write_rows(sink, f"{HCUBE_MAGIC} {x.dim}", x.data, 2)


def write_result(z, sink):
    """Emit `z` in TCUBE format, one last-axis triple per line."""
    _write_rows(sink, f"{TCUBE_MAGIC} {z.dim}", z.data, 3)


def write_vector(values, sink):
    """Emit a flat vector in VEC format, one value per line."""
    values = np.asarray(values, dtype=np.float64).reshape(-1)
    _write_rows(sink, f"{VEC_MAGIC} {values.size}", values, 1)
