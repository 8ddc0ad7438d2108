#!/usr/bin/env python
"""Command-line entry point: convolve, carryfree, maxconv and bench."""
import os
import sys
from pathlib import Path


def main():
    """Run a hypercube convolution command, e.g. `manage.py convolve x.hcube y.hcube z.tcube`."""
    # settings.py and conv_app live next to this file
    sys.path.insert(0, str(Path(__file__).resolve().parent))
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'settings')
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Install the project first "
            "(`uv sync --extra test` from the repository root)."
        ) from exc
    execute_from_command_line(sys.argv)


if __name__ == '__main__':
    main()
