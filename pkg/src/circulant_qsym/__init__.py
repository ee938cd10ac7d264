import sys

from circulant_qsym.cli import run

__version__ = "0.1.0"


def start():
    sys.exit(run())
