"""Exact evaluation of weighted divisor sums and the checks built on them."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
