"""Normal operator logarithms on finite-dimensional complex matrices."""

from ._normlog import *  # noqa: F401,F403
from ._normlog import __version__  # noqa: F401
