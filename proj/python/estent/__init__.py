"""Estimation-entropy bounds and quantized state estimation."""

from estent._core import *  # noqa: F401,F403
from estent._core import __version__  # noqa: F401
