"""Tiered-storage data placement: cost model, queue-aware planner, baselines,
and a slotted simulator, backed by the C++ core."""

from tierplace._core import *  # noqa: F401,F403
from tierplace._core import __version__  # noqa: F401
