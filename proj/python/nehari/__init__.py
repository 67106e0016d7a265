"""Ground-state levels and diagnostics for competing-potential semilinear
elliptic problems: limit-problem solver, constrained minimization, lambda
sweeps with threshold detection, and the topology/asymptotics battery."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
