"""Heisenberg-group spectral tools and bilinear Riesz means (compiled core)."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

INF = float("inf")
