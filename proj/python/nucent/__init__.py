"""Correlated HO densities, information entropies and charge form factors."""

from ._core import *  # noqa: F401,F403
from ._core import InvalidInput, NumericalError, entropic_bound  # noqa: F401
