"""Randomized gossip with attractive and repulsive links."""

from ._core import *  # noqa: F401,F403
