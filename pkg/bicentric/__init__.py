"""Bicentric polygons and the concyclic centers of their excircles."""

from bicentric.constants import GENERATOR_VERSION

__version__ = GENERATOR_VERSION.split()[-1]
