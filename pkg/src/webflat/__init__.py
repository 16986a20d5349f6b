"""Exact toolkit for flatness of Legendre-dual 3-webs of plane foliations."""

__version__ = "0.1.0"
