"""Exact certificates of the graph complement conjecture (psd version) for cactus graphs."""

__version__ = "0.1.0"
