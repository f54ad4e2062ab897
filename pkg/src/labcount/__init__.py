"""Exact counting and search for magic, partially magic and antimagic labelings."""

__version__ = "0.1.0"
