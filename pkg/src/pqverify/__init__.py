"""Prime graph question verification for integral group rings via HeLP."""

__version__ = "0.1.0"
