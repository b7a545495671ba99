"""Topic modelling and classification of symbolic music as text."""

__version__ = "0.1.0"
