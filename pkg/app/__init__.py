"""spiralcolor - spiral-chain 3-coloring of planar graphs without 4- and 5-cycles."""

__version__ = "0.1.0"
