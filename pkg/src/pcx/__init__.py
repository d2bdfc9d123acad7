"""Extremal band-limited majorants/minorants for the pair correlation measure.

Subpackages split the work into the function family (`beurling`), the
closed-form bound assembly (`pcbounds`), the reproducing kernel (`kernel`),
the de Branges side (`debranges`), small-gap thresholds (`gaps`), and
empirical comparisons against zero-ordinate data (`zerodata`).
"""

__version__ = "0.1.0"
