"""Verification workbench for 2-power automorphisms of unnodal Enriques surfaces."""

__version__ = "0.1.0"
