"""Deterministic simulator and verification harness for mobile-agent
dispersion and exploration on adversarial dynamic graphs."""

__version__ = "0.1.0"
