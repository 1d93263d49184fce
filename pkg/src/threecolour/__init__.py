"""Three-colour model with domain wall boundary conditions: exact and numeric tools."""

__version__ = "0.1.0"
