"""Triangle-free 3-coloring on surfaces: embedded maps, criticality, weights and enumeration."""
__version__ = "0.1.0"
