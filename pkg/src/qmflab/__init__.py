"""High-precision verification of quantum modularity for partial theta series."""
