# Symbolic cofinite Z-modules and omega-indexed filtrations
